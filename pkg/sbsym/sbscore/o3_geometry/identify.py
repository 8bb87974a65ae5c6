"""Recover ``(orientation, name, n)`` from a finite group of orthogonal matrices.

Candidates are narrowed by order and by the census of (det, trace) pairs;
the orientation is then searched by mapping the canonical z axis and one
secondary axis onto matching axes of the input.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Optional

import numpy as np
from scipy.spatial.transform import Rotation

from sbsym.sbscore.exceptions import ClosureOverflow, NotAPointGroup, NotInvertible
from sbsym.sbscore.group_core.groups import FiniteGroup
from sbsym.sbscore.o3_geometry.names import AXIAL, MAX_N, Family, family_order
from sbsym.sbscore.o3_geometry.point_groups import (
    PointGroup,
    canonical_point_group,
    matrix_group,
    same_matrix_set,
    stack_of,
)
from sbsym.sbscore.utils.utils import core_logger, log_msg

logger = core_logger("o3_geometry")

IDENTIFY_TOL = 1e-6


def _census(stack: np.ndarray) -> Counter:
    dets = np.sign(np.linalg.det(stack)).astype(int)
    traces = np.round(np.trace(stack, axis1=1, axis2=2), 4) + 0.0
    return Counter(zip(dets.tolist(), traces.tolist()))


def _candidates(order: int) -> Iterator[tuple[Family, Optional[int]]]:
    for family in Family:
        if family in AXIAL:
            for n in range(2, MAX_N + 1):
                if family_order(family, n) == order:
                    yield family, n
        elif family_order(family) == order:
            yield family, None


def _axes(stack: np.ndarray, tol: float) -> list[np.ndarray]:
    """Distinct lines (unit vectors, sign-normalized) of the non-trivial elements."""
    dets = np.sign(np.linalg.det(stack))
    proper = stack * dets[:, None, None]
    out: list[np.ndarray] = []
    for m in proper:
        if np.allclose(m, np.eye(3), atol=tol):
            continue
        rv = Rotation.from_matrix(m).as_rotvec()
        u = rv / np.linalg.norm(rv)
        nz = np.flatnonzero(np.abs(u) > tol)
        if u[nz[0]] < 0:
            u = -u
        if not any(abs(abs(float(u @ v)) - 1.0) <= tol for v in out):
            out.append(u)
    # lexicographically largest first
    out.sort(key=lambda v: tuple(np.round(v, 6)), reverse=True)
    return out


def _line_signature(stack: np.ndarray, u: np.ndarray, tol: float) -> tuple:
    img = stack @ u
    dots = img @ u
    on_line = np.abs(np.abs(dots) - 1.0) <= tol
    dets = np.sign(np.linalg.det(stack[on_line])).astype(int)
    traces = np.round(np.trace(stack[on_line], axis1=1, axis2=2), 4) + 0.0
    signs = np.sign(np.round(dots[on_line], 4)).astype(int)
    return tuple(sorted(zip(dets.tolist(), traces.tolist(), signs.tolist())))


def _frame(p: np.ndarray, q: Optional[np.ndarray]) -> np.ndarray:
    """Right-handed orthonormal frame (columns) with first axis p and q in the first plane."""
    e1 = p / np.linalg.norm(p)
    if q is None:
        trial = np.array([1.0, 0.0, 0.0]) if abs(e1[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    else:
        trial = q
    e2 = trial - (trial @ e1) * e1
    e2 /= np.linalg.norm(e2)
    return np.column_stack([e1, e2, np.cross(e1, e2)])


def _orientations(
    canonical: np.ndarray, target: np.ndarray, tol: float
) -> Iterator[np.ndarray]:
    yield np.eye(3)
    z = np.array([0.0, 0.0, 1.0])
    c_axes = _axes(canonical, tol)
    if not c_axes:
        return
    # principal line: z when it is an axis of the canonical group, else its first axis
    principal = next((v for v in c_axes if abs(abs(v @ z) - 1.0) <= tol), c_axes[0])
    secondary = next((v for v in c_axes if abs(abs(v @ principal) - 1.0) > tol), None)
    sig_p = _line_signature(canonical, principal, tol)
    t_axes = _axes(target, tol)
    us = [u for u in t_axes if _line_signature(target, u, tol) == sig_p]
    base = _frame(principal, secondary)
    if secondary is None:
        for u in us:
            for su in (u, -u):
                yield _frame(su, None) @ base.T
        return
    cos = abs(float(secondary @ principal))
    sig_s = _line_signature(canonical, secondary, tol)
    vs = [v for v in t_axes if _line_signature(target, v, tol) == sig_s]
    for u in us:
        for v in vs:
            if abs(abs(float(u @ v)) - cos) > tol * 10:
                continue
            for su in (u, -u):
                for sv in (v, -v):
                    if abs(float(su @ sv) - float(principal @ secondary)) > tol * 10:
                        continue
                    yield _frame(su, sv) @ base.T


def identify_point_group(G: FiniteGroup, tol: float = IDENTIFY_TOL) -> PointGroup:
    """``(g, name, n)`` with ``g·canonical(name, n)·g⁻¹ = G`` and ``det g = +1``."""
    if G.labels is None:
        raise NotAPointGroup("group carries no matrix labels")
    target = stack_of(G)
    census = _census(target)
    for family, n in _candidates(G.order):
        P = canonical_point_group(family.value, n)
        if _census(P.stack) != census:
            continue
        for R in _orientations(P.stack, target, tol):
            if same_matrix_set(R @ P.stack @ R.T, target, tol * 10):
                log_msg(logger, f"identified {P.label} (order {G.order})", "debug")
                return P.oriented(R)
    raise NotAPointGroup(f"no point group matches these {G.order} matrices")


def identify_matrices(mats: np.ndarray, tol: float = IDENTIFY_TOL) -> PointGroup:
    """Identify a list of matrices that should form a group."""
    stack = np.asarray(mats, dtype=float).reshape(-1, 3, 3)
    if stack.shape[0] == 0:
        raise NotAPointGroup("no matrices given")
    try:
        G = matrix_group(list(stack), max_order=240)
    except (ClosureOverflow, NotInvertible, np.linalg.LinAlgError) as e:
        raise NotAPointGroup(f"matrices do not close into a finite group: {e}") from e
    if not same_matrix_set(stack_of(G), _dedupe(stack, tol), tol * 10):
        raise NotAPointGroup("matrices are not closed under multiplication")
    return identify_point_group(G, tol)


def _dedupe(stack: np.ndarray, tol: float) -> np.ndarray:
    keep: list[np.ndarray] = []
    for m in stack:
        if not any(np.all(np.abs(m - k) <= tol) for k in keep):
            keep.append(m)
    return np.stack(keep)
