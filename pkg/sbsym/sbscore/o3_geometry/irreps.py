"""Real O(3) irreps up to l = 2 and the objects built from them.

The l = 1 coefficients are Cartesian ``(x, y, z)``. The l = 2 coefficients
live in an orthonormal basis of traceless symmetric matrices with x as the
polar axis::

    0: (yz + zy)/√2     1: (zx + xz)/√2     2: diag(2, -1, -1)/√6
    3: (xy + yx)/√2     4: diag(0, 1, -1)/√2

so ``(0, 0, 1, 0, 0)`` is the uniaxial tensor along x.
"""

from __future__ import annotations

import json
import math
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from sbsym.sbscore.exceptions import BadParameter, SymbolicGroup, UnsupportedIrrep
from sbsym.sbscore.group_core.groups import GroupAction, Subgroup
from sbsym.sbscore.group_core.lattice import orbit, stabilizer
from sbsym.sbscore.o3_geometry.elements import O3Element
from sbsym.sbscore.o3_geometry.point_groups import PointGroup
from sbsym.sbscore.utils.utils import CLEAN, DEFAULT_TOL, GRID, grid_key, snap


class Parity(str, Enum):
    even = "even"
    odd = "odd"


def _sym(i: int, j: int) -> np.ndarray:
    m = np.zeros((3, 3))
    m[i, j] = m[j, i] = 1.0 / math.sqrt(2.0)
    return m


L2_BASIS = np.stack(
    [
        _sym(1, 2),
        _sym(2, 0),
        np.diag([2.0, -1.0, -1.0]) / math.sqrt(6.0),
        _sym(0, 1),
        np.diag([0.0, 1.0, -1.0]) / math.sqrt(2.0),
    ]
)


def l2_to_matrix(coeffs: Sequence[float]) -> np.ndarray:
    return np.einsum("k,kij->ij", np.asarray(coeffs, dtype=float), L2_BASIS)


def matrix_to_l2(a: np.ndarray) -> np.ndarray:
    return np.einsum("kij,...ij->...k", L2_BASIS, a)


class IrrepComponent(BaseModel):
    """
    One real-irrep block of a symmetry breaking object.
    """

    model_config = ConfigDict(frozen=True)

    l: int  # noqa: E741  angular degree
    parity: Parity  # even or odd under inversion
    coeffs: Tuple[float, ...]  # 2l+1 real coefficients

    @field_validator("l")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("l must be non-negative")
        return v

    @model_validator(mode="after")
    def _length(self) -> "IrrepComponent":
        if len(self.coeffs) != 2 * self.l + 1:
            raise ValueError(f"l={self.l} needs {2 * self.l + 1} coefficients")
        return self

    @property
    def dim(self) -> int:
        return 2 * self.l + 1


class IrrepObject(BaseModel):
    """
    A symmetry breaking object: a direct sum of irrep components.
    """

    model_config = ConfigDict(frozen=True)

    components: Tuple[IrrepComponent, ...]

    # ── constructors ──────────────────────────────────────────────────────────

    @classmethod
    def single(
        cls, l: int, parity: Union[str, Parity], coeffs: Iterable[float]  # noqa: E741
    ) -> "IrrepObject":
        comp = IrrepComponent(
            l=l, parity=Parity(parity), coeffs=tuple(float(c) for c in coeffs)
        )
        return cls(components=(comp,))

    @classmethod
    def vector(cls, x: float, y: float, z: float) -> "IrrepObject":
        return cls.single(1, Parity.odd, (x, y, z))

    @classmethod
    def pseudovector(cls, x: float, y: float, z: float) -> "IrrepObject":
        return cls.single(1, Parity.even, (x, y, z))

    @classmethod
    def scalar(cls, value: float = 1.0) -> "IrrepObject":
        return cls.single(0, Parity.even, (value,))

    @classmethod
    def pseudoscalar(cls, value: float = 1.0) -> "IrrepObject":
        return cls.single(0, Parity.odd, (value,))

    @classmethod
    def from_json(cls, data: Union[str, list]) -> "IrrepObject":
        raw = json.loads(data) if isinstance(data, str) else data
        if isinstance(raw, dict):
            raw = [raw]
        if not isinstance(raw, list) or not raw:
            raise BadParameter("object must be a non-empty list of components")
        try:
            return cls(components=tuple(IrrepComponent(**c) for c in raw))
        except (TypeError, ValueError) as e:
            raise BadParameter(f"invalid object: {e}") from e

    # ── views ─────────────────────────────────────────────────────────────────

    @property
    def signature(self) -> Tuple[Tuple[int, Parity], ...]:
        return tuple((c.l, c.parity) for c in self.components)

    def vector_form(self) -> np.ndarray:
        return np.concatenate([np.asarray(c.coeffs, dtype=float) for c in self.components])

    @classmethod
    def from_vector(cls, signature: Sequence[Tuple[int, Parity]], v: np.ndarray) -> "IrrepObject":
        comps = []
        pos = 0
        for l, parity in signature:  # noqa: E741
            d = 2 * l + 1
            comps.append(
                IrrepComponent(
                    l=l,
                    parity=parity,
                    coeffs=tuple(round(float(x), 15) + 0.0 for x in v[pos : pos + d]),
                )
            )
            pos += d
        return cls(components=tuple(comps))

    def to_json(self) -> List[dict]:
        return [
            {
                "l": c.l,
                "parity": c.parity.value,
                "coeffs": [round(float(x), 12) + 0.0 for x in c.coeffs],
            }
            for c in self.components
        ]

    def key(self) -> tuple:
        return (self.signature, grid_key(self.vector_form()))

    def close_to(self, other: "IrrepObject", tol: float = DEFAULT_TOL) -> bool:
        return self.signature == other.signature and bool(
            np.all(np.abs(self.vector_form() - other.vector_form()) <= tol)
        )

    def norms(self) -> List[float]:
        return [float(np.linalg.norm(c.coeffs)) for c in self.components]


# ──────────────────────────────────────────────────────────────────────────────
# Representation matrices
# ──────────────────────────────────────────────────────────────────────────────


def irrep_matrices(mats: np.ndarray, l: int, parity: Union[str, Parity]) -> np.ndarray:  # noqa: E741
    """Representation matrices ``D(g)`` for a stack of O(3) matrices, shape (n, d, d)."""
    mats = np.asarray(mats, dtype=float).reshape(-1, 3, 3)
    parity = Parity(parity)
    det = np.sign(np.linalg.det(mats))
    if l == 0:
        d = np.ones((mats.shape[0], 1, 1))
        if parity is Parity.odd:
            d = d * det[:, None, None]
        return d
    if l == 1:
        # polar vectors rotate with g; axial vectors pick up det(g)
        return mats if parity is Parity.odd else mats * det[:, None, None]
    if l == 2:
        # D[k, m] = <B_k, g B_m gᵀ>
        conj = np.einsum("nij,mjk,nlk->nmil", mats, L2_BASIS, mats)
        d = np.einsum("kil,nmil->nkm", L2_BASIS, conj)
        if parity is Parity.odd:
            d = d * det[:, None, None]
        return d
    raise UnsupportedIrrep(f"irreps with l={l} are not supported (l <= 2)")


def representation(mats: np.ndarray, signature: Sequence[Tuple[int, Parity]]) -> np.ndarray:
    """Block-diagonal representation of a stack of O(3) matrices for ``signature``."""
    mats = np.asarray(mats, dtype=float).reshape(-1, 3, 3)
    blocks = [irrep_matrices(mats, l, p) for l, p in signature]
    dim = sum(b.shape[1] for b in blocks)
    out = np.zeros((mats.shape[0], dim, dim))
    pos = 0
    for b in blocks:
        d = b.shape[1]
        out[:, pos : pos + d, pos : pos + d] = b
        pos += d
    return out


def act(g: Union[O3Element, np.ndarray], obj: IrrepObject) -> IrrepObject:
    """Action of an O(3) element on a symmetry breaking object."""
    m = g.matrix if isinstance(g, O3Element) else np.asarray(g, dtype=float)
    d = representation(m[None], obj.signature)[0]
    return IrrepObject.from_vector(obj.signature, d @ obj.vector_form())


def object_action(stack: np.ndarray, signature, group, tol: float = DEFAULT_TOL) -> GroupAction:
    """GroupAction of a matrix group (given by its stacked elements) on coefficient vectors."""
    reps = representation(stack, signature)
    eq_tol = max(tol, 1e-9) * 100
    return GroupAction(
        group=group,
        apply=lambda g, v: reps[g] @ v,
        key=lambda v: grid_key(v, GRID),
        snap=lambda v: snap(v, CLEAN),
        eq=lambda a, b: bool(np.all(np.abs(a - b) <= eq_tol)),
        canonical=lambda v: snap(v, GRID),
    )


def point_group_action(P: PointGroup, obj: IrrepObject, tol: float = DEFAULT_TOL) -> GroupAction:
    if P.group is None:
        raise SymbolicGroup(f"{P.label} is symbolic; its action cannot be tabulated")
    return object_action(P.stack, obj.signature, P.group, tol)


def object_stabilizer(P: PointGroup, obj: IrrepObject, tol: float = DEFAULT_TOL) -> Subgroup:
    """``Stab_P(obj)`` as a subgroup of P's materialized group."""
    action = point_group_action(P, obj, tol)
    return stabilizer(P.group, action, obj.vector_form())


def object_orbit(P: PointGroup, obj: IrrepObject, tol: float = DEFAULT_TOL) -> list[IrrepObject]:
    """Distinct images of ``obj`` under a finite point group, identity image first."""
    action = point_group_action(P, obj, tol)
    return [
        IrrepObject.from_vector(obj.signature, v)
        for v in orbit(P.group, action, obj.vector_form())
    ]
