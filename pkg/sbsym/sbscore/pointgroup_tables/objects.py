"""Canonical symmetry breaking objects.

An object is assembled component by component: each candidate irrep block
is the projection of a fixed seed onto the subspace fixed by a prescribed
group ``H`` (a complement, or the target symmetry of a partial break), and
is kept only when it shrinks the stabilizer in ``S``. Components are tried
in the order

    l=1 odd, l=1 even, l=2 even, l=2 odd, l=0 odd, l=0 even

and every kept block is normalized to unit length.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from sbsym.sbscore.exceptions import NotSymmetryBreaking
from sbsym.sbscore.o3_geometry.irreps import IrrepObject, Parity, irrep_matrices
from sbsym.sbscore.o3_geometry.names import Family, display_name, validate
from sbsym.sbscore.o3_geometry.point_groups import canonical_point_group
from sbsym.sbscore.pointgroup_tables.tables import complement_in_normalizer
from sbsym.sbscore.utils.utils import core_logger, log_msg, snap

logger = core_logger("pointgroup_tables")

SEEDS = {
    0: np.array([1.0]),
    1: np.array([0.8, 0.5, 0.3]),
    2: np.array([0.8, 0.5, 0.3, 0.2, 0.1]),
}

COMPONENT_ORDER: tuple[tuple[int, Parity], ...] = (
    (1, Parity.odd),
    (1, Parity.even),
    (2, Parity.even),
    (2, Parity.odd),
    (0, Parity.odd),
    (0, Parity.even),
)

# groups whose normalizer complement is infinite get a hand-picked object
_FIXED = {
    Family.C1: IrrepObject.scalar(),
    Family.Ci: IrrepObject.pseudoscalar(),
    Family.Cs: IrrepObject.vector(0.0, 0.0, 1.0),
}

_EQ_TOL = 1e-6


def fixed_component(
    H_stack: np.ndarray, l: int, parity: Parity  # noqa: E741
) -> Optional[np.ndarray]:
    """Unit projection of the seed onto the ``H``-fixed subspace, or None."""
    proj = irrep_matrices(H_stack, l, parity).mean(axis=0)
    v = proj @ SEEDS[l]
    norm = float(np.linalg.norm(v))
    if norm < 1e-9:
        return None
    return snap(v / norm, 1e-12)


def _fixes(stack: np.ndarray, l: int, parity: Parity, v: np.ndarray) -> np.ndarray:  # noqa: E741
    images = irrep_matrices(stack, l, parity) @ v
    return np.all(np.abs(images - v) <= _EQ_TOL, axis=1)


def object_with_stabilizer(
    S_stack: np.ndarray, H_stack: np.ndarray, target_order: int = 1
) -> IrrepObject:
    """An object fixed by ``H`` whose stabilizer in ``S`` has ``target_order`` elements.

    Raises NotSymmetryBreaking when the candidate blocks cannot bring the
    stabilizer down far enough.
    """
    alive = np.ones(S_stack.shape[0], dtype=bool)
    comps: list[tuple[int, Parity, np.ndarray]] = []
    for l, parity in COMPONENT_ORDER:  # noqa: E741
        if alive.sum() <= target_order:
            break
        v = fixed_component(H_stack, l, parity)
        if v is None:
            continue
        keep = alive & _fixes(S_stack, l, parity, v)
        if keep.sum() < alive.sum():
            alive = keep
            comps.append((l, parity, v))
    if alive.sum() != target_order or not comps:
        if not comps and target_order == S_stack.shape[0]:
            return IrrepObject.scalar()
        raise NotSymmetryBreaking(
            f"no object up to l=2 reaches a stabilizer of order {target_order} "
            f"(reached {int(alive.sum())})"
        )
    signature = [(l, p) for l, p, _ in comps]
    return IrrepObject.from_vector(signature, np.concatenate([v for _, _, v in comps]))


@lru_cache(maxsize=None)
def _canonical_object(family: Family, n: Optional[int]) -> IrrepObject:
    if family in _FIXED:
        return _FIXED[family]
    S = canonical_point_group(family.value, n)
    found = complement_in_normalizer(family.value, n)
    if found is None:
        H_stack = np.eye(3)[None]
    else:
        H_stack = found[1].stack
    obj = object_with_stabilizer(S.stack, H_stack)
    label = display_name(family.value, n)
    log_msg(logger, f"canonical object for {label}: {obj.signature}", "debug")
    return obj


def canonical_breaking_object(name: str, n: Optional[int] = None) -> IrrepObject:
    """Object with trivial stabilizer in canonical ``S``.

    Where a complement ``H`` of S in its normalizer is tabulated the object
    is also fixed by ``H``, so its normalizer orbit is a single S-orbit.
    """
    family, n = validate(name, n)
    return _canonical_object(family, n)
