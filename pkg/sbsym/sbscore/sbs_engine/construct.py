"""Equivariant construction of full and partial symmetry breaking sets.

Every construction works in the canonical frame of the input group ``S``
and maps its result back with ``S.orientation``; outputs therefore
transform with the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from sbsym.sbscore.exceptions import (
    ClosureOverflow,
    GroupNotClosed,
    InfiniteNormalizer,
    NotNested,
    NotPartialBreaking,
    NotSymmetryBreaking,
    SymbolicGroup,
)
from sbsym.sbscore.group_core.groups import FiniteGroup, Subgroup
from sbsym.sbscore.group_core.lattice import (
    conjugacy_class_of_subgroup,
    find_complement,
    generate,
    quotient,
)
from sbsym.sbscore.o3_geometry.elements import matrix_key
from sbsym.sbscore.o3_geometry.identify import identify_point_group
from sbsym.sbscore.o3_geometry.irreps import (
    IrrepComponent,
    IrrepObject,
    Parity,
    act,
    object_stabilizer,
)
from sbsym.sbscore.o3_geometry.point_groups import (
    PointGroup,
    canonical_point_group,
    intersect,
    locate,
    matrix_group,
    stack_of,
)
from sbsym.sbscore.pointgroup_tables.objects import (
    canonical_breaking_object,
    object_with_stabilizer,
)
from sbsym.sbscore.pointgroup_tables.tables import complement_in_normalizer, normalizer_of
from sbsym.sbscore.sbs_engine.models import SBSpec
from sbsym.sbscore.utils.utils import DEFAULT_TOL, core_logger, log_msg

logger = core_logger("sbs_engine")


# ──────────────────────────────────────────────────────────────────────────────
# Frames and normalizers
# ──────────────────────────────────────────────────────────────────────────────


def require_finite(P: PointGroup, role: str = "group") -> None:
    if P.group is None:
        raise SymbolicGroup(f"{role} {P.label} must be a finite point group")


def _atol(tol: float) -> float:
    return max(tol, 1e-9) * 100


def canonical_of(P: PointGroup) -> PointGroup:
    return canonical_point_group(P.name, P.n)


def relative_to(P: PointGroup, S: PointGroup) -> PointGroup:
    """``P`` seen from the canonical frame of ``S``."""
    return P.oriented(S.orientation.T)


def oriented_normalizer(P: PointGroup) -> PointGroup:
    """``N_{O(3)}(P)`` in P's own orientation."""
    n_elem, N = normalizer_of(P.name, P.n)
    return N.oriented(P.orientation @ n_elem.matrix)


def world_normalizer(S: PointGroup) -> PointGroup:
    require_finite(S, "S")
    return oriented_normalizer(S)


def check_nested(S: PointGroup, K: PointGroup) -> None:
    require_finite(S, "S")
    require_finite(K, "K")
    if not S.contains_group(K):
        raise NotNested(f"{K.label} is not a subgroup of {S.label}")


def coset_product(
    A: np.ndarray, B: np.ndarray, tol: float = DEFAULT_TOL, name: str = "product"
) -> FiniteGroup:
    """``{a·b}`` for two matrix stacks, checked to be a group."""
    prods = np.einsum("aij,bjk->abik", A, B).reshape(-1, 3, 3)
    uniq: dict[tuple, np.ndarray] = {}
    for m in prods:
        uniq.setdefault(matrix_key(m), m)
    mats = list(uniq.values())
    try:
        G = matrix_group(mats, tol=tol, max_order=len(mats), name=name)
    except ClosureOverflow:
        raise GroupNotClosed(f"{name}: product set of {len(mats)} is not a group") from None
    if G.order != len(mats):
        raise GroupNotClosed(f"{name}: product set of {len(mats)} is not a group")
    return G


def _gen_normalizer_relative(
    S: PointGroup, K: PointGroup, tol: float = DEFAULT_TOL
) -> PointGroup:
    """``S·(N(S) ∩ N(K))`` in the canonical frame of S."""
    S_can = canonical_of(S)
    N1 = oriented_normalizer(S_can)
    N2 = oriented_normalizer(relative_to(K, S))
    both = intersect(N1, N2)
    if isinstance(both, PointGroup):
        if both.contains_group(S_can):
            return both
        raise SymbolicGroup(f"S·({N1.label} ∩ {N2.label}) is not representable")
    G = coset_product(S_can.stack, stack_of(both), tol, name="N_G(S,K)")
    return identify_point_group(G)


def generalized_normalizer_of(
    S: PointGroup, K: PointGroup, tol: float = DEFAULT_TOL
) -> PointGroup:
    """``N_{O(3)}(S, K) = S·(N(S) ∩ N(K))`` in the world frame."""
    check_nested(S, K)
    return _gen_normalizer_relative(S, K, tol).oriented(S.orientation)


# ──────────────────────────────────────────────────────────────────────────────
# Full symmetry breaking
# ──────────────────────────────────────────────────────────────────────────────


def full_sbs(
    S: PointGroup, b: Optional[IrrepObject] = None, tol: float = DEFAULT_TOL
) -> SBSpec:
    """Equivariant full SBS of ``S`` as ``(g·b, g·N)``.

    ``b`` is read in the canonical frame of S and defaults to the canonical
    breaking object. Raises NotSymmetryBreaking when ``Stab_S(b)`` is not
    trivial.
    """
    require_finite(S, "S")
    S_can = canonical_of(S)
    if b is None:
        b = canonical_breaking_object(S.name, S.n)
    else:
        stab = object_stabilizer(S_can, b, tol)
        if stab.order > 1:
            raise NotSymmetryBreaking(
                f"object is fixed by {stab.order} elements of {S.label}"
            )
    n_elem, N = normalizer_of(S.name, S.n)
    g = S.orientation
    spec = SBSpec(act(g, b), N.oriented(g @ n_elem.matrix), "full")
    log_msg(logger, f"full SBS for {S.label}: orbit group {N.label}", "debug")
    return spec


# ──────────────────────────────────────────────────────────────────────────────
# Ideal partial object symmetry
# ──────────────────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class IdealPartialTrace:
    """Intermediate groups of the ideal partial search, in the world frame."""

    K: PointGroup
    N: PointGroup  # N(S) ∩ N(K)
    N_prime: PointGroup  # S ∩ N(K)
    quotient_order: int  # |N/K|
    image_order: int  # |N'/K|
    complement_order: Optional[int]
    H: Optional[PointGroup]
    H_relative: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def exists(self) -> bool:
        return self.H is not None


def _members_in(G: FiniteGroup, mats: np.ndarray, tol: float) -> Subgroup:
    idx = locate(stack_of(G), mats, _atol(tol))
    if np.any(idx < 0):
        raise NotNested("subgroup is not contained in N(S) ∩ N(K)")
    return Subgroup.from_indices(G, idx)


def ideal_partial_trace(
    S: PointGroup, K: PointGroup, tol: float = DEFAULT_TOL
) -> IdealPartialTrace:
    """Search a symmetry ``H`` whose fixed objects generate ideal K-partial SBSs.

    With ``N = N(S) ∩ N(K)`` and ``N' = S ∩ N(K)``, a complement ``C`` of
    ``N'/K`` in ``N/K`` is searched; ``H`` is its preimage. Raises
    InfiniteNormalizer when either normalizer is infinite.
    """
    check_nested(S, K)
    S_can = canonical_of(S)
    K_rel = relative_to(K, S)
    N1 = oriented_normalizer(S_can)
    N2 = oriented_normalizer(K_rel)
    for P in (N1, N2):
        if P.symbolic:
            raise InfiniteNormalizer(f"normalizer {P.label} is infinite")

    N = intersect(N1, N2)
    N_prime = intersect(S_can, N2)
    assert isinstance(N, FiniteGroup) and isinstance(N_prime, FiniteGroup)
    K_sub = _members_in(N, K_rel.stack, tol)
    P_sub = _members_in(N, stack_of(N_prime), tol)

    Q = quotient(N, K_sub)
    Q2 = Q.image(P_sub)
    C = find_complement(Q.group, Q2)

    g = S.orientation
    H = H_rel = None
    if C is not None:
        H_rel = stack_of(N)[Q.preimage(C).array]
        H = identify_point_group(matrix_group(list(H_rel), tol=tol, name="H")).oriented(g)
    trace = IdealPartialTrace(
        K=K,
        N=identify_point_group(N).oriented(g),
        N_prime=identify_point_group(N_prime).oriented(g),
        quotient_order=Q.group.order,
        image_order=Q2.order,
        complement_order=None if C is None else C.order,
        H=H,
        H_relative=H_rel,
    )
    log_msg(
        logger,
        f"ideal partial ({S.label}, {K.label}): |N/K|={trace.quotient_order} "
        f"|N'/K|={trace.image_order} H={None if H is None else H.label}",
        "debug",
    )
    return trace


def ideal_partial_object_symmetry(
    S: PointGroup, K: PointGroup, tol: float = DEFAULT_TOL
) -> Optional[tuple[PointGroup, PointGroup]]:
    """``(H, K)`` such that any p with ``H ≤ Stab(p)`` and ``Stab_S(p) = K``
    generates an ideal K-partial SBS, or None.

    A trivial ``K`` is answered from the complement table.
    """
    check_nested(S, K)
    if K.order == 1:
        found = complement_in_normalizer(S.name, S.n)
        if found is None:
            return None
        return found[1].oriented(S.orientation), K
    trace = ideal_partial_trace(S, K, tol)
    if trace.H is None:
        return None
    return trace.H, K


# ──────────────────────────────────────────────────────────────────────────────
# Partial symmetry breaking
# ──────────────────────────────────────────────────────────────────────────────


def check_partial_breaking(
    S_can: PointGroup, K_rel: PointGroup, p: IrrepObject, tol: float = DEFAULT_TOL
) -> None:
    """Raise NotPartialBreaking unless ``Stab_S(p)`` lies in a conjugate of K."""
    stab = object_stabilizer(S_can, p, tol)
    K_sub = K_rel.subgroup_of(S_can)
    if not any(stab.issubset(C) for C in conjugacy_class_of_subgroup(S_can.group, K_sub)):
        raise NotPartialBreaking(
            f"stabilizer of order {stab.order} lies in no conjugate of {K_rel.label}"
        )


def _default_partial_object(
    S: PointGroup, K: PointGroup, tol: float
) -> IrrepObject:
    if K.order == 1:
        return canonical_breaking_object(S.name, S.n)
    S_can = canonical_of(S)
    H_stack = relative_to(K, S).stack
    try:
        trace = ideal_partial_trace(S, K, tol)
        if trace.H_relative is not None:
            H_stack = trace.H_relative
    except InfiniteNormalizer:
        log_msg(logger, "infinite normalizer; falling back to K-fixed objects", "debug")
    return object_with_stabilizer(S_can.stack, H_stack, K.order)


def partial_sbs(
    S: PointGroup,
    K: PointGroup,
    p: Optional[IrrepObject] = None,
    tol: float = DEFAULT_TOL,
) -> SBSpec:
    """Equivariant K-partial SBS of ``S`` as ``(g_S·p, N_{O(3)}(S, K))``.

    ``p`` is read in the canonical frame of S. Without ``p`` an object
    fixed by the ideal symmetry ``H`` (or by K when none exists) with
    ``Stab_S(p) = K`` is built.
    """
    check_nested(S, K)
    N_rel = _gen_normalizer_relative(S, K, tol)
    if p is None:
        p = _default_partial_object(S, K, tol)
    else:
        check_partial_breaking(canonical_of(S), relative_to(K, S), p, tol)
    spec = SBSpec(act(S.orientation, p), N_rel.oriented(S.orientation), "partial")
    log_msg(logger, f"partial SBS ({S.label}, {K.label}): orbit group {N_rel.label}", "debug")
    return spec


# ──────────────────────────────────────────────────────────────────────────────
# Worked examples
# ──────────────────────────────────────────────────────────────────────────────


def naive_prism_sbs() -> SBSpec:
    """The non-equivariant prism scheme: vertex vector paired with ±z, orbit under D3."""
    pair = IrrepObject(
        components=(
            IrrepComponent(l=1, parity=Parity.odd, coeffs=(1.0, 0.0, 0.0)),
            IrrepComponent(l=1, parity=Parity.odd, coeffs=(0.0, 0.0, 1.0)),
        )
    )
    return SBSpec(pair, canonical_point_group("Dn", 3), "full")


def equivariant_completion(B: SBSpec, S: PointGroup) -> SBSpec:
    """Close a set under ``N(S)`` by taking normalizer orbits of its seeds."""
    return SBSpec(B.object, world_normalizer(S), B.kind, B.extra_seeds)


def joint_symmetry(
    ambient: PointGroup, obj: IrrepObject, other: PointGroup, tol: float = DEFAULT_TOL
) -> PointGroup:
    """Group generated by ``Stab_ambient(obj)`` together with ``other``."""
    require_finite(ambient, "ambient")
    stab = object_stabilizer(ambient, obj, tol)
    sub = other.subgroup_of(ambient)
    J = generate(ambient.group, [*stab.members, *sub.members])
    return identify_point_group(matrix_group(list(ambient.stack[J.array]), tol=tol))
