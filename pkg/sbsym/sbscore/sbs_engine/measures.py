"""Materialization, validity checks and degeneracy of symmetry breaking sets."""

from __future__ import annotations

from typing import Any, Callable, Optional, Union

import numpy as np

from sbsym.sbscore.exceptions import (
    BadParameter,
    HypothesisUnmet,
    NotPartialSBS,
    SymbolicGroup,
)
from sbsym.sbscore.group_core.groups import FiniteGroup, GroupAction, Subgroup
from sbsym.sbscore.group_core.lattice import (
    as_group,
    conjugacy_class_of_subgroup,
    find_complement,
    normalizer,
    pull_back,
    quotient,
)
from sbsym.sbscore.o3_geometry.irreps import IrrepObject, act, representation
from sbsym.sbscore.o3_geometry.point_groups import (
    PointGroup,
    component_representatives,
    continuous_generators,
    sample_group_element,
)
from sbsym.sbscore.sbs_engine.construct import (
    generalized_normalizer_of,
    require_finite,
    world_normalizer,
)
from sbsym.sbscore.sbs_engine.models import DegeneracyReport, SBSpec
from sbsym.sbscore.utils.utils import DEFAULT_TOL, core_logger, grid_key, log_msg

logger = core_logger("sbs_engine")

_EQ_TOL = 1e-6


# ──────────────────────────────────────────────────────────────────────────────
# Materialization
# ──────────────────────────────────────────────────────────────────────────────


def _fixed_by_identity_component(N: PointGroup, obj: IrrepObject) -> bool:
    reps = representation(np.stack(continuous_generators(N)), obj.signature)
    v = obj.vector_form()
    return bool(np.all(np.abs(reps @ v - v) <= _EQ_TOL))


def orbit_vectors(B: SBSpec) -> np.ndarray:
    """Distinct members of the set as coefficient vectors, shape ``(m, d)``.

    Raises SymbolicGroup when the orbit group is infinite and moves the
    object continuously.
    """
    sig = B.object.signature
    for seed in B.extra_seeds:
        if seed.signature != sig:
            raise BadParameter("all seeds of a set must share one irrep signature")
    N = B.orbit_group
    if N.group is not None:
        mats = N.stack
    else:
        if not all(_fixed_by_identity_component(N, s) for s in B.seeds):
            raise SymbolicGroup(f"orbit under {N.label} is continuous")
        mats = np.stack(component_representatives(N))
    reps = representation(mats, sig)
    seen: set[tuple] = set()
    out: list[np.ndarray] = []
    for seed in B.seeds:
        for v in reps @ seed.vector_form():
            k = grid_key(v)
            if k not in seen:
                seen.add(k)
                out.append(np.round(v, 12) + 0.0)
    return np.stack(out)


def materialize(B: SBSpec) -> list[IrrepObject]:
    """Every member of a finite set (orbit-group identity image first)."""
    sig = B.object.signature
    return [IrrepObject.from_vector(sig, v) for v in orbit_vectors(B)]


def enumerate_or_sample(B: SBSpec, count: int, rng_seed: int = 0) -> list[IrrepObject]:
    """The whole set when it has at most ``count`` members, else a uniform sample.

    Continuous sets are sampled by applying random orbit-group elements.
    """
    if count < 1:
        raise BadParameter("count must be >= 1")
    rng = np.random.default_rng(rng_seed)
    sig = B.object.signature
    try:
        vecs = orbit_vectors(B)
    except SymbolicGroup:
        out = []
        for _ in range(count):
            g = sample_group_element(B.orbit_group, rng)
            seed = B.seeds[int(rng.integers(len(B.seeds)))]
            out.append(act(g, seed))
        return out
    if count >= len(vecs):
        picked = range(len(vecs))
    else:
        picked = rng.choice(len(vecs), size=count, replace=False).tolist()
    return [IrrepObject.from_vector(sig, vecs[i]) for i in picked]


# ──────────────────────────────────────────────────────────────────────────────
# Orbits of S on a materialized set
# ──────────────────────────────────────────────────────────────────────────────


def _s_orbits(vecs: np.ndarray, reps: np.ndarray) -> list[list[int]]:
    index = {grid_key(v): i for i, v in enumerate(vecs)}
    seen = np.zeros(len(vecs), dtype=bool)
    orbits: list[list[int]] = []
    for i in range(len(vecs)):
        if seen[i]:
            continue
        members = sorted(
            {index[k] for k in (grid_key(w) for w in reps @ vecs[i]) if k in index}
        )
        seen[members] = True
        orbits.append(members)
    return orbits


def _stabilizer_mask(reps: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.all(np.abs(reps @ v - v) <= _EQ_TOL, axis=1)


# ──────────────────────────────────────────────────────────────────────────────
# Definitions
# ──────────────────────────────────────────────────────────────────────────────


def is_equivariant_sbs(
    B: SBSpec, S: PointGroup, K: Optional[PointGroup] = None, tol: float = DEFAULT_TOL
) -> bool:
    """Whether the set is closed under N(S) (or N(S, K)) and breaks S as required.

    Full mode (``K`` None): every member has trivial stabilizer in S.
    Partial mode: every member's stabilizer lies in a conjugate of K.
    """
    require_finite(S, "S")
    vecs = orbit_vectors(B)
    N = world_normalizer(S) if K is None else generalized_normalizer_of(S, K, tol)
    if N.group is None:
        raise SymbolicGroup(f"{N.label} cannot be materialized")
    sig = B.object.signature

    keys = {grid_key(v) for v in vecs}
    images = np.einsum("gij,mj->gmi", representation(N.stack, sig), vecs)
    if not all(grid_key(w) in keys for w in images.reshape(-1, vecs.shape[1])):
        log_msg(logger, f"set is not closed under {N.label}", "debug")
        return False

    S_reps = representation(S.stack, sig)
    if K is None:
        return all(_stabilizer_mask(S_reps, v).sum() == 1 for v in vecs)
    K_sub = K.subgroup_of(S)
    conj = [C.mask for C in conjugacy_class_of_subgroup(S.group, K_sub)]
    for v in vecs:
        stab = _stabilizer_mask(S_reps, v)
        if not any(np.all(c[stab]) for c in conj):
            return False
    return True


def degeneracy_full(
    B: SBSpec, S: PointGroup, M: Optional[PointGroup] = None
) -> DegeneracyReport:
    """Number of S-orbits in the set; ``"infinite"`` for continuous sets."""
    require_finite(S, "S")
    try:
        vecs = orbit_vectors(B)
    except SymbolicGroup:
        return DegeneracyReport(value="infinite")
    count = len(_s_orbits(vecs, representation(S.stack, B.object.signature)))
    report = DegeneracyReport(value=count, orbit_count=count)
    if M is not None:
        report.bound = degeneracy_bound(S, M)
        report.witness = M.label
    return report


def degeneracy_partial(
    P: SBSpec,
    S: PointGroup,
    K: PointGroup,
    M: Optional[PointGroup] = None,
    K_prime: Optional[PointGroup] = None,
) -> DegeneracyReport:
    """``|P_t|``: each S-orbit adds ``|K| / |Stab_S(p)|`` for a member with
    ``Stab_S(p) ≤ K``.

    Raises NotPartialSBS when some S-orbit has no such member.
    """
    require_finite(S, "S")
    if K.order == 1:
        return degeneracy_full(P, S, M)
    try:
        vecs = orbit_vectors(P)
    except SymbolicGroup:
        return DegeneracyReport(value="infinite")
    reps = representation(S.stack, P.object.signature)
    K_mask = K.subgroup_of(S).mask
    total = 0
    orbits = _s_orbits(vecs, reps)
    for members in orbits:
        for i in members:
            stab = _stabilizer_mask(reps, vecs[i])
            if np.all(K_mask[stab]):
                total += K.order // int(stab.sum())
                break
        else:
            raise NotPartialSBS(f"an S-orbit of {len(members)} has no member fixed inside K")
    report = DegeneracyReport(value=total, orbit_count=len(orbits))
    if M is not None:
        report.bound = degeneracy_bound(S, M, K, K_prime)
        report.witness = M.label
    return report


# ──────────────────────────────────────────────────────────────────────────────
# Bounds
# ──────────────────────────────────────────────────────────────────────────────


def degeneracy_bound(
    S: PointGroup,
    M: PointGroup,
    K: Optional[PointGroup] = None,
    K_prime: Optional[PointGroup] = None,
    tol: float = DEFAULT_TOL,
) -> int:
    """``|N(S)/M|`` (full) or ``|K/K'|·|N(S,K)/M|`` (partial).

    The bound holds when :func:`complement_hypothesis_holds`; raises
    HypothesisUnmet when the groups are not nested as required.
    """
    require_finite(S, "S")
    require_finite(M, "M")
    if not M.contains_group(S):
        raise HypothesisUnmet(f"{S.label} is not contained in {M.label}")
    if K is None:
        N = world_normalizer(S)
        if N.group is None:
            raise SymbolicGroup(f"normalizer {N.label} is infinite")
        if not N.contains_group(M):
            raise HypothesisUnmet(f"{M.label} is not contained in {N.label}")
        return N.order // M.order
    K_prime = K if K_prime is None else K_prime
    if not K.contains_group(K_prime):
        raise HypothesisUnmet(f"{K_prime.label} is not contained in {K.label}")
    N_K = generalized_normalizer_of(S, K, tol)
    N_Kp = generalized_normalizer_of(S, K_prime, tol)
    for N in (N_K, N_Kp):
        if N.group is None:
            raise SymbolicGroup(f"{N.label} is infinite")
        if not N.contains_group(M):
            raise HypothesisUnmet(f"{M.label} is not contained in {N.label}")
    return (K.order // K_prime.order) * (N_K.order // M.order)


def complement_hypothesis_holds(
    S: PointGroup,
    M: PointGroup,
    K: Optional[PointGroup] = None,
    K_prime: Optional[PointGroup] = None,
) -> bool:
    """Full: S has a complement in M. Partial: ``N_S(K')/K'`` has one in ``N_M(K')/K'``."""
    require_finite(M, "M")
    S_sub = S.subgroup_of(M)
    if K is None:
        return find_complement(M.group, S_sub) is not None
    K_prime = K if K_prime is None else K_prime
    Kp_sub = K_prime.subgroup_of(M)
    N_M = normalizer(M.group, Kp_sub)
    N_S = N_M.intersection(S_sub)
    sub, embed = as_group(N_M)
    Q = quotient(sub, pull_back(Kp_sub, sub, embed))
    image = Q.image(pull_back(N_S, sub, embed))
    return find_complement(Q.group, image) is not None


# ──────────────────────────────────────────────────────────────────────────────
# Orbit-min loss
# ──────────────────────────────────────────────────────────────────────────────


def _squared_distance(a: Any, b: Any) -> float:
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return float(np.sum(d * d))


def orbit_min_loss(
    S: Union[PointGroup, FiniteGroup, Subgroup],
    action: GroupAction,
    y_pred: Any,
    y_true: Any,
    dist: Optional[Callable[[Any, Any], float]] = None,
) -> float:
    """``min_{s ∈ S} dist(y_pred, s·y_true)`` by enumeration (squared L2 by default).

    The target is first replaced by the orbit member with the smallest
    ``action.key`` (passed through ``action.canonical`` when set), so every
    ``s·y_true`` yields the same float result.
    """
    if isinstance(S, PointGroup):
        require_finite(S, "S")
        elements = list(S.group.iter_identity_first())  # type: ignore[union-attr]
    elif isinstance(S, Subgroup):
        elements = list(S.members)
    else:
        elements = list(S.iter_identity_first())
    rep = min((action(s, y_true) for s in elements), key=action.key)
    if action.canonical is not None:
        rep = action.canonical(rep)
    d = dist or _squared_distance
    return min(float(d(y_pred, action(s, rep))) for s in elements)
