"""Subgroup machinery on table-backed finite groups.

Everything here is a pure function of a :class:`FiniteGroup` and
:class:`Subgroup` values; tables are looked up with numpy fancy indexing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

import numpy as np

from sbsym.sbscore.exceptions import (
    GroupNotClosed,
    NotNested,
    NotNormal,
    SubgroupOverflow,
)
from sbsym.sbscore.group_core.groups import FiniteGroup, GroupAction, Subgroup
from sbsym.sbscore.utils.utils import core_logger, log_msg

logger = core_logger("group_core")


# ──────────────────────────────────────────────────────────────────────────────
# Generation and enumeration
# ──────────────────────────────────────────────────────────────────────────────


def generate(G: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``generators``."""
    gens = np.unique(np.asarray([G.identity, *generators], dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[gens] = True
    frontier = gens
    while frontier.size:
        prods = np.unique(G.table[np.ix_(frontier, gens)])
        frontier = prods[~mask[prods]]
        mask[frontier] = True
    return Subgroup(G, tuple(int(i) for i in np.flatnonzero(mask)))


def _double_coset_reps(G: FiniteGroup, H: Subgroup) -> list[int]:
    """One element from each double coset HgH outside H, smallest index first."""
    covered = H.mask.copy()
    reps: list[int] = []
    h = H.array
    for g in range(G.order):
        if covered[g]:
            continue
        reps.append(g)
        hg = G.table[h, g]
        covered[G.table[np.ix_(hg, h)].ravel()] = True
    return reps


def _cyclic_extension(
    G: FiniteGroup,
    *,
    max_count: int,
    keep: Optional[Callable[[Subgroup], bool]] = None,
) -> list[Subgroup]:
    seen: set[tuple[int, ...]] = set()
    found: list[Subgroup] = []

    def admit(H: Subgroup) -> bool:
        if H.members in seen:
            return False
        seen.add(H.members)
        if keep is not None and not keep(H):
            return False
        found.append(H)
        if len(found) > max_count:
            raise SubgroupOverflow(
                f"{G.name}: more than max_count={max_count} subgroups"
            )
        return True

    frontier = [H for H in (generate(G, [g]) for g in range(G.order)) if admit(H)]
    while frontier:
        nxt: list[Subgroup] = []
        for H in frontier:
            for g in _double_coset_reps(G, H):
                K = generate(G, [*H.members, g])
                if admit(K):
                    nxt.append(K)
        frontier = nxt

    found.sort(key=lambda s: (s.order, s.members))
    return found


def all_subgroups(G: FiniteGroup, max_count: int = 100_000) -> list[Subgroup]:
    """Every subgroup of ``G`` sorted by ``(order, members)``."""
    subs = _cyclic_extension(G, max_count=max_count)
    log_msg(logger, f"{G.name}: {len(subs)} subgroups", "debug")
    return subs


# ──────────────────────────────────────────────────────────────────────────────
# Conjugation
# ──────────────────────────────────────────────────────────────────────────────


def conjugate_subgroup(G: FiniteGroup, S: Subgroup, g: int) -> Subgroup:
    """``g·S·g⁻¹``."""
    return Subgroup.from_indices(G, G.table[G.table[g, S.array], G.inverse[g]])


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    """``{g ∈ G : gSg⁻¹ = S}``."""
    conj = G.table[G.table[:, S.array], G.inverse[:, None]]
    keep = S.mask[conj].all(axis=1)
    return Subgroup(G, tuple(int(i) for i in np.flatnonzero(keep)))


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    return normalizer(G, S).order == G.order


def conjugacy_class_of_subgroup(G: FiniteGroup, S: Subgroup) -> list[Subgroup]:
    out: list[Subgroup] = []
    seen: set[tuple[int, ...]] = set()
    for g in left_transversal(G, normalizer(G, S)):
        C = conjugate_subgroup(G, S, g)
        if C.members not in seen:
            seen.add(C.members)
            out.append(C)
    return out


def product_set(G: FiniteGroup, A: Subgroup, B: Subgroup) -> np.ndarray:
    """Sorted distinct products ``a·b``."""
    return np.unique(G.table[np.ix_(A.array, B.array)])


def product_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``A·B`` as a subgroup; raises GroupNotClosed if it is not one."""
    H = Subgroup.from_indices(G, product_set(G, A, B))
    if not H.is_closed():
        raise GroupNotClosed(f"{G.name}: product of subgroups is not a group")
    return H


# ──────────────────────────────────────────────────────────────────────────────
# Cosets and quotients
# ──────────────────────────────────────────────────────────────────────────────


def left_transversal(G: FiniteGroup, S: Subgroup) -> list[int]:
    """One representative per left coset gS: identity first, then smallest index."""
    covered = np.zeros(G.order, dtype=bool)
    reps: list[int] = []
    for g in G.iter_identity_first():
        if covered[g]:
            continue
        reps.append(g)
        covered[G.table[g, S.array]] = True
    return reps


@dataclass(frozen=True)
class Quotient:
    """``G/N`` with projection and coset lifts; element 0 is the coset N."""

    parent: FiniteGroup
    normal: Subgroup
    group: FiniteGroup
    project: np.ndarray
    lift: tuple[tuple[int, ...], ...]

    def image(self, H: Subgroup) -> Subgroup:
        return Subgroup.from_indices(self.group, self.project[H.array])

    def preimage(self, C: Subgroup) -> Subgroup:
        return Subgroup.from_indices(
            self.parent, (g for q in C.members for g in self.lift[q])
        )


def quotient(G: FiniteGroup, N: Subgroup) -> Quotient:
    if not is_normal(G, N):
        raise NotNormal(f"{G.name}: subgroup of order {N.order} is not normal")
    reps = left_transversal(G, N)
    project = np.full(G.order, -1, dtype=np.int64)
    lift: list[tuple[int, ...]] = []
    for q, r in enumerate(reps):
        coset = np.sort(G.table[r, N.array])
        project[coset] = q
        lift.append(tuple(int(i) for i in coset))
    r = np.asarray(reps, dtype=np.int64)
    qtable = project[G.table[np.ix_(r, r)]]
    Q = FiniteGroup(
        qtable,
        identity=0,
        labels=lift,
        key=lambda coset: coset,
        name=f"{G.name}/{N.order}",
    )
    return Quotient(G, N, Q, project, tuple(lift))


# ──────────────────────────────────────────────────────────────────────────────
# Complements and generalized normalizers
# ──────────────────────────────────────────────────────────────────────────────


def find_complement(G: FiniteGroup, S: Subgroup) -> Optional[Subgroup]:
    """First subgroup H with ``|H| = |G|/|S|`` and ``H ∩ S = {e}``, or None.

    Only subgroups whose order divides the target and that meet S trivially
    are grown, since every subgroup of a complement has both properties.
    """
    if S.order == 1:
        return Subgroup.whole(G)
    if S.order == G.order:
        return Subgroup.trivial(G)
    target = G.order // S.order

    def keep(H: Subgroup) -> bool:
        return target % H.order == 0 and H.intersection(S).order == 1

    for H in _cyclic_extension(G, max_count=100_000, keep=keep):
        if H.order == target:
            log_msg(logger, f"{G.name}: complement of order {target} found", "debug")
            return H
    return None


def is_complement(G: FiniteGroup, S: Subgroup, H: Subgroup) -> bool:
    return (
        H.intersection(S).order == 1
        and product_set(G, S, H).size == G.order
    )


def _check_nested(G: FiniteGroup, S: Subgroup, K: Subgroup) -> None:
    if S.parent is not G or K.parent is not G:
        raise NotNested("subgroups must live in the same parent group")
    if not K.issubset(S):
        raise NotNested(f"K (order {K.order}) is not contained in S (order {S.order})")


def generalized_normalizer(G: FiniteGroup, S: Subgroup, K: Subgroup) -> Subgroup:
    """``S·(N_G(S) ∩ N_G(K))``."""
    _check_nested(G, S, K)
    both = normalizer(G, S).intersection(normalizer(G, K))
    return product_subgroup(G, S, both)


def generalized_normalizer_by_definition(
    G: FiniteGroup, S: Subgroup, K: Subgroup
) -> Subgroup:
    """``{g ∈ N_G(S) : gKg⁻¹ ∈ Cl_S(K)}`` computed element by element."""
    _check_nested(G, S, K)
    cls = {conjugate_subgroup(G, K, s).members for s in S.members}
    return Subgroup.from_indices(
        G,
        (g for g in normalizer(G, S) if conjugate_subgroup(G, K, g).members in cls),
    )


# ──────────────────────────────────────────────────────────────────────────────
# Orbits
# ──────────────────────────────────────────────────────────────────────────────


def orbit(G: FiniteGroup, act: GroupAction, x: Any) -> list[Any]:
    """Distinct images of ``x``, in order of first appearance (identity first)."""
    seen: set = set()
    out: list[Any] = []
    for g in G.iter_identity_first():
        y = act(g, x)
        k = act.key(y)
        if k not in seen:
            seen.add(k)
            out.append(y)
    return out


def stabilizer(G: FiniteGroup, act: GroupAction, x: Any) -> Subgroup:
    return Subgroup(G, tuple(g for g in range(G.order) if act.same(act(g, x), x)))


# ──────────────────────────────────────────────────────────────────────────────
# Subgroups as groups
# ──────────────────────────────────────────────────────────────────────────────


def as_group(H: Subgroup, name: Optional[str] = None) -> tuple[FiniteGroup, np.ndarray]:
    """``H`` as a FiniteGroup of its own, plus the embedding into the parent.

    Element ``i`` of the returned group is parent element ``embed[i]``.
    """
    G = H.parent
    embed = H.array
    back = np.full(G.order, -1, dtype=np.int64)
    back[embed] = np.arange(embed.size)
    table = back[G.table[np.ix_(embed, embed)]]
    labels = None if G.labels is None else [G.labels[i] for i in embed]
    sub = FiniteGroup(
        table,
        identity=int(back[G.identity]),
        labels=labels,
        key=G.key if labels is not None else None,
        name=name or f"{G.name}[{H.order}]",
    )
    return sub, embed


def pull_back(A: Subgroup, sub: FiniteGroup, embed: np.ndarray) -> Subgroup:
    """A parent subgroup ``A`` contained in ``embed``, re-indexed inside ``sub``."""
    pos = {int(g): i for i, g in enumerate(embed)}
    return Subgroup.from_indices(sub, (pos[g] for g in A.members))
