"""A group where every exact partial breaking set is larger than an ideal full one.

``G' = C2 ≀ D4`` over ``Ω = {+1, -1}`` with D4 acting through the sign of
``z`` (the half-turns about horizontal axes swap the two points). Then
``G = G' × G'``, ``S = ⟨a1, b1², c1, a2, b2², c2⟩`` and ``K = ⟨c1·c2⟩``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sbsym.sbscore.group_core.groups import FiniteGroup, Subgroup, cyclic_group, direct_product
from sbsym.sbscore.group_core.lattice import (
    conjugate_subgroup,
    generalized_normalizer,
    generate,
    is_complement,
    normalizer,
)
from sbsym.sbscore.group_core.words import evaluate_in_group
from sbsym.sbscore.o3_geometry.elements import Rx, Rz
from sbsym.sbscore.o3_geometry.point_groups import canonical_point_group, locate
from sbsym.sbscore.utils.utils import core_logger, log_msg
from sbsym.sbscore.verify_oracles.models import OracleReport, report, stopwatch
from sbsym.sbscore.verify_oracles.wreath import WreathSpec, wreath_product

logger = core_logger("verify_oracles")

RELATORS = ("a^2", "b^4", "(ab)^4", "c^2", "bcb^-1c", "(ac)^4")


@dataclass(frozen=True)
class Counterexample:
    factor: FiniteGroup  # G'
    factor_gens: dict[str, int]
    group: FiniteGroup  # G = G' x G'
    gens: dict[str, int]  # a1, b1, c1, a2, b2, c2
    S: Subgroup
    K: Subgroup


def wreath_factor() -> tuple[FiniteGroup, dict[str, int]]:
    """``C2 ≀ D4`` with its presentation generators a, b, c."""
    D4 = canonical_point_group("Dn", 4)
    top = D4.group
    assert top is not None
    swaps = D4.stack[:, 2, 2] < 0
    perms = [[1, 0] if s else [0, 1] for s in swaps]
    Gp = wreath_product(WreathSpec(cyclic_group(2), top, 2, perms), name="C2wrD4")

    h_a, h_b = (int(i) for i in locate(D4.stack, np.stack([Rx(np.pi), Rz(np.pi / 2)])))
    gens = {
        "a": Gp.index_of(((0, 0), h_a)),
        "b": Gp.index_of(((0, 0), h_b)),
        "c": Gp.index_of(((1, 0), top.identity)),
    }
    return Gp, gens  # type: ignore[return-value]


def build_counterexample() -> Counterexample:
    Gp, fg = wreath_factor()
    G = direct_product(Gp, Gp, name="G'xG'")
    e = Gp.identity
    gens: dict[str, int] = {}
    for k, v in fg.items():
        gens[f"{k}1"] = v * Gp.order + e
        gens[f"{k}2"] = e * Gp.order + v
    S = generate(
        G,
        [
            evaluate_in_group(G, w, gens)
            for w in ("a1", "b1^2", "c1", "a2", "b2^2", "c2")
        ],
    )
    K = generate(G, [evaluate_in_group(G, "c1c2", gens)])
    return Counterexample(Gp, fg, G, gens, S, K)


def _largest_exact_stabilizer(G: FiniteGroup, S: Subgroup, K: Subgroup) -> int:
    """Largest ``|⟨K, g⟩|`` over ``g ∉ S`` with ``⟨K, g⟩ ∩ S = K`` (``|K|`` if none).

    Every stabilizer ``L`` with ``L ∩ S = K`` that is bigger than K contains
    such a ``⟨K, g⟩``, so ``|K|`` here means ``Stab_G(p) = K`` is forced.
    """
    best = K.order
    for g in np.flatnonzero(~S.mask):
        L = generate(G, [*K.members, int(g)])
        if L.intersection(S).members == K.members:
            best = max(best, L.order)
    return best


def wreath_counterexample() -> list[OracleReport]:
    """Check the construction and its five claims by brute force."""
    out: list[OracleReport] = []
    with stopwatch() as sw:
        ce = build_counterexample()
        Gp, fg = ce.factor, ce.factor_gens
        broken = [w for w in RELATORS if evaluate_in_group(Gp, w, fg) != Gp.identity]
        if not Gp.check_axioms():
            broken.append("group axioms")
        if generate(Gp, fg.values()).order != Gp.order:
            broken.append("a, b, c do not generate")
    out.append(report("construction", "C2 wr D4", 32, Gp.order, sw.elapsed, broken))

    G, S, K = ce.group, ce.S, ce.K
    inst = "G = G' x G', S = <a1,b1^2,c1,a2,b2^2,c2>, K = <c1c2>"

    with stopwatch() as sw:
        nS = normalizer(G, S).order
        nSK = generalized_normalizer(G, S, K).order
        fails = [] if nS == G.order else [f"|N_G(S)| = {nS}"]
    out.append(report("normalizers", inst, G.order, nSK, sw.elapsed, fails))

    with stopwatch() as sw:
        H = generate(G, [evaluate_in_group(G, w, ce.gens) for w in ("a1b1", "a2b2")])
        fails = [] if is_complement(G, S, H) else ["<a1b1, a2b2> is not a complement of S"]
    out.append(report("complement", inst, G.order // S.order, H.order, sw.elapsed, fails))

    out.append(report("full-sbs-size", inst, 256, S.order))

    with stopwatch() as sw:
        violations = []
        outside_K = S.mask & ~K.mask
        for g in np.flatnonzero(~S.mask):
            g = int(g)
            keeps_K = conjugate_subgroup(G, K, g).members == K.members
            if keeps_K and not outside_K[G.compose(g, g)]:
                violations.append(str(G.label(g)))
    out.append(report("stabilizer-casework", inst, 0, len(violations), sw.elapsed, violations[:10]))

    with stopwatch() as sw:
        size = G.order // _largest_exact_stabilizer(G, S, K)
    out.append(report("partial-sbs-size", inst, 512, size, sw.elapsed))

    for r in out:
        log_msg(logger, f"{r.claim}: expected {r.expected}, observed {r.observed}", "info")
    return out
