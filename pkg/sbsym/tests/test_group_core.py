# tests/test_group_core.py
import itertools
import math

import numpy as np
import pytest

from sbsym.sbscore.exceptions import BadParameter, ClosureOverflow, NotNested, NotNormal
from sbsym.sbscore.group_core.groups import (
    GroupAction,
    Subgroup,
    close_generators,
    cyclic_group,
    direct_product,
    regular_action,
)
from sbsym.sbscore.group_core.lattice import (
    all_subgroups,
    as_group,
    conjugacy_class_of_subgroup,
    find_complement,
    generalized_normalizer,
    generalized_normalizer_by_definition,
    generate,
    is_complement,
    is_normal,
    left_transversal,
    normalizer,
    orbit,
    pull_back,
    quotient,
    stabilizer,
)
from sbsym.sbscore.group_core.models import FiniteGroupDoc, SubgroupDoc
from sbsym.sbscore.group_core.words import evaluate_in_group, parse_word
from sbsym.sbscore.o3_geometry.elements import Rx, Rz
from sbsym.sbscore.o3_geometry.point_groups import canonical_point_group, matrix_group
from sbsym.sbscore.pointgroup_tables.presentations import realize_presentation


def _vector_action(G):
    stack = np.stack(G.labels)
    return GroupAction(
        group=G,
        apply=lambda g, v: stack[g] @ v,
        key=lambda v: tuple(np.round(v, 6) + 0.0),
    )


def _brute_subgroups(G):
    """Every subset containing e and closed under composition (tiny groups only)."""
    out = []
    others = [g for g in range(G.order) if g != G.identity]
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            S = Subgroup.from_indices(G, (G.identity, *combo))
            if S.is_closed():
                out.append(S.members)
    return sorted(out, key=lambda m: (len(m), m))


# ── construction ──────────────────────────────────────────────────────────────


def test_close_generators_point_groups():
    assert matrix_group([np.eye(3)]).order == 1
    assert matrix_group([Rz(2 * math.pi / 3), Rx(math.pi)]).order == 6
    Oh = canonical_point_group("Oh")
    assert Oh.order == 48
    assert Oh.group.check_axioms()


def test_close_generators_keeps_labels_and_order():
    G = close_generators([1], lambda a, b: (a + b) % 5, key=lambda x: x, name="Z5")
    assert G.order == 5
    assert G.label(G.identity) == 0
    # breadth-first from the identity
    assert list(G.labels) == [0, 1, 2, 3, 4]


def test_close_generators_overflow():
    with pytest.raises(ClosureOverflow):
        close_generators([1], lambda a, b: (a + b) % 7, key=lambda x: x, max_order=4)


def test_direct_product_indexing():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6
    assert G.check_axioms()
    # (1, 2)·(1, 2) = (0, 1) at index 0·3 + 1
    assert G.compose(1 * 3 + 2, 1 * 3 + 2) == 1
    assert G.index_of((1, 2)) == 5


# ── subgroups ─────────────────────────────────────────────────────────────────


def test_all_subgroups_small():
    assert len(all_subgroups(cyclic_group(1))) == 1
    C4 = cyclic_group(4)
    assert [S.order for S in all_subgroups(C4)] == [1, 2, 4]
    D3 = canonical_point_group("Dn", 3).group
    subs = all_subgroups(D3)
    assert [S.order for S in subs] == [1, 2, 2, 2, 3, 6]
    assert [S.members for S in subs] == _brute_subgroups(D3)


def test_subgroups_satisfy_lagrange():
    G = canonical_point_group("Dnh", 4).group
    for S in all_subgroups(G):
        assert G.order % S.order == 0
        assert S.is_closed()


def test_orbit_stabilizer_d3_and_d6h():
    D3 = canonical_point_group("Dn", 3).group
    v = np.array([math.sqrt(3) / 2, 0.5, 0.0])
    act = _vector_action(D3)
    assert len(orbit(D3, act, v)) == 6
    assert stabilizer(D3, act, v).order == 1

    D6h = canonical_point_group("Dnh", 6).group
    act = _vector_action(D6h)
    stab = stabilizer(D6h, act, v)
    assert stab.order == 4
    assert len(orbit(D6h, act, v)) * stab.order == D6h.order


def test_orbit_of_fixed_point():
    C2 = matrix_group([Rz(math.pi)])
    act = _vector_action(C2)
    z = np.array([0.0, 0.0, 1.0])
    assert len(orbit(C2, act, z)) == 1
    assert stabilizer(C2, act, z).is_whole()


def test_normalizer_and_conjugacy_class():
    G, gens = realize_presentation("D(2n)h", 4)
    S = generate(G, [evaluate_in_group(G, w, gens) for w in ("a^2", "b")])
    assert S.order == 8
    assert normalizer(G, S).is_whole()
    assert normalizer(G, Subgroup.trivial(G)).is_whole()
    assert conjugacy_class_of_subgroup(G, S) == [S]

    D4h = canonical_point_group("Dnh", 4).group
    for M in all_subgroups(D4h):
        if M.order != 2:
            continue
        cls = conjugacy_class_of_subgroup(D4h, M)
        assert len(cls) == D4h.order // normalizer(D4h, M).order


def test_quotient_of_d4h_by_d2():
    G, gens = realize_presentation("D(2n)h", 2)  # D4h
    N = generate(G, [evaluate_in_group(G, w, gens) for w in ("a^2", "b")])
    assert N.order == 4
    Q = quotient(G, N)
    assert Q.group.order == 4
    # every element of G/N squares to the identity
    assert all(Q.group.compose(q, q) == 0 for q in range(4))
    # lifts partition G and project back
    covered = sorted(g for coset in Q.lift for g in coset)
    assert covered == list(range(G.order))
    for q, coset in enumerate(Q.lift):
        assert len(coset) == N.order
        assert all(Q.project[g] == q for g in coset)
    # homomorphism
    for a, b in itertools.product(range(G.order), repeat=2):
        assert Q.project[G.compose(a, b)] == Q.group.compose(Q.project[a], Q.project[b])


def test_quotient_requires_normal():
    D3 = canonical_point_group("Dn", 3).group
    C2 = next(S for S in all_subgroups(D3) if S.order == 2)
    with pytest.raises(NotNormal):
        quotient(D3, C2)
    assert quotient(D3, Subgroup.whole(D3)).group.order == 1


def test_find_complement_cases():
    C4 = cyclic_group(4)
    C2 = generate(C4, [2])
    assert find_complement(C4, C2) is None
    assert find_complement(C4, Subgroup.trivial(C4)).is_whole()

    G, gens = realize_presentation("D(2n)h", 3)  # D6h
    S = generate(G, [evaluate_in_group(G, w, gens) for w in ("a^2", "b")])
    H = find_complement(G, S)
    assert H is not None and H.order == 4
    assert is_complement(G, S, H)
    expected = generate(G, [evaluate_in_group(G, w, gens) for w in ("am", "bm")])
    assert is_complement(G, S, expected)


def test_find_complement_matches_exhaustive_scan():
    G = canonical_point_group("Dnh", 4).group
    subs = all_subgroups(G)
    for S in subs:
        M, embed = as_group(normalizer(G, S))
        S_in = pull_back(S, M, embed)
        found = find_complement(M, S_in)
        exhaustive = any(
            H.order * S_in.order == M.order and is_complement(M, S_in, H)
            for H in all_subgroups(M)
        )
        assert (found is not None) == exhaustive


def test_generalized_normalizer_agrees_with_definition():
    G = canonical_point_group("Dnh", 4).group
    subs = all_subgroups(G)
    for S in subs:
        assert generalized_normalizer(G, S, S) == normalizer(G, S)
        for K in subs:
            if K.issubset(S):
                assert (
                    generalized_normalizer(G, S, K).members
                    == generalized_normalizer_by_definition(G, S, K).members
                )


def test_generalized_normalizer_requires_nesting():
    C4 = cyclic_group(4)
    with pytest.raises(NotNested):
        generalized_normalizer(C4, generate(C4, [2]), Subgroup.whole(C4))


def test_left_transversal():
    C4 = cyclic_group(4)
    assert left_transversal(C4, Subgroup.whole(C4)) == [C4.identity]
    assert len(left_transversal(C4, generate(C4, [2]))) == 2
    G, gens = realize_presentation("D(2n)h", 3)
    S = generate(G, [evaluate_in_group(G, w, gens) for w in ("a^2", "b")])
    reps = left_transversal(G, S)
    assert len(reps) == 4 and reps[0] == G.identity


def test_regular_action_is_an_action():
    G = canonical_point_group("Dn", 4).group
    act = regular_action(G)
    rng = np.random.default_rng(3)
    y = rng.normal(size=G.order)
    assert np.array_equal(act(G.identity, y), y)
    for g, h in rng.integers(0, G.order, size=(20, 2)):
        assert np.array_equal(act(int(g), act(int(h), y)), act(G.compose(int(g), int(h)), y))


# ── words and serialization ───────────────────────────────────────────────────


def test_words():
    assert parse_word("") == ()
    assert parse_word("e") == ()
    C6 = cyclic_group(6)
    gens = {"a": 1}
    assert evaluate_in_group(C6, "a^4", gens) == 4
    assert evaluate_in_group(C6, "(aa)^-1", gens) == 4
    assert evaluate_in_group(C6, "a^6", gens) == C6.identity
    with pytest.raises(BadParameter):
        evaluate_in_group(C6, "b", gens)
    with pytest.raises(BadParameter):
        parse_word("(ab")


def test_finite_group_doc():
    C3 = cyclic_group(3)
    doc = FiniteGroupDoc.from_group(C3)
    assert doc.order == 3 and len(doc.compose) == 9
    back = doc.to_group()
    assert np.array_equal(back.table, C3.table)
    assert SubgroupDoc.from_subgroup(Subgroup.whole(C3)).members == [0, 1, 2]
