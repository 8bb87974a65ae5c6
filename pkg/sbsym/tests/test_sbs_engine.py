# tests/test_sbs_engine.py
import math

import numpy as np
import pytest

from sbsym.sbscore.exceptions import (
    HypothesisUnmet,
    InfiniteNormalizer,
    NotNested,
    NotPartialBreaking,
    NotSymmetryBreaking,
    SymbolicGroup,
)
from sbsym.sbscore.group_core.groups import regular_action
from sbsym.sbscore.o3_geometry.elements import Rx, Rz
from sbsym.sbscore.o3_geometry.irreps import (
    IrrepObject,
    Parity,
    act,
    object_stabilizer,
    point_group_action,
)
from sbsym.sbscore.o3_geometry.point_groups import (
    canonical_point_group,
    haar_rotation,
    point_group,
)
from sbsym.sbscore.sbs_engine.construct import (
    equivariant_completion,
    full_sbs,
    generalized_normalizer_of,
    ideal_partial_object_symmetry,
    ideal_partial_trace,
    joint_symmetry,
    naive_prism_sbs,
    partial_sbs,
)
from sbsym.sbscore.sbs_engine.measures import (
    complement_hypothesis_holds,
    degeneracy_bound,
    degeneracy_full,
    degeneracy_partial,
    enumerate_or_sample,
    is_equivariant_sbs,
    materialize,
    orbit_min_loss,
    orbit_vectors,
)

UNIAXIAL_X = IrrepObject.single(2, "even", (0, 0, 1, 0, 0))


@pytest.fixture
def d3():
    return canonical_point_group("Dn", 3)


@pytest.fixture
def octagon():
    """D8 with the rectangle-preserving K = D2."""
    return canonical_point_group("Dn", 8), canonical_point_group("Dn", 2)


# ── full ──────────────────────────────────────────────────────────────────────


def test_full_sbs_triangle(d3):
    B = full_sbs(d3)
    assert B.kind == "full"
    assert B.orbit_group.label == "D6h"
    assert np.allclose(B.object.vector_form(), [math.sqrt(3) / 2, 0.5, 0.0])
    members = materialize(B)
    assert len(members) == 6
    assert members[0].close_to(B.object)
    assert degeneracy_full(B, d3).value == 1
    assert is_equivariant_sbs(B, d3)


def test_full_sbs_follows_orientation(d3):
    g = Rz(0.3) @ Rx(0.7)
    S = d3.oriented(g)
    B0, B = full_sbs(d3), full_sbs(S)
    assert B.object.close_to(act(g, B0.object), 1e-9)
    assert B.orbit_group.same_as(B0.orbit_group.oriented(g))
    assert len(materialize(B)) == 6
    assert is_equivariant_sbs(B, S)


FINITE_FAMILIES = [
    ("C1", None), ("Ci", None), ("Cs", None),
    ("Cn", 3), ("Cnv", 4), ("Cnh", 2), ("S2n", 3),
    ("Dn", 2), ("Dn", 5), ("Dnd", 3), ("Dnh", 6),
    ("T", None), ("Td", None), ("Th", None), ("O", None), ("Oh", None), ("I", None), ("Ih", None),
]


def _same_vector_set(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if a.shape != b.shape:
        return False
    gaps = np.abs(a[:, None, :] - b[None, :, :]).max(axis=2)
    return bool(np.all(gaps.min(axis=1) <= tol) and np.all(gaps.min(axis=0) <= tol))


@pytest.mark.parametrize(("name", "n"), FINITE_FAMILIES)
def test_full_sbs_is_rotation_equivariant(name, n):
    S0 = canonical_point_group(name, n)
    B0 = full_sbs(S0)
    try:
        members0 = orbit_vectors(B0)
    except SymbolicGroup:
        members0 = None
    rng = np.random.default_rng(FINITE_FAMILIES.index((name, n)))
    for _ in range(50):
        g = haar_rotation(rng)
        B = full_sbs(point_group(name, n, g))
        assert B.object.close_to(act(g, B0.object), 1e-8)
        assert B.orbit_group.same_as(B0.orbit_group.oriented(g))
        if members0 is not None:
            sig = B0.object.signature
            moved = np.array(
                [act(g, IrrepObject.from_vector(sig, v)).vector_form() for v in members0]
            )
            assert _same_vector_set(orbit_vectors(B), moved, 1e-8)


def test_full_sbs_rejects_fixed_object(d3):
    with pytest.raises(NotSymmetryBreaking):
        full_sbs(d3, IrrepObject.vector(0.0, 0.0, 1.0))


def test_naive_prism_is_not_equivariant(d3):
    naive = naive_prism_sbs()
    assert len(materialize(naive)) == 6
    assert not is_equivariant_sbs(naive, d3)

    completed = equivariant_completion(naive, d3)
    assert len(materialize(completed)) == 12
    assert is_equivariant_sbs(completed, d3)
    report = degeneracy_full(completed, d3)
    assert report.value == 2 and report.orbit_count == 2
    assert not report.ideal


def test_symbolic_normalizer_sampling():
    C2 = canonical_point_group("Cn", 2)
    B = full_sbs(C2)
    assert B.orbit_group.symbolic and B.orbit_group.name == "Dinfh"
    with pytest.raises(SymbolicGroup):
        materialize(B)
    assert degeneracy_full(B, C2).value == "infinite"

    picked = enumerate_or_sample(B, 5, rng_seed=7)
    assert len(picked) == 5
    norm = np.linalg.norm(B.object.vector_form())
    for obj in picked:
        assert math.isclose(np.linalg.norm(obj.vector_form()), norm, rel_tol=1e-9)
        assert object_stabilizer(C2, obj).order == 1
    again = enumerate_or_sample(B, 5, rng_seed=7)
    assert all(a.close_to(b) for a, b in zip(picked, again))


def test_enumerate_or_sample_finite(d3):
    B = full_sbs(d3)
    assert len(enumerate_or_sample(B, 100)) == 6
    picked = enumerate_or_sample(B, 3, rng_seed=1)
    assert len(picked) == 3
    assert len({o.key() for o in picked}) == 3


# ── partial ───────────────────────────────────────────────────────────────────


def test_octagon_partial_sbs(octagon):
    S, K = octagon
    assert generalized_normalizer_of(S, K).label == "D8h"
    P = partial_sbs(S, K, UNIAXIAL_X)
    assert P.kind == "partial"
    assert P.orbit_group.order == 32
    assert len(materialize(P)) == 4
    assert degeneracy_partial(P, S, K).value == 1
    assert is_equivariant_sbs(P, S, K)


def test_octagon_generic_object_is_degenerate(octagon):
    S, K = octagon
    P = partial_sbs(S, K, IrrepObject.vector(0.8, 0.5, 0.3))
    assert len(materialize(P)) == 32
    report = degeneracy_partial(P, S, K)
    assert report.orbit_count == 2
    assert report.value == 8


def test_octagon_ideal_trace(octagon):
    S, K = octagon
    trace = ideal_partial_trace(S, K)
    assert (trace.N.label, trace.N.order) == ("D4h", 16)
    assert (trace.N_prime.label, trace.N_prime.order) == ("D4", 8)
    assert trace.quotient_order == 4
    assert trace.image_order == 2
    assert trace.complement_order == 2
    assert trace.exists
    assert (trace.H.name, trace.H.n, trace.H.order) == ("Dnh", 2, 8)
    H, K_out = ideal_partial_object_symmetry(S, K)
    assert H.same_as(trace.H) and K_out is K


def test_octagon_default_object_is_ideal(octagon):
    S, K = octagon
    P = partial_sbs(S, K)
    assert object_stabilizer(S, P.object).order == K.order
    assert degeneracy_partial(P, S, K).value == 1


def test_cubic_polarization():
    Oh = canonical_point_group("Oh")
    C4v = canonical_point_group("Cnv", 4)
    P = partial_sbs(Oh, C4v)
    assert np.allclose(P.object.vector_form(), [0.0, 0.0, 1.0])
    assert P.orbit_group.label == "Oh"
    members = materialize(P)
    assert len(members) == 6
    assert sorted(tuple(np.abs(m.vector_form()).tolist()) for m in members) == sorted(
        [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)] * 2
    )
    trace = ideal_partial_trace(Oh, C4v)
    assert trace.H.same_as(C4v)
    assert trace.complement_order == 1
    assert degeneracy_partial(P, Oh, C4v).value == 1


def test_partial_with_k_equal_s(d3):
    P = partial_sbs(d3, d3)
    assert P.orbit_group.label == "D6h"
    assert len(materialize(P)) == 1
    assert degeneracy_partial(P, d3, d3).value == 1


def test_partial_errors(d3, octagon):
    S, K = octagon
    with pytest.raises(NotPartialBreaking):
        partial_sbs(S, K, IrrepObject.scalar())
    with pytest.raises(NotNested):
        partial_sbs(d3, canonical_point_group("Cn", 4))
    with pytest.raises(InfiniteNormalizer):
        ideal_partial_trace(canonical_point_group("Cn", 4), canonical_point_group("Cn", 2))


def test_trivial_k_uses_complement_table(d3):
    H, _ = ideal_partial_object_symmetry(d3, canonical_point_group("C1"))
    assert H.order == 4
    assert ideal_partial_object_symmetry(
        canonical_point_group("Cn", 4), canonical_point_group("C1")
    ) is None


# ── bounds ────────────────────────────────────────────────────────────────────


def test_degeneracy_bounds(d3, octagon):
    D6h = canonical_point_group("Dnh", 6)
    assert degeneracy_bound(d3, D6h) == 1
    assert degeneracy_bound(d3, d3) == 4
    assert degeneracy_full(full_sbs(d3), d3, D6h).bound == 1
    with pytest.raises(HypothesisUnmet):
        degeneracy_bound(d3, canonical_point_group("Cnv", 4))

    S, K = octagon
    D8h = canonical_point_group("Dnh", 8)
    assert degeneracy_bound(S, D8h, K) == 1


def test_complement_hypothesis():
    assert complement_hypothesis_holds(canonical_point_group("Dn", 3), canonical_point_group("Dnh", 6))
    assert complement_hypothesis_holds(canonical_point_group("Dn", 2), canonical_point_group("Dnh", 4))
    assert not complement_hypothesis_holds(canonical_point_group("Cn", 2), canonical_point_group("Cn", 4))


# ── misc ──────────────────────────────────────────────────────────────────────


def test_orbit_min_loss_is_invariant():
    G = canonical_point_group("Dn", 4)
    action = regular_action(G.group)
    rng = np.random.default_rng(5)
    y_true = rng.normal(size=G.order)
    y_pred = y_true + 0.01 * rng.normal(size=G.order)
    base = orbit_min_loss(G, action, y_pred, y_true)
    assert base <= float(np.sum((y_pred - y_true) ** 2))
    for s in range(G.order):
        assert orbit_min_loss(G, action, y_pred, action(s, y_true)) == base
    assert orbit_min_loss(G, action, action(3, y_true), y_true) == 0.0


VECTOR_AND_TENSOR = ((1, Parity.odd), (2, Parity.even))


@pytest.mark.parametrize(("name", "n"), [("Dn", 3), ("Dnh", 4), ("Oh", None)])
def test_orbit_min_loss_exact_under_irrep_action(name, n):
    P = canonical_point_group(name, n)
    rng = np.random.default_rng(11)
    for _ in range(5):
        y_true = rng.normal(size=8)
        y_pred = rng.normal(size=8)
        action = point_group_action(P, IrrepObject.from_vector(VECTOR_AND_TENSOR, y_true))
        base = orbit_min_loss(P, action, y_pred, y_true)
        brute = min(float(np.sum((y_pred - action(s, y_true)) ** 2)) for s in range(P.order))
        assert math.isclose(base, brute, rel_tol=1e-4, abs_tol=1e-4)
        for s in range(P.order):
            assert orbit_min_loss(P, action, y_pred, action(s, y_true)) == base


def test_joint_symmetry_of_misaligned_rectangle(octagon):
    S, _ = octagon
    K_rot = point_group("Dn", 2, Rz(math.pi / 4))
    J = joint_symmetry(S, UNIAXIAL_X, K_rot)
    assert (J.name, J.n, J.order) == ("Dn", 4, 8)
