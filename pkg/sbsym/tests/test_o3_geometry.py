# tests/test_o3_geometry.py
import math
from collections import Counter

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from sbsym.sbscore.exceptions import (
    BadParameter,
    NotAPointGroup,
    Unsupported,
    UnknownName,
    UnsupportedIrrep,
)
from sbsym.sbscore.o3_geometry import identify
from sbsym.sbscore.o3_geometry.elements import SIGMA_Z, O3Element, Rx, Rz, mirror
from sbsym.sbscore.o3_geometry.identify import identify_matrices, identify_point_group
from sbsym.sbscore.o3_geometry.irreps import (
    IrrepObject,
    Parity,
    act,
    l2_to_matrix,
    matrix_to_l2,
    object_orbit,
    object_stabilizer,
    representation,
)
from sbsym.sbscore.o3_geometry.names import parse_group_name, validate
from sbsym.sbscore.o3_geometry.point_groups import (
    canonical_point_group,
    point_group,
    same_matrix_set,
    sample_group_element,
    symbolic_spec,
)

FINITE = [
    ("C1", None), ("Ci", None), ("Cs", None),
    ("Cn", 3), ("Cnv", 4), ("Cnh", 2), ("S2n", 3),
    ("Dn", 2), ("Dn", 5), ("Dnd", 3), ("Dnh", 6),
    ("T", None), ("Td", None), ("Th", None), ("O", None), ("Oh", None), ("I", None), ("Ih", None),
]
ORDERS = [1, 2, 2, 3, 8, 4, 6, 4, 10, 12, 24, 12, 24, 24, 24, 48, 60, 120]


def _random_object(rng):
    return IrrepObject.from_json(
        [
            {"l": 0, "parity": "odd", "coeffs": rng.normal(size=1).tolist()},
            {"l": 1, "parity": "odd", "coeffs": rng.normal(size=3).tolist()},
            {"l": 1, "parity": "even", "coeffs": rng.normal(size=3).tolist()},
            {"l": 2, "parity": "even", "coeffs": rng.normal(size=5).tolist()},
            {"l": 2, "parity": "odd", "coeffs": rng.normal(size=5).tolist()},
        ]
    )


def _random_o3(rng):
    m = Rotation.random(random_state=int(rng.integers(1 << 31))).as_matrix()
    return m if rng.random() < 0.5 else -m


# ── names ─────────────────────────────────────────────────────────────────────


def test_parse_group_name():
    assert parse_group_name("D3") == ("Dn", 3)
    assert parse_group_name("C4v") == ("Cnv", 4)
    assert parse_group_name("D2h") == ("Dnh", 2)
    assert parse_group_name("S4") == ("S2n", 2)
    assert parse_group_name("Dnh", 8) == ("Dnh", 8)
    assert parse_group_name("C1") == ("C1", None)
    assert parse_group_name("Dinfh") == ("Dinfh", None)


def test_name_errors():
    with pytest.raises(UnknownName):
        parse_group_name("X7")
    with pytest.raises(BadParameter):
        validate("Oh", 3)
    with pytest.raises(BadParameter, match="Cs"):
        validate("Cnv", 1)
    with pytest.raises(BadParameter):
        validate("Dn", None)
    with pytest.raises(BadParameter):
        parse_group_name("S3")


# ── point groups ──────────────────────────────────────────────────────────────


@pytest.mark.parametrize(("spec", "order"), list(zip(FINITE, ORDERS)))
def test_canonical_orders(spec, order):
    P = canonical_point_group(*spec)
    assert P.order == order
    assert np.allclose(P.orientation, np.eye(3))


def test_canonical_poses():
    D3 = canonical_point_group("Dn", 3)
    assert D3.contains(Rz(2 * math.pi / 3)) and D3.contains(Rx(math.pi))
    assert canonical_point_group("Cs").contains(SIGMA_Z)
    C3v, D3d = canonical_point_group("Cnv", 3), canonical_point_group("Dnd", 3)
    assert C3v.contains(mirror((1, 0, 0))) and not C3v.contains(mirror((0, 1, 0)))
    assert D3d.contains(Rx(math.pi)) and D3d.contains(mirror((1, 0, 0)))
    assert not D3d.contains(mirror((0, 1, 0)))
    I = canonical_point_group("I")
    assert I.contains(Rz(2 * math.pi / 5)) and I.contains(Rx(math.pi))


def test_oriented_group_conjugates_elements():
    g = Rz(0.4) @ Rx(1.1)
    P = point_group("Dn", 3, g)
    assert P.contains(g @ Rx(math.pi) @ g.T)
    assert not P.contains(Rx(math.pi))
    with pytest.raises(BadParameter):
        point_group("Dn", 3, -np.eye(3))


def test_symbolic_membership():
    Dinfh = canonical_point_group("Dinfh")
    assert Dinfh.symbolic and Dinfh.order is None
    assert Dinfh.contains(Rz(0.123)) and Dinfh.contains(Rx(math.pi))
    assert not Dinfh.contains(Rx(0.3))
    assert canonical_point_group("O3").contains_group(canonical_point_group("Oh"))


def test_sample_group_element():
    assert np.allclose(sample_group_element(canonical_point_group("C1"), 5).matrix, np.eye(3))

    D3 = canonical_point_group("Dn", 3)
    rng = np.random.default_rng(11)
    hits = Counter(
        int(np.argmin(np.abs(D3.stack - sample_group_element(D3, rng).matrix).sum(axis=(1, 2))))
        for _ in range(6000)
    )
    assert len(hits) == 6
    assert all(850 <= c <= 1150 for c in hits.values())

    SO2 = canonical_point_group("SO2")
    a = sample_group_element(SO2, 1).matrix
    b = sample_group_element(SO2, 2).matrix
    assert not np.allclose(a, b)
    assert np.allclose(a[:, 2], [0, 0, 1]) and np.allclose(b[:, 2], [0, 0, 1])
    assert np.allclose(sample_group_element(SO2, 1).matrix, a)


def test_unknown_group_names():
    with pytest.raises(Unsupported):
        symbolic_spec("SO4")
    with pytest.raises(UnknownName):
        point_group("SO4")


# ── elements ──────────────────────────────────────────────────────────────────


def test_o3element_parse():
    e = O3Element.parse('{"axis": [0, 0, 1], "angle": 1.5707963267948966}')
    assert np.allclose(e.matrix, Rz(math.pi / 2))
    assert O3Element.parse([1, 0, 0, 0, 1, 0, 0, 0, 1]).is_proper
    assert not O3Element(SIGMA_Z).is_proper
    with pytest.raises(BadParameter):
        O3Element.parse("[1, 2, 3, 4, 5, 6, 7, 8, 9]")
    with pytest.raises(BadParameter):
        O3Element.parse('{"axis": [0, 0, 1]}')


# ── irreps ────────────────────────────────────────────────────────────────────


def test_act_basic_rules():
    obj = _random_object(np.random.default_rng(0))
    assert act(np.eye(3), obj).close_to(obj, 1e-12)
    assert act(SIGMA_Z, IrrepObject.pseudoscalar(1.0)).vector_form()[0] == -1.0
    assert act(SIGMA_Z, IrrepObject.scalar(1.0)).vector_form()[0] == 1.0
    v = IrrepObject.vector(1.0, 2.0, 3.0)
    assert np.allclose(act(-np.eye(3), v).vector_form(), [-1, -2, -3])
    pv = IrrepObject.pseudovector(1.0, 2.0, 3.0)
    assert np.allclose(act(-np.eye(3), pv).vector_form(), [1, 2, 3])
    with pytest.raises(UnsupportedIrrep):
        representation(np.eye(3), [(3, Parity.even)])


def test_l2_action_matches_matrix_conjugation():
    g = Rz(math.pi / 8)
    obj = IrrepObject.single(2, "even", (0, 0, 1, 0, 0))
    A = l2_to_matrix(obj.vector_form())
    expected = matrix_to_l2(g @ A @ g.T)
    assert np.allclose(act(g, obj).vector_form(), expected, atol=1e-12)
    # (0,0,1,0,0) is uniaxial along x
    assert np.allclose(A, np.diag([2.0, -1.0, -1.0]) / math.sqrt(6.0))


def test_act_is_a_group_action_and_orthogonal():
    rng = np.random.default_rng(42)
    for _ in range(200):
        g, h = _random_o3(rng), _random_o3(rng)
        x = _random_object(rng)
        lhs = act(g, act(h, x)).vector_form()
        rhs = act(g @ h, x).vector_form()
        assert np.allclose(lhs, rhs, atol=1e-9)
        assert np.allclose(act(g, x).norms(), x.norms(), atol=1e-9)


def test_object_stabilizers():
    C1 = canonical_point_group("C1")
    assert object_stabilizer(C1, IrrepObject.vector(1, 0, 0)).order == 1

    D6h = canonical_point_group("Dnh", 6)
    v = IrrepObject.vector(math.sqrt(3) / 2, 0.5, 0.0)
    stab = object_stabilizer(D6h, v)
    assert stab.order == 4 and stab.is_closed()
    assert len(object_orbit(D6h, v)) * stab.order == D6h.order

    D8 = canonical_point_group("Dn", 8)
    p = IrrepObject.single(2, "even", (0, 0, 1, 0, 0))
    stab = object_stabilizer(D8, p)
    assert stab.order == 4
    assert identify_matrices(D8.stack[stab.array]).name == "Dn"


def test_from_json_errors():
    with pytest.raises(BadParameter):
        IrrepObject.from_json('[{"l": 1, "parity": "odd", "coeffs": [1, 0]}]')
    with pytest.raises(BadParameter):
        IrrepObject.from_json("[]")
    obj = IrrepObject.from_json('{"l": 0, "parity": "even", "coeffs": [2]}')
    assert obj.to_json() == [{"l": 0, "parity": "even", "coeffs": [2.0]}]


# ── identification ────────────────────────────────────────────────────────────


def test_identify_trivial_and_cube():
    P = identify_matrices([np.eye(3)])
    assert (P.name, P.n) == ("C1", None)
    Oh = identify_matrices(canonical_point_group("Oh").stack)
    assert Oh.name == "Oh"
    assert same_matrix_set(Oh.stack, canonical_point_group("Oh").stack, 1e-6)


@pytest.mark.parametrize("spec", FINITE)
def test_identify_round_trip(spec):
    rng = np.random.default_rng(FINITE.index(spec))
    base = canonical_point_group(*spec)
    for _ in range(3):
        g = Rotation.random(random_state=int(rng.integers(1 << 31))).as_matrix()
        P = identify_point_group(base.oriented(g).group)
        assert (P.name, P.n) == spec
        assert np.linalg.det(P.orientation) > 0
        assert same_matrix_set(P.stack, base.oriented(g).stack, 1e-6)


def test_identify_rejects_non_groups():
    with pytest.raises(NotAPointGroup):
        identify_matrices([np.eye(3), Rz(1.0)])
    with pytest.raises(NotAPointGroup):
        identify_matrices([])


def test_identify_does_not_mask_internal_errors(monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr(identify, "matrix_group", broken)
    with pytest.raises(RuntimeError, match="boom"):
        identify_matrices([np.eye(3)])
