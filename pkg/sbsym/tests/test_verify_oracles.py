# tests/test_verify_oracles.py
import pytest

from sbsym.sbscore.exceptions import BadParameter, ClosureOverflow
from sbsym.sbscore.group_core.groups import cyclic_group
from sbsym.sbscore.group_core.lattice import all_subgroups
from sbsym.sbscore.group_core.words import evaluate_in_group
from sbsym.sbscore.o3_geometry.point_groups import canonical_point_group
from sbsym.sbscore.verify_oracles import theorems
from sbsym.sbscore.verify_oracles.counterexample import (
    RELATORS,
    wreath_counterexample,
    wreath_factor,
)
from sbsym.sbscore.verify_oracles.models import OracleSuite, report
from sbsym.sbscore.verify_oracles.tables_check import check_row
from sbsym.sbscore.verify_oracles.theorems import (
    conjugate_pairs,
    partial_theorem_oracle,
    subgroup_classes,
    theorem_complement_oracle,
    theorem_reports,
)
from sbsym.sbscore.verify_oracles.wreath import WreathSpec, wreath_product


@pytest.fixture(scope="module")
def counterexample_reports():
    return {r.claim: r for r in wreath_counterexample()}


# ── wreath products ───────────────────────────────────────────────────────────


def test_wreath_with_trivial_top_is_a_direct_power():
    G = wreath_product(WreathSpec(cyclic_group(2), cyclic_group(1), 2, [[0, 1]]))
    assert G.order == 4
    assert G.check_axioms()
    assert all(G.compose(g, g) == G.identity for g in range(4))


def test_wreath_factor():
    Gp, gens = wreath_factor()
    assert Gp.order == 32
    assert Gp.check_axioms()
    for w in RELATORS:
        assert evaluate_in_group(Gp, w, gens) == Gp.identity


def test_wreath_rejects_bad_actions():
    C2, C3 = cyclic_group(2), cyclic_group(3)
    with pytest.raises(BadParameter):
        wreath_product(WreathSpec(C2, C2, 2, [[0, 1], [0, 0]]))
    with pytest.raises(BadParameter):
        wreath_product(WreathSpec(C2, C3, 2, [[0, 1], [1, 0], [1, 0]]))
    with pytest.raises(BadParameter):
        wreath_product(WreathSpec(C2, C2, 2, [[0, 1]]))
    with pytest.raises(ClosureOverflow):
        wreath_product(WreathSpec(C2, C2, 2, [[0, 1], [1, 0]]), max_order=4)


# ── counterexample ────────────────────────────────────────────────────────────


def test_counterexample_reports_all_pass(counterexample_reports):
    assert list(counterexample_reports) == [
        "construction",
        "normalizers",
        "complement",
        "full-sbs-size",
        "stabilizer-casework",
        "partial-sbs-size",
    ]
    failed = [r for r in counterexample_reports.values() if not r.passed]
    assert failed == []


def test_counterexample_sizes(counterexample_reports):
    assert counterexample_reports["construction"].observed == 32
    assert counterexample_reports["normalizers"].observed == 1024
    assert counterexample_reports["complement"].observed == 4
    assert counterexample_reports["full-sbs-size"].observed == 256
    # the exact partial set is strictly larger than the ideal full one
    assert counterexample_reports["partial-sbs-size"].observed == 512


# ── theorem oracles ───────────────────────────────────────────────────────────


def test_theorem_oracles_on_small_groups():
    groups = [
        ("C4", cyclic_group(4)),
        ("D3", canonical_point_group("Dn", 3).group),
        ("D4", canonical_point_group("Dn", 4).group),
    ]
    reports = theorem_reports(groups)
    assert len(reports) == 9
    assert {r.claim for r in reports} == {
        "complement-criterion",
        "generalized-normalizer",
        "partial-criterion",
    }
    for r in reports:
        assert r.passed, (r.claim, r.instance, r.failures)
        assert isinstance(r.observed, int) and r.observed > 0


def test_theorem_oracles_cover_every_subgroup():
    D3 = canonical_point_group("Dn", 3).group
    assert theorem_complement_oracle(D3, "D3").expected == 6
    # nested pairs: 1 + 3*2 + 2 + 6
    assert partial_theorem_oracle(D3, "D3").expected == 15

    classes = subgroup_classes(D3, tuple(all_subgroups(D3)))
    assert sorted(len(cls) for _, cls in classes) == [1, 1, 1, 3]
    mirror_like = next(S for S, cls in classes if len(cls) == 3)
    assert len(conjugate_pairs(D3, mirror_like, mirror_like)) == 3


def test_complement_failures_name_each_conjugate(monkeypatch):
    monkeypatch.setattr(theorems, "_ideal_coset_sbs", lambda space, S: False)
    D3 = canonical_point_group("Dn", 3).group
    r = theorem_complement_oracle(D3, "D3")
    assert not r.passed
    assert len(r.failures) == 6
    assert len({f.split(":")[0] for f in r.failures}) == 6


def test_theorem_oracles_refuse_large_groups():
    (r, *_) = theorem_reports([("C50", cyclic_group(50))])
    assert not r.passed
    assert r.expected == "order <= 48"


# ── table rows ────────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    ("name", "n", "observed"),
    [
        ("Dn", 3, "complement"),
        ("Cnv", 2, "complement"),
        ("Cnv", 3, "complement"),
        ("Dnd", 3, "complement"),
        ("Dnh", 2, "complement"),
        ("Cn", 2, "none"),
        ("C1", None, "complement"),
        ("Cs", None, "complement"),
        ("O", None, "complement"),
    ],
)
def test_check_row(name, n, observed):
    r = check_row(name, n)
    assert r is not None
    assert r.observed == observed
    assert r.passed, r.failures


def test_check_row_skips_unrealizable_standins():
    assert check_row("Cn", 5) is None


# ── reports ───────────────────────────────────────────────────────────────────


def test_report_semantics():
    assert report("c", "i", 3, 3).passed
    assert not report("c", "i", 3, 4).passed
    assert not report("c", "i", 1, True).passed
    assert report("c", "i", 0.5, 0.5 + 1e-10).passed
    assert not report("c", "i", 0.5, 0.6).passed
    assert not report("c", "i", 3, 3, failures=["x"]).passed

    suite = OracleSuite(suite="s", reports=[report("a", "i", 1, 1), report("b", "i", 1, 2)])
    assert not suite.passed
    assert [r.claim for r in suite.failed] == ["b"]
    assert OracleSuite(suite="empty").passed
