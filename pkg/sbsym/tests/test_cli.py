# tests/test_cli.py
import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from sbsym.cli import app
from sbsym.logging_config import teardown_logging
from sbsym.sbscore.o3_geometry.point_groups import canonical_point_group


@pytest.fixture()
def cli_runner(tmp_path: Path, monkeypatch) -> CliRunner:
    """CLI runner with config and logs under tmp_path."""
    for var in ("SBSYM_TOLERANCE", "SBSYM_SEED", "SBSYM_OUTPUT", "SBSYM_MAX_ORDER"):
        monkeypatch.delenv(var, raising=False)
    monkeypatch.setenv("SBSYM_CONFIG_DIR", str(tmp_path / "cfg"))
    monkeypatch.setenv("SBSYM_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.chdir(tmp_path)
    yield CliRunner()
    teardown_logging()


def _json(result):
    assert result.exit_code == 0, result.stderr
    return json.loads(result.stdout)


def test_version_command(cli_runner):
    result = cli_runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "0.1.0"


def test_logs_path(cli_runner, tmp_path):
    result = cli_runner.invoke(app, ["logs-path"])
    assert result.exit_code == 0
    assert Path(result.stdout.strip()) == tmp_path / "logs" / "sbsym.log"


def test_full_triangle(cli_runner):
    out = _json(cli_runner.invoke(app, ["full", "-g", "D3"]))
    assert out["kind"] == "full"
    assert out["group"]["label"] == "D3"
    assert out["orbit_group"]["label"] == "D6h"
    assert out["size"] == 6 and len(out["members"]) == 6
    assert out["degeneracy"] == 1


def test_full_symbolic_normalizer(cli_runner):
    out = _json(cli_runner.invoke(app, ["full", "-g", "Cn", "--n", "2"]))
    assert out["orbit_group"]["name"] == "Dinfh"
    assert out["members"] is None
    assert out["degeneracy"] == "infinite"


def test_full_pretty(cli_runner):
    result = cli_runner.invoke(app, ["full", "-g", "D3", "-o", "pretty"])
    assert result.exit_code == 0
    assert "D6h" in result.stdout


def test_partial_octagon(cli_runner):
    obj = json.dumps([{"l": 2, "parity": "even", "coeffs": [0, 0, 1, 0, 0]}])
    out = _json(
        cli_runner.invoke(app, ["partial", "-g", "D8", "--K", "D2", "--object", obj])
    )
    assert out["generalized_normalizer"]["label"] == "D8h"
    assert out["size"] == 4
    assert out["degeneracy"] == 1


def test_ideal(cli_runner):
    out = _json(cli_runner.invoke(app, ["ideal", "-g", "Cn", "--n", "4"]))
    assert out["mode"] == "full" and out["exists"] is False
    assert out["degeneracy_bound"] is None

    out = _json(cli_runner.invoke(app, ["ideal", "-g", "D3"]))
    assert out["exists"] is True and out["H"]["order"] == 4

    out = _json(cli_runner.invoke(app, ["ideal", "-g", "Oh", "--K", "C4v"]))
    assert out["mode"] == "partial" and out["exists"] is True
    assert out["H"]["label"] == "C4v"


def test_sample_is_reproducible(cli_runner):
    args = ["sample", "-g", "Cn", "--n", "3", "--count", "4", "--seed", "3"]
    a, b = _json(cli_runner.invoke(app, args)), _json(cli_runner.invoke(app, args))
    assert a["count"] == 4 and a["seed"] == 3
    assert a["objects"] == b["objects"]


def test_identify(cli_runner, tmp_path):
    mats = canonical_point_group("Dn", 3).stack.tolist()
    path = tmp_path / "d3.json"
    path.write_text(json.dumps(mats))
    out = _json(cli_runner.invoke(app, ["identify", str(path)]))
    assert (out["name"], out["n"], out["order"]) == ("Dn", 3, 6)

    path.write_text(json.dumps([[1, 0, 0, 0, 1, 0, 0, 0, 1], [0, -1, 0, 1, 0, 0, 0, 0, 1]]))
    result = cli_runner.invoke(app, ["identify", str(path)])
    assert result.exit_code == 5


def test_error_exit_codes(cli_runner):
    result = cli_runner.invoke(app, ["full", "-g", "X7"])
    assert result.exit_code == 2
    assert "UnknownName" in result.stderr

    z = json.dumps([{"l": 1, "parity": "odd", "coeffs": [0, 0, 1]}])
    result = cli_runner.invoke(app, ["full", "-g", "D3", "--object", z])
    assert result.exit_code == 3

    result = cli_runner.invoke(app, ["ideal", "-g", "C4", "--K", "C2"])
    assert result.exit_code == 4
    last = result.stderr.strip().splitlines()[-1]
    assert json.loads(last)["error"] == "InfiniteNormalizer"

    result = cli_runner.invoke(app, ["full", "-g", "D3", "--tol", "-1"])
    assert result.exit_code == 2


def test_tables_dump(cli_runner):
    out = _json(cli_runner.invoke(app, ["tables", "dump", "--n-max", "2"]))
    assert out["schema_version"] == "1"
    assert len(out["objects"]) == 17


def test_verify_appendix_g(cli_runner):
    out = _json(cli_runner.invoke(app, ["verify", "appendix-g"]))
    assert len(out) == 6
    assert all(r["passed"] for r in out)
