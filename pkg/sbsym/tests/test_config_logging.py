# tests/test_config_logging.py
from pathlib import Path

import pytest
from pydantic import ValidationError

from sbsym.config import Settings
from sbsym.logging_config import (
    log_file_path,
    setup_logging,
    teardown_logging,
    verbose_console,
)


@pytest.fixture()
def isolated_env(tmp_path: Path, monkeypatch):
    """Point the global config and logs at tmp_path and run from a fresh cwd."""
    cfg_dir = tmp_path / "cfg"
    log_dir = tmp_path / "logs"
    work = tmp_path / "work"
    work.mkdir()
    for var in ("SBSYM_TOLERANCE", "SBSYM_SEED", "SBSYM_OUTPUT", "SBSYM_MAX_ORDER"):
        monkeypatch.delenv(var, raising=False)
    monkeypatch.setenv("SBSYM_CONFIG_DIR", str(cfg_dir))
    monkeypatch.setenv("SBSYM_LOG_DIR", str(log_dir))
    monkeypatch.chdir(work)
    yield tmp_path
    teardown_logging()


def test_load_creates_default_global_config(isolated_env):
    cfg = Settings.load()
    assert (isolated_env / "cfg" / "config.toml").exists()
    assert cfg.tolerance == 1e-8
    assert cfg.seed == 0
    assert cfg.output == "json"
    assert cfg.max_order == 1024
    assert Path(cfg.log_dir) == isolated_env / "logs"


def test_project_config_and_env_precedence(isolated_env, monkeypatch):
    (isolated_env / "work" / ".sbsym.toml").write_text('seed = 5\noutput = "pretty"\n')
    cfg = Settings.load()
    assert cfg.seed == 5 and cfg.output == "pretty"

    monkeypatch.setenv("SBSYM_SEED", "9")
    assert Settings.load().seed == 9


def test_bad_toml_raises_runtime_error(isolated_env):
    (isolated_env / "work" / ".sbsym.toml").write_text("seed = = 3\n")
    with pytest.raises(RuntimeError, match="project config"):
        Settings.load()


def test_with_overrides(isolated_env):
    cfg = Settings.load()
    out = cfg.with_overrides(tolerance=1e-6, seed=None, output="pretty")
    assert out.tolerance == 1e-6 and out.seed == cfg.seed and out.output == "pretty"
    with pytest.raises(ValidationError):
        cfg.with_overrides(output="xml")
    with pytest.raises(ValidationError):
        cfg.with_overrides(tolerance=-1.0)


def test_setup_logging_writes_to_file(isolated_env):
    logger = setup_logging(config_log_dir=str(isolated_env / "ignored"))
    # the env dir wins over the config value
    path = log_file_path()
    assert path == isolated_env / "logs" / "sbsym.log"
    logger.getChild("test").info("hello from the tests")
    for h in logger.handlers:
        h.flush()
    assert "hello from the tests" in path.read_text(encoding="utf-8")
    assert not logger.propagate

    # a second setup does not add another file handler
    setup_logging()
    tagged = [h for h in logger.handlers if getattr(h, "_sbsym_tag", False)]
    assert len(tagged) == 1


def test_verbose_console(isolated_env, capsys):
    logger = setup_logging()
    with verbose_console(logger, enabled=False):
        logger.getChild("app").debug("quiet")
    with verbose_console(logger):
        logger.getChild("app").debug("shown")
    logger.getChild("app").debug("after")
    err = capsys.readouterr().err
    assert "sbsym.app | shown" in err
    assert "quiet" not in err and "after" not in err
