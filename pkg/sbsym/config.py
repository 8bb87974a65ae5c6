# sbsym/config.py
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

try:  # py311+
    import tomllib  # type: ignore[attr-defined]
except Exception:  # py310 fallback
    import tomli as tomllib  # type: ignore[no-redef]

from platformdirs import user_config_dir, user_log_dir
from pydantic import BaseModel, ConfigDict, Field

APP = "sbsym"


# ──────────────────────────────────────────────────────────────────────────────
# Helpers
# ──────────────────────────────────────────────────────────────────────────────


def _load_toml(path: Path) -> Dict[str, Any]:
    with path.open("rb") as f:
        data = tomllib.load(f) or {}
    return data if isinstance(data, dict) else {}


def global_config_dir() -> Path:
    """``SBSYM_CONFIG_DIR`` if set, else the per-user config folder."""
    env = os.getenv("SBSYM_CONFIG_DIR")
    return Path(env) if env else Path(user_config_dir(APP, APP))


def default_log_dir() -> Path:
    return Path(user_log_dir(APP, APP))


def _ensure_default_config(config_path: Path) -> None:
    """
    Create a minimal global config if none exists.
    No project .sbsym.toml is created.
    """
    if config_path.exists():
        return

    config_path.parent.mkdir(parents=True, exist_ok=True)
    content = (
        "\n".join(
            [
                "tolerance = 1e-8",
                "seed = 0",
                'output = "json"',
                "max_order = 1024",
            ]
        )
        + "\n"
    )
    config_path.write_text(content, encoding="utf-8")


# ──────────────────────────────────────────────────────────────────────────────
# Settings model
# ──────────────────────────────────────────────────────────────────────────────

_ENV = {
    "tolerance": "SBSYM_TOLERANCE",
    "seed": "SBSYM_SEED",
    "output": "SBSYM_OUTPUT",
    "max_order": "SBSYM_MAX_ORDER",
    "log_dir": "SBSYM_LOG_DIR",
}


class Settings(BaseModel):
    """
    Runtime configuration of the `sbs` command.

    Load precedence:
      1) Global config (created automatically if missing)
      2) Project config ./.sbsym.toml (optional overrides)
      3) Environment overrides (SBSYM_*)
    Command-line flags override all three.
    """

    tolerance: float = Field(default=1e-8, gt=0)  # numerical equality tolerance τ
    seed: int = 0  # RNG seed for sampling
    output: Literal["json", "pretty"] = "json"
    max_order: int = Field(default=1024, ge=1)  # closure limit for finite groups

    # logs: resolved to a per-user folder by default; can be overridden
    log_dir: Optional[str] = None

    # ignore unexpected keys in TOML/env
    model_config = ConfigDict(extra="ignore")

    _global_config_path: Optional[Path] = None
    _project_config_path: Optional[Path] = None

    @classmethod
    def load(cls) -> "Settings":
        """
        Load config with precedence:
          global (auto-created) → project (.sbsym.toml) → env (SBSYM_*).
        Ensures log_dir exists.
        """
        global_path = global_config_dir() / "config.toml"
        project_path = Path.cwd() / ".sbsym.toml"

        _ensure_default_config(global_path)

        # 1) Load global
        data: Dict[str, Any] = {}
        if global_path.exists():
            try:
                data.update(_load_toml(global_path))
            except Exception as e:
                raise RuntimeError(
                    f"Failed to parse global config at {global_path}: {e}"
                ) from e

        # 2) Overlay project (optional)
        if project_path.exists():
            try:
                data.update(_load_toml(project_path))
            except Exception as e:
                raise RuntimeError(
                    f"Failed to parse project config at {project_path}: {e}"
                ) from e

        # 3) Env overrides; pydantic coerces the strings
        for field, var in _ENV.items():
            value = os.getenv(var)
            if value is not None:
                data[field] = value

        cfg = cls(**data)
        cfg._global_config_path = global_path
        cfg._project_config_path = project_path if project_path.exists() else None

        if not cfg.log_dir:
            cfg.log_dir = default_log_dir().as_posix()
        try:
            Path(cfg.log_dir).mkdir(parents=True, exist_ok=True)
        except Exception:
            # Fallback to platform default if provided path is invalid
            fallback = default_log_dir()
            fallback.mkdir(parents=True, exist_ok=True)
            cfg.log_dir = fallback.as_posix()

        return cfg

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with the non-None command-line values applied (validated)."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        cfg = type(self).model_validate(data)
        cfg._global_config_path = self._global_config_path
        cfg._project_config_path = self._project_config_path
        return cfg
