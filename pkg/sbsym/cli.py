import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional

import typer
from pydantic import ValidationError
from rich.console import Console

from sbsym import app as service
from sbsym.config import Settings
from sbsym.logging_config import log_file_path, setup_logging, verbose_console
from sbsym.render import render
from sbsym.sbscore.exceptions import SbsError
from sbsym.sbscore.verify_oracles.models import OracleSuite

app = typer.Typer(add_completion=False, no_args_is_help=True)
verify = typer.Typer(
    add_completion=False, no_args_is_help=True, help="Brute-force verification suites."
)
tables = typer.Typer(
    add_completion=False, no_args_is_help=True, help="Normalizer and complement tables."
)
app.add_typer(verify, name="verify")
app.add_typer(tables, name="tables")

_console = Console()

# ── shared options ────────────────────────────────────────────────────────────

_GROUP = typer.Option(
    ..., "--group", "-g", help="Point group: a token (Dn, Cnv, Oh, Dinfh, ...) or a name (D3, C4v, S4)."
)
_N = typer.Option(None, "--n", help="Axial order for axial tokens.")
_ORIENT = typer.Option(
    None, "--orientation", help='Proper rotation: 9 floats (row-major) or {"axis":[x,y,z],"angle":t}.'
)
_OBJECT = typer.Option(
    None, "--object", help='IrrepObject JSON in the canonical frame, e.g. [{"l":1,"parity":"odd","coeffs":[1,0,0]}].'
)
_K_N = typer.Option(None, "--K-n", "--k-n", help="Axial order of K.")
_K_ORIENT = typer.Option(None, "--K-orientation", "--k-orientation", help="Orientation of K.")
_TOL = typer.Option(None, "--tol", help="Numerical tolerance (overrides config).")
_SEED = typer.Option(None, "--seed", help="Random seed (overrides config).")
_OUTPUT = typer.Option(None, "--output", "-o", help="json | pretty (overrides config).")
_VERBOSE = typer.Option(False, "--verbose", "-v", help="Show debug logs on stderr.")


@contextmanager
def _session(
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    output: Optional[str] = None,
    verbose: bool = False,
) -> Iterator[Settings]:
    """Load settings, set up logging, and turn domain errors into exit codes."""
    base_logger = None
    try:
        cfg = Settings.load().with_overrides(tolerance=tol, seed=seed, output=output)
        base_logger = setup_logging(config_log_dir=cfg.log_dir)
        with verbose_console(base_logger, verbose):
            yield cfg
    except typer.Exit:
        raise
    except SbsError as e:
        if base_logger is not None:
            base_logger.getChild("cli").info("%s: %s", type(e).__name__, e)
        typer.echo(f"error: {type(e).__name__}: {e}", err=True)
        if e.exit_code == 4:
            typer.echo(json.dumps({"error": type(e).__name__, "reason": str(e)}), err=True)
        raise typer.Exit(code=e.exit_code)
    except (ValidationError, RuntimeError, json.JSONDecodeError) as e:
        typer.echo(f"error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(code=2)


def _emit(cfg: Settings, command: str, payload: Any) -> None:
    if cfg.output == "pretty":
        render(_console, command, payload)
        return
    if isinstance(payload, OracleSuite):
        payload = [r.model_dump() for r in payload.reports]
    typer.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def _K(name: Optional[str], n: Optional[int], orientation: Optional[str]):
    if name is None:
        return None
    return service.resolve_group(name, n, orientation)


# ──────────────────────────────────────────────────────────────────────────────
# Construction
# ──────────────────────────────────────────────────────────────────────────────


@app.command()
def full(
    group: str = _GROUP,
    n: Optional[int] = _N,
    orientation: Optional[str] = _ORIENT,
    object_: Optional[str] = _OBJECT,
    tol: Optional[float] = _TOL,
    output: Optional[str] = _OUTPUT,
    verbose: bool = _VERBOSE,
):
    """Equivariant full symmetry breaking set of a point group."""
    with _session(tol, None, output, verbose) as cfg:
        S = service.resolve_group(group, n, orientation)
        payload = service.full_payload(S, service.parse_object(object_), cfg)
        _emit(cfg, "full", payload)


@app.command()
def partial(
    group: str = _GROUP,
    n: Optional[int] = _N,
    orientation: Optional[str] = _ORIENT,
    k_name: str = typer.Option(..., "--K", "--k", help="Subgroup K kept unbroken."),
    k_n: Optional[int] = _K_N,
    k_orientation: Optional[str] = _K_ORIENT,
    object_: Optional[str] = _OBJECT,
    tol: Optional[float] = _TOL,
    output: Optional[str] = _OUTPUT,
    verbose: bool = _VERBOSE,
):
    """Equivariant K-partial symmetry breaking set."""
    with _session(tol, None, output, verbose) as cfg:
        S = service.resolve_group(group, n, orientation)
        K = service.resolve_group(k_name, k_n, k_orientation)
        payload = service.partial_payload(S, K, service.parse_object(object_), cfg)
        _emit(cfg, "partial", payload)


@app.command()
def ideal(
    group: str = _GROUP,
    n: Optional[int] = _N,
    orientation: Optional[str] = _ORIENT,
    k_name: Optional[str] = typer.Option(None, "--K", "--k", help="Subgroup K (partial mode)."),
    k_n: Optional[int] = _K_N,
    k_orientation: Optional[str] = _K_ORIENT,
    tol: Optional[float] = _TOL,
    output: Optional[str] = _OUTPUT,
    verbose: bool = _VERBOSE,
):
    """Whether an ideal equivariant SBS exists (full, or K-partial with --K)."""
    with _session(tol, None, output, verbose) as cfg:
        S = service.resolve_group(group, n, orientation)
        payload = service.ideal_payload(S, _K(k_name, k_n, k_orientation), cfg)
        _emit(cfg, "ideal", payload)


@app.command()
def sample(
    group: str = _GROUP,
    n: Optional[int] = _N,
    orientation: Optional[str] = _ORIENT,
    k_name: Optional[str] = typer.Option(None, "--K", "--k", help="Subgroup K (partial mode)."),
    k_n: Optional[int] = _K_N,
    k_orientation: Optional[str] = _K_ORIENT,
    object_: Optional[str] = _OBJECT,
    count: int = typer.Option(10, "--count", help="Number of objects to print."),
    seed: Optional[int] = _SEED,
    tol: Optional[float] = _TOL,
    output: Optional[str] = _OUTPUT,
    verbose: bool = _VERBOSE,
):
    """Print up to COUNT members of an SBS (all of a small finite one)."""
    with _session(tol, seed, output, verbose) as cfg:
        S = service.resolve_group(group, n, orientation)
        K = _K(k_name, k_n, k_orientation)
        payload = service.sample_payload(S, K, service.parse_object(object_), count, cfg)
        _emit(cfg, "sample", payload)


@app.command()
def identify(
    file: Path = typer.Argument(..., help="JSON list of 3x3 (or 9-float) matrices."),
    tol: Optional[float] = _TOL,
    output: Optional[str] = _OUTPUT,
    verbose: bool = _VERBOSE,
):
    """Identify a finite set of O(3) matrices as (orientation, name, n)."""
    with _session(tol, None, output, verbose) as cfg:
        _emit(cfg, "identify", service.identify_payload(file, cfg))


# ──────────────────────────────────────────────────────────────────────────────
# Verification and tables
# ──────────────────────────────────────────────────────────────────────────────


def _run_suite(suite: str, output: Optional[str], verbose: bool, n_max: int = 8) -> None:
    with _session(None, None, output, verbose) as cfg:
        result = service.run_suite(suite, n_max)
        _emit(cfg, "verify", result)
    if not result.passed:
        raise typer.Exit(code=1)


@verify.command("appendix-g")
def verify_counterexample(output: Optional[str] = _OUTPUT, verbose: bool = _VERBOSE):
    """Wreath-product counterexample: exact partial SBS larger than ideal full SBS."""
    _run_suite("appendix-g", output, verbose)


@verify.command("theorems")
def verify_theorems(output: Optional[str] = _OUTPUT, verbose: bool = _VERBOSE):
    """Complement criteria and the generalized normalizer on the oracle corpus."""
    _run_suite("theorems", output, verbose)


@verify.command("tables")
def verify_tables(
    n_max: int = typer.Option(8, "--n-max", help="Largest axial order checked."),
    output: Optional[str] = _OUTPUT,
    verbose: bool = _VERBOSE,
):
    """Re-derive every normalizer/complement row up to --n-max."""
    _run_suite("tables", output, verbose, n_max)


@tables.command("dump")
def tables_dump(
    n_max: int = typer.Option(4, "--n-max", help="Largest axial order of canonical objects."),
    verbose: bool = _VERBOSE,
):
    """Print the versioned tables document as JSON."""
    with _session(None, None, "json", verbose) as cfg:
        _emit(cfg, "tables", service.tables_payload(n_max))


# ──────────────────────────────────────────────────────────────────────────────
# Misc
# ──────────────────────────────────────────────────────────────────────────────


@app.command()
def logs_path():
    """Print where sbsym writes logs."""
    with _session() as cfg:
        typer.echo(str(log_file_path(cfg.log_dir)))


@app.command()
def version():
    """Return the sbsym version."""
    from importlib.metadata import PackageNotFoundError
    from importlib.metadata import version as _version

    DIST_NAME = "sbsym"

    def get_app_version() -> str:
        try:
            return _version(DIST_NAME)  # works when installed
        except PackageNotFoundError:
            # fallback for dev/uninstalled checkouts
            try:
                from . import __version__

                return __version__
            except Exception:
                return "0+unknown"

    typer.echo(get_app_version())
