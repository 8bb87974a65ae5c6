"""Rich rendering for ``--output pretty``."""

from __future__ import annotations

import json
from typing import Any, Iterable

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from sbsym.sbscore.verify_oracles.models import OracleSuite

PASS_STYLE = {True: "green", False: "red"}


def _fmt_coeffs(obj: list[dict]) -> str:
    parts = []
    for c in obj:
        coeffs = ", ".join(f"{x:+.6f}" for x in c["coeffs"])
        parts.append(f"l={c['l']}{'e' if c['parity'] == 'even' else 'o'} ({coeffs})")
    return " ⊕ ".join(parts)


def objects_table(objects: Iterable[list[dict]], *, title: str) -> Table:
    table = Table(title=title, show_lines=False)
    table.add_column("#", justify="right", style="dim")
    table.add_column("object")
    for i, obj in enumerate(objects):
        table.add_row(str(i), _fmt_coeffs(obj))
    return table


def sbs_panel(payload: dict[str, Any]) -> Panel:
    lines = [f"[bold]group[/]: {payload['group']['label']}"]
    if "K" in payload:
        lines.append(f"[bold]K[/]: {payload['K']['label']}")
    orbit = payload.get("generalized_normalizer") or payload.get("orbit_group")
    if orbit:
        lines.append(f"[bold]orbit group[/]: {orbit['label']}")
    size = payload.get("size")
    lines.append(f"[bold]size[/]: {'infinite' if size is None else size}")
    lines.append(f"[bold]degeneracy[/]: {payload['degeneracy']}")
    return Panel("\n".join(lines), title=f"sbs {payload['kind']}")


def oracle_table(suite: OracleSuite) -> Table:
    table = Table(title=f"verify {suite.suite}")
    for col in ("claim", "instance", "expected", "observed", "pass", "seconds"):
        table.add_column(col)
    for r in suite.reports:
        table.add_row(
            r.claim,
            r.instance,
            str(r.expected),
            str(r.observed),
            Text("ok" if r.passed else "FAIL", style=PASS_STYLE[r.passed]),
            f"{r.elapsed:.3f}",
        )
    return table


def render(console: Console, command: str, payload: Any) -> None:
    """Print ``payload`` for ``command`` in human form."""
    if isinstance(payload, OracleSuite):
        console.print(oracle_table(payload))
        for r in payload.failed:
            for f in r.failures:
                console.print(f"[red]✗[/] {r.claim}: {f}")
        return
    if command in ("full", "partial"):
        console.print(sbs_panel(payload))
        if payload["members"] is not None:
            console.print(objects_table(payload["members"], title="members"))
        return
    if command == "sample":
        console.print(objects_table(payload["objects"], title=f"sample (seed {payload['seed']})"))
        return
    console.print(Panel(json.dumps(payload, indent=2), title=f"sbs {command}"))
