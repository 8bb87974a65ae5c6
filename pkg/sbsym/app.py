"""Service layer of the `sbs` command: parse inputs, run the engine, build payloads.

Every function returns plain JSON-ready data; printing and exit codes are
left to :mod:`sbsym.cli`.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Optional

from sbsym.config import Settings
from sbsym.sbscore.exceptions import BadParameter, SymbolicGroup
from sbsym.sbscore.o3_geometry.elements import O3Element
from sbsym.sbscore.o3_geometry.identify import identify_matrices
from sbsym.sbscore.o3_geometry.irreps import IrrepObject
from sbsym.sbscore.o3_geometry.names import parse_group_name
from sbsym.sbscore.o3_geometry.point_groups import PointGroup, point_group
from sbsym.sbscore.pointgroup_tables.models import build_tables_document
from sbsym.sbscore.pointgroup_tables.tables import complement_in_normalizer
from sbsym.sbscore.sbs_engine.construct import (
    full_sbs,
    generalized_normalizer_of,
    ideal_partial_object_symmetry,
    ideal_partial_trace,
    partial_sbs,
    world_normalizer,
)
from sbsym.sbscore.sbs_engine.measures import (
    degeneracy_full,
    degeneracy_partial,
    enumerate_or_sample,
    materialize,
)
from sbsym.sbscore.sbs_engine.models import SBSpec
from sbsym.sbscore.verify_oracles.counterexample import wreath_counterexample
from sbsym.sbscore.verify_oracles.models import OracleSuite
from sbsym.sbscore.verify_oracles.tables_check import tables_reports
from sbsym.sbscore.verify_oracles.theorems import theorem_reports

logger = logging.getLogger("sbsym").getChild("app")

SUITES = ("appendix-g", "theorems", "tables")


# ──────────────────────────────────────────────────────────────────────────────
# Input parsing
# ──────────────────────────────────────────────────────────────────────────────


def resolve_group(
    name: str, n: Optional[int] = None, orientation: Optional[str] = None
) -> PointGroup:
    """``--group/--n/--orientation`` to a PointGroup."""
    token, k = parse_group_name(name, n)
    g = None if orientation is None else O3Element.parse(orientation).matrix
    return point_group(token, k, g)


def parse_object(text: Optional[str]) -> Optional[IrrepObject]:
    if text is None:
        return None
    return IrrepObject.from_json(text)


def group_ref(P: PointGroup) -> dict:
    return {"label": P.label, "order": P.order, **P.reference()}


# ──────────────────────────────────────────────────────────────────────────────
# Payloads
# ──────────────────────────────────────────────────────────────────────────────


def _members(B: SBSpec, cfg: Settings) -> Optional[list]:
    N = B.orbit_group
    if N.order is not None and N.order > cfg.max_order:
        logger.info("orbit group %s exceeds max_order=%d", N.label, cfg.max_order)
        return None
    try:
        return [m.to_json() for m in materialize(B)]
    except SymbolicGroup:
        return None


def full_payload(S: PointGroup, obj: Optional[IrrepObject], cfg: Settings) -> dict:
    B = full_sbs(S, obj, cfg.tolerance)
    members = _members(B, cfg)
    logger.info("full %s → %s members", S.label, "∞" if members is None else len(members))
    return {
        "kind": "full",
        "group": group_ref(S),
        "sbs": B.to_doc().model_dump(),
        "orbit_group": group_ref(B.orbit_group),
        "size": None if members is None else len(members),
        "members": members,
        "degeneracy": degeneracy_full(B, S).value,
    }


def partial_payload(
    S: PointGroup, K: PointGroup, obj: Optional[IrrepObject], cfg: Settings
) -> dict:
    P = partial_sbs(S, K, obj, cfg.tolerance)
    members = _members(P, cfg)
    logger.info("partial (%s, %s) → %s members", S.label, K.label, "∞" if members is None else len(members))
    return {
        "kind": "partial",
        "group": group_ref(S),
        "K": group_ref(K),
        "sbs": P.to_doc().model_dump(),
        "generalized_normalizer": group_ref(generalized_normalizer_of(S, K, cfg.tolerance)),
        "size": None if members is None else len(members),
        "members": members,
        "degeneracy": degeneracy_partial(P, S, K).value,
    }


def ideal_payload(S: PointGroup, K: Optional[PointGroup], cfg: Settings) -> dict:
    """Whether an ideal (degeneracy 1) equivariant SBS exists, and its object symmetry."""
    if K is None or K.order == 1:
        found = complement_in_normalizer(S.name, S.n)
        N = world_normalizer(S)
        H = None if found is None else found[1].oriented(S.orientation)
        return {
            "mode": "full",
            "group": group_ref(S),
            "normalizer": group_ref(N),
            "exists": found is not None,
            "H": None if H is None else group_ref(H),
            "H_words": None if found is None else list(found[0]),
            "degeneracy_bound": 1 if found is not None else None,
        }
    trace = ideal_partial_trace(S, K, cfg.tolerance)
    result = ideal_partial_object_symmetry(S, K, cfg.tolerance)
    return {
        "mode": "partial",
        "group": group_ref(S),
        "K": group_ref(K),
        "exists": result is not None,
        "H": None if trace.H is None else group_ref(trace.H),
        "trace": {
            "N": group_ref(trace.N),
            "N_prime": group_ref(trace.N_prime),
            "quotient_order": trace.quotient_order,
            "image_order": trace.image_order,
            "complement_order": trace.complement_order,
        },
        "degeneracy_bound": 1 if result is not None else None,
    }


def sample_payload(
    S: PointGroup,
    K: Optional[PointGroup],
    obj: Optional[IrrepObject],
    count: int,
    cfg: Settings,
) -> dict:
    B = full_sbs(S, obj, cfg.tolerance) if K is None else partial_sbs(S, K, obj, cfg.tolerance)
    picked = enumerate_or_sample(B, count, cfg.seed)
    return {
        "kind": B.kind,
        "group": group_ref(S),
        "seed": cfg.seed,
        "count": len(picked),
        "objects": [m.to_json() for m in picked],
    }


def identify_payload(path: Path, cfg: Settings) -> dict:
    try:
        raw: Any = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise BadParameter(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise BadParameter(f"{path} is not valid JSON: {e}") from e
    mats = [O3Element.parse(m).matrix for m in raw]
    P = identify_matrices(mats, max(cfg.tolerance, 1e-6))
    logger.info("identified %s from %d matrices", P.label, len(mats))
    return group_ref(P)


def run_suite(suite: str, n_max: int = 8) -> OracleSuite:
    if suite == "appendix-g":
        reports = wreath_counterexample()
    elif suite == "theorems":
        reports = theorem_reports()
    elif suite == "tables":
        reports = tables_reports(n_max)
    else:
        raise BadParameter(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    out = OracleSuite(suite=suite, reports=reports)
    logger.info("verify %s: %d reports, %d failed", suite, len(reports), len(out.failed))
    return out


def tables_payload(n_max: int) -> dict:
    if n_max < 2:
        raise BadParameter("n-max must be >= 2")
    return build_tables_document(n_max).model_dump()
