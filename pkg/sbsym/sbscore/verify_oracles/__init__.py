from sbsym.sbscore.verify_oracles.counterexample import (
    wreath_counterexample,
    build_counterexample,
)
from sbsym.sbscore.verify_oracles.models import OracleReport, OracleSuite
from sbsym.sbscore.verify_oracles.tables_check import check_row, tables_reports
from sbsym.sbscore.verify_oracles.theorems import (
    gen_normalizer_oracle,
    oracle_corpus,
    partial_theorem_oracle,
    theorem_complement_oracle,
    theorem_reports,
)
from sbsym.sbscore.verify_oracles.wreath import WreathSpec, wreath_product

__all__ = [
    "wreath_counterexample",
    "build_counterexample",
    "OracleReport",
    "OracleSuite",
    "check_row",
    "tables_reports",
    "gen_normalizer_oracle",
    "oracle_corpus",
    "partial_theorem_oracle",
    "theorem_complement_oracle",
    "theorem_reports",
    "WreathSpec",
    "wreath_product",
]
