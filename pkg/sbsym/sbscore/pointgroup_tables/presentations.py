"""Group presentations of the finite normalizers, realized by O(3) matrices.

Three presentations are tabulated::

    D(2n)h  ⟨a, b, m | a^2n, b², m², (ab)², (am)², (bm)²⟩   a = Rz(π/n), b = Rx(π), m = σ_y
    Oh      ⟨a, b, i | a⁴, b⁴, i², (aba)², (ab)³, [i, a], [i, b]⟩   a = Rz(π/2), b = Rx(π/2), i = −I
    Ih      ⟨s, t, i | s², t³, (st)⁵, i², [i, s], [i, t]⟩   s = Rx(π), t a 3-fold of I

Every generator is an element of the canonical pose of the normalizer, so
words over a presentation evaluate directly to canonical matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional, Union

import numpy as np

from sbsym.sbscore.exceptions import BadParameter, RelatorViolation, UnknownName
from sbsym.sbscore.group_core.groups import FiniteGroup
from sbsym.sbscore.group_core.words import evaluate
from sbsym.sbscore.o3_geometry.elements import INVERSION, SIGMA_Y, Rx, Rz
from sbsym.sbscore.o3_geometry.names import MAX_N
from sbsym.sbscore.o3_geometry.point_groups import (
    canonical_point_group,
    locate,
    matrix_group,
    stack_of,
)
from sbsym.sbscore.utils.utils import DEFAULT_TOL, core_logger, log_msg

logger = core_logger("pointgroup_tables")

DIHEDRAL = "D(2n)h"
OCTAHEDRAL = "Oh"
ICOSAHEDRAL = "Ih"

_ALIASES = {"D(2n)h": DIHEDRAL, "D2nh": DIHEDRAL, "Oh": OCTAHEDRAL, "Ih": ICOSAHEDRAL}


@dataclass(frozen=True)
class Presentation:
    """Named generators, relators and their canonical matrices."""

    name: str
    n: Optional[int]
    generators: tuple[str, ...]
    relators: tuple[str, ...]
    realization: Mapping[str, np.ndarray] = field(repr=False)
    order: int

    @property
    def label(self) -> str:
        if self.n is None:
            return self.name
        return f"D{2 * self.n}h"

    def word_matrix(self, word: Union[str, tuple]) -> np.ndarray:
        return word_matrix(self.realization, word)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "generators": list(self.generators),
            "relators": list(self.relators),
            "realization": {
                g: [round(float(v), 12) + 0.0 for v in self.realization[g].ravel()]
                for g in self.generators
            },
            "order": self.order,
        }


def word_matrix(symbols: Mapping[str, np.ndarray], word: Union[str, tuple]) -> np.ndarray:
    """Evaluate a word over matrix generators."""
    return evaluate(
        word,
        symbols,
        compose=lambda x, y: x @ y,
        identity=np.eye(3),
        inverse=lambda x: x.T,
    )


def _icosahedral_generators() -> tuple[np.ndarray, np.ndarray]:
    # t: first 3-fold of canonical I (closure order) with s·t of order 5
    s = Rx(math.pi)
    for m in canonical_point_group("I").stack:
        if abs(np.trace(m)) > 1e-9:
            continue
        st = s @ m
        if np.allclose(np.linalg.matrix_power(st, 5), np.eye(3), atol=1e-9):
            return s, m.copy()
    raise RelatorViolation("no 3-fold t with (st)^5 = e in canonical I")


def presentation(name: str, n: Optional[int] = None) -> Presentation:
    """The tabulated presentation ``name`` (``n`` only for ``D(2n)h``)."""
    key = _ALIASES.get(name)
    if key is None:
        raise UnknownName(f"no tabulated presentation named {name!r}")
    if key == DIHEDRAL:
        if n is None or n < 1 or 2 * n > MAX_N:
            raise BadParameter(f"D(2n)h needs 1 <= n <= {MAX_N // 2}, got n={n}")
        return Presentation(
            DIHEDRAL,
            n,
            ("a", "b", "m"),
            (f"a^{2 * n}", "b^2", "m^2", "(ab)^2", "(am)^2", "(bm)^2"),
            {"a": Rz(math.pi / n), "b": Rx(math.pi), "m": SIGMA_Y.copy()},
            8 * n,
        )
    if n is not None:
        raise BadParameter(f"{key} takes no n")
    if key == OCTAHEDRAL:
        return Presentation(
            OCTAHEDRAL,
            None,
            ("a", "b", "i"),
            ("a^4", "b^4", "i^2", "(aba)^2", "(ab)^3", "iaia^-1", "ibib^-1"),
            {"a": Rz(math.pi / 2), "b": Rx(math.pi / 2), "i": INVERSION.copy()},
            48,
        )
    s, t = _icosahedral_generators()
    return Presentation(
        ICOSAHEDRAL,
        None,
        ("s", "t", "i"),
        ("s^2", "t^3", "(st)^5", "i^2", "isis^-1", "itit^-1"),
        {"s": s, "t": t, "i": INVERSION.copy()},
        120,
    )


@lru_cache(maxsize=None)
def _realize(name: str, n: Optional[int], tol: float) -> tuple[FiniteGroup, dict[str, int]]:
    pres = presentation(name, n)
    atol = max(tol, 1e-9) * 100
    for rel in pres.relators:
        if not np.allclose(pres.word_matrix(rel), np.eye(3), atol=atol):
            raise RelatorViolation(f"{pres.label}: relator {rel} fails on the realization")
    gens = [pres.realization[g] for g in pres.generators]
    G = matrix_group(gens, tol=tol, name=pres.label)
    if G.order != pres.order:
        raise RelatorViolation(
            f"{pres.label}: realization closes to order {G.order}, expected {pres.order}"
        )
    idx = locate(stack_of(G), np.stack(gens), atol)
    log_msg(logger, f"realized presentation {pres.label} (order {G.order})", "debug")
    return G, {g: int(i) for g, i in zip(pres.generators, idx)}


def realize_presentation(
    name: str, n: Optional[int] = None, tol: float = DEFAULT_TOL
) -> tuple[FiniteGroup, dict[str, int]]:
    """Realize a tabulated presentation as a matrix group.

    Returns the group together with the index of each named generator.
    Raises RelatorViolation when a relator or the closure order fails.
    """
    G, names = _realize(_ALIASES.get(name, name), n, tol)
    return G, dict(names)
