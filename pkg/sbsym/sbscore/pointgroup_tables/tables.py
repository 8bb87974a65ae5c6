"""Normalizers of the point groups in O(3) and complements inside them.

Canonical poses are chosen so that the normalizer of every canonical
point group is itself canonical; the orientation returned alongside a
normalizer is therefore always the identity.

Subgroup and complement words are written over the presentations in
:mod:`presentations`. Words are authoritative; complement names are
recomputed by identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from sbsym.sbscore.exceptions import Unsupported
from sbsym.sbscore.group_core.groups import FiniteGroup, Subgroup
from sbsym.sbscore.group_core.lattice import generate
from sbsym.sbscore.group_core.words import evaluate_in_group
from sbsym.sbscore.o3_geometry.elements import O3Element
from sbsym.sbscore.o3_geometry.identify import identify_point_group
from sbsym.sbscore.o3_geometry.names import AXIAL, MAX_N, Family, display_name, validate
from sbsym.sbscore.o3_geometry.point_groups import (
    PointGroup,
    canonical_point_group,
    matrix_group,
)
from sbsym.sbscore.pointgroup_tables.presentations import (
    DIHEDRAL,
    ICOSAHEDRAL,
    OCTAHEDRAL,
    Presentation,
    presentation,
    realize_presentation,
    word_matrix,
)
from sbsym.sbscore.utils.utils import core_logger, log_msg

logger = core_logger("pointgroup_tables")


# ──────────────────────────────────────────────────────────────────────────────
# Rows
# ──────────────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class NormalizerEntry:
    """One row of the normalizer table.

    ``n_scale`` is set on axial rows whose normalizer is ``D(k·n)h``.
    """

    family: Family
    normalizer: str
    n_scale: Optional[int] = None
    n_min: Optional[int] = None
    n_max: Optional[int] = None

    def covers(self, family: Family, n: Optional[int]) -> bool:
        if family is not self.family:
            return False
        if n is None:
            return True
        return (self.n_min is None or n >= self.n_min) and (
            self.n_max is None or n <= self.n_max
        )

    def normalizer_n(self, n: Optional[int]) -> Optional[int]:
        if self.n_scale is None or n is None:
            return None
        return self.n_scale * n

    @property
    def symbolic(self) -> bool:
        return self.normalizer not in ("Dnh", "Oh", "Ih")

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "normalizer": self.normalizer,
            "normalizer_n": f"{self.n_scale}n" if self.n_scale else None,
        }


@dataclass(frozen=True)
class ComplementEntry:
    """One row of the complement tables.

    ``subgroup_words`` and ``complement_words`` are words over
    ``presentation``; ``complement_words`` is None where no complement
    exists. Rows under an infinite normalizer list their complements by
    name in ``symbolic`` instead. ``standin_words`` generate the subgroup
    inside the finite stand-in ``D(2n²)h`` used to spot-check None rows.
    """

    family: Family
    presentation: Optional[str]
    subgroup_words: tuple[str, ...] = ()
    complement_words: Optional[tuple[str, ...]] = None
    symbolic: tuple[str, ...] = ()
    standin_words: tuple[str, ...] = ()
    n_min: Optional[int] = None
    n_max: Optional[int] = None

    def covers(self, family: Family, n: Optional[int]) -> bool:
        if family is not self.family:
            return False
        if n is None:
            return True
        return (self.n_min is None or n >= self.n_min) and (
            self.n_max is None or n <= self.n_max
        )

    @property
    def has_complement(self) -> bool:
        return self.complement_words is not None or bool(self.symbolic)

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "presentation": self.presentation,
            "subgroup_words": list(self.subgroup_words),
            "complement_words": (
                None if self.complement_words is None else list(self.complement_words)
            ),
            "symbolic_complements": list(self.symbolic),
        }


NORMALIZER_TABLE: tuple[NormalizerEntry, ...] = (
    NormalizerEntry(Family.C1, "Kh"),
    NormalizerEntry(Family.Ci, "Kh"),
    NormalizerEntry(Family.Cs, "Dinfh"),
    NormalizerEntry(Family.Cn, "Dinfh", n_min=2),
    NormalizerEntry(Family.S2n, "Dinfh", n_min=2),
    NormalizerEntry(Family.Cnh, "Dinfh", n_min=2),
    NormalizerEntry(Family.Cnv, "Dnh", 2, n_min=2),
    NormalizerEntry(Family.Dnd, "Dnh", 2, n_min=2),
    NormalizerEntry(Family.Dnh, "Dnh", 2, n_min=3),
    NormalizerEntry(Family.Dn, "Dnh", 2, n_min=3),
    NormalizerEntry(Family.Dn, "Oh", n_min=2, n_max=2),
    NormalizerEntry(Family.Dnh, "Oh", n_min=2, n_max=2),
    NormalizerEntry(Family.T, "Oh"),
    NormalizerEntry(Family.Td, "Oh"),
    NormalizerEntry(Family.Th, "Oh"),
    NormalizerEntry(Family.O, "Oh"),
    NormalizerEntry(Family.Oh, "Oh"),
    NormalizerEntry(Family.I, "Ih"),
    NormalizerEntry(Family.Ih, "Ih"),
)

# words with {n} / {2n} are expanded per instance
COMPLEMENT_TABLE: tuple[ComplementEntry, ...] = (
    ComplementEntry(Family.C1, None, symbolic=("Kh",)),
    ComplementEntry(Family.Ci, None, symbolic=("K",)),
    ComplementEntry(Family.Cs, None, symbolic=("Cinfv", "Dinf")),
    ComplementEntry(Family.Cn, None, standin_words=("a^{2n}",), n_min=2),
    ComplementEntry(Family.S2n, None, standin_words=("a^{n}bm",), n_min=2),
    ComplementEntry(Family.Cnh, None, standin_words=("a^{2n}", "bm"), n_min=2),
    ComplementEntry(Family.Cnv, DIHEDRAL, ("a^2", "a^{n}m"), ("a^{n}am", "bm"), n_min=2),
    ComplementEntry(Family.Dnd, DIHEDRAL, ("a^2", "abm", "b"), ("bm",), n_min=2),
    ComplementEntry(Family.Dnh, DIHEDRAL, ("a^2", "b", "m"), ("am",), n_min=3),
    ComplementEntry(Family.Dn, DIHEDRAL, ("a^2", "b"), ("am", "bm"), n_min=3),
    ComplementEntry(
        Family.Dn, OCTAHEDRAL, ("a^2", "b^2"), ("ab", "ba^2", "i"), n_min=2, n_max=2
    ),
    ComplementEntry(
        Family.Dnh, OCTAHEDRAL, ("a^2", "b^2", "i"), ("ab", "ba^2"), n_min=2, n_max=2
    ),
    ComplementEntry(Family.T, OCTAHEDRAL, ("ab", "ba"), ("a^2b", "i")),
    ComplementEntry(Family.Td, OCTAHEDRAL, ("ab", "ba", "ai"), ("a^2b",)),
    ComplementEntry(Family.Th, OCTAHEDRAL, ("ab", "ba", "i"), ("a^2b",)),
    ComplementEntry(Family.O, OCTAHEDRAL, ("a", "b"), ("i",)),
    ComplementEntry(Family.Oh, OCTAHEDRAL, ("a", "b", "i"), ()),
    ComplementEntry(Family.I, ICOSAHEDRAL, ("s", "t"), ("i",)),
    ComplementEntry(Family.Ih, ICOSAHEDRAL, ("s", "t", "i"), ()),
)


def expand_word(word: str, n: Optional[int]) -> str:
    if n is None:
        return word
    return word.replace("{2n}", str(2 * n)).replace("{n}", str(n))


def normalizer_entry(name: str, n: Optional[int] = None) -> NormalizerEntry:
    family, n = validate(name, n)
    for row in NORMALIZER_TABLE:
        if row.covers(family, n):
            return row
    raise Unsupported(f"no normalizer row for {display_name(family.value, n)}")


def complement_entry(name: str, n: Optional[int] = None) -> ComplementEntry:
    family, n = validate(name, n)
    for row in COMPLEMENT_TABLE:
        if row.covers(family, n):
            return row
    raise Unsupported(f"no complement row for {display_name(family.value, n)}")


# ──────────────────────────────────────────────────────────────────────────────
# Lookups
# ──────────────────────────────────────────────────────────────────────────────


def normalizer_of(name: str, n: Optional[int] = None) -> tuple[O3Element, PointGroup]:
    """``(orientation, N_{O(3)}(S))`` for the canonical ``S = (name, n)``.

    The orientation is the identity for every row. Infinite normalizers come
    back as symbolic point groups.
    """
    row = normalizer_entry(name, n)
    N = canonical_point_group(row.normalizer, row.normalizer_n(n))
    log_msg(logger, f"normalizer of {display_name(name, n)}: {N.label}", "debug")
    return O3Element.identity(), N


@dataclass(frozen=True)
class TableInstance:
    """A complement row realized for one ``n``: S (and H) inside the finite N."""

    entry: ComplementEntry
    presentation: Presentation
    normalizer: FiniteGroup
    generators: dict[str, int]
    subgroup: Subgroup
    complement: Optional[Subgroup]
    standin: bool = False


def _presentation_n(entry: ComplementEntry, n: Optional[int]) -> Optional[int]:
    if entry.presentation == DIHEDRAL:
        return n
    return None


def realize_instance(name: str, n: Optional[int] = None) -> TableInstance:
    """Realize the subgroup and complement words of a row in its normalizer.

    None rows are realized in the stand-in ``D(2n²)h``; rows under an
    infinite normalizer with symbolic complements raise Unsupported.
    """
    entry = complement_entry(name, n)
    family, n = validate(name, n)
    if entry.presentation is None:
        if not entry.standin_words:
            raise Unsupported(f"{display_name(family.value, n)} has no finite normalizer")
        assert n is not None
        k = n * n
        if 2 * k > MAX_N:
            raise Unsupported(f"stand-in normalizer D{2 * k}h exceeds the realized limit")
        pres = presentation(DIHEDRAL, k)
        G, gens = realize_presentation(DIHEDRAL, k)
        S = _words_subgroup(G, gens, (expand_word(w, n) for w in entry.standin_words))
        return TableInstance(entry, pres, G, gens, S, None, standin=True)

    pn = _presentation_n(entry, n)
    pres = presentation(entry.presentation, pn)
    G, gens = realize_presentation(entry.presentation, pn)
    S = _words_subgroup(G, gens, (expand_word(w, n) for w in entry.subgroup_words))
    H = None
    if entry.complement_words is not None:
        H = _words_subgroup(G, gens, (expand_word(w, n) for w in entry.complement_words))
    return TableInstance(entry, pres, G, gens, S, H)


def _words_subgroup(G: FiniteGroup, gens: dict[str, int], words) -> Subgroup:
    return generate(G, [evaluate_in_group(G, w, gens) for w in words])


@lru_cache(maxsize=None)
def _complement(name: str, n: Optional[int]) -> Optional[tuple[tuple[str, ...], PointGroup]]:
    entry = complement_entry(name, n)
    if entry.symbolic:
        return (), canonical_point_group(entry.symbolic[0])
    if entry.complement_words is None:
        return None
    assert entry.presentation is not None
    pres = presentation(entry.presentation, _presentation_n(entry, n))
    words = tuple(expand_word(w, n) for w in entry.complement_words)
    mats = [word_matrix(pres.realization, w) for w in words]
    H = matrix_group(mats or [np.eye(3)], name="complement")
    P = identify_point_group(H)
    log_msg(
        logger,
        f"complement of {display_name(name, n)} in {pres.label}: {P.label}",
        "debug",
    )
    return words, P


def complement_in_normalizer(
    name: str, n: Optional[int] = None
) -> Optional[tuple[tuple[str, ...], PointGroup]]:
    """Tabulated complement of canonical ``S`` in its normalizer.

    Returns the generating words together with the realized point group, or
    None when the table says no complement exists. Complements of infinite
    normalizers are symbolic point groups with no words; where two are
    listed the first is returned.
    """
    family, n = validate(name, n)
    return _complement(family.value, n)


def symbolic_complements(name: str, n: Optional[int] = None) -> list[PointGroup]:
    return [canonical_point_group(s) for s in complement_entry(name, n).symbolic]


def family_instances(n_max: int = 8) -> Iterator[tuple[str, Optional[int]]]:
    """Every (token, n) with ``n ≤ n_max`` covered by the tables."""
    for family in Family:
        if family in AXIAL:
            for n in range(2, n_max + 1):
                yield family.value, n
        else:
            yield family.value, None
