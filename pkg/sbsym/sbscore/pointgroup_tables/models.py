from __future__ import annotations

from typing import Any, List, Optional

from pydantic import BaseModel, Field

from sbsym.sbscore.o3_geometry.names import display_name
from sbsym.sbscore.pointgroup_tables.objects import canonical_breaking_object
from sbsym.sbscore.pointgroup_tables.presentations import presentation
from sbsym.sbscore.pointgroup_tables.tables import (
    COMPLEMENT_TABLE,
    NORMALIZER_TABLE,
    complement_in_normalizer,
    family_instances,
    normalizer_of,
)

SCHEMA_VERSION = "1"


class ObjectRow(BaseModel):
    """
    Canonical breaking object of one family instance.
    """

    family: str  # Schönflies token
    n: Optional[int] = None  # Axial order (None for fixed groups)
    label: str  # Concrete name, e.g. "D3"
    normalizer: dict  # Point-group reference of N_{O(3)}(S)
    complement: Optional[str] = None  # Identified complement name, None when absent
    object: List[dict]  # IrrepObject JSON


class TablesDocument(BaseModel):
    """
    Versioned export of the normalizer and complement tables.
    """

    schema_version: str = SCHEMA_VERSION
    normalizers: List[dict] = Field(default_factory=list)
    complements: List[dict] = Field(default_factory=list)
    presentations: List[dict] = Field(default_factory=list)
    objects: List[ObjectRow] = Field(default_factory=list)


def _object_row(name: str, n: Optional[int]) -> ObjectRow:
    _, N = normalizer_of(name, n)
    found = complement_in_normalizer(name, n)
    return ObjectRow(
        family=name,
        n=n,
        label=display_name(name, n),
        normalizer=N.reference(),
        complement=None if found is None else found[1].label,
        object=canonical_breaking_object(name, n).to_json(),
    )


def build_tables_document(n_max: int = 4) -> TablesDocument:
    """Tables plus canonical objects for every instance with ``n ≤ n_max``."""
    pres: List[Any] = [presentation("D(2n)h", n).to_json() for n in range(1, n_max + 1)]
    pres += [presentation("Oh").to_json(), presentation("Ih").to_json()]
    return TablesDocument(
        normalizers=[row.to_json() for row in NORMALIZER_TABLE],
        complements=[row.to_json() for row in COMPLEMENT_TABLE],
        presentations=pres,
        objects=[_object_row(name, n) for name, n in family_instances(n_max)],
    )
