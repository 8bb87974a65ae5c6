from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field

from sbsym.sbscore.o3_geometry.irreps import IrrepObject
from sbsym.sbscore.o3_geometry.point_groups import PointGroup

SBSKind = Literal["full", "partial"]


@dataclass(frozen=True, eq=False)
class SBSpec:
    """A symmetry breaking set given as ``Orb_N(object)``.

    ``extra_seeds`` adds further N-orbits; constructors never set it, it
    only expresses hand-built sets with several orbits.
    """

    object: IrrepObject
    orbit_group: PointGroup
    kind: SBSKind = "full"
    extra_seeds: tuple[IrrepObject, ...] = field(default=())

    @property
    def seeds(self) -> tuple[IrrepObject, ...]:
        return (self.object, *self.extra_seeds)

    def to_doc(self) -> "SBSpecDoc":
        return SBSpecDoc(
            object=self.object.to_json(),
            orbit_group=self.orbit_group.reference(),
            kind=self.kind,
            extra_seeds=[s.to_json() for s in self.extra_seeds] or None,
        )


class SBSpecDoc(BaseModel):
    """
    JSON form of an SBSpec.
    """

    object: List[dict]  # IrrepObject components
    orbit_group: dict  # {"orientation": 9 floats, "name": token, "n": int | None}
    kind: SBSKind
    extra_seeds: Optional[List[List[dict]]] = None  # Further orbit seeds, if any


class DegeneracyReport(BaseModel):
    """
    Degeneracy of a symmetry breaking set.
    """

    value: Union[int, Literal["infinite"]]  # |B/S| (full) or |P_t| (partial)
    orbit_count: Optional[int] = None  # Number of S-orbits in the set (None if continuous)
    bound: Optional[int] = None  # Upper bound from a complement argument, when requested
    witness: Optional[str] = Field(default=None)  # Name of the M used for the bound

    @property
    def ideal(self) -> bool:
        return self.value == 1
