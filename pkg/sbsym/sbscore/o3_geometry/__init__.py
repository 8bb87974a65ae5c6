from sbsym.sbscore.o3_geometry.elements import O3Element, Rx, Ry, Rz, mirror, rotation
from sbsym.sbscore.o3_geometry.identify import identify_matrices, identify_point_group
from sbsym.sbscore.o3_geometry.irreps import (
    IrrepComponent,
    IrrepObject,
    Parity,
    act,
    object_orbit,
    object_stabilizer,
)
from sbsym.sbscore.o3_geometry.names import Family, parse_group_name
from sbsym.sbscore.o3_geometry.point_groups import (
    PointGroup,
    canonical_point_group,
    point_group,
    sample_group_element,
)

__all__ = [
    "O3Element",
    "Rx",
    "Ry",
    "Rz",
    "mirror",
    "rotation",
    "identify_matrices",
    "identify_point_group",
    "IrrepComponent",
    "IrrepObject",
    "Parity",
    "act",
    "object_orbit",
    "object_stabilizer",
    "Family",
    "parse_group_name",
    "PointGroup",
    "canonical_point_group",
    "point_group",
    "sample_group_element",
]
