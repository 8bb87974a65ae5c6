from sbsym.sbscore.pointgroup_tables.objects import (
    canonical_breaking_object,
    object_with_stabilizer,
)
from sbsym.sbscore.pointgroup_tables.presentations import (
    Presentation,
    presentation,
    realize_presentation,
)
from sbsym.sbscore.pointgroup_tables.tables import (
    ComplementEntry,
    NormalizerEntry,
    complement_in_normalizer,
    normalizer_of,
    realize_instance,
)

__all__ = [
    "canonical_breaking_object",
    "object_with_stabilizer",
    "Presentation",
    "presentation",
    "realize_presentation",
    "ComplementEntry",
    "NormalizerEntry",
    "complement_in_normalizer",
    "normalizer_of",
    "realize_instance",
]
