from sbsym.sbscore.sbs_engine.construct import (
    IdealPartialTrace,
    equivariant_completion,
    full_sbs,
    generalized_normalizer_of,
    ideal_partial_object_symmetry,
    ideal_partial_trace,
    joint_symmetry,
    naive_prism_sbs,
    partial_sbs,
    world_normalizer,
)
from sbsym.sbscore.sbs_engine.measures import (
    complement_hypothesis_holds,
    degeneracy_bound,
    degeneracy_full,
    degeneracy_partial,
    enumerate_or_sample,
    is_equivariant_sbs,
    materialize,
    orbit_min_loss,
)
from sbsym.sbscore.sbs_engine.models import DegeneracyReport, SBSpec, SBSpecDoc

__all__ = [
    "IdealPartialTrace",
    "equivariant_completion",
    "full_sbs",
    "generalized_normalizer_of",
    "ideal_partial_object_symmetry",
    "ideal_partial_trace",
    "joint_symmetry",
    "naive_prism_sbs",
    "partial_sbs",
    "world_normalizer",
    "complement_hypothesis_holds",
    "degeneracy_bound",
    "degeneracy_full",
    "degeneracy_partial",
    "enumerate_or_sample",
    "is_equivariant_sbs",
    "materialize",
    "orbit_min_loss",
    "DegeneracyReport",
    "SBSpec",
    "SBSpecDoc",
]
