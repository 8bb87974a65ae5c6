from sbsym.sbscore.group_core.groups import (
    FiniteGroup,
    GroupAction,
    Subgroup,
    close_generators,
    cyclic_group,
    direct_product,
    regular_action,
)
from sbsym.sbscore.group_core.lattice import (
    Quotient,
    all_subgroups,
    as_group,
    conjugacy_class_of_subgroup,
    conjugate_subgroup,
    find_complement,
    generalized_normalizer,
    generalized_normalizer_by_definition,
    generate,
    is_complement,
    is_normal,
    left_transversal,
    normalizer,
    orbit,
    product_set,
    product_subgroup,
    pull_back,
    quotient,
    stabilizer,
)

__all__ = [
    "FiniteGroup",
    "GroupAction",
    "Subgroup",
    "Quotient",
    "close_generators",
    "cyclic_group",
    "direct_product",
    "regular_action",
    "as_group",
    "product_set",
    "pull_back",
    "all_subgroups",
    "conjugacy_class_of_subgroup",
    "conjugate_subgroup",
    "find_complement",
    "generalized_normalizer",
    "generalized_normalizer_by_definition",
    "generate",
    "is_complement",
    "is_normal",
    "left_transversal",
    "normalizer",
    "orbit",
    "product_subgroup",
    "quotient",
    "stabilizer",
]
