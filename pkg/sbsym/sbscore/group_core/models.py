from __future__ import annotations

from typing import Any, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from sbsym.sbscore.group_core.groups import FiniteGroup, Subgroup


class FiniteGroupDoc(BaseModel):
    """
    JSON form of a FiniteGroup.
    """

    order: int = Field(ge=1)  # Number of elements
    identity: int = 0  # Index of the neutral element
    compose: List[int]  # Row-major composition table, order*order entries
    labels: Optional[List[Any]] = None  # Per-element payload (matrices as 9 floats)

    @classmethod
    def from_group(cls, G: FiniteGroup, *, with_labels: bool = True) -> "FiniteGroupDoc":
        labels = None
        if with_labels and G.labels is not None:
            labels = [_jsonable(lab) for lab in G.labels]
        return cls(
            order=G.order,
            identity=G.identity,
            compose=[int(v) for v in G.table.ravel()],
            labels=labels,
        )

    def to_group(self, name: str = "group") -> FiniteGroup:
        if len(self.compose) != self.order * self.order:
            raise ValueError("compose must hold order*order entries")
        table = np.asarray(self.compose, dtype=np.int64).reshape(self.order, self.order)
        return FiniteGroup(table, identity=self.identity, labels=self.labels, name=name)


class SubgroupDoc(BaseModel):
    order: int
    members: List[int]  # Sorted element indices

    @classmethod
    def from_subgroup(cls, S: Subgroup) -> "SubgroupDoc":
        return cls(order=S.order, members=list(S.members))


def _jsonable(x: Any) -> Any:
    if isinstance(x, np.ndarray):
        return [round(float(v), 12) + 0.0 for v in x.ravel()]
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x
