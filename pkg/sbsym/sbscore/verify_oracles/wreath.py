"""Wreath products ``A ≀_Ω H`` of table-backed finite groups over a finite Ω."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from sbsym.sbscore.exceptions import BadParameter, ClosureOverflow
from sbsym.sbscore.group_core.groups import FiniteGroup
from sbsym.sbscore.utils.utils import core_logger, log_msg

logger = core_logger("verify_oracles")


@dataclass(frozen=True)
class WreathSpec:
    """Inputs of a wreath product.

    ``top_action[h][ω]`` is the image ``h·ω``; it must be a homomorphism
    from ``top`` into the permutations of ``range(omega_size)``.
    """

    base: FiniteGroup
    top: FiniteGroup
    omega_size: int
    top_action: Sequence[Sequence[int]]

    @property
    def order(self) -> int:
        return self.base.order**self.omega_size * self.top.order

    def permutations(self) -> np.ndarray:
        perms = np.asarray(self.top_action, dtype=np.int64)
        if perms.shape != (self.top.order, self.omega_size):
            raise BadParameter("top_action needs one permutation of Ω per top element")
        ref = np.arange(self.omega_size)
        if not all(np.array_equal(np.sort(p), ref) for p in perms):
            raise BadParameter("top_action rows must be permutations of Ω")
        # (h1·h2)·ω == h1·(h2·ω)
        composed = perms[self.top.table]
        chained = perms[np.arange(self.top.order)[:, None, None], perms[None, :, :]]
        if not np.array_equal(composed, chained):
            raise BadParameter("top_action is not a homomorphism")
        return perms


def wreath_product(spec: WreathSpec, max_order: int = 1024, name: str = "") -> FiniteGroup:
    """``A ≀_Ω H`` with ``((a), h)·((a'), h') = ((a_ω·a'_{h⁻¹ω}), h·h')``.

    Element ``((a_0, ..., a_{m-1}), h)`` sits at index
    ``(Σ a_ω·|A|^ω)·|H| + h`` and keeps that tuple as its label.
    """
    A, H, m = spec.base, spec.top, spec.omega_size
    if m < 1:
        raise BadParameter("omega_size must be >= 1")
    n = spec.order
    if n > max_order:
        raise ClosureOverflow(f"wreath product of order {n} exceeds max_order={max_order}")
    perms = spec.permutations()
    inv_perms = np.argsort(perms, axis=1)  # row h maps ω to h⁻¹·ω

    radix = A.order ** np.arange(m, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    h = idx % H.order
    digits = (idx // H.order)[:, None] // radix[None, :] % A.order  # (n, m)

    # shifted[x, y, ω] = a'_{h_x⁻¹ ω} of element y
    shifted = digits[:, inv_perms[h]].transpose(1, 0, 2)
    base = A.table[digits[:, None, :], shifted]
    top = H.table[h[:, None], h[None, :]]
    table = (base @ radix) * H.order + top

    labels = [(tuple(int(v) for v in digits[i]), int(h[i])) for i in range(n)]
    G = FiniteGroup(
        table,
        identity=int(np.dot(np.full(m, A.identity), radix)) * H.order + H.identity,
        labels=labels,
        key=lambda x: x,
        name=name or f"{A.name}wr{H.name}",
    )
    log_msg(logger, f"wreath product {G.name} of order {n}", "debug")
    return G
