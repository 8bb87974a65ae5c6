"""Point groups as (orientation, name) pairs.

Canonical poses put the principal axis on z and a 2-fold rotation (when the
family has one perpendicular to z) on x. Vertical mirrors of Cnv, Dnd and
Dnh contain the x axis (normal y). Cubic groups are aligned with the cube,
icosahedral groups have a 5-fold on z and a 2-fold on x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.spatial.transform import Rotation

from sbsym.sbscore.exceptions import BadParameter, SymbolicGroup, Unsupported
from sbsym.sbscore.group_core.groups import FiniteGroup, Subgroup, close_generators
from sbsym.sbscore.o3_geometry.elements import (
    INVERSION,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    O3Element,
    Rx,
    Rz,
    matrices_close,
    matrix_key,
)
from sbsym.sbscore.o3_geometry.names import (
    Family,
    display_name,
    family_order,
    is_symbolic,
    validate,
)
from sbsym.sbscore.utils.utils import DEFAULT_TOL, core_logger, log_msg

logger = core_logger("o3_geometry")

PHI = (1.0 + math.sqrt(5.0)) / 2.0


# ──────────────────────────────────────────────────────────────────────────────
# Canonical generators
# ──────────────────────────────────────────────────────────────────────────────


def _cubic() -> tuple[np.ndarray, np.ndarray]:
    return Rz(math.pi / 2), Rx(math.pi / 2)


def _icosahedral() -> list[np.ndarray]:
    perm = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    q = Rx(math.atan2(1.0, PHI))  # vertex (0, 1, φ) onto z
    return [Rz(2 * math.pi / 5), Rx(math.pi), q @ perm @ q.T]


def canonical_generators(family: Family, n: Optional[int] = None) -> list[np.ndarray]:
    if family is Family.C1:
        return [np.eye(3)]
    if family is Family.Ci:
        return [INVERSION.copy()]
    if family is Family.Cs:
        return [SIGMA_Z.copy()]
    if family in (Family.T, Family.Td, Family.Th, Family.O, Family.Oh):
        a, b = _cubic()
        return {
            Family.T: [a @ b, b @ a],
            Family.Td: [a @ b, b @ a, a @ INVERSION],
            Family.Th: [a @ b, b @ a, INVERSION.copy()],
            Family.O: [a, b],
            Family.Oh: [a, b, INVERSION.copy()],
        }[family]
    if family is Family.I:
        return _icosahedral()
    if family is Family.Ih:
        return _icosahedral() + [INVERSION.copy()]

    assert n is not None
    cn = Rz(2 * math.pi / n)
    s2n = Rz(math.pi / n) @ SIGMA_Z
    c2x = Rx(math.pi)
    return {
        Family.Cn: [cn],
        Family.Cnv: [cn, SIGMA_X.copy()],
        Family.Cnh: [cn, SIGMA_Z.copy()],
        Family.S2n: [s2n],
        Family.Dn: [cn, c2x],
        Family.Dnd: [cn, s2n, c2x],
        Family.Dnh: [cn, c2x, SIGMA_Y.copy()],
    }[family]


def matrix_group(
    generators: list[np.ndarray],
    *,
    tol: float = DEFAULT_TOL,
    max_order: int = 1024,
    name: str = "group",
) -> FiniteGroup:
    """Close a list of orthogonal matrices into a FiniteGroup."""
    return close_generators(
        [np.asarray(g, dtype=float) for g in generators],
        lambda x, y: x @ y,
        lambda x, y: matrices_close(x, y, max(tol, 1e-9) * 100),
        max_order,
        key=matrix_key,
        name=name,
    )


def stack_of(G: FiniteGroup) -> np.ndarray:
    return np.stack([np.asarray(m, dtype=float) for m in G.labels])  # type: ignore[union-attr]


def locate(stack: np.ndarray, mats: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Index in ``stack`` of each matrix in ``mats`` (``-1`` where absent)."""
    mats = np.asarray(mats, dtype=float).reshape(-1, 3, 3)
    diff = np.abs(mats[:, None, :, :] - stack[None, :, :, :]).max(axis=(2, 3))
    hit = diff <= tol
    out = np.where(hit.any(axis=1), hit.argmax(axis=1), -1)
    return out.astype(np.int64)


def same_matrix_set(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    if a.shape[0] != b.shape[0]:
        return False
    diff = np.abs(a[:, None, :, :] - b[None, :, :, :]).max(axis=(2, 3)) <= tol
    return bool(diff.any(axis=1).all() and diff.any(axis=0).all())


# ──────────────────────────────────────────────────────────────────────────────
# Symbolic (infinite) groups
# ──────────────────────────────────────────────────────────────────────────────

_Z = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class SymbolicSpec:
    """Membership, component representatives and sampling for a closed infinite group."""

    name: str
    member: Callable[[np.ndarray, float], bool]
    components: tuple[np.ndarray, ...]  # one element per connected component
    dense_gens: tuple[np.ndarray, ...]  # generate a dense subgroup of the identity component
    axial: bool = True


def _mz(m: np.ndarray) -> np.ndarray:
    return m[:, 2]


def _det(m: np.ndarray) -> float:
    return float(np.sign(np.linalg.det(m)))


def _close_vec(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return bool(np.all(np.abs(a - b) <= tol))


_AXIAL_GENERATORS = (Rz(1.0),)
_SPHERE_GENERATORS = (Rx(1.0), Rz(1.0))

_SYMBOLIC: dict[str, SymbolicSpec] = {}


def _register(spec: SymbolicSpec, *aliases: str) -> None:
    _SYMBOLIC[spec.name] = spec
    for alias in aliases:
        _SYMBOLIC[alias] = spec


_register(
    SymbolicSpec(
        "Cinf",
        lambda m, t: _det(m) > 0 and _close_vec(_mz(m), _Z, t),
        (np.eye(3),),
        _AXIAL_GENERATORS,
    ),
    "SO2",
)
_register(
    SymbolicSpec(
        "Cinfv",
        lambda m, t: _close_vec(_mz(m), _Z, t),
        (np.eye(3), SIGMA_Y),
        _AXIAL_GENERATORS,
    )
)
_register(
    SymbolicSpec(
        "Cinfh",
        lambda m, t: _close_vec(_mz(m), _det(m) * _Z, t),
        (np.eye(3), SIGMA_Z),
        _AXIAL_GENERATORS,
    )
)
_register(
    SymbolicSpec(
        "Dinf",
        lambda m, t: _det(m) > 0
        and (_close_vec(_mz(m), _Z, t) or _close_vec(_mz(m), -_Z, t)),
        (np.eye(3), Rx(math.pi)),
        _AXIAL_GENERATORS,
    ),
    "O2",
)
_register(
    SymbolicSpec(
        "Dinfh",
        lambda m, t: _close_vec(_mz(m), _Z, t) or _close_vec(_mz(m), -_Z, t),
        (np.eye(3), Rx(math.pi), SIGMA_Z, Rx(math.pi) @ SIGMA_Z),
        _AXIAL_GENERATORS,
    )
)
_register(
    SymbolicSpec("SO3", lambda m, t: _det(m) > 0, (np.eye(3),), _SPHERE_GENERATORS, axial=False),
    "K",
)
_register(
    SymbolicSpec(
        "O3", lambda m, t: True, (np.eye(3), INVERSION), _SPHERE_GENERATORS, axial=False
    ),
    "Kh",
)


def symbolic_spec(name: str) -> SymbolicSpec:
    try:
        return _SYMBOLIC[name]
    except KeyError:
        raise Unsupported(f"no symbolic realization for {name!r}") from None


# ──────────────────────────────────────────────────────────────────────────────
# PointGroup
# ──────────────────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class PointGroup:
    """A point group ``orientation · canonical(name, n) · orientation⁻¹``.

    Finite names carry the materialized group (matrix labels, oriented);
    symbolic names carry ``group=None``.
    """

    name: str
    n: Optional[int]
    orientation: np.ndarray = field(repr=False)
    group: Optional[FiniteGroup] = field(default=None, repr=False)
    tol: float = DEFAULT_TOL

    @property
    def symbolic(self) -> bool:
        return self.group is None

    @property
    def label(self) -> str:
        return display_name(self.name, self.n)

    @property
    def order(self) -> Optional[int]:
        return None if self.group is None else self.group.order

    @cached_property
    def stack(self) -> np.ndarray:
        if self.group is None:
            raise SymbolicGroup(f"{self.label} has no finite element list")
        return stack_of(self.group)

    def elements(self) -> list[O3Element]:
        return [O3Element(m) for m in self.stack]

    def contains(self, m: np.ndarray) -> bool:
        m = np.asarray(m, dtype=float)
        if self.group is None:
            local = self.orientation.T @ m @ self.orientation
            return symbolic_spec(self.name).member(local, max(self.tol, 1e-9) * 100)
        return bool(locate(self.stack, m[None], max(self.tol, 1e-9) * 100)[0] >= 0)

    def contains_group(self, other: "PointGroup") -> bool:
        if other.group is None:
            if self.group is not None:
                return False
            return _symbolic_subset(other, self)
        return all(self.contains(m) for m in other.stack)

    def oriented(self, g: np.ndarray) -> "PointGroup":
        """The conjugate ``g·self·g⁻¹``."""
        g = np.asarray(g, dtype=float)
        group = None
        if self.group is not None:
            labels = [g @ m @ g.T for m in self.stack]
            group = FiniteGroup(
                self.group.table,
                identity=self.group.identity,
                labels=labels,
                key=matrix_key,
                name=self.group.name,
            )
        return PointGroup(self.name, self.n, g @ self.orientation, group, self.tol)

    def same_as(self, other: "PointGroup") -> bool:
        if self.group is None or other.group is None:
            return (
                self.group is None
                and other.group is None
                and _symbolic_subset(self, other)
                and _symbolic_subset(other, self)
            )
        return same_matrix_set(self.stack, other.stack, max(self.tol, 1e-9) * 100)

    def subgroup_of(self, ambient: "PointGroup") -> Subgroup:
        """Indices of this group's elements inside ``ambient`` (must contain it)."""
        if self.group is None or ambient.group is None:
            raise SymbolicGroup("subgroup indices need finite groups")
        idx = locate(ambient.stack, self.stack, max(self.tol, 1e-9) * 100)
        if np.any(idx < 0):
            raise BadParameter(f"{self.label} is not contained in {ambient.label}")
        return Subgroup.from_indices(ambient.group, idx)

    def reference(self) -> dict:
        return {
            "orientation": [round(float(v), 12) + 0.0 for v in self.orientation.ravel()],
            "name": self.name,
            "n": self.n,
        }


def _symbolic_subset(a: PointGroup, b: PointGroup) -> bool:
    """Whether symbolic ``a`` is contained in symbolic ``b`` (decidable cases only)."""
    if b.name in ("O3", "Kh"):
        return True
    spec_a, spec_b = symbolic_spec(a.name), symbolic_spec(b.name)
    if b.name in ("SO3", "K"):
        return all(_det(c) > 0 for c in spec_a.components)
    if not (spec_a.axial and spec_b.axial):
        return False
    # same principal axis and every component and dense generator of a lies in b
    mats = [a.orientation @ m @ a.orientation.T for m in spec_a.components + spec_a.dense_gens]
    return all(b.contains(m) for m in mats)


@lru_cache(maxsize=None)
def _canonical(name: str, n: Optional[int]) -> PointGroup:
    if is_symbolic(name):
        symbolic_spec(name)
        return PointGroup(name, None, np.eye(3), None)
    family, n = validate(name, n)
    gens = canonical_generators(family, n)
    label = display_name(family.value, n)
    G = matrix_group(gens, name=label)
    expected = family_order(family, n)
    if G.order != expected:
        raise RuntimeError(f"{label}: closure order {G.order} != {expected}")
    log_msg(logger, f"realized canonical {label} (order {G.order})", "debug")
    return PointGroup(family.value, n, np.eye(3), G)


def canonical_point_group(name: str, n: Optional[int] = None) -> PointGroup:
    """The point group ``name`` (with axial order ``n``) in its canonical pose."""
    return _canonical(name, n)


def point_group(
    name: str, n: Optional[int] = None, orientation: Optional[np.ndarray] = None
) -> PointGroup:
    P = canonical_point_group(name, n)
    if orientation is None:
        return P
    g = np.asarray(orientation, dtype=float)
    if np.linalg.det(g) < 0:
        raise BadParameter("orientation must be a proper rotation (det +1)")
    return P.oriented(g)


# ──────────────────────────────────────────────────────────────────────────────
# Sampling
# ──────────────────────────────────────────────────────────────────────────────


def haar_rotation(rng: np.random.Generator) -> np.ndarray:
    q = rng.normal(size=4)
    return Rotation.from_quat(q / np.linalg.norm(q)).as_matrix()


def sample_group_element(P: PointGroup, rng_seed: int | np.random.Generator) -> O3Element:
    """Uniform element of a finite group, Haar element of a symbolic one."""
    rng = (
        rng_seed
        if isinstance(rng_seed, np.random.Generator)
        else np.random.default_rng(rng_seed)
    )
    if P.group is not None:
        return O3Element(P.stack[int(rng.integers(P.group.order))])
    spec = symbolic_spec(P.name)
    if spec.axial:
        local = Rz(float(rng.uniform(0.0, 2.0 * math.pi)))
    else:
        local = haar_rotation(rng)
    local = local @ spec.components[int(rng.integers(len(spec.components)))]
    return O3Element(P.orientation @ local @ P.orientation.T)


def component_representatives(P: PointGroup) -> list[np.ndarray]:
    spec = symbolic_spec(P.name)
    return [P.orientation @ c @ P.orientation.T for c in spec.components]


def continuous_generators(P: PointGroup) -> list[np.ndarray]:
    spec = symbolic_spec(P.name)
    return [P.orientation @ c @ P.orientation.T for c in spec.dense_gens]


# ──────────────────────────────────────────────────────────────────────────────
# Intersections and products
# ──────────────────────────────────────────────────────────────────────────────


def intersect(a: PointGroup, b: PointGroup) -> PointGroup | FiniteGroup:
    """``a ∩ b``.

    Finite results come back as a matrix FiniteGroup (elements of the finite
    side that lie in the other group); symbolic results as a PointGroup.
    """
    if a.group is not None:
        keep = [m for m in a.stack if b.contains(m)]
        return matrix_group(keep or [np.eye(3)], name=f"{a.label}&{b.label}")
    if b.group is not None:
        return intersect(b, a)
    if _symbolic_subset(a, b):
        return a
    if _symbolic_subset(b, a):
        return b
    raise SymbolicGroup(f"cannot intersect symbolic groups {a.label} and {b.label}")
