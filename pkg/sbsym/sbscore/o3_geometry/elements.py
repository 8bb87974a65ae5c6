from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence, Union

import numpy as np
from scipy.spatial.transform import Rotation

from sbsym.sbscore.exceptions import BadParameter
from sbsym.sbscore.utils.utils import DEFAULT_TOL, grid_key


def rotation(axis: Sequence[float], angle: float) -> np.ndarray:
    """Proper rotation by ``angle`` (radians) about ``axis``."""
    a = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(a)
    if norm == 0:
        raise BadParameter("rotation axis must be non-zero")
    return Rotation.from_rotvec(a / norm * angle).as_matrix()


def Rx(angle: float) -> np.ndarray:
    return rotation((1.0, 0.0, 0.0), angle)


def Ry(angle: float) -> np.ndarray:
    return rotation((0.0, 1.0, 0.0), angle)


def Rz(angle: float) -> np.ndarray:
    return rotation((0.0, 0.0, 1.0), angle)


def mirror(normal: Sequence[float]) -> np.ndarray:
    """Reflection through the plane with the given normal."""
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    return np.eye(3) - 2.0 * np.outer(n, n)


INVERSION = -np.eye(3)
SIGMA_X = mirror((1, 0, 0))  # yz plane
SIGMA_Y = mirror((0, 1, 0))  # xz plane
SIGMA_Z = mirror((0, 0, 1))  # xy plane


def is_orthogonal(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m, dtype=float)
    return (
        m.shape == (3, 3)
        and bool(np.all(np.abs(m.T @ m - np.eye(3)) <= max(tol, 1e-9) * 10))
        and abs(abs(np.linalg.det(m)) - 1.0) <= max(tol, 1e-9) * 10
    )


def matrix_key(m: np.ndarray) -> tuple:
    return grid_key(m)


def matrices_close(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.all(np.abs(np.asarray(a) - np.asarray(b)) <= tol))


@dataclass(frozen=True, eq=False)
class O3Element:
    """A 3×3 orthogonal matrix."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float).reshape(3, 3)
        if not is_orthogonal(m):
            raise BadParameter("matrix is not orthogonal")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "O3Element":
        return cls(np.eye(3))

    @classmethod
    def from_axis_angle(cls, axis: Sequence[float], angle: float) -> "O3Element":
        return cls(rotation(axis, angle))

    @classmethod
    def parse(cls, spec: Union[str, Any]) -> "O3Element":
        """Accept 9 floats (row-major), a 3×3 nested list or ``{"axis", "angle"}``."""
        data = json.loads(spec) if isinstance(spec, str) else spec
        if isinstance(data, dict):
            if "axis" not in data or "angle" not in data:
                raise BadParameter("orientation object needs 'axis' and 'angle'")
            return cls.from_axis_angle(data["axis"], float(data["angle"]))
        arr = np.asarray(data, dtype=float)
        if arr.size != 9:
            raise BadParameter("orientation matrix needs 9 entries")
        m = arr.reshape(3, 3)
        if not is_orthogonal(m, 1e-6):
            raise BadParameter("orientation matrix is not orthogonal")
        # re-orthogonalize user input
        u, _, vt = np.linalg.svd(m)
        return cls(u @ vt)

    @property
    def det(self) -> float:
        return float(np.sign(np.linalg.det(self.matrix)))

    @property
    def is_proper(self) -> bool:
        return self.det > 0

    def inverse(self) -> "O3Element":
        return O3Element(self.matrix.T)

    def __matmul__(self, other: "O3Element") -> "O3Element":
        return O3Element(self.matrix @ other.matrix)

    def conjugate(self, m: np.ndarray) -> np.ndarray:
        """``g·m·g⁻¹`` for a raw matrix."""
        return self.matrix @ m @ self.matrix.T

    def close_to(self, other: "O3Element", tol: float = DEFAULT_TOL) -> bool:
        return matrices_close(self.matrix, other.matrix, tol)

    def key(self) -> tuple:
        return matrix_key(self.matrix)

    def to_list(self) -> list[float]:
        return [round(float(v), 12) + 0.0 for v in self.matrix.ravel()]

    def __repr__(self) -> str:
        return f"O3Element({self.to_list()})"
