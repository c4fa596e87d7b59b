"""Grid functions on [0, T+1] with homogeneous Dirichlet data (the space W)."""
from typing import Sequence, Union
import numpy as np

from src.utils.errors import GridFunctionError


class GridFunction:
    """An element of W: values indexed by k = 0..T+1, zero at both ends.

    The value array is copied and frozen on construction.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Union[Sequence[float], np.ndarray]):
        v = np.array(values, dtype=float)
        if v.ndim != 1 or v.size < 3:
            raise GridFunctionError(
                f"grid function needs a 1-D array of length >= 3, got shape {v.shape}",
                shape=list(v.shape),
            )
        if v[0] != 0.0 or v[-1] != 0.0:
            raise GridFunctionError(
                f"boundary values must be 0, got u(0)={v[0]!r}, u(T+1)={v[-1]!r}",
                u0=float(v[0]),
                uT1=float(v[-1]),
            )
        v.setflags(write=False)
        self._values = v

    @classmethod
    def from_interior(cls, interior: Union[Sequence[float], np.ndarray]) -> "GridFunction":
        """Pad interior values u(1..T) with the two boundary zeros."""
        inner = np.asarray(interior, dtype=float).ravel()
        return cls(np.concatenate(([0.0], inner, [0.0])))

    @classmethod
    def zeros(cls, T: int) -> "GridFunction":
        return cls(np.zeros(T + 2))

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def interior(self) -> np.ndarray:
        return self._values[1:-1]

    @property
    def T(self) -> int:
        return self._values.size - 2

    def scaled(self, factor: float) -> "GridFunction":
        return GridFunction(factor * self._values)

    def __len__(self) -> int:
        return self._values.size

    def __getitem__(self, k):
        return self._values[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridFunction):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self) -> int:
        return hash(self._values.tobytes())

    def __repr__(self) -> str:
        return f"GridFunction(T={self.T}, values={self._values.tolist()})"


def coerce_grid(u, T: int) -> np.ndarray:
    """Return the value array of ``u`` after checking membership in W for this T.

    Accepts a GridFunction or any array-like of length T+2.
    """
    if isinstance(u, GridFunction):
        values = u.values
    else:
        values = np.asarray(u, dtype=float)
        if values.ndim != 1:
            raise GridFunctionError(f"expected a 1-D array, got shape {values.shape}")
        if values.size == T + 2 and (values[0] != 0.0 or values[-1] != 0.0):
            raise GridFunctionError(
                f"boundary values must be 0, got u(0)={values[0]!r}, u(T+1)={values[-1]!r}",
                u0=float(values[0]),
                uT1=float(values[-1]),
            )
    if values.size != T + 2:
        raise GridFunctionError(
            f"grid function has {values.size} entries, expected T+2={T + 2}",
            size=int(values.size),
            T=T,
        )
    return values


def build_test_function(inst, d: float) -> GridFunction:
    """The comparison profile: d on every interior point, 0 on the boundary."""
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    values = np.full(inst.T + 2, float(d))
    values[0] = 0.0
    values[-1] = 0.0
    return GridFunction(values)
