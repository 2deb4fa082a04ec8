"""matlog/types.py: Small dense matrices of dimension 2 or 3."""

import json
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

from ..schema.exceptions import ArgumentError, InputParseError

# relative asymmetry a SymMat accepts before mirroring the upper triangle
SYMMETRY_TOL = 1e-10


def _as_matrix(entries: Any, kind: str) -> np.ndarray:
    if isinstance(entries, Mat):
        entries = entries.entries
    try:
        m = np.array(entries, dtype=float)
    except (TypeError, ValueError) as e:
        raise ArgumentError(f"{kind} entries must be numbers: {e}")
    if m.shape not in ((2, 2), (3, 3)):
        raise ArgumentError(f"{kind} must be 2x2 or 3x3, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ArgumentError(f"{kind} entries must be finite")
    return m


def _read_only(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


class Mat(BaseModel):
    """Real dim x dim matrix, dim in {2, 3}, stored dense row-major and read-only."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _canonical(cls, entries: Any) -> np.ndarray:
        return _read_only(_as_matrix(entries, cls.__name__))

    @field_serializer("entries")
    def _serialize(self, entries: np.ndarray) -> list[list[float]]:
        return entries.tolist()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mat) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def of(cls, entries: Any) -> "Mat":
        return cls(entries=entries)

    @classmethod
    def from_json(cls, text: str) -> "Mat":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputParseError(f"Malformed JSON for {cls.__name__}: {e}")
        if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
            raise InputParseError(f"{cls.__name__} must be a JSON array of row arrays")
        return cls(entries=data)

    def to_list(self) -> list[list[float]]:
        return self.entries.tolist()

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def transpose(self) -> "Mat":
        return Mat(entries=self.entries.T)

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))


class SymMat(Mat):
    """Symmetric Mat. Inputs asymmetric beyond 1e-10 relative are rejected, the rest is
    rebuilt from the upper triangle so symmetry is exact."""

    @field_validator("entries", mode="after")
    @classmethod
    def _symmetric(cls, entries: np.ndarray) -> np.ndarray:
        scale = np.linalg.norm(entries)
        if np.linalg.norm(entries - entries.T) > SYMMETRY_TOL * scale:
            raise ArgumentError(f"SymMat entries are not symmetric: {entries.tolist()}")
        upper = np.triu(entries)
        return _read_only(upper + np.triu(entries, 1).T)

    @classmethod
    def diag(cls, values: Any) -> "SymMat":
        return cls(entries=np.diag(np.asarray(values, dtype=float)))


class EigenDecomp(BaseModel):
    """Eigenvalues sorted non-increasing with orthonormal eigenvectors as columns."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T

    def apply(self, fn) -> SymMat:
        """V diag(fn(eigenvalues)) V^T."""
        m = (self.eigenvectors * fn(self.eigenvalues)) @ self.eigenvectors.T
        return SymMat(entries=0.5 * (m + m.T))
