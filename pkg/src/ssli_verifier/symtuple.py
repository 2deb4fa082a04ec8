"""symtuple.py: Tuples of reals, elementary symmetric polynomials, classical means and majorization."""

import json
import math
from itertools import accumulate
from typing import Any, NamedTuple, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .schema.exceptions import ArgumentError, InputParseError

# Absolute tolerance on the totals of two tuples compared by `majorizes`
MAJORIZATION_SUM_TOL = 1e-9


def _as_floats(values: Any, kind: str) -> list[float]:
    if values is None or isinstance(values, (str, bytes, dict, set, frozenset)):
        raise ArgumentError(f"{kind} needs a sequence of numbers, got {type(values).__name__}")
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise ArgumentError(f"{kind} entries must be numbers: {e}")
    if arr.ndim != 1:
        raise ArgumentError(f"{kind} needs a one-dimensional sequence of numbers, got shape {arr.shape}")
    items = arr.tolist()
    if len(items) < 2:
        raise ArgumentError(f"{kind} needs at least 2 entries, got {len(items)}")
    if not all(math.isfinite(v) for v in items):
        raise ArgumentError(f"{kind} entries must be finite: {items}")
    return items


def _parse_json_array(text: str, kind: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(f"Malformed JSON for {kind}: {e}")
    if not isinstance(data, list):
        raise InputParseError(f"{kind} must be a JSON array of numbers, got {type(data).__name__}")
    return data


class PositiveTuple(BaseModel):
    """Strictly positive reals, canonically sorted non-increasing."""

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...]

    @field_validator("values", mode="before")
    @classmethod
    def _canonical(cls, values: Any) -> tuple[float, ...]:
        items = _as_floats(values, "PositiveTuple")
        if any(v <= 0.0 for v in items):
            raise ArgumentError(f"PositiveTuple entries must be > 0: {items}")
        return tuple(sorted(items, reverse=True))

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def of(cls, *values: float) -> "PositiveTuple":
        return cls(values=values)

    @classmethod
    def coerce(cls, t: "PositiveTuple | Sequence[float]") -> "PositiveTuple":
        return t if isinstance(t, PositiveTuple) else cls(values=t)

    @classmethod
    def from_json(cls, text: str) -> "PositiveTuple":
        return cls(values=_parse_json_array(text, "PositiveTuple"))

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def logs(self) -> "LogTuple":
        return LogTuple(values=[math.log(v) for v in self.values])


class LogTuple(BaseModel):
    """Reals sorted non-increasing, with their total cached in `sum`."""

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...]
    sum: float = 0.0

    @model_validator(mode="before")
    @classmethod
    def _canonical(cls, data: Any) -> dict:
        if not isinstance(data, dict):
            data = {"values": data}
        items = sorted(_as_floats(data.get("values"), "LogTuple"), reverse=True)
        total = math.fsum(items)
        given = data.get("sum")
        if given is not None and abs(float(given) - total) > 1e-12 * len(items) * max(1.0, max(map(abs, items))):
            raise ArgumentError(f"LogTuple sum {given} does not match the total {total} of {items}")
        return {"values": tuple(items), "sum": total}

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def of(cls, *values: float) -> "LogTuple":
        return cls(values=values)

    @classmethod
    def coerce(cls, z: "LogTuple | Sequence[float]") -> "LogTuple":
        return z if isinstance(z, LogTuple) else cls(values=z)

    @classmethod
    def from_json(cls, text: str) -> "LogTuple":
        return cls(values=_parse_json_array(text, "LogTuple"))

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def exps(self) -> PositiveTuple:
        return PositiveTuple(values=[math.exp(v) for v in self.values])

    def scaled(self, k: float) -> "LogTuple":
        return LogTuple(values=[k * v for v in self.values])


class Means(NamedTuple):
    """Arithmetic, harmonic, geometric and quadratic mean."""

    A: float
    H: float
    G: float
    Q: float


def elem_sym_all(t: PositiveTuple | Sequence[float]) -> list[float]:
    """Returns [e_0, ..., e_n] as the coefficients of prod(X + t_i), built one factor at a time."""

    t = PositiveTuple.coerce(t)
    coeffs = [1.0] + [0.0] * t.n
    for i, v in enumerate(t.values):
        for j in range(i + 1, 0, -1):
            coeffs[j] += v * coeffs[j - 1]
    return coeffs


def elem_sym(k: int, t: PositiveTuple | Sequence[float]) -> float:
    """Elementary symmetric polynomial e_k(t), 0 <= k <= n.

    Uses the recurrence for the coefficients of prod(X + t_i), truncated at degree k,
    which costs O(n*k) and never forms the individual k-fold products.
    """

    t = PositiveTuple.coerce(t)
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= t.n:
        raise ArgumentError(f"elem_sym order must be an integer in [0, {t.n}], got {k!r}")

    coeffs = [1.0] + [0.0] * k
    for i, v in enumerate(t.values):
        for j in range(min(i + 1, k), 0, -1):
            coeffs[j] += v * coeffs[j - 1]
    return coeffs[k]


def means(t: PositiveTuple | Sequence[float]) -> Means:
    t = PositiveTuple.coerce(t)
    n = t.n
    a = math.fsum(t.values) / n
    h = n / math.fsum(1.0 / v for v in t.values)
    # exp of the mean log is (e_n)^(1/n) without overflowing the product
    g = math.exp(math.fsum(math.log(v) for v in t.values) / n)
    q = math.sqrt(math.fsum(v * v for v in t.values) / n)
    return Means(A=a, H=h, G=g, Q=q)


def majorizes(z: LogTuple | Sequence[float], c: LogTuple | Sequence[float],
              sum_tol: float = MAJORIZATION_SUM_TOL) -> bool:
    """True iff z majorizes c: every leading partial sum of sorted z dominates the one of sorted c.

    Equal totals are a precondition, checked to an absolute `sum_tol`, not a dominance row.
    """

    z, c = LogTuple.coerce(z), LogTuple.coerce(c)
    if z.n != c.n:
        raise ArgumentError(f"majorization needs tuples of equal length, got {z.n} and {c.n}")
    if abs(z.sum - c.sum) > sum_tol:
        raise ArgumentError(f"majorization is undefined for unequal sums: {z.sum!r} vs {c.sum!r}")

    partial_z = list(accumulate(z.values))[:-1]
    partial_c = list(accumulate(c.values))[:-1]
    return all(pz >= pc for pz, pc in zip(partial_z, partial_c))


def karamata_dominance_sumsq(z: LogTuple | Sequence[float], c: LogTuple | Sequence[float]) -> bool:
    """Karamata's inequality specialised to f(t) = t^2: True iff sum z_i^2 >= sum c_i^2."""

    z, c = LogTuple.coerce(z), LogTuple.coerce(c)
    if z.n != c.n:
        raise ArgumentError(f"karamata comparison needs tuples of equal length, got {z.n} and {c.n}")
    return math.fsum(v * v for v in z.values) >= math.fsum(v * v for v in c.values)


def sum_sq_log(t: PositiveTuple | Sequence[float]) -> float:
    t = PositiveTuple.coerce(t)
    return math.fsum(math.log(v) ** 2 for v in t.values)


def linearized_sum_sq(t: PositiveTuple | Sequence[float]) -> float:
    """sum (t_i - 1)^2, the first-order replacement of log(t_i) around 1."""

    t = PositiveTuple.coerce(t)
    return math.fsum((v - 1.0) ** 2 for v in t.values)


def exp_sums(z: LogTuple | Sequence[float]) -> tuple[float, float]:
    """(sum e^{z_i}, sum e^{-z_i})."""

    z = LogTuple.coerce(z)
    return math.fsum(math.exp(v) for v in z.values), math.fsum(math.exp(-v) for v in z.values)
