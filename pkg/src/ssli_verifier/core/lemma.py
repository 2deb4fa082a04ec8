"""core/lemma.py: Sum-zero triples of fixed norm, their (r, phi) parametrization and the grid verifiers.

A sorted triple a >= b >= c with a + b + c = 0 and a^2 + b^2 + c^2 = 3/2 r^2 is
(r cos phi, r cos(phi - 2pi/3), r cos(phi + 2pi/3)) for a unique phi in [0, pi/3].
The functions below evaluate the exponential sum h(r, phi) of such a triple, its
partial derivatives, and the auxiliary function F whose sign gives the
monotonicity of h in phi.
"""

import math
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..logger import get_logger
from ..schema import ArgumentError, GridPoint, LemmaScanReport, UsageError
from ..symtuple import LogTuple

THIRD_PI = math.pi / 3
TWO_THIRDS_PI = 2 * math.pi / 3
SQRT3 = math.sqrt(3.0)
# absolute agreement required between F and e^(-r cos phi) dh/dphi / r on the grid
IDENTITY_TOL = 1e-9

# slack on the interval ends of the domain checks
_DOMAIN_SLACK = 1e-12


class SphericalPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    r: float
    phi: float

    @model_validator(mode="after")
    def _check(self) -> "SphericalPair":
        _check_r(self.r)
        _check_phi(self.phi)
        return self

    def triple(self) -> LogTuple:
        return LogTuple(values=[self.r * math.cos(self.phi),
                                self.r * math.cos(self.phi - TWO_THIRDS_PI),
                                self.r * math.cos(self.phi + TWO_THIRDS_PI)])

    @classmethod
    def from_sum_zero(cls, z: LogTuple | list[float]) -> "SphericalPair":
        z = LogTuple.coerce(z)
        if z.n != 3:
            raise ArgumentError(f"SphericalPair needs a triple, got length {z.n}")
        _check_sum_zero(z.values)
        r = math.sqrt(2.0 / 3.0 * math.fsum(v * v for v in z.values))
        if r == 0.0:
            raise ArgumentError("SphericalPair is undefined for the zero triple")
        return cls(r=r, phi=math.acos(min(1.0, max(0.5, z.values[0] / r))))


def _check_r(r: float):
    if not (math.isfinite(r) and r > 0):
        raise ArgumentError(f"r must be a positive finite number, got {r!r}")


def _check_phi(phi: float) -> float:
    if not (-_DOMAIN_SLACK <= phi <= THIRD_PI + _DOMAIN_SLACK):
        raise ArgumentError(f"phi must lie in [0, pi/3], got {phi!r}")
    return min(THIRD_PI, max(0.0, phi))


def _check_leading(x: float, r: float) -> float:
    _check_r(r)
    if not (r / 2 - _DOMAIN_SLACK * r <= x <= r + _DOMAIN_SLACK * r):
        raise ArgumentError(f"leading entry must lie in [r/2, r] = [{r / 2!r}, {r!r}], got {x!r}")
    return min(r, max(r / 2, x))


def _check_sum_zero(values) -> None:
    scale = max(map(abs, values))
    if abs(math.fsum(values)) > 1e-12 * len(values) * max(scale, 1e-300):
        raise ArgumentError(f"entries must sum to zero, got sum {math.fsum(values)!r} for {list(values)}")


def spherical_from_leading(a: float, r: float) -> tuple[float, float, float]:
    """The sorted sum-zero triple with leading entry a and squared sum 3/2 r^2."""

    a = _check_leading(a, r)
    root = math.sqrt(max(0.0, 3.0 * (r * r - a * a)))
    return a, 0.5 * (-a + root), 0.5 * (-a - root)


def lemma_f(x: float, r: float) -> float:
    """Exponential sum of the triple with leading entry x, increasing in x on [r/2, r]."""

    return math.fsum(math.exp(v) for v in spherical_from_leading(x, r))


# Vectorized kernels; r and phi broadcast against each other.

def _h(r, phi):
    return np.exp(r * np.cos(phi)) + np.exp(r * np.cos(phi + TWO_THIRDS_PI)) + np.exp(r * np.cos(phi - TWO_THIRDS_PI))


def _h_minus_3(r, phi):
    # expm1 keeps differences in r accurate for small r
    return np.expm1(r * np.cos(phi)) + np.expm1(r * np.cos(phi + TWO_THIRDS_PI)) \
        + np.expm1(r * np.cos(phi - TWO_THIRDS_PI))


def _dh_dr(r, phi):
    total = 0.0
    for shift in (0.0, TWO_THIRDS_PI, -TWO_THIRDS_PI):
        cos = np.cos(phi + shift)
        total = total + cos * np.exp(r * cos)
    return total


def _dh_dphi(r, phi):
    total = 0.0
    for shift in (0.0, TWO_THIRDS_PI, -TWO_THIRDS_PI):
        total = total - r * np.sin(phi + shift) * np.exp(r * np.cos(phi + shift))
    return total


def _F(r, phi):
    return -np.sin(phi) \
        - np.exp(-r * SQRT3 * np.sin(phi + THIRD_PI)) * np.sin(phi + TWO_THIRDS_PI) \
        - np.exp(r * SQRT3 * np.sin(phi - THIRD_PI)) * np.sin(phi - TWO_THIRDS_PI)


def _dF_dr(r, phi):
    up = SQRT3 * np.sin(phi + THIRD_PI)
    down = SQRT3 * np.sin(phi - THIRD_PI)
    return up * np.sin(phi + TWO_THIRDS_PI) * np.exp(-r * up) \
        - down * np.sin(phi - TWO_THIRDS_PI) * np.exp(r * down)


def lemma_h(r: float, phi: float) -> float:
    """h(r, phi) = e^{r cos phi} + e^{r cos(phi + 2pi/3)} + e^{r cos(phi - 2pi/3)}."""
    _check_r(r)
    return float(_h(r, _check_phi(phi)))


def lemma_F(r: float, phi: float) -> float:
    """F(r, phi) = e^{-r cos phi} (dh/dphi) / r, non-positive on the whole domain."""
    _check_r(r)
    return float(_F(r, _check_phi(phi)))


def lemma_dh_dr(r: float, phi: float) -> float:
    _check_r(r)
    return float(_dh_dr(r, _check_phi(phi)))


def lemma_dh_dphi(r: float, phi: float) -> float:
    _check_r(r)
    return float(_dh_dphi(r, _check_phi(phi)))


def lemma_dF_dr(r: float, phi: float) -> float:
    _check_r(r)
    return float(_dF_dr(r, _check_phi(phi)))


def chebyshev_exp_identity(x: float, y: float, z: float) -> float:
    """x e^x + y e^y + z e^z for x + y + z = 0; never negative, zero only at the origin."""

    _check_sum_zero((x, y, z))
    return math.fsum(v * math.exp(v) for v in (x, y, z))


def scale_to_norm(z: LogTuple | list[float], c: LogTuple | list[float],
                  allow_equal_norm: bool = False) -> tuple[LogTuple, float]:
    """Rescales the sum-zero z by k = sqrt(sum c^2 / sum z^2) so it has the norm of c.

    Requires sum z^2 < sum c^2, so k > 1; `allow_equal_norm` admits k = 1 as well.
    """

    z, c = LogTuple.coerce(z), LogTuple.coerce(c)
    if z.n != c.n:
        raise ArgumentError(f"scale_to_norm needs tuples of equal length, got {z.n} and {c.n}")
    _check_sum_zero(z.values)
    _check_sum_zero(c.values)

    norm_z = math.fsum(v * v for v in z.values)
    norm_c = math.fsum(v * v for v in c.values)
    if norm_z == 0.0:
        raise ArgumentError("scale_to_norm is undefined for an all-zero z")
    if norm_z > norm_c or (norm_z == norm_c and not allow_equal_norm):
        raise ArgumentError(f"scale_to_norm needs sum z^2 < sum c^2, got {norm_z!r} and {norm_c!r}")

    k = math.sqrt(norm_c / norm_z)
    return z.scaled(k), k


class Lemma1Outcome(NamedTuple):
    exp_ineq: bool
    a_le_x: bool
    c_le_z: bool

    @property
    def consistent(self) -> bool:
        return self.exp_ineq == self.a_le_x == self.c_le_z


def lemma1_equivalence(a_lead: float, x_lead: float, r: float) -> Lemma1Outcome:
    """Evaluates the three equivalent predicates for two equal-norm sum-zero triples:
    sum e^a <= sum e^x, a <= x and c <= z."""

    a, _, c = abc = spherical_from_leading(a_lead, r)
    x, _, z = xyz = spherical_from_leading(x_lead, r)
    exp_abc = math.fsum(math.exp(v) for v in abc)
    exp_xyz = math.fsum(math.exp(v) for v in xyz)
    return Lemma1Outcome(exp_ineq=exp_abc <= exp_xyz, a_le_x=a <= x, c_le_z=c <= z)


class EitherOutcome(NamedTuple):
    exp_le: bool
    neg_exp_le: bool
    coincide: bool


def consequence_either(a_lead: float, x_lead: float, r: float) -> EitherOutcome:
    """For two equal-norm sum-zero triples, sum e^a <= sum e^x or sum e^-a <= sum e^-x;
    both hold only when the triples coincide."""

    abc = spherical_from_leading(a_lead, r)
    xyz = spherical_from_leading(x_lead, r)
    exp_le = math.fsum(math.exp(v) for v in abc) <= math.fsum(math.exp(v) for v in xyz)
    neg_exp_le = math.fsum(math.exp(-v) for v in abc) <= math.fsum(math.exp(-v) for v in xyz)
    return EitherOutcome(exp_le=exp_le, neg_exp_le=neg_exp_le, coincide=abc == xyz)


def _grid_point(r_values, phi_values, index) -> GridPoint:
    i, j = np.unravel_index(index, (len(r_values), len(phi_values)))
    return GridPoint(r=float(r_values[i]), phi=float(phi_values[j]))


def scan_lemma_grid(r_min: float = 0.01, r_max: float = 10.0, r_steps: int = 1000, phi_steps: int = 100,
                    tol: float = 1e-12, fd_check: bool = False) -> LemmaScanReport:
    """Scans F <= tol and dh/dr > -tol over r_steps evenly spaced radii in [r_min, r_max]
    and phi_steps + 1 evenly spaced angles in [0, pi/3].

    Every point also cross-checks F = e^(-r cos phi) (dh/dphi) / r. max dF/dr is reported
    without a claimed sign. With `fd_check`, dh/dr is also compared against central
    differences of h with step 1e-6 r.
    """

    log = get_logger()

    if r_steps < 1 or phi_steps < 0:
        raise UsageError(f"grid needs r_steps >= 1 and phi_steps >= 0, got {r_steps} and {phi_steps}")
    if not (math.isfinite(r_min) and math.isfinite(r_max) and 0 < r_min <= r_max):
        raise UsageError(f"grid needs 0 < r_min <= r_max, got [{r_min}, {r_max}]")
    if r_min == r_max and r_steps != 1:
        raise UsageError("a grid with r_min == r_max must have r_steps == 1")
    if r_min < r_max and r_steps < 2:
        raise UsageError("a grid with r_min < r_max needs r_steps >= 2")

    r_values = np.linspace(r_min, r_max, r_steps)
    phi_values = np.linspace(0.0, THIRD_PI, phi_steps + 1)
    r, phi = r_values[:, None], phi_values[None, :]
    log.info(f"Scanning lemma grid: {r_steps} x {phi_steps + 1} points over r in [{r_min}, {r_max}].")

    F = _F(r, phi)
    dh_dr = _dh_dr(r, phi) * np.ones_like(F)
    dF_dr = _dF_dr(r, phi) * np.ones_like(F)
    h = _h(r, phi)
    identity_error = float(np.max(np.abs(F - np.exp(-r * np.cos(phi)) * _dh_dphi(r, phi) / r)))
    monotonicity_violations = int(np.count_nonzero(np.diff(h, axis=1) >= 0))

    max_fd_rel_error = None
    if fd_check:
        step = 1e-6 * r
        fd = (_h_minus_3(r + step, phi) - _h_minus_3(r - step, phi)) / (2 * step)
        max_fd_rel_error = float(np.max(np.abs(fd - dh_dr) / np.maximum(np.abs(dh_dr), np.finfo(float).tiny)))

    i_F, i_dh, i_dF = int(np.argmax(F)), int(np.argmin(dh_dr)), int(np.argmax(dF_dr))
    max_F, min_dh_dr = float(F.flat[i_F]), float(dh_dr.flat[i_dh])
    report = LemmaScanReport(
        r_min=r_min, r_max=r_max, r_steps=r_steps, phi_steps=phi_steps, tolerance=tol, points=int(F.size),
        max_F=max_F, max_F_at=_grid_point(r_values, phi_values, i_F),
        min_dh_dr=min_dh_dr, min_dh_dr_at=_grid_point(r_values, phi_values, i_dh),
        h_monotonicity_violations=monotonicity_violations,
        max_dF_dr=float(dF_dr.flat[i_dF]), max_dF_dr_at=_grid_point(r_values, phi_values, i_dF),
        max_fd_rel_error=max_fd_rel_error,
        max_identity_error=identity_error,
        F_claim_holds=max_F <= tol,
        dh_dr_claim_holds=min_dh_dr > -tol,
        identity_holds=identity_error <= IDENTITY_TOL,
    )
    if not report.passed:
        log.warning(f"Lemma grid claims failed: max F = {max_F!r}, min dh/dr = {min_dh_dr!r}, "
                    f"F identity error = {identity_error!r}.")
    return report
