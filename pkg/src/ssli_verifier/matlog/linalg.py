"""matlog/linalg.py: Eigensolver, spectral functions, polar decomposition and the strain formulas."""

import math
from typing import Any

import numpy as np
from scipy import linalg as sla

from .types import EigenDecomp, Mat, SymMat
from ..logger import get_logger
from ..schema.exceptions import ArgumentError, DomainError

# Jacobi stops once the off-diagonal norm is below this fraction of the matrix norm
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50

# eigenvalues at or below this fraction of the largest one are not positive
SPD_FLOOR = 1e-14
# polar needs |det Z| above this times ||Z||_F^dim
POLAR_DET_TOL = 1e-12
# principal-log admissibility: distance to the closed negative real axis, relative to the spectral radius
NEG_AXIS_TOL = 1e-10
EIGVEC_COND_MAX = 1e8
LOG_IMAG_TOL = 1e-8
LOG_VERIFY_TOL = 1e-8


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """One Jacobi rotation in the (p, q) plane, zeroing a[p, q] in place."""

    theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    g = np.eye(a.shape[0])
    g[p, p] = g[q, q] = c
    g[p, q] = s
    g[q, p] = -s
    a[:] = g.T @ a @ g
    a[p, q] = a[q, p] = 0.0
    v[:] = v @ g


def sym_eig(s: SymMat) -> EigenDecomp:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Eigenvalues come sorted non-increasing; each eigenvector is signed so that its
    largest-magnitude component is positive.
    """

    a = np.array(s.entries, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= JACOBI_TOL * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
        a = 0.5 * (a + a.T)
    else:
        get_logger().warning(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps for {s.to_list()}.")

    eigenvalues = np.diag(a).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    eigenvalues, v = eigenvalues[order], v[:, order]
    for j in range(n):
        lead = np.argmax(np.abs(v[:, j]))
        if v[lead, j] < 0:
            v[:, j] = -v[:, j]
    return EigenDecomp(eigenvalues=eigenvalues, eigenvectors=v)


def spd_certificate(p: SymMat) -> EigenDecomp:
    """sym_eig of p, raising DomainError unless every eigenvalue is positive."""

    decomp = sym_eig(p)
    largest = float(np.max(np.abs(decomp.eigenvalues)))
    smallest = float(decomp.eigenvalues[-1])
    if largest == 0.0 or smallest <= SPD_FLOOR * largest:
        raise DomainError(f"matrix is not positive definite, eigenvalues {decomp.eigenvalues.tolist()}")
    return decomp


def _sym(m: Any) -> SymMat:
    return m if isinstance(m, SymMat) else SymMat(entries=m)


def _mat(m: Any) -> Mat:
    return m if isinstance(m, Mat) else Mat(entries=m)


def log_spd(p: SymMat | Any) -> SymMat:
    """Principal logarithm V diag(log l) V^T of a symmetric positive definite matrix."""
    return spd_certificate(_sym(p)).apply(np.log)


def sqrt_spd(p: SymMat | Any) -> SymMat:
    return spd_certificate(_sym(p)).apply(np.sqrt)


def inv_spd(p: SymMat | Any) -> SymMat:
    return spd_certificate(_sym(p)).apply(np.reciprocal)


def frobenius_sq(m: Mat | Any) -> float:
    return math.fsum(float(x) ** 2 for x in _mat(m).entries.flat)


def cof(m: Mat | Any) -> Mat:
    """Cofactor matrix, equal to det(M) M^-T when M is invertible."""

    e = _mat(m).entries
    if e.shape[0] == 2:
        return Mat(entries=[[e[1, 1], -e[1, 0]], [-e[0, 1], e[0, 0]]])
    return Mat(entries=[np.cross(e[1], e[2]), np.cross(e[2], e[0]), np.cross(e[0], e[1])])


def polar(z: Mat | Any) -> tuple[Mat, SymMat]:
    """Right polar decomposition Z = U_p H with U_p orthogonal and H symmetric positive definite.

    The factors come from the SVD of Z rather than from sqrt(Z^T Z), which would square
    the condition number of Z.
    """

    z = _mat(z)
    norm = z.frobenius()
    det = z.det()
    if abs(det) <= POLAR_DET_TOL * norm ** z.dim:
        cond = np.linalg.cond(z.entries) if norm > 0 else math.inf
        raise DomainError(f"polar needs an invertible matrix, got det {det!r} (condition number {cond:.3g})")

    u, h = sla.polar(z.entries, side="right")
    h = _sym(0.5 * (h + h.T))
    spd_certificate(h)
    return Mat(entries=u), h


def dev3(x: Mat | Any) -> Mat:
    """Trace-free part X - tr(X)/3 I of a 3x3 matrix."""

    x = _mat(x)
    if x.dim != 3:
        raise ArgumentError(f"dev3 needs a 3x3 matrix, got {x.dim}x{x.dim}")
    return Mat(entries=x.entries - x.trace() / 3.0 * np.eye(3))


def sym_part(x: Mat | Any) -> SymMat:
    e = _mat(x).entries
    return SymMat(entries=0.5 * (e + e.T))


def skew_part(x: Mat | Any) -> Mat:
    e = _mat(x).entries
    return Mat(entries=0.5 * (e - e.T))


def hencky(f: Mat | Any) -> SymMat:
    """Hencky strain log sqrt(F^T F), the logarithm of the stretch factor of F."""

    f = _mat(f)
    if f.det() == 0.0:
        raise DomainError("hencky needs an invertible deformation gradient")
    _, h = polar(f)
    return log_spd(h)


def geodesic_dist_iso_sq(f: Mat | Any) -> float:
    """||dev3 log sqrt(F^T F)||_F^2, the squared geodesic distance of F / det(F)^(1/3) to SO(3)."""

    f = _mat(f)
    det = f.det()
    if not det > 0:
        raise DomainError(f"geodesic distance needs det F > 0, got {det!r}")
    return frobenius_sq(dev3(hencky(f)))


def matrix_exp(m: Mat | Any) -> Mat:
    return Mat(entries=sla.expm(_mat(m).entries))


def principal_log_batch(stack: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Principal logs of a (N, d, d) stack by eigendecomposition; returns (logs, admissible mask).

    Applies the admissibility rules of log_real_diagonalizable, without its exponential round trip.
    """

    stack = np.asarray(stack, dtype=float)
    w, v = np.linalg.eig(stack)
    radius = np.max(np.abs(w), axis=-1)
    distance = np.where(w.real <= 0, np.abs(w.imag), np.abs(w))
    admissible = (radius > 0) & (np.min(distance, axis=-1) > NEG_AXIS_TOL * radius)
    admissible &= np.linalg.cond(v) <= EIGVEC_COND_MAX

    logs = np.zeros(stack.shape)
    if np.any(admissible):
        va, wa = v[admissible], w[admissible]
        full = (va * np.log(wa)[:, None, :]) @ np.linalg.inv(va)
        scale = np.maximum(1.0, np.linalg.norm(full, axis=(-2, -1)))
        real_ok = np.max(np.abs(full.imag), axis=(-2, -1)) <= LOG_IMAG_TOL * scale
        logs[admissible] = full.real
        admissible[np.flatnonzero(admissible)[~real_ok]] = False
    return logs, admissible


def log_real_diagonalizable(m: Mat | Any, verify: bool = True) -> Mat:
    """Real principal logarithm of a matrix diagonalizable over C with no eigenvalue on (-inf, 0].

    Raises:
        DomainError: for eigenvalues on or near the closed negative real axis, ill-conditioned
            eigenvectors, or a result whose exponential does not reproduce the input.
    """

    m = _mat(m)
    w, v = np.linalg.eig(m.entries)
    radius = float(np.max(np.abs(w)))
    if radius == 0.0:
        raise DomainError("principal logarithm of the zero matrix is undefined")
    distance = np.where(w.real <= 0, np.abs(w.imag), np.abs(w))
    if np.min(distance) <= NEG_AXIS_TOL * radius:
        raise DomainError(f"eigenvalues {w.tolist()} touch the closed negative real axis, no principal logarithm")
    cond = float(np.linalg.cond(v))
    if cond > EIGVEC_COND_MAX:
        raise DomainError(f"eigenvector matrix condition number {cond:.3g} > {EIGVEC_COND_MAX:.0e}, "
                          f"treated as defective")

    logs, admissible = principal_log_batch(m.entries[None])
    if not admissible[0]:
        raise DomainError(f"principal logarithm of {m.to_list()} is not real")
    result = Mat(entries=logs[0])

    if verify:
        back = sla.expm(result.entries)
        residual = float(np.linalg.norm(back - m.entries))
        if residual > LOG_VERIFY_TOL * m.frobenius():
            raise DomainError(f"exp(log M) misses M by {residual:.3g} relative to ||M|| = {m.frobenius():.3g}")
    return result
