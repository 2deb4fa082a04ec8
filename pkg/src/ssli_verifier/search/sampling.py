"""search/sampling.py: Seeded samplers for tuple pairs, rotations and invertible matrices.

Each campaign block draws from `block_rng(seed, block)`, whose seed comes from
`numpy.random.SeedSequence(seed, spawn_key=(block,))`. A block is therefore
reproducible on its own, independent of which thread runs it.
"""

import math

import numpy as np

from ..schema.exceptions import ArgumentError
from ..symtuple import PositiveTuple

# width of the log-normal factor relating the two spread increments of the premise sampler
PREMISE_RATIO_WIDTH = 0.5
# share of premise-sampler candidates drawn independently of a
INDEPENDENT_SHARE = 0.5


def shard_seed(seed: int, block: int) -> int:
    """64-bit seed of one campaign block."""
    return int(np.random.SeedSequence(seed, spawn_key=(block,)).generate_state(1, np.uint64)[0])


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(shard_seed(seed, block))


def _sorted_desc(x: np.ndarray) -> np.ndarray:
    return np.sort(x, axis=-1)[..., ::-1]


def equal_product_logs(rng: np.random.Generator, n: int, spread: float, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Log-coordinates of `count` pairs, each row centered so its product is 1; rows sorted non-increasing."""

    logs = rng.normal(0.0, spread, size=(2, count, n))
    logs -= logs.mean(axis=-1, keepdims=True)
    return _sorted_desc(logs[0]), _sorted_desc(logs[1])


def sample_equal_product_pair(n: int, rng: np.random.Generator, spread: float = 1.0,
                              ) -> tuple[PositiveTuple, PositiveTuple]:
    """One pair (y, a) of length-n tuples with product 1, drawn with log-scale width `spread`."""

    if n < 2:
        raise ArgumentError(f"n must be >= 2, got {n}")
    if not spread > 0:
        raise ArgumentError(f"spread must be positive, got {spread}")
    ly, la = equal_product_logs(rng, n, spread, 1)
    return PositiveTuple(values=np.exp(ly[0]).tolist()), PositiveTuple(values=np.exp(la[0]).tolist())


def _e1_e2(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    e1 = x.sum(axis=-1)
    e2 = 0.5 * (e1 * e1 - (x * x).sum(axis=-1))
    return e1, e2


def premise_logs(rng: np.random.Generator, spread: float, count: int, attempts: int = 8,
                 ) -> tuple[np.ndarray, np.ndarray]:
    """Triples (y, a) with e_1(y) >= e_1(a), e_2(y) >= e_2(a) and equal products, as sorted log-coordinates.

    Each candidate y is, with probability INDEPENDENT_SHARE, an independent equal-product
    draw; otherwise it starts from a, the largest log-coordinate moves up by d, the smallest
    moves by d' of either sign and the middle one absorbs the difference so the product is
    unchanged. Both kinds reach pairs where log y does not majorize log a. Draws whose e_1
    or e_2 margin is negative are redrawn up to `attempts` times; the last draw is kept
    either way.
    """

    _, la = equal_product_logs(rng, 3, spread, count)
    ly = la.copy()
    a = np.exp(la)
    a_e1, a_e2 = _e1_e2(a)
    pending = np.ones(count, dtype=bool)

    for _ in range(attempts):
        idx = np.flatnonzero(pending)
        if idx.size == 0:
            break
        up = np.abs(rng.normal(0.0, spread, size=idx.size))
        sign = np.where(rng.random(idx.size) < 0.5, -1.0, 1.0)
        down = sign * up * np.exp(rng.normal(0.0, PREMISE_RATIO_WIDTH, size=idx.size))
        cand = la[idx].copy()
        cand[:, 0] += up
        cand[:, 2] -= down
        cand[:, 1] = -(cand[:, 0] + cand[:, 2])
        cand = _sorted_desc(cand)

        fresh, _ = equal_product_logs(rng, 3, spread, idx.size)
        independent = rng.random(idx.size) < INDEPENDENT_SHARE
        cand[independent] = fresh[independent]

        e1, e2 = _e1_e2(np.exp(cand))
        ly[idx] = cand
        pending[idx] = (e1 < a_e1[idx]) | (e2 < a_e2[idx])
    return ly, la


def sample_premise_pair(rng: np.random.Generator, spread: float = 1.0, attempts: int = 8,
                        ) -> tuple[PositiveTuple, PositiveTuple]:
    ly, la = premise_logs(rng, spread, 1, attempts)
    return PositiveTuple(values=np.exp(ly[0]).tolist()), PositiveTuple(values=np.exp(la[0]).tolist())


def quaternions_to_rotations(q: np.ndarray) -> np.ndarray:
    """(N, 4) unit quaternions (w, x, y, z) to (N, 3, 3) rotation matrices."""

    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    return np.stack([
        np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], axis=-1),
        np.stack([2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], axis=-1),
        np.stack([2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], axis=-1),
    ], axis=1)


def random_rotations(rng: np.random.Generator, count: int) -> np.ndarray:
    """Rotations uniform on SO(3), from normalized 4-component Gaussian quaternions."""

    q = rng.normal(size=(count, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return quaternions_to_rotations(q)


def random_invertible(rng: np.random.Generator, spread: float = 1.0, max_cond: float = 1e3,
                      count: int | None = None) -> np.ndarray:
    """R1 diag(e^u) R2 with random rotations and |u_i| <= ln(max_cond)/2, so det > 0 and cond <= max_cond.

    Returns a single 3x3 matrix, or a (count, 3, 3) stack when `count` is given.
    """

    size = 1 if count is None else count
    bound = 0.5 * math.log(max_cond)
    u = np.clip(rng.normal(0.0, spread, size=(size, 3)), -bound, bound)
    left, right = random_rotations(rng, size), random_rotations(rng, size)
    z = (left * np.exp(u)[:, None, :]) @ right
    return z[0] if count is None else z
