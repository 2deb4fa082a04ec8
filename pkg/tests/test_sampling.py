import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.ssli_verifier.schema import ArgumentError
from src.ssli_verifier.search import block_rng, equal_product_logs, premise_logs, quaternions_to_rotations, \
    random_invertible, random_rotations, sample_equal_product_pair, sample_premise_pair, shard_seed


class TestSeeding(unittest.TestCase):
    def test_shard_seed(self):
        self.assertEqual(shard_seed(7, 3), shard_seed(7, 3))
        self.assertNotEqual(shard_seed(7, 3), shard_seed(7, 4))
        self.assertNotEqual(shard_seed(7, 3), shard_seed(8, 3))
        self.assertTrue(0 <= shard_seed(2 ** 64 - 1, 0) < 2 ** 64)

    def test_block_rng_is_reproducible(self):
        self.assertTrue(np.array_equal(block_rng(1, 2).normal(size=10), block_rng(1, 2).normal(size=10)))


class TestTupleSamplers(unittest.TestCase):
    def test_equal_products(self):
        ly, la = equal_product_logs(np.random.default_rng(0), 4, 2.0, 500)
        self.assertEqual((500, 4), ly.shape)
        for logs in (ly, la):
            self.assertTrue(np.all(np.abs(np.prod(np.exp(logs), axis=1) - 1.0) < 1e-12))
            self.assertTrue(np.all(np.diff(logs, axis=1) <= 0))

    def test_deterministic(self):
        first = sample_equal_product_pair(3, np.random.default_rng(42))
        second = sample_equal_product_pair(3, np.random.default_rng(42))
        self.assertEqual(first, second)

    def test_tiny_spread(self):
        y, a = sample_equal_product_pair(3, np.random.default_rng(1), spread=1e-8)
        self.assertTrue(all(abs(v - 1.0) < 1e-6 for v in y.values + a.values))

    def test_bad_arguments(self):
        with self.assertRaises(ArgumentError):
            sample_equal_product_pair(1, np.random.default_rng(0))
        with self.assertRaises(ArgumentError):
            sample_equal_product_pair(3, np.random.default_rng(0), spread=0.0)

    def test_premise_sampler_rate(self):
        """Most premise draws satisfy e_1(y) >= e_1(a) and e_2(y) >= e_2(a) with equal products."""
        ly, la = premise_logs(np.random.default_rng(3), 1.0, 2000)
        y, a = np.exp(ly), np.exp(la)
        e1_y, e1_a = y.sum(axis=1), a.sum(axis=1)
        e2_y = 0.5 * (e1_y ** 2 - (y * y).sum(axis=1))
        e2_a = 0.5 * (e1_a ** 2 - (a * a).sum(axis=1))
        rate = np.mean((e1_y >= e1_a) & (e2_y >= e2_a))
        self.assertGreaterEqual(rate, 0.2)
        self.assertTrue(np.all(np.abs(ly.sum(axis=1)) < 1e-12))
        self.assertTrue(np.all(np.abs(la.sum(axis=1)) < 1e-12))

    def test_premise_sampler_reaches_non_majorizing_pairs(self):
        """Some accepted draws have premises holding while log y does not majorize log a."""
        ly, la = premise_logs(np.random.default_rng(3), 1.0, 20000)
        y, a = np.exp(ly), np.exp(la)
        e1_y, e1_a = y.sum(axis=1), a.sum(axis=1)
        e2_y = 0.5 * (e1_y ** 2 - (y * y).sum(axis=1))
        e2_a = 0.5 * (e1_a ** 2 - (a * a).sum(axis=1))
        holds = (e1_y >= e1_a) & (e2_y >= e2_a)
        majorizes = np.all(np.cumsum(ly, axis=1)[:, :2] >= np.cumsum(la, axis=1)[:, :2] - 1e-12, axis=1)
        self.assertGreaterEqual(np.mean(holds & ~majorizes) / np.mean(holds), 0.02)

    def test_premise_pair(self):
        y, a = sample_premise_pair(np.random.default_rng(5))
        self.assertEqual(3, y.n)
        self.assertAlmostEqual(1.0, float(np.prod(y.values)), places=12)


class TestMatrixSamplers(unittest.TestCase):
    def test_rotations(self):
        rotations = random_rotations(np.random.default_rng(0), 200)
        self.assertEqual((200, 3, 3), rotations.shape)
        for q in rotations:
            self.assertLess(np.linalg.norm(q.T @ q - np.eye(3)), 1e-12)
            self.assertAlmostEqual(1.0, np.linalg.det(q), places=12)

    def test_identity_quaternion(self):
        q = quaternions_to_rotations(np.array([[1.0, 0.0, 0.0, 0.0]]))
        self.assertTrue(np.array_equal(np.eye(3)[None], q))

    def test_invertible(self):
        rng = np.random.default_rng(6)
        stack = random_invertible(rng, spread=3.0, count=100)
        self.assertEqual((100, 3, 3), stack.shape)
        self.assertTrue(np.all(np.linalg.det(stack) > 0))
        self.assertTrue(np.all(np.linalg.cond(stack) <= 1e3 * (1 + 1e-9)))
        self.assertEqual((3, 3), random_invertible(rng).shape)


if __name__ == '__main__':
    unittest.main()
