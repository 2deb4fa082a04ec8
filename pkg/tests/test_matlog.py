import math
import os
import sys
import unittest

import numpy as np
from scipy import linalg as sla

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.ssli_verifier.matlog import Mat, SymMat, cof, dev3, frobenius_sq, geodesic_dist_iso_sq, hencky, inv_spd, \
    log_real_diagonalizable, log_spd, matrix_exp, polar, principal_log_batch, skew_part, spd_certificate, sqrt_spd, \
    sym_eig, sym_part
from src.ssli_verifier.schema import ArgumentError, DomainError, InputParseError
from src.ssli_verifier.search import random_rotations
from src.ssli_verifier.symtuple import elem_sym_all


def rotation_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def random_spd(rng: np.random.Generator, eigenvalues) -> np.ndarray:
    q = random_rotations(rng, 1)[0]
    p = (q * np.asarray(eigenvalues, dtype=float)) @ q.T
    return 0.5 * (p + p.T)


class TestTypes(unittest.TestCase):
    def test_shapes_and_values(self):
        with self.assertRaises(ArgumentError):
            Mat(entries=np.eye(4))
        with self.assertRaises(ArgumentError):
            Mat(entries=[[1.0, math.nan], [0.0, 1.0]])
        with self.assertRaises(ArgumentError):
            Mat(entries=[["a", "b"], ["c", "d"]])
        self.assertEqual(2, Mat(entries=[[1, 2], [3, 4]]).dim)

    def test_read_only(self):
        m = Mat(entries=np.eye(3))
        with self.assertRaises(ValueError):
            m.entries[0, 0] = 2.0

    def test_symmetric(self):
        with self.assertRaises(ArgumentError):
            SymMat(entries=[[1.0, 2.0], [0.0, 1.0]])
        s = SymMat(entries=[[1.0, 2.0], [2.0 + 1e-13, 1.0]])
        self.assertTrue(np.array_equal(s.entries, s.entries.T))
        self.assertEqual(SymMat.diag([1, 2, 3]), SymMat(entries=np.diag([1.0, 2.0, 3.0])))

    def test_json(self):
        m = Mat.from_json("[[1, 2], [3, 4]]")
        self.assertEqual(10.0, m.entries.sum())
        self.assertEqual("[[1.0, 2.0], [3.0, 4.0]]", m.to_json())
        self.assertEqual([[1.0, 2.0], [3.0, 4.0]], m.model_dump()["entries"])
        for text in ("[[1, 2], [3, 4]", '{"entries": [[1]]}', "[1, 2, 3, 4]"):
            with self.assertRaises(InputParseError, msg=text):
                Mat.from_json(text)
        with self.assertRaises(ArgumentError):
            Mat.from_json("[[1, 2, 3], [4, 5, 6]]")


class TestSymEig(unittest.TestCase):
    def test_against_numpy(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            a = rng.normal(size=(3, 3))
            a = a + a.T
            decomp = sym_eig(SymMat(entries=a))
            self.assertTrue(np.all(np.diff(decomp.eigenvalues) <= 0))
            self.assertTrue(np.allclose(np.sort(np.linalg.eigvalsh(a))[::-1], decomp.eigenvalues, atol=1e-12))
            self.assertTrue(np.allclose(decomp.eigenvectors.T @ decomp.eigenvectors, np.eye(3), atol=1e-12))
            self.assertLess(np.linalg.norm(decomp.reconstruct() - a), 1e-12 * np.linalg.norm(a))
            for j in range(3):
                column = decomp.eigenvectors[:, j]
                self.assertGreater(column[np.argmax(np.abs(column))], 0)

    def test_diagonal_input(self):
        decomp = sym_eig(SymMat.diag([1.0, 3.0, 2.0]))
        self.assertEqual([3.0, 2.0, 1.0], decomp.eigenvalues.tolist())

    def test_repeated_eigenvalues(self):
        decomp = sym_eig(SymMat(entries=2.0 * np.eye(3)))
        self.assertEqual([2.0, 2.0, 2.0], decomp.eigenvalues.tolist())


class TestSpectralFunctions(unittest.TestCase):
    def test_log_of_diagonal(self):
        e = math.e
        log = log_spd(SymMat.diag([e ** 2, e, e ** -3]))
        self.assertTrue(np.allclose(np.diag([2.0, 1.0, -3.0]), log.entries, atol=1e-14))

    def test_not_positive_definite(self):
        for entries in ([[1.0, 2.0], [2.0, 1.0]], np.diag([1.0, 0.0, 2.0]), np.zeros((3, 3)), -np.eye(2)):
            with self.assertRaises(DomainError):
                spd_certificate(SymMat(entries=entries))
            with self.assertRaises(DomainError):
                log_spd(entries)

    def test_ill_conditioned_log_norm(self):
        """||log P||^2 equals the sum of squared log-eigenvalues for condition numbers up to 1e6."""
        rng = np.random.default_rng(17)
        for _ in range(100):
            eigenvalues = np.exp(rng.uniform(-math.log(1e3), math.log(1e3), size=3))
            eigenvalues[0], eigenvalues[1] = 1e3, 1e-3
            expected = math.fsum(np.log(eigenvalues) ** 2)
            got = frobenius_sq(log_spd(random_spd(rng, eigenvalues)))
            self.assertTrue(math.isclose(expected, got, rel_tol=1e-9), (expected, got))

    def test_invariants_against_elementary_symmetric(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            eigenvalues = np.exp(rng.uniform(-math.log(100.0), math.log(100.0), size=3))
            p = SymMat(entries=random_spd(rng, eigenvalues))
            e = elem_sym_all(eigenvalues.tolist())
            self.assertTrue(math.isclose(e[1], p.trace(), rel_tol=1e-10))
            self.assertTrue(math.isclose(e[2], cof(p).trace(), rel_tol=1e-10))
            self.assertTrue(math.isclose(e[3], p.det(), rel_tol=1e-10))

    def test_exp_inverts_log(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            p = random_spd(rng, np.exp(rng.normal(size=3)))
            back = matrix_exp(log_spd(p)).entries
            self.assertLess(np.linalg.norm(back - p), 1e-10 * np.linalg.norm(p))

    def test_sqrt_and_inverse(self):
        p = SymMat(entries=[[4.0, 1.0, 0.0], [1.0, 3.0, 0.0], [0.0, 0.0, 2.0]])
        root = sqrt_spd(p).entries
        self.assertTrue(np.allclose(root @ root, p.entries, atol=1e-12))
        self.assertTrue(np.allclose(inv_spd(p).entries @ p.entries, np.eye(3), atol=1e-12))


class TestAlgebra(unittest.TestCase):
    def test_cofactor(self):
        rng = np.random.default_rng(1)
        for dim in (2, 3):
            for _ in range(20):
                m = rng.normal(size=(dim, dim))
                if abs(np.linalg.det(m)) < 1e-2:
                    continue
                expected = np.linalg.det(m) * np.linalg.inv(m).T
                self.assertTrue(np.allclose(expected, cof(m).entries, atol=1e-10))

    def test_dev3(self):
        x = np.arange(9.0).reshape(3, 3)
        d = dev3(x)
        self.assertAlmostEqual(0.0, d.trace(), places=14)
        self.assertEqual(x[0, 1], d.entries[0, 1])
        with self.assertRaises(ArgumentError):
            dev3(np.eye(2))

    def test_sym_and_skew_parts(self):
        x = np.arange(9.0).reshape(3, 3)
        self.assertTrue(np.allclose(x, sym_part(x).entries + skew_part(x).entries))
        self.assertTrue(np.allclose(-skew_part(x).entries, skew_part(x).entries.T))

    def test_frobenius_sq(self):
        self.assertEqual(30.0, frobenius_sq([[1.0, 2.0], [3.0, 4.0]]))

    def test_matrix_exp_of_zero(self):
        self.assertTrue(np.allclose(np.eye(3), matrix_exp(np.zeros((3, 3))).entries, atol=1e-15))


class TestPolar(unittest.TestCase):
    def test_factors(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            z = rng.normal(size=(3, 3))
            if abs(np.linalg.det(z)) < 1e-3:
                continue
            u, h = polar(z)
            self.assertLess(np.linalg.norm(u.entries @ h.entries - z), 1e-11 * np.linalg.norm(z))
            self.assertLess(np.linalg.norm(u.entries.T @ u.entries - np.eye(3)), 1e-12)
            self.assertTrue(np.array_equal(h.entries, h.entries.T))
            self.assertGreater(sym_eig(h).eigenvalues[-1], 0)

    def test_spd_input_has_identity_factor(self):
        p = np.array([[4.0, 1.0, 0.0], [1.0, 3.0, 0.0], [0.0, 0.0, 2.0]])
        u, h = polar(p)
        self.assertTrue(np.allclose(np.eye(3), u.entries, atol=1e-12))
        self.assertTrue(np.allclose(p, h.entries, atol=1e-12))

    def test_singular(self):
        with self.assertRaises(DomainError):
            polar([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 1.0, 1.0]])
        with self.assertRaises(DomainError):
            polar(np.zeros((3, 3)))


class TestStrain(unittest.TestCase):
    def test_hencky_of_diagonal(self):
        h = hencky(np.diag([math.e, 1.0, 1.0 / math.e]))
        self.assertTrue(np.allclose(np.diag([1.0, 0.0, -1.0]), h.entries, atol=1e-14))

    def test_hencky_ignores_rotation(self):
        f = np.diag([2.0, 1.0, 0.5])
        self.assertTrue(np.allclose(hencky(f).entries, hencky(rotation_z(0.7) @ f).entries, atol=1e-12))

    def test_geodesic_distance(self):
        f = np.diag([math.e, 1.0, 1.0 / math.e])
        self.assertTrue(math.isclose(2.0, geodesic_dist_iso_sq(f), abs_tol=1e-12))
        self.assertLess(geodesic_dist_iso_sq(np.eye(3)), 1e-24)
        self.assertLess(geodesic_dist_iso_sq(rotation_z(1.2)), 1e-24)

    def test_geodesic_scale_invariance(self):
        rng = np.random.default_rng(4)
        f = rng.normal(size=(3, 3))
        if np.linalg.det(f) < 0:
            f[0] = -f[0]
        reference = geodesic_dist_iso_sq(f)
        for alpha in (0.1, 1.0, 10.0):
            self.assertTrue(math.isclose(reference, geodesic_dist_iso_sq(alpha * f), rel_tol=1e-10, abs_tol=1e-12))

    def test_geodesic_needs_positive_determinant(self):
        with self.assertRaises(DomainError):
            geodesic_dist_iso_sq(np.diag([-1.0, 1.0, 1.0]))
        with self.assertRaises(DomainError):
            geodesic_dist_iso_sq(np.zeros((3, 3)))


class TestGeneralLogarithm(unittest.TestCase):
    def test_rotation(self):
        log = log_real_diagonalizable(rotation_z(0.5))
        expected = np.array([[0.0, -0.5, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0]])
        self.assertTrue(np.allclose(expected, log.entries, atol=1e-12))

    def test_agrees_with_spd_log(self):
        p = np.array([[4.0, 1.0, 0.0], [1.0, 3.0, 0.0], [0.0, 0.0, 2.0]])
        self.assertTrue(np.allclose(log_spd(p).entries, log_real_diagonalizable(p).entries, atol=1e-12))
        self.assertTrue(np.allclose(sla.logm(p), log_real_diagonalizable(p).entries, atol=1e-12))

    def test_no_principal_logarithm(self):
        for m in (rotation_z(math.pi), np.diag([-1.0, 1.0, 1.0]), np.zeros((3, 3)),
                  np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])):
            with self.assertRaises(DomainError):
                log_real_diagonalizable(m)

    def test_batch_mask(self):
        stack = np.stack([np.eye(3), np.diag([-1.0, 1.0, 1.0]), rotation_z(0.5)])
        logs, admissible = principal_log_batch(stack)
        self.assertEqual([True, False, True], admissible.tolist())
        self.assertTrue(np.allclose(np.zeros((3, 3)), logs[0], atol=1e-14))
        self.assertTrue(np.array_equal(np.zeros((3, 3)), logs[1]))
        self.assertAlmostEqual(0.5, logs[2][1, 0], places=12)


if __name__ == '__main__':
    unittest.main()
