r"""
Test file for the `oracle` module of the "holcert" library.

Notes
-----
#.  Written for the holcert library.
"""

# %% Imports
from itertools import product
import unittest

import numpy as np
from sympy import Rational

import holcert as hc


# %% FloatPoint
class Test_FloatPoint(unittest.TestCase):
    r"""
    Tests the FloatPoint class with the following cases:
        origin
        from rationals
        bad step, tolerance and shape
    """

    def test_origin(self) -> None:
        pt = hc.FloatPoint.origin(6, step=1e-3)
        np.testing.assert_array_equal(pt.coords, np.zeros(6))
        self.assertEqual(pt.step, 1e-3)

    def test_from_rationals(self) -> None:
        pt = hc.FloatPoint.from_rationals([Rational(1, 2), Rational(-3, 8), 0])
        np.testing.assert_array_equal(pt.coords, np.array([0.5, -0.375, 0.0]))

    def test_bad(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.FloatPoint(np.zeros(6), step=0.0)
        with self.assertRaises(hc.InputError):
            hc.FloatPoint(np.zeros(6), tolerance=-1.0)
        with self.assertRaises(hc.InputError):
            hc.FloatPoint(np.zeros((2, 3)))


# %% random_rational_points
class Test_random_rational_points(unittest.TestCase):
    r"""
    Tests the random_rational_points function with the following cases:
        same seed gives the same points
        coordinates in [-1/2, 1/2] with denominator dividing 8
        no points
    """

    def test_deterministic(self) -> None:
        self.assertEqual(hc.random_rational_points(6, 3, seed=4), hc.random_rational_points(6, 3, seed=4))

    def test_range(self) -> None:
        for point in hc.random_rational_points(7, 5, seed=1):
            self.assertEqual(len(point), 7)
            for x in point:
                self.assertLessEqual(abs(x), Rational(1, 2))
                self.assertEqual(8 % x.q, 0)

    def test_empty(self) -> None:
        self.assertEqual(hc.random_rational_points(6, 0, seed=1), [])


# %% metric_at
class Test_metric_at(unittest.TestCase):
    r"""
    Tests the metric_at function with the following cases:
        known values for h = so(2)
        agrees with the exact metric at a rational point
    """

    def test_known(self) -> None:
        g = hc.metric_at(hc.get_fixture("F1").spec, np.array([0, 0, 1, 1, 1, 0.0]))
        self.assertEqual(g[2, 5], -1.0)
        self.assertEqual(g[3, 5], 1.0)
        self.assertEqual(g[4, 4], 2.0)
        self.assertEqual(g[0, 4], 1.0)

    def test_exact(self) -> None:
        spec = hc.get_fixture("F4").spec
        metric = hc.build_metric(spec)
        point = hc.random_rational_points(spec.dim, 1, seed=2)[0]
        exact = np.array(hc.evaluate_matrix(metric.g, point).tolist(), dtype=float)
        np.testing.assert_allclose(hc.metric_at(spec, np.array([float(x) for x in point])), exact, atol=1e-12)


# %% fd_christoffel and fd_riemann
class Test_fd_tensors(unittest.TestCase):
    r"""
    Tests the fd_christoffel and fd_riemann functions with the following cases:
        Christoffel symbols match the exact ones at random points
        curvature matches the exact one at a random point
    """

    @classmethod
    def setUpClass(cls) -> None:
        cls.spec = hc.get_fixture("F1").spec
        cls.tower = hc.build_tower(cls.spec, 0)

    def test_christoffel(self) -> None:
        for point in hc.random_rational_points(self.spec.dim, 2, seed=3):
            approx = hc.fd_christoffel(self.spec, hc.FloatPoint.from_rationals(point))
            for a, b, c in product(range(self.spec.dim), repeat=3):
                exact = float(hc.evaluate(self.tower.christoffel.get(a + 1, b + 1, c + 1), point))
                self.assertTrue(hc.within_tolerance(float(approx[a, b, c]), exact, 1e-6), (a, b, c))

    def test_riemann(self) -> None:
        point = hc.random_rational_points(self.spec.dim, 1, seed=5)[0]
        approx = hc.fd_riemann(self.spec, hc.FloatPoint.from_rationals(point))
        R0 = self.tower.tensor(0)
        for key in product(range(1, self.spec.dim + 1), repeat=4):
            exact = float(hc.evaluate(R0.get(key), point))
            value = float(approx[tuple(k - 1 for k in key)])
            self.assertTrue(hc.within_tolerance(value, exact, 1e-6), key)


# %% loop_transport
class Test_loop_transport(unittest.TestCase):
    r"""
    Tests the loop_transport function with the following cases:
        reproduces the curvature operator of the (n+3, n+4) plane
        flat plane
        bad plane
        too few steps
    """

    def setUp(self) -> None:
        self.spec = hc.get_fixture("F1").spec

    def test_operator(self) -> None:
        tower = hc.build_tower(self.spec, 0)
        exact = np.array(tower.operator(5, 6).tolist(), dtype=float)
        approx = hc.loop_transport(self.spec, (5, 6))
        self.assertLessEqual(float(np.max(np.abs(approx - exact))), 5e-3)

    def test_flat(self) -> None:
        approx = hc.loop_transport(self.spec, (1, 2), steps=100)
        self.assertLessEqual(float(np.max(np.abs(approx))), 5e-3)

    def test_bad_plane(self) -> None:
        with self.assertRaises(hc.InputError):
            hc.loop_transport(self.spec, (5, 5))
        with self.assertRaises(hc.InputError):
            hc.loop_transport(self.spec, (0, 7))

    def test_steps(self) -> None:
        with self.assertRaises(hc.OracleError):
            hc.loop_transport(self.spec, (5, 6), steps=3)


# %% within_tolerance and convergence_ratio
class Test_within_tolerance(unittest.TestCase):
    r"""
    Tests the within_tolerance and convergence_ratio functions with the following cases:
        relative bound for large values
        floor acts as an absolute bound
        ratio and vanishing fine error
    """

    def test_relative(self) -> None:
        self.assertTrue(hc.within_tolerance(1000.0005, 1000.0, 1e-6))
        self.assertFalse(hc.within_tolerance(1000.01, 1000.0, 1e-6))

    def test_floor(self) -> None:
        self.assertTrue(hc.within_tolerance(5e-7, 0.0, 1e-6))
        self.assertFalse(hc.within_tolerance(5e-7, 0.0, 1e-6, floor=0.1))

    def test_ratio(self) -> None:
        self.assertAlmostEqual(hc.convergence_ratio((4e-6, 1e-6)), 4.0)
        self.assertEqual(hc.convergence_ratio((1e-6, 0.0)), float("inf"))


# %% Unit test execution
if __name__ == "__main__":
    unittest.main(exit=False)
