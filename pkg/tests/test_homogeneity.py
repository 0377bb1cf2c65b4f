import pytest
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._homogeneity import is_euler_homogeneous, is_quasi_homogeneous, weighted_degree
from logdiv.functions._log_derivations import DivisorInput


class TestQuasiHomogeneous:
    """Test the search for positive weights."""

    def test_homogeneous(self, normal_crossing):
        """Test that homogeneous equations get all-ones weights."""
        assert is_quasi_homogeneous(normal_crossing) == (1, 1)

    def test_cusp(self, cusp):
        """Test that x^2 - y^3 has weights (3, 2)."""
        assert is_quasi_homogeneous(cusp) == (3, 2)

    def test_smooth_curve(self):
        """Test that x + y^2 has weights (2, 1)."""
        assert is_quasi_homogeneous(DivisorInput.parse("x + y^2", ["x", "y"])) == (2, 1)

    def test_brieskorn_surface(self):
        """Test that x^2 + y^3 + z^5 has weights (15, 10, 6)."""
        d = DivisorInput.parse("x^2 + y^3 + z^5", ["x", "y", "z"])
        assert is_quasi_homogeneous(d) == (15, 10, 6)

    def test_two_dimensional_weight_space(self):
        """Test that a positive point is found when the weights are not unique."""
        d = DivisorInput.parse("x*y - z^3", ["x", "y", "z"])
        weights = is_quasi_homogeneous(d)
        assert weights is not None
        assert all(w > 0 for w in weights)
        assert weighted_degree(d.f, weights) is not None

    def test_not_quasi_homogeneous(self):
        """Test that x^4 + y^5 + x^2*y^3 has no weights."""
        d = DivisorInput.parse("x^4 + y^5 + x^2*y^3", ["x", "y"])
        assert is_quasi_homogeneous(d) is None

    def test_weighted_degree(self, cusp):
        """Test the weighted degree of the cusp."""
        assert weighted_degree(cusp.f, (3, 2)) == 6
        assert weighted_degree(cusp.f, (1, 1)) is None


class TestEulerHomogeneous:
    """Test membership of f in its jacobian ideal."""

    def test_quasi_homogeneous_are_euler_homogeneous(self, normal_crossing, cusp):
        """Test that weighted homogeneous equations are Euler homogeneous."""
        assert is_euler_homogeneous(normal_crossing)
        assert is_euler_homogeneous(cusp)

    def test_smooth(self, smooth):
        """Test that a smooth divisor is Euler homogeneous."""
        assert is_euler_homogeneous(smooth)

    def test_tjurina_below_milnor(self):
        """Test that x^4 + y^5 + x^2*y^3 is not in its jacobian ideal."""
        d = DivisorInput.parse("x^4 + y^5 + x^2*y^3", ["x", "y"])
        assert not is_euler_homogeneous(d)
