import pytest
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._errors import NotReducedError
from logdiv.functions._log_derivations import (
    DivisorInput, LogDerivation, SaitoBasis, as_divisor, repeated_factor,
    determinant, adjugate, jacobian_ideal, log_derivations, saito_basis)
from logdiv.functions._parse_expression import parse_expression
from logdiv.functions._polynomials import format_poly, total_degree


class TestDivisorInput:
    """Test divisor validation."""

    def test_parse(self, normal_crossing):
        """Test a valid divisor."""
        assert normal_crossing.n == 2
        assert normal_crossing.variables == ("x", "y")
        assert str(normal_crossing) == "x*y"

    def test_not_reduced(self):
        """Test that x^2*y is rejected with the repeated factor x."""
        with pytest.raises(NotReducedError, match="repeated factor x") as info:
            DivisorInput.parse("x^2*y", ["x", "y"])
        assert info.value.factor == "x"

    def test_not_through_origin(self):
        """Test that f(0) must vanish."""
        with pytest.raises(ValueError, match="origin"):
            DivisorInput.parse("x + 1", ["x"])

    def test_zero_equation(self):
        """Test that the zero polynomial is not a divisor."""
        with pytest.raises(ValueError):
            DivisorInput.parse("0", ["x"])

    def test_reserved_variable_names(self):
        """Test that auxiliary names cannot be divisor variables."""
        with pytest.raises(ValueError, match="reserved"):
            DivisorInput.parse("s*x", ["s", "x"])
        with pytest.raises(ValueError, match="reserved"):
            DivisorInput.parse("xi_x*y", ["xi_x", "y"])

    def test_as_divisor(self, normal_crossing):
        """Test coercion from strings, polynomials and divisors."""
        assert as_divisor(normal_crossing) is normal_crossing
        assert as_divisor("x*y", ["x", "y"]) == normal_crossing
        assert as_divisor(normal_crossing.f) == normal_crossing

    def test_repeated_factor(self):
        """Test the gcd of f with its partials."""
        assert repeated_factor(parse_expression("x*y", ["x", "y"])) is None
        assert format_poly(repeated_factor(parse_expression("(x - y)^2*(x + y)", ["x", "y"]))) == "x - y"

    def test_jacobian_ideal(self, cusp):
        """Test that the jacobian ideal of x^2 - y^3 is (f, 2x, -3y^2)."""
        assert [format_poly(p) for p in jacobian_ideal(cusp)] == ["-y^3 + x^2", "2*x", "-3*y^2"]


class TestLogDerivations:
    """Test generators of the logarithmic derivations."""

    def test_smooth(self, smooth):
        """Test that Der(log x) is generated by x d/dx with alpha 1."""
        ders = log_derivations(smooth)
        assert len(ders) == 1
        assert format_poly(ders[0].a[0]) == "x"
        assert ders[0].alpha == 1

    def test_normal_crossing_generators(self, normal_crossing):
        """Test that the generators of Der(log xy) span x d/dx and y d/dy."""
        ders = log_derivations(normal_crossing)
        assert ders
        for der in ders:
            assert der.apply(normal_crossing.f) == der.alpha * normal_crossing.f
        basis = saito_basis(normal_crossing, ders)
        assert basis is not None
        assert determinant(basis.matrix) == normal_crossing.f.mul_ground(basis.unit)

    def test_cusp_euler_field(self, cusp):
        """Test that the Euler relation 3x d/dx + 2y d/dy (alpha 6) is a logarithmic derivation."""
        R = cusp.ring
        x, y = R.gens
        euler = LogDerivation((3 * x, 2 * y), R(6), cusp.f)
        assert euler.apply(cusp.f) == 6 * cusp.f
        ders = log_derivations(cusp)
        assert saito_basis(cusp, ders) is not None

    def test_invalid_derivation(self, normal_crossing):
        """Test that a derivation not tangent to D is refused."""
        R = normal_crossing.ring
        with pytest.raises(ValueError, match="logarithmic"):
            LogDerivation((R.one, R.zero), R.zero, normal_crossing.f)

    def test_derivation_arithmetic(self, normal_crossing_basis):
        """Test sums and scalar multiples of derivations."""
        first, second = normal_crossing_basis.rows
        euler = first + second
        assert euler.alpha == 2
        assert euler.scale(3).alpha == 6
        assert not euler.is_zero()
        assert euler.degree() == 1
        assert euler.to_dict() == {"coefficients": {"x": "x", "y": "y"}, "alpha": "2"}

    def test_not_free(self):
        """Test that a generic arrangement of four planes is not recognized as free."""
        d = DivisorInput.parse("x*y*z*(x + y + z)", ["x", "y", "z"])
        ders = log_derivations(d)
        assert saito_basis(d, ders, attempts=5) is None

    def test_negative_attempts(self, normal_crossing):
        """Test that the attempt count must be non-negative."""
        with pytest.raises(ValueError):
            saito_basis(normal_crossing, log_derivations(normal_crossing), attempts=-1)


class TestSaitoBasis:
    """Test the determinant certificate of a Saito basis."""

    def test_search_on_smooth(self, smooth):
        """Test that the search finds x d/dx for f = x from the computed generators."""
        basis = saito_basis(smooth, log_derivations(smooth))
        assert basis is not None
        assert [[format_poly(a) for a in row] for row in basis.matrix] == [["x"]]
        assert basis.unit == 1

    def test_search_degrees_add_up(self, cusp):
        """Test that the degrees of the found basis add up to the degree of f."""
        basis = saito_basis(cusp, log_derivations(cusp))
        assert sum(row.degree() for row in basis.rows) == total_degree(cusp.f) == 3
        assert total_degree(cusp.ring.zero) == -1

    def test_normal_crossing(self, normal_crossing_basis):
        """Test the diagonal Saito matrix of xy."""
        assert normal_crossing_basis.unit == 1
        assert [format_poly(a) for a in normal_crossing_basis.alphas] == ["1", "1"]

    def test_cusp_unit(self, cusp_basis):
        """Test that the cusp basis has determinant 6f."""
        assert cusp_basis.unit == 6

    def test_singular_matrix(self, normal_crossing, normal_crossing_basis):
        """Test that repeated rows are refused."""
        first = normal_crossing_basis.rows[0]
        with pytest.raises(ValueError):
            SaitoBasis(normal_crossing, (first, first))

    def test_wrong_row_count(self, normal_crossing, normal_crossing_basis):
        """Test that a basis has exactly n rows."""
        with pytest.raises(ValueError, match="exactly n rows"):
            SaitoBasis(normal_crossing, normal_crossing_basis.rows[:1])

    def test_adjugate_identity(self, cusp_basis):
        """Test that adj(S) * S = det(S) * I."""
        S = cusp_basis.matrix
        adj = adjugate(S)
        det = determinant(S)
        for i in range(2):
            for j in range(2):
                entry = sum((adj[i][k] * S[k][j] for k in range(2)), det.ring.zero)
                assert entry == (det if i == j else 0)
