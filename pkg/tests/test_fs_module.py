import pytest
import random
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._fs_module import (
    FsActor, FsElement, FsVector, act_on_fs, fs_ring, leading_fs_coefficient, specialize_coordinates)
from logdiv.functions._polynomials import format_poly
from logdiv.functions._rees_kernel import rees_evaluate, symbol_ring
from logdiv.functions._weyl_algebra import WeylOp


class TestActOnFs:
    """Test the action of D_n[s] on f^s."""

    def test_derivative_of_x_to_the_s(self, smooth):
        """Test that d(x^s) = s * x^(s - 1)."""
        result = act_on_fs(WeylOp.d(0, 1), FsElement.power(smooth.f), smooth.f)
        assert format_poly(result.numerator) == "s"
        assert result.pole == 1

    def test_euler_operator_annihilates(self, smooth):
        """Test that (x*d - s) x^s = 0."""
        op = WeylOp.x(0, 1) * WeylOp.d(0, 1) - WeylOp.s(1)
        assert act_on_fs(op, FsElement.power(smooth.f), smooth.f).is_zero()

    def test_normal_crossing_annihilator(self, normal_crossing):
        """Test that x*dx + y*dy - 2s annihilates (xy)^s."""
        n = 2
        op = (WeylOp.x(0, n) * WeylOp.d(0, n) + WeylOp.x(1, n) * WeylOp.d(1, n)
              - 2 * WeylOp.s(n))
        assert act_on_fs(op, FsElement.power(normal_crossing.f), normal_crossing.f).is_zero()

    def test_functional_equation_of_x(self, smooth):
        """Test that d applied to x^(s + 1) gives (s + 1) x^s."""
        result = act_on_fs(WeylOp.d(0, 1), FsElement.power(smooth.f, 1), smooth.f)
        assert format_poly(result.numerator) == "s + 1"
        assert result.pole == 0

    def test_negative_power(self, smooth):
        """Test that f^(s - 1) has pole order one."""
        element = FsElement.power(smooth.f, -1)
        assert element.pole == 1
        assert element.numerator == 1

    def test_canonical_divides_out_f(self, smooth):
        """Test that x^2 / x reduces to x over f^0."""
        R = fs_ring(["x"])
        x = R.gens[0]
        element = FsElement(x ** 2, 1).canonical(smooth.f)
        assert element == FsElement(x, 0)

    def test_negative_pole_rejected(self, smooth):
        """Test that pole orders are non-negative."""
        with pytest.raises(ValueError):
            FsElement(fs_ring(["x"]).one, -1)

    def test_cannot_lower_pole(self):
        """Test that at_pole refuses a smaller pole order."""
        R = fs_ring(["x"])
        with pytest.raises(ValueError):
            FsVector((R.one,), 2).at_pole(1, R.gens[0])


class TestFsActor:
    """Test the module action with a connection."""

    def test_connection_shifts_derivative(self, smooth):
        """Test that d + 1/x sends e x^s to (s + 1)/x e x^s."""
        actor = FsActor(smooth.f, [[[smooth.ring.one]]])
        result = actor.apply(WeylOp.d(0, 1), actor.generator())
        assert format_poly(result.numerators[0]) == "s + 1"
        assert result.pole == 1

    def test_rank_two_generators(self, smooth):
        """Test the basis vectors of a rank-two module."""
        R = smooth.ring
        actor = FsActor(smooth.f, [[[R.zero, R.one], [R.zero, R.zero]]])
        assert actor.rank == 2
        result = actor.apply(WeylOp.d(0, 1), actor.generator(1))
        assert [format_poly(g) for g in result.numerators] == ["1", "s"]

    def test_algebra_mismatch(self, smooth):
        """Test that operators on a different number of variables are refused."""
        with pytest.raises(ValueError):
            FsActor(smooth.f).apply(WeylOp.d(0, 2), FsActor(smooth.f).generator())

    def test_specialize_coordinates(self, smooth):
        """Test the coordinates of s/x x^s at s = -2."""
        actor = FsActor(smooth.f)
        v = actor.apply(WeylOp.d(0, 1), actor.generator())
        assert specialize_coordinates(v, 1, smooth.f, 2) == {(0, (0,)): -2}


class TestLeadingCoefficient:
    """Test the coefficient of the top power of s."""

    def test_derivative(self, normal_crossing):
        """Test that dx on (xy)^s has leading coefficient y."""
        assert format_poly(leading_fs_coefficient(WeylOp.d(0, 2), normal_crossing.f)) == "y"

    def test_annihilator_symbol_vanishes(self, smooth):
        """Test that the leading coefficient of x*d - s is zero."""
        op = WeylOp.x(0, 1) * WeylOp.d(0, 1) - WeylOp.s(1)
        assert not leading_fs_coefficient(op, smooth.f)

    def test_zero_operator(self, smooth):
        """Test the zero operator."""
        assert not leading_fs_coefficient(WeylOp.zero(1), smooth.f)

    @pytest.mark.parametrize("seed", range(100))
    def test_leading_coefficient_is_rees_image_of_symbol(self, seed, normal_crossing, cusp):
        """Test on seeded random operators that the leading coefficient is the Rees image of the total symbol."""
        rng = random.Random(seed)
        for trial in range(10):
            d = cusp if trial % 2 else normal_crossing
            terms = {}
            for _ in range(rng.randint(1, 3)):
                monom = (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1))
                terms[monom] = rng.choice([-2, -1, 1, 3])
            op = WeylOp(terms, 2)
            symbol = op.total_symbol(symbol_ring(d))
            assert leading_fs_coefficient(op, d.f) == rees_evaluate(symbol, d)
