import pytest
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._log_derivations import DivisorInput, LogDerivation, SaitoBasis


def make_basis(d, rows):
    """Build a SaitoBasis from (coefficients, alpha) pairs given as expression strings."""
    from logdiv.functions._parse_expression import parse_expression
    ring = d.ring
    ders = []
    for coefficients, alpha in rows:
        a = tuple(parse_expression(c, ring=ring) for c in coefficients)
        ders.append(LogDerivation(a, parse_expression(alpha, ring=ring), d.f))
    return SaitoBasis(d, tuple(ders))


# Divisor fixtures
@pytest.fixture
def smooth():
    """The smooth divisor f = x."""
    return DivisorInput.parse("x")

@pytest.fixture
def normal_crossing():
    """The normal crossing divisor f = xy."""
    return DivisorInput.parse("x*y", ["x", "y"])

@pytest.fixture
def cusp():
    """The cusp f = x^2 - y^3."""
    return DivisorInput.parse("x^2 - y^3", ["x", "y"])

@pytest.fixture
def four_planes():
    """The free, non-Koszul quartic x1*x2*(x1 + x2)*(x1 + x2*x3)."""
    return DivisorInput.parse("x1*x2*(x1 + x2)*(x1 + x2*x3)", ["x1", "x2", "x3"])


# Saito basis fixtures
@pytest.fixture
def smooth_basis(smooth):
    """x d/dx with alpha = 1."""
    return make_basis(smooth, [(("x",), "1")])

@pytest.fixture
def normal_crossing_basis(normal_crossing):
    """x d/dx and y d/dy, both with alpha = 1."""
    return make_basis(normal_crossing, [(("x", "0"), "1"), (("0", "y"), "1")])

@pytest.fixture
def cusp_basis(cusp):
    """Euler field 3x d/dx + 2y d/dy (alpha = 6) and 3y^2 d/dx + 2x d/dy (alpha = 0)."""
    return make_basis(cusp, [(("3*x", "2*y"), "6"), (("3*y^2", "2*x"), "0")])

@pytest.fixture
def basis_factory():
    """The make_basis helper, for tests that need their own Saito basis."""
    return make_basis
