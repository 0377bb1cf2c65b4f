import pytest
import json
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._connections import (
    CHECKED, DRAFT, ILCData, check_integrability, coordinate_connection, dual, load_ilc,
    structure_functions, twist, validate_ilc)
from logdiv.functions._polynomials import format_poly


def formatted(matrices):
    return [[[format_poly(e) for e in row] for row in A] for A in matrices]


class TestStructureFunctions:
    """Test bracket coordinates of a Saito basis."""

    def test_commuting_basis(self, normal_crossing_basis):
        """Test that x*dx and y*dy commute."""
        assert structure_functions(normal_crossing_basis).is_zero()

    def test_cusp_bracket(self, cusp_basis):
        """Test that the Euler field acts on the second generator with eigenvalue one."""
        sf = structure_functions(cusp_basis)
        assert [format_poly(c) for c in sf.c[0][1]] == ["0", "1"]
        assert [format_poly(c) for c in sf.c[1][0]] == ["0", "-1"]
        assert not sf.is_zero()


class TestIntegrability:
    """Test the integrability equation."""

    def test_trivial_is_integrable(self, cusp_basis):
        """Test that the trivial connection is integrable."""
        e = ILCData.trivial(cusp_basis, rank=2)
        assert e.is_checked
        assert check_integrability(e, structure_functions(cusp_basis))

    def test_scalar_connections(self, normal_crossing_basis, normal_crossing):
        """Test A1 = x, A2 = 0 (integrable) against A1 = y, A2 = 0 (not integrable)."""
        R = normal_crossing.ring
        x, y = R.gens
        sf = structure_functions(normal_crossing_basis)
        good = ILCData(normal_crossing_basis, (((x,),), ((R.zero,),)))
        bad = ILCData(normal_crossing_basis, (((y,),), ((R.zero,),)))
        assert check_integrability(good, sf)
        assert not check_integrability(bad, sf)

    def test_non_commuting_constants(self, normal_crossing_basis, normal_crossing):
        """Test that constant matrices with nonzero commutator are not integrable."""
        R = normal_crossing.ring
        upper = ((R.zero, R.one), (R.zero, R.zero))
        lower = ((R.zero, R.zero), (R.one, R.zero))
        e = ILCData(normal_crossing_basis, (upper, lower))
        assert not check_integrability(e, structure_functions(normal_crossing_basis))
        with pytest.raises(ValueError, match="integrability"):
            validate_ilc(e)

    def test_validate_promotes_draft(self, normal_crossing_basis, normal_crossing):
        """Test that validation moves an integrable draft to the checked state."""
        R = normal_crossing.ring
        e = ILCData(normal_crossing_basis, (((R.gens[0],),), ((R.zero,),)))
        assert e.state == DRAFT
        assert validate_ilc(e).state == CHECKED

    def test_shape_validation(self, normal_crossing_basis, normal_crossing):
        """Test that malformed matrix lists are refused."""
        R = normal_crossing.ring
        with pytest.raises(ValueError, match="one matrix per basis element"):
            ILCData(normal_crossing_basis, (((R.one,),),))
        with pytest.raises(ValueError, match="r-by-r"):
            ILCData(normal_crossing_basis, (((R.one,),), ((R.one, R.zero), (R.zero, R.one))))
        with pytest.raises(ValueError, match="state"):
            ILCData(normal_crossing_basis, (((R.one,),), ((R.one,),)), state="done")


class TestTwistAndDual:
    """Test twisting by multiples of D and duals."""

    def test_line_bundle(self, normal_crossing_basis):
        """Test that O(D) on xy has matrices -1 and -1."""
        e = ILCData.line_bundle(normal_crossing_basis, 1)
        assert formatted(e.matrices) == [[["-1"]], [["-1"]]]

    def test_coordinate_connection(self, normal_crossing_basis):
        """Test that O(D) on xy has N = (-y, -x)."""
        N = coordinate_connection(ILCData.line_bundle(normal_crossing_basis, 1))
        assert formatted(N) == [[["-y"]], [["-x"]]]

    def test_twist_inverse(self, cusp_basis):
        """Test that twisting by D and then by -D gives back the module."""
        e = ILCData.trivial(cusp_basis, rank=2)
        assert twist(twist(e, 1), -1) == e

    def test_dual(self, smooth_basis, smooth):
        """Test that the dual is an involution and that O(mD)* = O(-mD)."""
        R = smooth.ring
        x = R.gens[0]
        e = validate_ilc(ILCData(smooth_basis, (((x, R.one), (R.zero, x ** 2)),)))
        assert dual(dual(e)) == e
        assert formatted(dual(e).matrices) == [[["-x", "0"], ["-1", "-x^2"]]]
        assert dual(ILCData.line_bundle(smooth_basis, 2)) == ILCData.line_bundle(smooth_basis, -2)

    @pytest.mark.parametrize("m", range(-3, 4))
    def test_functor_laws(self, cusp_basis, m):
        """Test twist additivity, dual/twist exchange and integrability of O(mD)."""
        e = ILCData.trivial(cusp_basis, rank=2)
        assert twist(twist(e, m), 2) == twist(e, m + 2)
        assert dual(twist(e, m)) == twist(dual(e), -m)
        line = ILCData.line_bundle(cusp_basis, m)
        assert check_integrability(line, structure_functions(cusp_basis))

    def test_draft_refused(self, normal_crossing_basis, normal_crossing):
        """Test that twist and dual need a checked connection."""
        R = normal_crossing.ring
        e = ILCData(normal_crossing_basis, (((R.zero,),), ((R.zero,),)))
        with pytest.raises(ValueError, match="checked"):
            twist(e, 1)
        with pytest.raises(ValueError, match="checked"):
            dual(e)


class TestLoadIlc:
    """Test reading connections from JSON."""

    def test_load(self, normal_crossing_basis):
        """Test a rank-one connection read from a JSON string."""
        text = json.dumps({"rank": 1, "matrices": [[["x"]], [["0"]]]})
        e = load_ilc(text, normal_crossing_basis)
        assert e.state == DRAFT
        assert e.to_dict() == {"rank": 1, "state": "draft", "matrices": [[["x"]], [["0"]]]}

    def test_missing_keys(self, normal_crossing_basis):
        """Test that rank and matrices are required."""
        with pytest.raises(ValueError, match="'rank' and 'matrices'"):
            load_ilc({"matrices": []}, normal_crossing_basis)

    def test_bad_rank(self, normal_crossing_basis):
        """Test that the rank must be a positive integer."""
        with pytest.raises(ValueError, match="positive integer"):
            load_ilc({"rank": 0, "matrices": []}, normal_crossing_basis)

    def test_wrong_size(self, normal_crossing_basis):
        """Test that matrices must match the declared rank."""
        with pytest.raises(ValueError, match="2-by-2"):
            load_ilc({"rank": 2, "matrices": [[["x"]], [["0"]]]}, normal_crossing_basis)
