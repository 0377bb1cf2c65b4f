import pytest
import pandas as pd
import polars as pl
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._classify import (
    ClassificationReport, classify, check_implications, corpus_divisors, implication_table, implication_violations,
    COMPUTED, NOT_RECOGNIZED, NOT_RUN, IMPLIED_DLT)
from logdiv.functions._errors import ImplicationViolation
from logdiv.functions._log_derivations import DivisorInput
from logdiv.functions._tables import column_values


class TestClassify:
    """Test the flag collection for single divisors."""

    def test_normal_crossing(self, normal_crossing):
        """Test that xy passes every test."""
        report = classify(normal_crossing)
        assert report.free
        assert report.euler_homogeneous
        assert report.quasi_homogeneous == (1, 1)
        assert report.koszul_free
        assert report.linear_jacobian_type
        assert report.differential_linear_type
        assert report.theta_koszul_pair
        assert not report.global_test
        assert report.provenance["free"] == COMPUTED
        assert report.provenance["differential_linear_type"] == IMPLIED_DLT
        assert report.provenance["linear_jacobian_type"].startswith(COMPUTED)

    def test_smooth(self, smooth):
        """Test the one-variable smooth divisor."""
        report = classify(smooth)
        assert report.free and report.koszul_free and report.linear_jacobian_type
        assert report.basis is not None
        assert report.to_dict()["saito_basis"]["unit"] == "1"

    def test_not_free(self):
        """Test that an exhausted basis search leaves freeness undecided."""
        d = DivisorInput.parse("x*y*z*(x + y + z)", ["x", "y", "z"])
        report = classify(d, attempts=5)
        assert report.free is None
        assert report.provenance["free"] == NOT_RECOGNIZED
        assert report.euler_homogeneous
        assert report.koszul_free is None
        assert report.linear_jacobian_type is None
        assert report.provenance["koszul_free"] == NOT_RUN
        assert "not recognized as free at the origin" in report.notes

    def test_free_but_not_koszul(self, four_planes):
        """Test the free quartic whose basis symbols are not a regular sequence."""
        report = classify(four_planes)
        assert report.free
        assert report.koszul_free is False
        assert report.linear_jacobian_type is False
        assert report.theta_koszul_pair is True
        assert report.differential_linear_type is None
        assert report.global_test

    def test_to_dict_is_json_ready(self, normal_crossing):
        """Test the dictionary form of a report."""
        data = classify(normal_crossing).to_dict()
        assert data["divisor"] == "x*y"
        assert data["variables"] == ["x", "y"]
        assert data["quasi_homogeneous"] == [1, 1]
        assert list(data["provenance"]) == sorted(data["provenance"])


class TestImplications:
    """Test the consistency checks between flags."""

    def _report(self, **flags):
        base = dict(divisor="f", variables=("x",), free=True, euler_homogeneous=True, quasi_homogeneous=(1,))
        base.update(flags)
        return ClassificationReport(**base)

    def test_consistent(self):
        """Test that a consistent report passes."""
        check_implications(self._report(koszul_free=True, linear_jacobian_type=True))

    def test_quasi_homogeneous_free_needs_ljt(self):
        """Test that quasi-homogeneous free divisors must be of linear jacobian type."""
        with pytest.raises(ImplicationViolation):
            check_implications(self._report(linear_jacobian_type=False))

    def test_ljt_needs_koszul(self):
        """Test that linear jacobian type without Koszul freeness is a violation."""
        with pytest.raises(ImplicationViolation, match="Koszul"):
            check_implications(self._report(koszul_free=False, linear_jacobian_type=True))

    def test_ljt_needs_euler_homogeneity(self):
        """Test that linear jacobian type without Euler homogeneity is a violation."""
        with pytest.raises(ImplicationViolation, match="Euler"):
            check_implications(self._report(euler_homogeneous=False, quasi_homogeneous=None,
                                             koszul_free=True, linear_jacobian_type=True))

    def test_violations_are_collected(self):
        """Test that every contradicted implication is listed, not only the first."""
        report = self._report(euler_homogeneous=False, koszul_free=False, linear_jacobian_type=True)
        messages = implication_violations(report)
        assert len(messages) == 2
        assert "Koszul" in messages[0] and "Euler" in messages[1]
        assert implication_violations(self._report(koszul_free=True, linear_jacobian_type=True)) == []

    def test_undecided_freeness_is_not_a_violation(self):
        """Test that a divisor not recognized as free satisfies every implication."""
        assert implication_violations(self._report(free=None, linear_jacobian_type=False)) == []

    def test_classify_without_check(self, monkeypatch, normal_crossing):
        """Test that check=False returns a contradicted report instead of raising."""
        import logdiv.functions._classify as module
        monkeypatch.setattr(module, "is_koszul_free", lambda d, basis, deadline=None: False)
        with pytest.raises(ImplicationViolation, match="Koszul"):
            classify(normal_crossing)
        report = classify(normal_crossing, check=False)
        assert report.koszul_free is False
        assert len(implication_violations(report)) == 1


class TestImplicationTable:
    """Test the summary DataFrame."""

    def test_polars_backend(self, smooth, normal_crossing):
        """Test the polars table."""
        df = implication_table([classify(smooth), classify(normal_crossing)])
        assert isinstance(df, pl.DataFrame)
        assert column_values(df, "divisor") == ["x", "x*y"]
        assert column_values(df, "quasi_homogeneous") == ["1", "1,1"]

    def test_pandas_backend(self, normal_crossing):
        """Test the pandas table."""
        df = implication_table([classify(normal_crossing)], backend="pandas")
        assert isinstance(df, pd.DataFrame)
        assert bool(df["linear_jacobian_type"].iloc[0])

    def test_unknown_backend(self, normal_crossing):
        """Test that unknown backends are rejected."""
        with pytest.raises(ValueError):
            implication_table([classify(normal_crossing)], backend="arrow")


class TestCorpus:
    """Test the built-in divisor list."""

    def test_corpus_parses(self):
        """Test that every corpus entry is a valid reduced divisor."""
        entries = corpus_divisors()
        assert len(entries) == 11
        for name, text, variables in entries:
            d = DivisorInput.parse(text, variables)
            assert d.variables == variables

    def test_corpus_classification(self):
        """Test the flags of every corpus divisor and that no implication is contradicted."""
        reports = {name: classify(DivisorInput.parse(text, variables)) for name, text, variables in corpus_divisors()}
        for name, report in reports.items():
            assert implication_violations(report) == [], name
            assert report.free is True, name
            assert report.euler_homogeneous, name
        non_koszul = reports.pop("four planes, non-Koszul")
        assert non_koszul.koszul_free is False
        assert non_koszul.linear_jacobian_type is False
        assert non_koszul.quasi_homogeneous is None and non_koszul.global_test
        for name, report in reports.items():
            assert report.quasi_homogeneous is not None, name
            assert report.koszul_free is True, name
            assert report.linear_jacobian_type is True, name
            assert report.differential_linear_type is True, name
            assert report.provenance["linear_jacobian_type"].startswith(COMPUTED), name
        assert reports["cusp and tangent"].quasi_homogeneous == (3, 2)
        assert reports["A4 curve"].quasi_homogeneous == (5, 2)
