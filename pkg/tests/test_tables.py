import pytest
import pandas as pd
import polars as pl
import sys
import os

# Add the src directory to the path to import logdiv
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from logdiv.functions._tables import column_values, to_frame


class TestToFrame:
    """Test the dual-backend table builder."""

    def test_polars(self):
        """Test building a polars table."""
        df = to_frame([{"weight": 0, "homology": 0}, {"weight": 1, "homology": 2}])
        assert isinstance(df, pl.DataFrame)
        assert column_values(df, "homology") == [0, 2]

    def test_pandas(self):
        """Test building a pandas table."""
        df = to_frame([{"weight": 0, "homology": 0}], backend="pandas")
        assert isinstance(df, pd.DataFrame)
        assert column_values(df, "weight") == [0]

    def test_empty_keeps_columns(self):
        """Test that an empty table still has the requested columns."""
        assert to_frame([], columns=("k", "equal")).columns == ["k", "equal"]
        assert list(to_frame([], backend="pandas", columns=("k", "equal")).columns) == ["k", "equal"]

    def test_invalid_backend(self):
        """Test that unknown backends are refused."""
        with pytest.raises(ValueError, match="backend"):
            to_frame([{"a": 1}], backend="arrow")

    def test_column_values_needs_dataframe(self):
        """Test column_values with invalid input."""
        with pytest.raises(TypeError, match="pandas or polars"):
            column_values({"a": [1]}, "a")
