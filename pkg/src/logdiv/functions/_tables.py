import pandas as pd
import polars as pl
from typing import Dict, List, Sequence, Union

DataFrameType = Union[pd.DataFrame, pl.DataFrame]


def to_frame(records: List[Dict[str, object]], backend: str = "polars",
             columns: Sequence[str] = ()) -> DataFrameType:
    """
    Build a pandas or polars DataFrame from a list of row dictionaries.

    Parameters:
    records (list): One dictionary per row, all with the same keys.
    backend (str): 'polars' (default) or 'pandas'.
    columns (list): Column order to use when ``records`` is empty.

    Returns:
    pl.DataFrame | pd.DataFrame: The table.
    """
    if backend == "polars":
        if not records:
            return pl.DataFrame({c: [] for c in columns})
        return pl.DataFrame(records)
    elif backend == "pandas":
        if not records:
            return pd.DataFrame(columns=list(columns))
        return pd.DataFrame.from_records(records)
    else:
        raise ValueError("backend must be 'polars' or 'pandas'.")


def column_values(df: DataFrameType, column: str) -> list:
    """Values of one column as a plain list, for either backend."""
    if isinstance(df, pd.DataFrame):
        return df[column].tolist()
    elif isinstance(df, pl.DataFrame):
        return df[column].to_list()
    else:
        raise TypeError("Input must be a pandas or polars DataFrame.")
