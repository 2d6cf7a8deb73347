"""
Export module – the power table as a pandas DataFrame and a CSV file.
"""

from __future__ import annotations

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

import pandas as pd

from weierstrass_int.arith import ZGEN
from weierstrass_int.reduce import PowerRow
from weierstrass_int.render import format_element, format_integral, format_rational

logger = logging.getLogger("weierstrass_int.export")

COLUMNS = ["n", "g", "z_coeff", "zeta_coeff", "antiderivative", "paths_agree"]


def power_table_frame(rows: List[PowerRow]) -> pd.DataFrame:
    """One row per power of t; all scalars as exact strings.

    Parameters
    ----------
    rows : list[PowerRow]
        Output of :func:`weierstrass_int.reduce.power_table`.

    Returns
    -------
    pd.DataFrame
        Columns ``n, g, z_coeff, zeta_coeff, antiderivative, paths_agree``.
    """
    records = []
    for row in rows:
        total = row.g + ZGEN * row.z_coeff
        records.append(
            {
                "n": row.n,
                "g": format_element(row.g),
                "z_coeff": format_rational(row.z_coeff),
                "zeta_coeff": format_rational(row.zeta_coeff),
                "antiderivative": format_integral(total, row.zeta_coeff),
                "paths_agree": row.paths_agree,
            }
        )
    return pd.DataFrame.from_records(records, columns=COLUMNS)


def export_power_table(
    df: pd.DataFrame,
    export_dir: str | Path = "data",
) -> Optional[Path]:
    """Write the table to a timestamped CSV file.

    Parameters
    ----------
    df : pd.DataFrame
        Frame built by :func:`power_table_frame`.
    export_dir : str | Path
        Directory where CSV files are stored.

    Returns
    -------
    Path or None
        Path to the written CSV file, or ``None`` if the DataFrame is empty.
    """
    if df.empty:
        logger.warning("Empty power table – CSV not written.")
        return None

    export_dir = Path(export_dir)
    export_dir.mkdir(parents=True, exist_ok=True)

    ts = datetime.now(timezone.utc).strftime("%Y%m%d_%H%M%S")
    filepath = export_dir / f"power_table_{ts}.csv"

    df.to_csv(filepath, index=False, encoding="utf-8")
    logger.info("CSV saved: %s (%d rows)", filepath, len(df))
    return filepath
