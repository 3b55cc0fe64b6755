"""Serialization of results: versioned JSON, CSV and Excel via pandas."""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, List, Optional

import numpy as np
import pandas as pd

from .config import SCHEMA_VERSION
from .errors import BadParameter
from .partition import SuperclassPartition
from .table import SupercharacterTable

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "excel")
CSV_DECIMALS = 6


def jsonable(obj: Any) -> Any:
    """Convert numpy and complex values into plain JSON types; complex -> [re, im]."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def format_complex(z: complex, decimals: int = CSV_DECIMALS) -> str:
    re = round(float(z.real), decimals) + 0.0
    im = round(float(z.imag), decimals) + 0.0
    if im == 0:
        return f"{re:.{decimals}f}"
    sign = "+" if im > 0 else "-"
    return f"{re:.{decimals}f}{sign}{abs(im):.{decimals}f}i"


def write_text(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"Saved: {out}")


def dump_json(payload: dict, out: Optional[Path] = None):
    document = {"schema": SCHEMA_VERSION, **jsonable(payload)}
    write_text(json.dumps(document, ensure_ascii=False, indent=2) + "\n", out)


def save_frame(df: pd.DataFrame, fmt: str, out: Optional[Path] = None):
    """Write a DataFrame as CSV (stdout when no path) or Excel (path required)."""
    if fmt == "csv":
        write_text(df.to_csv(index=False, lineterminator="\n"), out)
    elif fmt == "excel":
        if out is None:
            raise BadParameter("--format excel needs --out")
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        df.to_excel(out, index=False)
        logger.info(f"Saved: {out}")
    else:
        raise BadParameter(f"unsupported tabular format {fmt!r}")


def _rep_text(v) -> str:
    return "(" + ",".join(str(int(c)) for c in v) + ")"


def classes_payload(part: SuperclassPartition) -> List[dict]:
    return [{"rep": [int(c) for c in r], "size": int(s)} for r, s in zip(part.rep_array(), part.sizes)]


def matrix_frame(matrix: np.ndarray, part: SuperclassPartition, row_prefix: str,
                 row_part: Optional[SuperclassPartition] = None) -> pd.DataFrame:
    """Table layout: a rep row, a '#' size row, then one row per matrix row."""
    columns = [f"Y{j + 1}" for j in range(matrix.shape[1])]
    rows = [
        {"class": "rep", **{c: _rep_text(r) for c, r in zip(columns, part.rep_array())}},
        {"class": "#", **{c: str(int(s)) for c, s in zip(columns, part.sizes)}},
    ]
    for i, values in enumerate(matrix):
        label = f"{row_prefix}{i + 1}"
        if row_part is not None:
            label += " " + _rep_text(row_part.rep_array()[i])
        rows.append({"class": label, **{c: format_complex(v) for c, v in zip(columns, values)}})
    return pd.DataFrame(rows, columns=["class"] + columns)


def table_payload(table: SupercharacterTable) -> dict:
    theory = table.theory
    return {
        "theory": theory.describe(),
        "x_classes": classes_payload(theory.x),
        "y_classes": classes_payload(theory.y),
        "values": table.values,
    }


def write_table(table: SupercharacterTable, fmt: str, out: Optional[Path] = None):
    if fmt == "json":
        dump_json(table_payload(table), out)
    else:
        save_frame(matrix_frame(table.values, table.theory.y, "sigma", table.theory.x), fmt, out)


def records_frame(records: Iterable[dict]) -> pd.DataFrame:
    """Flatten result rows for tabular output; complex cells become formatted strings."""
    rows = []
    for record in records:
        rows.append({
            k: format_complex(v) if isinstance(v, (complex, np.complexfloating)) else v
            for k, v in record.items()
        })
    return pd.DataFrame(rows)
