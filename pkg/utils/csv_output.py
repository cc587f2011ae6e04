"""
CSV artifacts and run manifests.

Floats are written with 17 significant digits so values round-trip losslessly, and
rows arrive sorted, so identical runs give byte-identical files.
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from schemas.lab_schemas import CorollaryReport, RatioReport
from schemas.run_schemas import RunManifest
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def check_output_path(out: Optional[str]) -> Optional[Path]:
    if out is None:
        return None
    path = Path(out)
    if not path.parent.is_dir():
        raise ConfigError("out", f"output directory does not exist: {path.parent}")
    return path


def to_csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_frame(frame: pd.DataFrame, out: Optional[Path]) -> str:
    """Write to out, or return the CSV text when no path is given."""
    text = to_csv_text(frame)
    if out is not None:
        out.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(frame)} rows to {out}")
    return text


def report_frame(reports: List[RatioReport]) -> pd.DataFrame:
    """inequality_id, function, x, one column per parameter, lhs, rhs, ratio, verdict, ..."""
    param_names = sorted({name for r in reports for c in r.configurations for name in c.params})
    rows = []
    for report in reports:
        for c in report.configurations:
            row: Dict = {"inequality_id": report.inequality_id, "function": c.function, "x": c.x}
            row.update({name: c.params.get(name) for name in param_names})
            row.update({
                "lhs": c.lhs,
                "rhs": c.rhs,
                "ratio": c.ratio,
                "verdict": report.verdict.value,
                "secondary_rhs": c.secondary_rhs,
                "degenerate": c.degenerate,
                "passed": c.passed,
                "flagged": c.flagged,
            })
            rows.append(row)
    columns = ["inequality_id", "function", "x", *param_names, "lhs", "rhs", "ratio", "verdict",
               "secondary_rhs", "degenerate", "passed", "flagged"]
    return pd.DataFrame(rows, columns=columns)


def corollary_frame(report: CorollaryReport) -> pd.DataFrame:
    rows = [
        {
            "inequality_id": "C1",
            "function": e.function,
            "x": e.x,
            "point_kind": e.point_kind,
            "gabisonia_point": e.gabisonia_point,
            "scheme": e.scheme,
            "u": u,
            "h": h,
            "slope": e.slope,
            "converged": e.converged,
            "verdict": report.verdict.value,
        }
        for e in report.entries
        for u, h in zip(e.u_values, e.h_values)
    ]
    columns = ["inequality_id", "function", "x", "point_kind", "gabisonia_point", "scheme", "u", "h",
               "slope", "converged", "verdict"]
    return pd.DataFrame(rows, columns=columns)


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def write_manifest(manifest: RunManifest, out: Path) -> Path:
    path = manifest_path(out)
    path.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote manifest {path}")
    return path


def read_manifest(path: Path) -> RunManifest:
    try:
        return RunManifest(**json.loads(path.read_text(encoding="utf-8")))
    except (OSError, ValueError) as e:
        raise ConfigError("manifest", f"cannot read manifest {path}: {e}") from e
