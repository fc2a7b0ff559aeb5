"""CSV, JSON and SVG writers for sweep results and reports."""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Optional, Sequence

from .experiments import SweepResult

SWEEP_COLUMNS = ("x1", "y1", "lambda01", "lambda02", "lambda12", "r_cdf", "r_pdf", "g", "g_bar")

#: Heatmap colors at ``g_bar = 0`` and at the top of the scale.
LOW_RGB = (255, 255, 255)
HIGH_RGB = (178, 24, 43)


def fmt(value: Any, precision: int = 12) -> str:
    """Format a number with ``precision`` significant digits; ``None`` becomes an empty cell."""
    if value is None:
        return ""
    if isinstance(value, float) or hasattr(value, "dtype"):
        return f"{float(value):.{precision}g}"
    return str(value)


def to_jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def write_rows(fh, header: Sequence[str], rows: Iterable[Sequence[Any]], precision: int = 12) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v, precision) for v in row])


def sweep_rows(result: SweepResult):
    for rec in result.records:
        s, r = rec.snr, rec.report
        yield (rec.x, rec.y, s.lambda01, s.lambda02, s.lambda12, r.r_cdf, r.r_pdf, r.g, r.g_bar)


def write_sweep_csv(result: SweepResult, path: str, precision: int = 12) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        write_rows(fh, SWEEP_COLUMNS, sweep_rows(result), precision)


def sweep_summary(result: SweepResult) -> dict:
    return {
        "max_g_bar": result.max_g_bar,
        "argmax": list(result.argmax) if result.argmax else None,
        "grid_points": len(result.records),
        "metadata": result.metadata,
    }


def write_json(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_jsonable(obj), fh, indent=2)
        fh.write("\n")


def color_for(g_bar: float, vmax: float) -> str:
    """Linear interpolation from :data:`LOW_RGB` (0) to :data:`HIGH_RGB` (``vmax``), clipped."""
    f = 0.0 if vmax <= 0 else min(max(g_bar / vmax, 0.0), 1.0)
    rgb = [round(lo + f * (hi - lo)) for lo, hi in zip(LOW_RGB, HIGH_RGB)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def sweep_svg(result: SweepResult, vmax: Optional[float] = None, scale: float = 400.0) -> str:
    """Heatmap of ``g_bar`` over relay positions; one square per grid point."""
    step = result.metadata["spec"]["step"]
    vmax = result.max_g_bar if vmax is None else vmax
    if not result.records:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>\n'
    xs = [r.x for r in result.records]
    ys = [r.y for r in result.records]
    x0, y1 = min(xs) - step / 2, max(ys) + step / 2
    width = (max(xs) - min(xs) + step) * scale
    height = (max(ys) - min(ys) + step) * scale
    out = io.StringIO()
    out.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" '
              f'height="{height + 30:.1f}">\n')
    side = step * scale
    for r in result.records:
        px = (r.x - step / 2 - x0) * scale
        py = (y1 - (r.y + step / 2)) * scale
        out.write(f'<rect x="{px:.2f}" y="{py:.2f}" width="{side:.2f}" height="{side:.2f}" '
                  f'fill="{color_for(r.report.g_bar, vmax)}"/>\n')
    out.write(f'<text x="4" y="{height + 20:.1f}" font-size="12">g_bar: 0 (white) to '
              f'{vmax:.4g} (red), max {result.max_g_bar:.4g} at {result.argmax}</text>\n')
    out.write("</svg>\n")
    return out.getvalue()


def write_sweep_svg(result: SweepResult, path: str, vmax: Optional[float] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(sweep_svg(result, vmax))
