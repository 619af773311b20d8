"""Parameter sweeps of the refractive index and their CSV / SVG emission."""

from __future__ import annotations

import csv
import enum
import io
import math
import os
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError
from .nri import CellContext, NriMethod, fluctuation_bracket, nri
from .thermal import ThermalFockSpec, ThetaConvention
from .units import FrequencyConvention, FrequencySpec, UnitKind, to_angular, unit_system

__all__ = [
    "Axis",
    "Scale",
    "FixedParams",
    "SweepSpec",
    "SweepTable",
    "SvgStyle",
    "figure_preset",
    "axis_values",
    "run_sweep",
    "run_sweeps",
    "write_csv",
    "read_csv",
    "render_svg",
]


class Axis(str, enum.Enum):
    TEMPERATURE = "TEMPERATURE"
    OMEGA = "OMEGA"
    PHOTON_N = "PHOTON_N"
    DJ2 = "DJ2"

    @property
    def column(self) -> str:
        return _COLUMN[self]

    @property
    def attr(self) -> str:
        return _ATTR[self]


_COLUMN = {
    Axis.TEMPERATURE: "temperature",
    Axis.OMEGA: "omega",
    Axis.PHOTON_N: "n",
    Axis.DJ2: "dj2",
}
_ATTR = {Axis.TEMPERATURE: "temperature", Axis.OMEGA: "omega", Axis.PHOTON_N: "n", Axis.DJ2: "dj2"}


class Scale(str, enum.Enum):
    LINEAR = "LINEAR"
    LOG = "LOG"


@dataclass(frozen=True)
class FixedParams:
    """Every input of a single NRI evaluation.

    ``omega`` is given in ``freq_convention`` and converted to rad/s per point.
    """

    temperature: float = 1.0
    omega: float = 1.0
    n: int = 0
    dj2: float = 1.0
    z0: float = 1.0
    z_char: float = 1.0
    units: UnitKind = UnitKind.NATURAL
    freq_convention: FrequencyConvention = FrequencyConvention.ANGULAR
    method: NriMethod = NriMethod.EQ11
    theta_convention: ThetaConvention = ThetaConvention.PAPER


@dataclass(frozen=True)
class SweepSpec:
    axis: Axis
    start: float
    stop: float
    points: int
    scale: Scale = Scale.LINEAR
    fixed: FixedParams = field(default_factory=FixedParams)
    series_param: Axis = Axis.DJ2
    series: tuple = ()
    name: str = "sweep"

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "scale", Scale(self.scale))
        object.__setattr__(self, "series_param", Axis(self.series_param))
        if not self.start < self.stop:
            raise DomainError(f"sweep needs from < to, got {self.start!r} >= {self.stop!r}")
        if int(self.points) != self.points or self.points < 2:
            raise DomainError(f"sweep needs an integer points >= 2, got {self.points!r}")
        if self.series_param is self.axis:
            raise DomainError("series parameter must differ from the sweep axis")
        if self.scale is Scale.LOG and self.start <= 0:
            raise DomainError("log sweep needs from > 0")
        if self.axis is Axis.PHOTON_N:
            span = self.stop - self.start
            if (
                int(self.start) != self.start
                or int(self.stop) != self.stop
                or self.start < 0
                or self.scale is not Scale.LINEAR
                or span % (self.points - 1) != 0
            ):
                raise DomainError(
                    "photon-number sweeps need integer, linear, evenly divisible steps"
                )
        if not self.series:
            object.__setattr__(
                self, "series", (getattr(self.fixed, self.series_param.attr),)
            )
        object.__setattr__(self, "series", tuple(self.series))


@dataclass
class SweepTable:
    columns: list
    rows: list
    meta: tuple  # originating SweepSpec objects, in row order

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows], dtype=float)


_BASE = dict(units=UnitKind.SI, freq_convention=FrequencyConvention.CYCLIC, z0=1e-3, z_char=50.0)


def figure_preset(which: str) -> list:
    """Sweep specs behind the three figures, one spec per plotted curve.

    FIG2: n_r vs T for several current fluctuations; FIG3: n_r vs frequency
    for several temperatures; FIG4: n_r vs photon number at low temperatures.
    Frequencies are cyclic (Hz).
    """
    key = str(which).upper()
    if key == "FIG2":
        fixed = FixedParams(omega=2e9, n=10, **_BASE)
        return [
            SweepSpec(Axis.TEMPERATURE, 0.1, 400.0, 400, Scale.LINEAR, replace(fixed, dj2=d),
                      Axis.DJ2, (d,), "fig2")
            for d in (50.0, 100.0, 200.0, 400.0, 600.0)
        ]
    if key == "FIG3":
        fixed = FixedParams(dj2=100.0, n=50, **_BASE)
        return [
            SweepSpec(Axis.OMEGA, 1e7, 3e9, 300, Scale.LINEAR, replace(fixed, temperature=t),
                      Axis.TEMPERATURE, (t,), "fig3")
            for t in (10.0, 50.0, 100.0, 200.0)
        ]
    if key == "FIG4":
        fixed = FixedParams(dj2=100.0, omega=2e9, **_BASE)
        return [
            SweepSpec(Axis.PHOTON_N, 0, 100, 101, Scale.LINEAR, replace(fixed, temperature=t),
                      Axis.TEMPERATURE, (t,), "fig4")
            for t in (0.1, 0.5, 1.0, 2.0)
        ]
    raise DomainError(f"unknown figure preset {which!r}")


def axis_values(s: SweepSpec) -> np.ndarray:
    if s.scale is Scale.LOG:
        return np.geomspace(s.start, s.stop, s.points)
    values = np.linspace(s.start, s.stop, s.points)
    if s.axis is Axis.PHOTON_N:
        values = np.rint(values)
    return values


def _columns(s: SweepSpec) -> list:
    return [s.axis.column, s.series_param.column, "x", "n0", "n_r", "bracket", "flag"]


def _point(fixed: FixedParams) -> list:
    units = unit_system(fixed.units)
    omega = to_angular(FrequencySpec(fixed.omega, fixed.freq_convention))
    spec = ThermalFockSpec(int(fixed.n), fixed.temperature, omega)
    ctx = CellContext(fixed.z0, fixed.z_char, omega)
    res = nri(fixed.dj2, spec, ctx, units, fixed.method)
    return [res.x, res.n0, res.n_r, fluctuation_bracket(spec.n, res.n0)]


def _evaluate(fixed: FixedParams) -> list:
    try:
        return _point(fixed) + [0]
    except (DomainError, ValueError, ZeroDivisionError, OverflowError):
        return [math.nan] * 4 + [1]


def run_sweep(s: SweepSpec) -> SweepTable:
    """Evaluate ``s``; series values outer, axis values inner.

    Points failing a domain check become NaN rows with ``flag = 1``.
    """
    rows = []
    values = axis_values(s)
    for sv in s.series:
        base = replace(s.fixed, **{s.series_param.attr: sv})
        for av in values:
            av = int(av) if s.axis is Axis.PHOTON_N else float(av)
            fixed = replace(base, **{s.axis.attr: av})
            rows.append([av, sv] + _evaluate(fixed))
    return SweepTable(_columns(s), rows, (s,))


def run_sweeps(specs: Sequence[SweepSpec]) -> SweepTable:
    """Concatenate sweeps that share axis and series parameter into one table."""
    specs = list(specs)
    if not specs:
        raise DomainError("no sweep specs given")
    tables = [run_sweep(s) for s in specs]
    for t in tables[1:]:
        if t.columns != tables[0].columns:
            raise DomainError("sweeps in one group must share axis and series parameter")
    rows = [row for t in tables for row in t.rows]
    return SweepTable(tables[0].columns, rows, tuple(specs))


# ---------------------------------------------------------------- CSV


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.11e}"


def _meta_value(value) -> str:
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, float) and value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value) if isinstance(value, float) else str(value)


def _meta_lines(table: SweepTable) -> list:
    if not table.meta:
        return []
    first = table.meta[0]
    lines = [
        f"name={first.name}",
        f"axis={first.axis.value}",
        f"range={_meta_value(float(first.start))}..{_meta_value(float(first.stop))}",
        f"points={first.points}",
        f"scale={first.scale.value}",
        f"series_param={first.series_param.value}",
    ]
    series = [v for s in table.meta for v in s.series]
    lines.append("series=" + ",".join(_meta_value(float(v)) for v in series))
    skip = {first.axis.attr, first.series_param.attr}
    for f in fields(FixedParams):
        if f.name in skip:
            continue
        key = "Z_l" if f.name == "z_char" else f.name
        lines.append(f"{key}={_meta_value(getattr(first.fixed, f.name))}")
    return lines


def _csv_text(table: SweepTable) -> str:
    buf = io.StringIO()
    for line in _meta_lines(table):
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(table: SweepTable, destination: Union[str, os.PathLike, io.TextIOBase]) -> int:
    """Write ``table`` as CSV with ``#`` metadata lines; returns the byte count.

    Raises:
        OSError: on I/O failure, with the path in the message.
    """
    data = _csv_text(table).encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(data.decode("utf-8"))
        return len(data)
    path = os.fspath(destination)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {path}: {exc.strerror}") from exc
    return len(data)


def read_csv(source) -> tuple:
    """Parse a file written by :func:`write_csv` into ``(meta, columns, rows)``."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        else:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    rows = [[float(v) for v in r] for r in reader]
    return meta, columns, rows


# ---------------------------------------------------------------- SVG


@dataclass(frozen=True)
class SvgStyle:
    width: int = 720
    height: int = 480
    margin_left: int = 90
    margin_right: int = 150
    margin_top: int = 30
    margin_bottom: int = 60
    stroke_width: float = 1.5
    palette: tuple = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                      "#e377c2", "#7f7f7f")
    y_column: str = "n_r"


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks, t = [], first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _segments(xs, ys):
    seg = []
    for x, y in zip(xs, ys):
        if math.isfinite(x) and math.isfinite(y):
            seg.append((x, y))
        elif seg:
            yield seg
            seg = []
    if seg:
        yield seg


def render_svg(table: SweepTable, style: Optional[SvgStyle] = None) -> str:
    """Plot the refractive index against the sweep axis, one polyline per series.

    Non-finite rows split a series into separate polylines. Output depends
    only on ``table`` and ``style``.
    """
    style = style or SvgStyle()
    spec = table.meta[0]
    log_x = spec.scale is Scale.LOG
    xi, si = 0, 1
    yi = table.columns.index(style.y_column)

    groups: dict = {}
    for row in table.rows:
        groups.setdefault(row[si], []).append(row)

    def tx(v):
        return math.log10(v) if log_x else v

    finite = [(tx(r[xi]), r[yi]) for r in table.rows
              if math.isfinite(r[yi]) and (not log_x or r[xi] > 0)]
    if not finite:
        raise DomainError("nothing finite to plot")
    x_lo = min(p[0] for p in finite)
    x_hi = max(p[0] for p in finite)
    y_lo = min(p[1] for p in finite)
    y_hi = max(p[1] for p in finite)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        pad = abs(y_lo) * 0.05 or 1.0
        y_lo, y_hi = y_lo - pad, y_hi + pad

    pw = style.width - style.margin_left - style.margin_right
    ph = style.height - style.margin_top - style.margin_bottom

    def px(v):
        return style.margin_left + (tx(v) - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return style.margin_top + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.width}" '
        f'height="{style.height}" viewBox="0 0 {style.width} {style.height}">',
        f'<rect x="0" y="0" width="{style.width}" height="{style.height}" fill="white"/>',
    ]
    x0, y0 = style.margin_left, style.margin_top + ph
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + pw}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{style.margin_top}" x2="{x0}" y2="{y0}" stroke="black"/>')

    for t in _nice_ticks(x_lo, x_hi):
        x = style.margin_left + (t - x_lo) / (x_hi - x_lo) * pw
        label = f"{10 ** t:.3g}" if log_x else f"{t:.4g}"
        out.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y0 + 18}" font-size="11" '
                   f'text-anchor="middle">{label}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = py(t)
        out.append(f'<line x1="{x0 - 5}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{y + 4:.2f}" font-size="11" '
                   f'text-anchor="end">{t:.4g}</text>')

    x_label = table.columns[xi] + (" (log)" if log_x else "")
    out.append(f'<text x="{x0 + pw / 2:.2f}" y="{style.height - 15}" font-size="13" '
               f'text-anchor="middle">{x_label}</text>')
    out.append(f'<text x="20" y="{style.margin_top + ph / 2:.2f}" font-size="13" '
               f'text-anchor="middle" transform="rotate(-90 20 {style.margin_top + ph / 2:.2f})">'
               f'{style.y_column}</text>')

    for k, (sv, rows) in enumerate(groups.items()):
        color = style.palette[k % len(style.palette)]
        xs = [r[xi] if (not log_x or r[xi] > 0) else math.nan for r in rows]
        ys = [r[yi] for r in rows]
        for seg in _segments(xs, ys):
            pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in seg)
            out.append(f'<polyline fill="none" stroke="{color}" '
                       f'stroke-width="{style.stroke_width}" points="{pts}"/>')
        ly = style.margin_top + 18 * (k + 1)
        lx = style.width - style.margin_right + 10
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 25}" y="{ly}" font-size="11">'
                   f'{table.columns[si]}={sv:.6g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
