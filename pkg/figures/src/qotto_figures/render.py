"""Render qotto CSV tables into the standard figures.

Input files follow the qotto CLI schema: a block of ``# key=value``
comment lines echoing the producing config, one header row of column
names, then comma-separated numeric rows (17 significant digits, ``inf``
allowed).  Every reference curve drawn here is recomputed from that
header metadata; nothing figure-specific is hard-coded.

Rendering is pure: the same CSV yields byte-identical image files for a
pinned toolchain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure


class SchemaError(Exception):
    """The CSV does not carry the columns the figure kind needs."""


FIGURE_KINDS = ("boost", "per-unit-entropy", "ep-ratio", "ep-scaling")

_REQUIRED_COLUMNS = {
    "boost": ("n", "w_coll", "n_w_1swo"),
    "per-unit-entropy": ("unit", "ds_baths"),
    "ep-ratio": ("n", "ep_coll", "ep_baseline", "ratio"),
    "ep-scaling": ("n", "ep"),
}

_PNG_METADATA = {"Software": "qotto-figures"}


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    figure_kind: str
    output_path: str
    title: str = ""


@dataclass(frozen=True)
class Table:
    meta: dict
    columns: tuple
    data: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def read_table(csv_path: str) -> Table:
    """Parse a qotto CSV: '# key=value' metadata, header, numeric rows."""
    meta = {}
    columns = None
    rows = []
    with open(csv_path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            if columns is None:
                columns = tuple(name.strip() for name in line.split(","))
                continue
            rows.append([float(cell) for cell in line.split(",")])
    if columns is None or not rows:
        raise SchemaError(f"{csv_path}: no header or no data rows")
    return Table(meta=meta, columns=columns, data=np.array(rows, dtype=float))


def _require_columns(table: Table, kind: str) -> None:
    missing = [c for c in _REQUIRED_COLUMNS[kind] if c not in table.columns]
    if missing:
        raise SchemaError(
            f"figure kind {kind!r} needs columns {missing}, CSV has "
            f"{list(table.columns)}"
        )


def _new_axes(title: str):
    figure = Figure(figsize=(6.4, 4.4), dpi=150)
    FigureCanvasAgg(figure)
    axes = figure.add_subplot(111)
    if title:
        axes.set_title(title)
    return figure, axes


def _render_boost(table: Table, axes) -> None:
    n = table.column("n")
    w_1swo = table.column("n_w_1swo") / n
    boost = table.column("w_coll") / w_1swo
    dtheta = float(table.meta["delta_theta"])
    m = max(1, round(math.pi / dtheta))
    grid = np.linspace(n.min(), n.max(), 400)
    axes.plot(grid, grid**2, color="tab:blue", lw=1.2,
              label="quadratic  $n^2$")
    axes.plot(grid, (4 * m / math.pi**2) * grid, color="tab:green", lw=1.2,
              label=rf"boosted linear  $(4m/\pi^2)\,n$,  m={m}")
    axes.plot(grid, grid, color="tab:orange", lw=1.2, label="standalone  $n$")
    axes.plot(n, boost, "o", color="tab:red", ms=3.5, label="collective chains")
    axes.set_xlabel("number of units  n")
    axes.set_ylabel(r"work relative to one standalone unit")
    axes.set_ylim(0.0, float(boost.max()) * 1.15)
    axes.legend(frameon=False, fontsize=9)


def _render_per_unit_entropy(table: Table, axes) -> None:
    unit = table.column("unit")
    ds = table.column("ds_baths")
    colors = np.where(ds >= 0.0, "tab:red", "tab:blue")
    axes.axhline(0.0, color="0.4", lw=0.8)
    axes.vlines(unit, 0.0, ds, color=colors, lw=1.0, alpha=0.6)
    axes.scatter(unit, ds, c=colors, s=22, zorder=3)
    axes.axvline((unit.min() + unit.max()) / 2.0, color="0.7", lw=0.8,
                 ls="--", label="equator")
    axes.set_xlabel("unit along the chain")
    axes.set_ylabel("bath entropy per cycle  [nats]")
    axes.legend(frameon=False, fontsize=9)


def _render_ep_ratio(table: Table, axes) -> None:
    n = table.column("n")
    ratio = table.column("ratio")
    even = (n.astype(int) % 2) == 0
    axes.axhline(1.0, color="0.4", lw=0.8)
    axes.plot(n, ratio, color="0.75", lw=0.8, zorder=1)
    axes.scatter(n[even], ratio[even], color="tab:green", s=26, zorder=3,
                 label="even n")
    axes.scatter(n[~even], ratio[~even], color="tab:purple", s=26, zorder=3,
                 marker="s", label="odd n")
    axes.set_xlabel("number of units  n")
    axes.set_ylabel("pollution ratio  collective / baseline")
    axes.legend(frameon=False, fontsize=9)


def _render_ep_scaling(table: Table, axes) -> None:
    n = table.column("n")
    ep = table.column("ep")
    axes.loglog(n, ep, "o-", color="tab:red", ms=4, label="chain pollution")
    guide = ep[-1] * (n[-1] / n)
    axes.loglog(n, guide, "--", color="0.5", lw=1.0, label=r"$\propto 1/n$")
    axes.set_xlabel("number of units  n")
    axes.set_ylabel("entropy pollution  [nats / energy]")
    axes.legend(frameon=False, fontsize=9)


_RENDERERS = {
    "boost": _render_boost,
    "per-unit-entropy": _render_per_unit_entropy,
    "ep-ratio": _render_ep_ratio,
    "ep-scaling": _render_ep_scaling,
}


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the output path."""
    if spec.figure_kind not in FIGURE_KINDS:
        raise SchemaError(
            f"unknown figure kind {spec.figure_kind!r}; "
            f"expected one of {FIGURE_KINDS}"
        )
    table = read_table(spec.csv_path)
    _require_columns(table, spec.figure_kind)
    figure, axes = _new_axes(spec.title)
    _RENDERERS[spec.figure_kind](table, axes)
    figure.tight_layout()
    if spec.output_path.lower().endswith(".png"):
        figure.savefig(spec.output_path, metadata=_PNG_METADATA)
    else:
        figure.savefig(spec.output_path)
    return spec.output_path
