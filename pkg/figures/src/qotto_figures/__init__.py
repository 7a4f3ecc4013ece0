"""Figure rendering for qotto CSV outputs."""

from .render import FIGURE_KINDS, FigureSpec, SchemaError, Table, read_table, render

__version__ = "0.1.0"
