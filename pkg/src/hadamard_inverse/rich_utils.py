"""Rich rendering for coefficient tables, complex values and demo progress."""

from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

__all__ = ["console", "create_progress", "create_table", "format_cell", "format_complex", "render_rows"]

# stderr, stdout carries artifacts
console = Console(stderr=True)


def format_complex(value: complex, digits: int = 12) -> str:
    """Render a complex number compactly, dropping a vanishing imaginary part."""
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:.{digits}g}"
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real:.{digits}g}{sign}{abs(value.imag):.{digits}g}j"


def format_cell(value: Any, digits: int = 12) -> str:
    """Table cell text: numbers at ``digits`` significant digits, infinities as ∞, rest via str."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, complex | np.complexfloating):
        return format_complex(value, digits)
    if isinstance(value, float | np.floating):
        if np.isinf(value):
            return "∞" if value > 0 else "-∞"
        return f"{float(value):.{digits}g}"
    return str(value)


def create_table(title: str, *columns: str, numeric: Sequence[str] = (), **kwargs: Any) -> Table:
    """Table with one column per name; columns listed in ``numeric`` are right-justified.

    Args:
        title: Table title
        *columns: Column names
        numeric: Names of columns holding numbers
        **kwargs: Passed through to :class:`rich.table.Table`

    Returns:
        Empty table
    """
    table = Table(title=title, header_style="bold cyan", **kwargs)
    for column in columns:
        table.add_column(column, justify="right" if column in numeric else "left")
    return table


def render_rows(title: str, header: Sequence[str], rows: Iterable[Sequence[Any]], digits: int = 12) -> Table:
    """Build and print a table of artifact rows; the first column is treated as a label."""
    table = create_table(title, *header, numeric=tuple(header[1:]))
    for row in rows:
        table.add_row(*(format_cell(v, digits) for v in row))
    console.print(table)
    return table


def create_progress() -> Progress:
    """Progress bar for step lists such as the demo checks."""
    return Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    )
