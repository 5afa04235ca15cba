"""Plain-text Cayley table files.

Format: a header line ``cayley v1 <n>`` followed by n lines of n
whitespace-separated element indices; row g, column h holds the index of
g*h, and index 0 is the identity.  ``#`` starts a comment that runs to the
end of the line; blank lines are ignored.  Parsing validates the full set
of group axioms, so a file that parses always yields a usable Group.
"""

from __future__ import annotations

import numpy as np

from .construct import CONSTRUCT_CAP
from .groups import Group

HEADER = "cayley v1"


class TableFormatError(ValueError):
    """Malformed table file; the message carries a 1-based line number."""


def emit_cayley(group: Group) -> str:
    """Render a group as table-file text (no comments, newline-terminated)."""
    lines = [f"{HEADER} {group.n}"]
    for row in group.table:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def parse_cayley(text: str, name: str = "imported") -> Group:
    """Parse table-file text and validate it as a group.

    Raises TableFormatError for structural problems and GroupError when the
    table is well-formed but violates a group axiom.
    """
    n: int | None = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 3 or " ".join(parts[:2]) != HEADER:
                raise TableFormatError(
                    f"line {lineno}: expected header '{HEADER} <n>', got {line!r}"
                )
            try:
                n = int(parts[2])
            except ValueError:
                raise TableFormatError(
                    f"line {lineno}: order {parts[2]!r} is not an integer"
                ) from None
            if n < 1:
                raise TableFormatError(f"line {lineno}: order must be positive, got {n}")
            if n > CONSTRUCT_CAP:
                raise TableFormatError(
                    f"line {lineno}: order {n} exceeds the supported cap {CONSTRUCT_CAP}"
                )
            continue
        if len(rows) == n:
            raise TableFormatError(f"line {lineno}: more than {n} table rows")
        try:
            vals = [int(t) for t in line.split()]
        except ValueError:
            raise TableFormatError(f"line {lineno}: non-integer table entry") from None
        if len(vals) != n:
            raise TableFormatError(
                f"line {lineno}: expected {n} entries in the row, got {len(vals)}"
            )
        for col, v in enumerate(vals):
            if not 0 <= v < n:
                raise TableFormatError(
                    f"line {lineno}, column {col + 1}: entry {v} outside 0..{n - 1}"
                )
        rows.append(vals)
    if n is None:
        raise TableFormatError(f"missing '{HEADER} <n>' header")
    if len(rows) != n:
        raise TableFormatError(f"expected {n} table rows, found {len(rows)}")
    return Group(np.array(rows, dtype=np.int64), name=name)
