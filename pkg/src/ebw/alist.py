"""Reader and writer for the alist sparse parity-check format.

    n_cols n_rows
    max_col_degree max_row_degree
    <n_cols column degrees>
    <n_rows row degrees>
    <n_cols lines: 1-based row indices of each column, zero-padded>
    <n_rows lines: 1-based column indices of each row, zero-padded>

The reader accepts unpadded lists as well and cross-checks the column and
row sections against each other.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .gf2 import BinaryMatrix


def dumps(H: BinaryMatrix) -> str:
    cols = H.col_supports()
    dense = H.to_dense()
    rows = [[j for j in range(H.cols) if dense[i, j]] for i in range(H.rows)]
    max_c = max(len(c) for c in cols)
    max_r = max(len(r) for r in rows)
    lines = [
        f"{H.cols} {H.rows}",
        f"{max_c} {max_r}",
        " ".join(str(len(c)) for c in cols),
        " ".join(str(len(r)) for r in rows),
    ]
    for c in cols:
        lines.append(" ".join(str(i + 1) for i in c + [-1] * (max_c - len(c))))
    for r in rows:
        lines.append(" ".join(str(j + 1) for j in r + [-1] * (max_r - len(r))))
    return "\n".join(lines) + "\n"


def _lines(text: str):
    out = []
    for ln, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            out.append((ln, line))
    return out


def loads(text: str) -> BinaryMatrix:
    lines = _lines(text)

    def ints(k):
        if k >= len(lines):
            raise ParseError("unexpected end of file", (lines[-1][0] + 1) if lines else 1)
        ln, line = lines[k]
        vals = []
        pos = 0
        for tok in line.split():
            pos = line.index(tok, pos)
            try:
                vals.append(int(tok))
            except ValueError:
                raise ParseError(f"expected an integer, found {tok!r}", ln, pos + 1) from None
            pos += len(tok)
        return ln, vals

    ln, header = ints(0)
    if len(header) != 2 or min(header) < 1:
        raise ParseError("first line must be 'n_cols n_rows' with positive values", ln, 1)
    n, m = header
    ln, maxes = ints(1)
    if len(maxes) != 2:
        raise ParseError("second line must hold the maximum column and row degrees", ln, 1)
    ln, col_deg = ints(2)
    if len(col_deg) != n:
        raise ParseError(f"expected {n} column degrees, found {len(col_deg)}", ln, 1)
    ln, row_deg = ints(3)
    if len(row_deg) != m:
        raise ParseError(f"expected {m} row degrees, found {len(row_deg)}", ln, 1)
    col_sets = []
    for j in range(n):
        ln, vals = ints(4 + j)
        idx = [x for x in vals if x != 0]
        if len(idx) != col_deg[j]:
            raise ParseError(f"column {j + 1} lists {len(idx)} rows, degree says {col_deg[j]}", ln, 1)
        for x in idx:
            if not 1 <= x <= m:
                raise ParseError(f"row index {x} out of range 1..{m}", ln, 1)
        col_sets.append(sorted(x - 1 for x in idx))
    row_sets = []
    for i in range(m):
        ln, vals = ints(4 + n + i)
        idx = [x for x in vals if x != 0]
        if len(idx) != row_deg[i]:
            raise ParseError(f"row {i + 1} lists {len(idx)} columns, degree says {row_deg[i]}", ln, 1)
        for x in idx:
            if not 1 <= x <= n:
                raise ParseError(f"column index {x} out of range 1..{n}", ln, 1)
        row_sets.append(sorted(x - 1 for x in idx))
    H = BinaryMatrix.from_supports(col_sets, m)
    from_rows = [[] for _ in range(m)]
    for j, support in enumerate(col_sets):
        for i in support:
            from_rows[i].append(j)
    for i in range(m):
        if from_rows[i] != row_sets[i]:
            ln = lines[4 + n + i][0]
            raise ParseError(f"row {i + 1} disagrees with the column lists", ln, 1)
    return H


def read_alist(path) -> BinaryMatrix:
    return loads(Path(path).read_text())


def write_alist(H: BinaryMatrix, path) -> None:
    Path(path).write_text(dumps(H))
