"""Girth and short cycles of the Tanner graph of a parity-check matrix.

Vertices ``0..rows-1`` are checks and ``rows..rows+cols-1`` are bits.  A
4-cycle is a 2x2 all-one submatrix; 6-cycles are counted as cycles of the
bipartite graph, which for 4-cycle-free matrices is the same as counting 3x3
submatrices with exactly two ones in every row and column.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import isqrt

from .errors import AdmissibilityError
from .gf2 import BinaryMatrix


@dataclass
class CycleReport:
    girth: int | None  # None means the Tanner graph is a forest
    four_cycle_count: int
    six_cycle_count: int
    predicted_six_cycles: int | None = None

    def to_json(self) -> dict:
        return {
            "girth": "acyclic" if self.girth is None else self.girth,
            "four_cycle_count": self.four_cycle_count,
            "six_cycle_count": self.six_cycle_count,
            "predicted_six_cycles": self.predicted_six_cycles,
        }


def has_four_cycle(H: BinaryMatrix) -> bool:
    rows = H.row_ints()
    for a, b in itertools.combinations(rows, 2):
        if (a & b).bit_count() >= 2:
            return True
    return False


def count_four_cycles(H: BinaryMatrix) -> int:
    total = 0
    for a, b in itertools.combinations(H.row_ints(), 2):
        s = (a & b).bit_count()
        total += s * (s - 1) // 2
    return total


def _adjacency(H: BinaryMatrix) -> list[list[int]]:
    m = H.rows
    adj: list[list[int]] = [[] for _ in range(m + H.cols)]
    for j, support in enumerate(H.col_supports()):
        for i in support:
            adj[i].append(m + j)
            adj[m + j].append(i)
    return adj


def girth(H: BinaryMatrix) -> int | None:
    """Shortest cycle length, or None when there is no cycle."""
    if has_four_cycle(H):
        return 4
    adj = _adjacency(H)
    nv = len(adj)
    best = None
    for s in range(nv):
        dist = [-1] * nv
        parent = [-1] * nv
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            # a cycle through s found at depth >= best/2 cannot improve on best
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
        if best == 4:
            break
    return best


def count_six_cycles(H: BinaryMatrix) -> int:
    """Exact number of 6-cycles, via pairwise row intersections of every row triple."""
    rows = H.row_ints()
    m = len(rows)
    inter = [[0] * m for _ in range(m)]
    size = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = rows[i] & rows[j]
            inter[i][j] = inter[j][i] = x
            size[i][j] = size[j][i] = x.bit_count()
    total = 0
    for i in range(m):
        si = size[i]
        for j in range(i + 1, m):
            if not si[j]:
                continue
            sj = size[j]
            ij = inter[i][j]
            for k in range(j + 1, m):
                if not sj[k] or not si[k]:
                    continue
                # choose distinct columns a in R_i&R_j, b in R_j&R_k, c in R_k&R_i
                t = (ij & rows[k]).bit_count()
                total += si[j] * sj[k] * si[k] - t * (si[j] + sj[k] + si[k]) + 2 * t
    return total


def steiner_order(n: int, mu: int) -> int:
    """Point count v of an S(2, mu, v) with n blocks, from v(v-1) = n mu (mu-1).

    Raises AdmissibilityError when no integer v exists.
    """
    if n < 1 or mu < 2:
        raise AdmissibilityError(f"need n >= 1 and mu >= 2, got n={n}, mu={mu}")
    disc = 1 + 4 * n * mu * (mu - 1)
    s = isqrt(disc)
    if s * s != disc:
        raise AdmissibilityError(f"1 + 4 n mu (mu-1) = {disc} is not a perfect square (n={n}, mu={mu})")
    return (1 + s) // 2


def predicted_six_cycles(n: int, mu: int) -> int:
    """Six-cycle count v(v-1)(v-mu)/6 of any S(2, mu, v) incidence matrix with n columns."""
    v = steiner_order(n, mu)
    if (v - 1) % (mu - 1):
        raise AdmissibilityError(f"v={v} has (v-1) not divisible by mu-1={mu - 1}")
    num = v * (v - 1) * (v - mu)
    if num % 6:
        raise AdmissibilityError(f"v(v-1)(v-mu)={num} is not divisible by 6")
    return num // 6


def cycle_report(H: BinaryMatrix, mu: int | None = None) -> CycleReport:
    """Girth, 4- and 6-cycle counts; the predicted 6-cycle count is attached when
    ``mu`` is given and the column count admits an S(2, mu, v)."""
    predicted = None
    if mu is not None:
        try:
            predicted = predicted_six_cycles(H.cols, mu)
        except AdmissibilityError:
            predicted = None
    return CycleReport(
        girth=girth(H),
        four_cycle_count=count_four_cycles(H),
        six_cycle_count=count_six_cycles(H),
        predicted_six_cycles=predicted,
    )
