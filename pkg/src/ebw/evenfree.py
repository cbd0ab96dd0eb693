"""Even configurations in designs and the matching column-dependency search on matrices.

A configuration (set of blocks) is even when every point it touches lies in
an even number of its blocks.  For a Steiner 2-design the smallest even
configuration has exactly as many blocks as the minimum distance of the code
whose parity-check matrix is the incidence matrix.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from math import comb

from .designs import Design
from .errors import StructuralError
from .gf2 import BinaryMatrix

DEFAULT_NODE_BUDGET = 10**9


class _BudgetExhausted(Exception):
    pass


@dataclass
class EvenFreenessReport:
    max_verified_r: int
    witness: list[int] | None
    search_cap: int
    complete: bool = True
    pasch_count: int | None = None
    nodes: int = 0

    @property
    def status(self) -> str:
        return "complete" if self.complete else "partial"

    def to_json(self) -> dict:
        return {
            "max_verified_r": self.max_verified_r,
            "witness": self.witness,
            "pasch_count": self.pasch_count,
            "search_cap": self.search_cap,
            "status": self.status,
            "nodes": self.nodes,
        }


@dataclass
class DistanceResult:
    """Outcome of a capped minimum-distance search.

    ``distance`` is None when nothing of weight <= ``cap`` exists ("> cap"),
    or when the search ran out of budget (``complete`` False) after verifying
    every weight up to ``verified_up_to``.
    """

    distance: int | None
    cap: int
    witness: list[int] | None = None
    complete: bool = True
    verified_up_to: int = 0
    nodes: int = 0

    def __str__(self) -> str:
        if self.distance is not None:
            return str(self.distance)
        return f"> {self.cap}" if self.complete else f"> {self.verified_up_to} (partial)"

    def to_json(self):
        return {
            "distance": self.distance if self.distance is not None else str(self),
            "cap": self.cap,
            "witness": self.witness,
            "status": "complete" if self.complete else "partial",
            "nodes": self.nodes,
        }


class _SubsetSearch:
    """Smallest set of items (bitmasks) whose XOR is zero.

    Items are fixed-size subsets of a ground set.  The search picks a least
    item, then repeatedly branches on the items covering the lowest
    uncancelled ground element; the final item is a hash lookup.
    """

    def __init__(self, masks, budget):
        self.masks = list(masks)
        self.by_mask = defaultdict(list)
        for i, x in enumerate(self.masks):
            self.by_mask[x].append(i)
        self.through = defaultdict(list)
        for i, x in enumerate(self.masks):
            y = x
            while y:
                low = y & -y
                self.through[low.bit_length() - 1].append(i)
                y ^= low
        self.max_weight = max((x.bit_count() for x in self.masks), default=0)
        self.budget = budget
        self.nodes = 0
        self.exhaustive = False

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted

    def _extend(self, first, chosen, odd, remaining, out):
        self._tick()
        if remaining == 1:
            for j in self.by_mask.get(odd, ()):
                if j > first and j not in chosen:
                    out.append(sorted(chosen + [j]))
                    return True
            return False
        if odd == 0 or odd.bit_count() > remaining * self.max_weight:
            return False
        low = (odd & -odd).bit_length() - 1
        found = False
        for j in self.through[low]:
            if j <= first or j in chosen:
                continue
            chosen.append(j)
            hit = self._extend(first, chosen, odd ^ self.masks[j], remaining - 1, out)
            chosen.pop()
            found = found or hit
            if hit and not self.exhaustive:
                return True
        return found

    def find(self, size):
        """Lexicographically least zero-XOR subset of exactly ``size`` items, or None.

        The least first item is found by scanning in order; all solutions
        sharing it are then collected and the smallest sorted tuple returned.
        """
        if size == 1:
            for i, x in enumerate(self.masks):
                if x == 0:
                    return [i]
            return None
        for first in range(len(self.masks)):
            self.exhaustive = False
            out = []
            if self._extend(first, [first], self.masks[first], size - 1, out):
                self.exhaustive = True
                out = []
                self._extend(first, [first], self.masks[first], size - 1, out)
                return min(out)
        return None


def _sizes(cap, all_odd):
    for s in range(1, cap + 1):
        yield s, all_odd and s % 2 == 1


def min_even_configuration(d: Design, cap: int = 8, node_budget: int = DEFAULT_NODE_BUDGET) -> EvenFreenessReport:
    """Smallest even configuration of at most ``cap`` blocks.

    When every block has odd size only even configuration sizes are searched.
    A budget overrun returns a partial report whose ``max_verified_r`` is the
    largest size searched to completion.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    masks = [sum(1 << x for x in blk) for blk in d.blocks]
    search = _SubsetSearch(masks, node_budget)
    all_odd = all(len(b) % 2 == 1 for b in d.blocks)
    verified = 0
    for size, skip in _sizes(cap, all_odd):
        if not skip:
            try:
                witness = search.find(size)
            except _BudgetExhausted:
                return EvenFreenessReport(verified, None, cap, complete=False, nodes=search.nodes)
            if witness is not None:
                return EvenFreenessReport(size - 1, witness, cap, nodes=search.nodes)
        verified = size
    return EvenFreenessReport(cap, None, cap, nodes=search.nodes)


def is_even_configuration(d: Design, block_indices) -> bool:
    count = defaultdict(int)
    for j in block_indices:
        for x in d.blocks[j]:
            count[x] += 1
    return bool(block_indices) and all(c % 2 == 0 for c in count.values())


def count_pasch(d: Design) -> int:
    """Number of Pasch configurations {abc, ade, fbd, fce} in a triple system."""
    if any(len(b) != 3 for b in d.blocks):
        raise StructuralError("Pasch configurations are only defined for block size 3")
    third = {}
    for blk in d.blocks:
        a, b, c = blk
        third[(a, b)] = c
        third[(a, c)] = b
        third[(b, c)] = a

    def other(x, y):
        return third.get((x, y) if x < y else (y, x))

    through = defaultdict(list)
    for blk in d.blocks:
        for x in blk:
            through[x].append(blk)
    completions = 0
    for a, blks in through.items():
        for B1, B2 in itertools.combinations(blks, 2):
            b, c = [x for x in B1 if x != a]
            e1, e2 = [x for x in B2 if x != a]
            for d_, e in ((e1, e2), (e2, e1)):
                f = other(b, d_)
                if f is not None and f not in B1 and f not in B2 and other(c, e) == f:
                    completions += 1
    # each Pasch has six intersecting block pairs, one completion apiece
    return completions // 6


def _xor_subsets(cols, size):
    for combo in itertools.combinations(range(len(cols)), size):
        x = 0
        for j in combo:
            x ^= cols[j]
        yield combo, x


def classical_min_distance(H: BinaryMatrix, cap: int = 8, node_budget: int = DEFAULT_NODE_BUDGET) -> DistanceResult:
    """Fewest columns of ``H`` summing to zero, searched up to ``cap`` columns.

    Meet in the middle: for weight ``w`` every XOR of ``w // 2`` columns is
    tabulated and matched against XORs of ``w - w // 2`` disjoint columns.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    cols = H.col_ints()
    all_odd = bool(all(w % 2 == 1 for w in H.col_weights()))
    nodes = 0
    verified = 0
    for w, skip in _sizes(cap, all_odd):
        if skip:
            verified = w
            continue
        if w == 1:
            zero = [j for j, c in enumerate(cols) if c == 0]
            if zero:
                return DistanceResult(1, cap, [zero[0]], verified_up_to=0, nodes=len(cols))
            nodes += len(cols)
            verified = 1
            continue
        small, large = w // 2, w - w // 2
        if nodes + comb(len(cols), small) + comb(len(cols), large) > node_budget:
            return DistanceResult(None, cap, complete=False, verified_up_to=verified, nodes=nodes)
        table = defaultdict(list)
        for combo, x in _xor_subsets(cols, small):
            table[x].append(combo)
        nodes += comb(len(cols), small)
        best = None
        for combo, x in _xor_subsets(cols, large):
            for other in table.get(x, ()):
                if set(other).isdisjoint(combo):
                    cand = tuple(sorted(other + combo))
                    if best is None or cand < best:
                        best = cand
        nodes += comb(len(cols), large)
        if best is not None:
            return DistanceResult(w, cap, list(best), verified_up_to=w - 1, nodes=nodes)
        verified = w
    return DistanceResult(None, cap, verified_up_to=cap, nodes=nodes)
