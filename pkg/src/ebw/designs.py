"""Pairwise balanced designs and Steiner 2-designs.

Points are always ``0..v-1``.  Blocks are stored as sorted tuples and the
block list is kept in lexicographic order, so two constructions of the same
design compare (and hash, and serialize) identically.

Point labelings used by the geometric constructions:

* ``construct_pg_lines(m)``: point ``i`` is the nonzero vector of GF(2)^m
  whose integer encoding is ``i + 1``.
* ``construct_ag_lines(m, q)``: point index is ``sum(x[i] * q**(m-1-i))``,
  i.e. vectors of GF(q)^m in lexicographic order.
* ``construct_projective_plane(q)``: points are the normalized vectors of
  GF(q)^3 (first nonzero coordinate equal to 1) in lexicographic order.
* ``construct_sts(v)``: Bose/Skolem point ``(x, k)`` with ``k`` in Z_3 maps to
  ``3*x + k``; Skolem's extra point is ``v - 1``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from .errors import AdmissibilityError, ParseError, StructuralError
from .fields import field as gf_field, prime_power
from .gf2 import BinaryMatrix


@dataclass(frozen=True)
class Design:
    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, v: int, blocks: Iterable[Iterable[int]]):
        canon = []
        for i, b in enumerate(blocks):
            b = list(b)
            sb = tuple(sorted(b))
            if len(set(sb)) != len(sb):
                raise StructuralError(f"block {i} {b} repeats a point")
            if sb and (sb[0] < 0 or sb[-1] >= v):
                raise StructuralError(f"block {i} {b} has a point outside 0..{v - 1}")
            if len(sb) < 2:
                raise StructuralError(f"block {i} {b} has fewer than two points")
            canon.append(sb)
        object.__setattr__(self, "v", int(v))
        object.__setattr__(self, "blocks", tuple(sorted(canon)))

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> set[int]:
        return {len(b) for b in self.blocks}

    def replication(self) -> list[int]:
        r = [0] * self.v
        for blk in self.blocks:
            for x in blk:
                r[x] += 1
        return r

    def to_json(self) -> dict:
        return {"v": self.v, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "Design":
        try:
            v = data["v"]
            blocks = data["blocks"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"design JSON needs 'v' and 'blocks': {exc}") from None
        if not isinstance(v, int) or not isinstance(blocks, list):
            raise ParseError("'v' must be an int and 'blocks' a list of int lists")
        for i, blk in enumerate(blocks):
            if not isinstance(blk, list) or not all(isinstance(x, int) for x in blk):
                raise ParseError(f"block {i} is not a list of ints")
        return cls(v, blocks)


def save_design(d: Design, path) -> None:
    Path(path).write_text(json.dumps(d.to_json()) + "\n")


def load_design(path) -> Design:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return Design.from_json(data)


@dataclass
class PbdReport:
    is_pbd: bool
    block_size_set: list[int]
    replication: list[int]
    odd_replicate: bool
    equireplicate: bool
    is_steiner: bool
    is_trivial: bool
    v: int = 0
    b: int = 0
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "is_pbd": self.is_pbd,
            "v": self.v,
            "b": self.b,
            "block_size_set": self.block_size_set,
            "replication": self.replication,
            "odd_replicate": self.odd_replicate,
            "equireplicate": self.equireplicate,
            "is_steiner": self.is_steiner,
            "is_trivial": self.is_trivial,
            "counterexample": self.counterexample,
        }


def verify_pbd(d: Design) -> PbdReport:
    """Check that every pair of points lies in exactly one block."""
    cover: dict[tuple[int, int], int] = {}
    counterexample = None
    for j, blk in enumerate(d.blocks):
        for pair in itertools.combinations(blk, 2):
            if pair in cover:
                if counterexample is None:
                    counterexample = {"pair": list(pair), "kind": "covered twice", "blocks": [cover[pair], j]}
            else:
                cover[pair] = j
    if counterexample is None and len(cover) != d.v * (d.v - 1) // 2:
        for pair in itertools.combinations(range(d.v), 2):
            if pair not in cover:
                counterexample = {"pair": list(pair), "kind": "uncovered", "blocks": []}
                break
    rep = d.replication()
    sizes = sorted(d.block_sizes)
    return PbdReport(
        is_pbd=counterexample is None,
        block_size_set=sizes,
        replication=rep,
        odd_replicate=all(r % 2 == 1 for r in rep),
        equireplicate=len(set(rep)) <= 1,
        is_steiner=len(sizes) == 1,
        is_trivial=d.b == 0 or (d.b == 1 and len(d.blocks[0]) == d.v),
        v=d.v,
        b=d.b,
        counterexample=counterexample,
    )


def incidence_matrix(d: Design) -> BinaryMatrix:
    """Points-by-blocks matrix; column ``j`` is block ``j``."""
    if d.b == 0:
        raise StructuralError("a design with no blocks has no incidence matrix")
    return BinaryMatrix.from_supports(d.blocks, d.v)


def design_from_matrix(H: BinaryMatrix) -> Design:
    """Read rows as points and columns as blocks."""
    return Design(H.rows, H.col_supports())


def pbd_necessary_conditions(v: int, K: Iterable[int]) -> tuple[bool, int, int]:
    """Return ``(passes, alpha, beta)`` for the divisibility conditions on a PBD(v, K, 1)."""
    K = sorted(set(K))
    if not K:
        raise ValueError("block size set K must be nonempty")
    if any(k < 2 for k in K):
        raise ValueError("block sizes must be at least 2")
    alpha = reduce(gcd, (k - 1 for k in K))
    beta = reduce(gcd, (k * (k - 1) for k in K))
    ok = (v - 1) % alpha == 0 and (v * (v - 1)) % beta == 0
    return ok, alpha, beta


# constructions ------------------------------------------------------------


def _bose(v: int) -> list[tuple[int, ...]]:
    n = (v - 3) // 6
    order = 2 * n + 1
    half = n + 1  # inverse of 2 modulo 2n+1

    def pt(x, k):
        return 3 * x + k % 3

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(order)]
    for x, y in itertools.combinations(range(order), 2):
        z = ((x + y) * half) % order
        for k in range(3):
            blocks.append((pt(x, k), pt(y, k), pt(z, k + 1)))
    return blocks


def _skolem(v: int) -> list[tuple[int, ...]]:
    n = (v - 1) // 6
    order = 2 * n
    inf = v - 1

    def pt(x, k):
        return 3 * x + k % 3

    def op(x, y):
        # half-idempotent commutative quasigroup: x∘x = (x+n)∘(x+n) = x mod n
        s = (x + y) % order
        return s // 2 if s % 2 == 0 else n + s // 2

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)]
    for x in range(n):
        for k in range(3):
            blocks.append((inf, pt(x + n, k), pt(x, k + 1)))
    for x, y in itertools.combinations(range(order), 2):
        z = op(x, y)
        for k in range(3):
            blocks.append((pt(x, k), pt(y, k), pt(z, k + 1)))
    return blocks


def construct_sts(v: int) -> Design:
    """Steiner triple system S(2,3,v): Bose for v = 3 mod 6, Skolem for v = 1 mod 6."""
    if v < 7 or v % 6 not in (1, 3):
        raise AdmissibilityError(f"STS order v={v}: v ≡ 1,3 (mod 6) and v >= 7 required")
    blocks = _bose(v) if v % 6 == 3 else _skolem(v)
    return Design(v, blocks)


def construct_pg_lines(m: int) -> Design:
    """Points and lines of PG(m-1, 2) as an S(2, 3, 2^m - 1)."""
    if m < 3:
        raise AdmissibilityError(f"PG(m-1,2) lines need m >= 3, got m={m}")
    v = 2**m - 1
    blocks = set()
    for a in range(1, v + 1):
        for b in range(a + 1, v + 1):
            blocks.add(tuple(sorted((a - 1, b - 1, (a ^ b) - 1))))
    return Design(v, blocks)


def _vectors(q: int, m: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(q), repeat=m))


def _vec_index(x: Sequence[int], q: int) -> int:
    idx = 0
    for c in x:
        idx = idx * q + c
    return idx


def construct_ag_lines(m: int, q: int) -> Design:
    """Points and lines of AG(m, q) as an S(2, q, q^m)."""
    if m < 2:
        raise AdmissibilityError(f"AG(m,q) needs m >= 2, got m={m}")
    pk = prime_power(q)
    if pk is None or pk[0] == 2:
        raise AdmissibilityError(f"AG(m,q) needs an odd prime power q, got q={q}")
    F = gf_field(q)
    pts = _vectors(q, m)
    dirs = [b for b in pts if any(b) and b[next(i for i, c in enumerate(b) if c)] == 1]
    blocks = set()
    for a in pts:
        for b in dirs:
            line = []
            for t in range(q):
                line.append(_vec_index([F.add(ai, F.mul(t, bi)) for ai, bi in zip(a, b)], q))
            blocks.add(tuple(sorted(line)))
    return Design(q**m, blocks)


def construct_projective_plane(q: int) -> Design:
    """Desarguesian plane PG(2, q) as an S(2, q+1, q^2+q+1)."""
    if prime_power(q) is None:
        raise AdmissibilityError(f"projective plane order q={q} must be a prime power")
    F = gf_field(q)
    pts = [x for x in _vectors(q, 3) if any(x) and x[next(i for i, c in enumerate(x) if c)] == 1]
    index = {x: i for i, x in enumerate(pts)}

    def dot(a, x):
        s = 0
        for ai, xi in zip(a, x):
            s = F.add(s, F.mul(ai, xi))
        return s

    blocks = [tuple(index[x] for x in pts if dot(a, x) == 0) for a in pts]
    return Design(len(pts), blocks)


def steiner_counts(v: int, mu: int) -> tuple[int, int]:
    """Block count and replication number of an S(2, mu, v)."""
    return v * (v - 1) // (mu * (mu - 1)), (v - 1) // (mu - 1)
