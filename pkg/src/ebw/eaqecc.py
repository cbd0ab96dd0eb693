"""Entanglement-assisted code parameters of homogeneous CSS-type LDPC codes.

A parity-check matrix H (used for both X and Z checks) gives an
[[n, k; c]] code with c = rank(H H^T) ebits and k = n - 2 rank(H) + c.
Everything in this module that involves a square root uses exact integer
square roots; a non-square discriminant means "inadmissible".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import isqrt

from . import gf2
from .designs import Design, design_from_matrix, incidence_matrix, verify_pbd
from .errors import AdmissibilityError, InfeasibleError, StructuralError
from .evenfree import DEFAULT_NODE_BUDGET, DistanceResult, _BudgetExhausted, _SubsetSearch, classical_min_distance
from .gf2 import BinaryMatrix, RowSpace
from .tanner import girth as tanner_girth
from .tanner import has_four_cycle

QUANTUM_ENUM_LIMIT = 22


@dataclass
class EaqeccParams:
    n: int
    rank: int
    classical_k: int
    c: int
    quantum_k: int
    girth: int | None
    classical_d: DistanceResult | None = None
    quantum_d: "QuantumDistance | None" = None

    @property
    def label(self) -> str:
        return f"[[{self.n},{self.quantum_k};{self.c}]]"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "rank": self.rank,
            "classical_k": self.classical_k,
            "c": self.c,
            "quantum_k": self.quantum_k,
            "girth": "acyclic" if self.girth is None else self.girth,
            "classical_d": None if self.classical_d is None else self.classical_d.to_json(),
            "quantum_d": None if self.quantum_d is None else self.quantum_d.to_json(),
        }


def _require_no_zero_lines(H: BinaryMatrix) -> None:
    rw, cw = H.row_weights(), H.col_weights()
    if (rw == 0).any():
        raise StructuralError(f"row {int((rw == 0).argmax())} is all zero")
    if (cw == 0).any():
        raise StructuralError(f"column {int((cw == 0).argmax())} is all zero")


def ebits(H: BinaryMatrix) -> int:
    return gf2.rank(gf2.gram(H))


def characterize(H: BinaryMatrix, distance_cap: int | None = 8, quantum_distance: bool = False,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> EaqeccParams:
    """Length, ranks, ebits, dimension and girth of the homogeneous code of ``H``.

    ``distance_cap`` bounds the classical distance search (None skips it).
    """
    _require_no_zero_lines(H)
    r = gf2.rank(H)
    c = ebits(H)
    params = EaqeccParams(
        n=H.cols,
        rank=r,
        classical_k=H.cols - r,
        c=c,
        quantum_k=H.cols - 2 * r + c,
        girth=tanner_girth(H),
    )
    if distance_cap is not None:
        params.classical_d = classical_min_distance(H, distance_cap, node_budget)
    if quantum_distance:
        params.quantum_d = quantum_min_distance(H, distance_cap)
    return params


# --- one-ebit structure ------------------------------------------------------


@dataclass
class OneEbitCheck:
    holds: bool
    violated_condition: int | None = None
    witness: dict | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "violated_condition": self.violated_condition,
            "witness": self.witness,
            "detail": self.detail,
        }


def one_ebit_structure_check(H: BinaryMatrix) -> OneEbitCheck:
    """The three row/column conditions characterizing one-ebit, 4-cycle-free matrices.

    1. every two rows share exactly one column;
    2. every row has odd weight greater than one;
    3. every column has weight greater than one.
    """
    rows = H.row_ints()
    for (i, a), (j, b) in itertools.combinations(enumerate(rows), 2):
        shared = (a & b).bit_count()
        if shared != 1:
            return OneEbitCheck(False, 1, {"rows": [i, j], "shared": shared},
                                f"rows {i} and {j} share {shared} columns")
    for i, a in enumerate(rows):
        w = a.bit_count()
        if w % 2 == 0 or w == 1:
            return OneEbitCheck(False, 2, {"row": i, "weight": w}, f"row {i} has weight {w}")
    for j, w in enumerate(H.col_weights().tolist()):
        if w <= 1:
            return OneEbitCheck(False, 3, {"column": j, "weight": w}, f"column {j} has weight {w}")
    return OneEbitCheck(True, detail="all three conditions hold")


def pbd_equivalence_check(H: BinaryMatrix) -> bool:
    """Is ``H`` the incidence matrix of a nontrivial odd-replicate PBD of index one
    with every block of size at least two?"""
    if (H.col_weights() < 2).any():
        return False
    report = verify_pbd(design_from_matrix(H))
    return report.is_pbd and report.odd_replicate and not report.is_trivial


def one_ebit_girth_predicate(H: BinaryMatrix) -> bool:
    """c = 1 and girth > 4, under the standing assumption of row and column weights >= 2."""
    if (H.row_weights() < 2).any() or (H.col_weights() < 2).any():
        return False
    return not has_four_cycle(H) and ebits(H) == 1


# --- integer arithmetic for existence and dimension bounds ------------------


def exact_isqrt(x: int) -> int | None:
    if x < 0:
        return None
    s = isqrt(x)
    return s if s * s == x else None


def regular_admissibility(n: int, mu: int) -> tuple[bool, int | None]:
    """Whether a regular one-ebit girth-6 code of length ``n`` and column weight ``mu``
    passes the odd-integer test, and the design order v it would need (None if
    v is not an integer)."""
    if n < 1 or mu < 2:
        return False, None
    s = exact_isqrt(1 + 4 * n * mu * (mu - 1))
    if s is None:
        return False, None
    v = (1 + s) // 2
    num = s - 1  # (v-1)/(mu-1) = (s-1) / (2(mu-1))
    den = 2 * (mu - 1)
    if num % den:
        return False, v
    return (num // den) % 2 == 1, v


def hillebrandt_rank_lower(v: int, mu: int) -> int:
    """ceil(1/2 + sqrt(1/4 + (v-1)(v-mu)/mu)) in exact integer arithmetic."""
    N = mu + 4 * (v - 1) * (v - mu)
    # least x >= 0 with x^2 >= N / mu
    x = isqrt(N // mu)
    while x * x * mu < N:
        x += 1
    while x > 0 and (x - 1) * (x - 1) * mu >= N:
        x -= 1
    # least r with 2r - 1 >= x
    return (x + 2) // 2


def two_adic(x: int) -> tuple[int, int]:
    """Write ``x = 2**e * u`` with ``u`` odd; returns ``(e, u)``."""
    e = 0
    while x % 2 == 0:
        x //= 2
        e += 1
    return e, x


def sts_window(n: int) -> tuple[int, int, int, int] | None:
    """Dimension window (k_lower, k_upper, t, u) for column weight three.

    None unless sqrt(24n + 1) is an integer congruent to 5 mod 8.
    """
    s = exact_isqrt(24 * n + 1)
    if s is None or s % 8 != 5:
        return None
    e, u = two_adic(s + 3)
    t = e - 1
    return n - s, n - s + 2 * t - 2, t, u


@dataclass
class BoundCheck:
    name: str
    predicted: object
    computed: object
    holds: bool | None  # None: not applicable to this input

    def to_json(self) -> dict:
        return {"name": self.name, "predicted": self.predicted, "computed": self.computed, "holds": self.holds}


@dataclass
class BoundsReport:
    n: int
    mu: int
    v: int | None
    odd_integer_test: bool
    hillebrandt_rank_lower: int | None = None
    k_lower_raw: int | None = None
    k_lower: int | None = None
    k_upper: int | None = None
    triple_window: tuple[int, int, int, int] | None = None
    checks: list[BoundCheck] = field(default_factory=list)
    assmus: dict | None = None

    @property
    def violations(self) -> list[BoundCheck]:
        return [c for c in self.checks if c.holds is False]

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "mu": self.mu,
            "v": self.v,
            "odd_integer_test": self.odd_integer_test,
            "hillebrandt_rank_lower": self.hillebrandt_rank_lower,
            "k_lower_raw": self.k_lower_raw,
            "k_lower": self.k_lower,
            "k_upper": self.k_upper,
            "triple_window": None if self.triple_window is None else dict(
                zip(("k_lower", "k_upper", "t", "u"), self.triple_window)),
            "assmus": self.assmus,
            "checks": [c.to_json() for c in self.checks],
            "consistent": self.consistent,
        }
        out["bound_violation"] = [
            {"bound": c.name, "predicted": c.predicted, "computed": c.computed} for c in self.violations
        ]
        return out


def dimension_bounds(n: int, mu: int) -> BoundsReport:
    """Predicted rank and dimension bounds for a regular one-ebit code of length ``n``."""
    ok, v = regular_admissibility(n, mu)
    if not ok:
        raise AdmissibilityError(
            f"(n={n}, mu={mu}) fails the odd-integer test; no regular one-ebit girth-6 code exists"
        )
    s = 2 * v - 1
    hill = hillebrandt_rank_lower(v, mu)
    raw = n - s
    rep = BoundsReport(
        n=n, mu=mu, v=v, odd_integer_test=True,
        hillebrandt_rank_lower=hill,
        k_lower_raw=raw,
        k_lower=max(raw, 0),
        k_upper=n - 2 * hill + 1,
    )
    if mu == 3 and n > 7:
        rep.triple_window = sts_window(n)
    return rep


def assmus_audit(v: int, rank: int) -> dict:
    """Place the 2-rank of an S(2,3,v) relative to the ranks v - t + i, 1 <= i < t."""
    applicable = v % 12 in (3, 7)
    t, u = two_adic(v + 1)
    if rank == v:
        where = "full"
    elif v - t < rank < v:
        where = f"assmus i={rank - v + t}"
    elif rank == v - t:
        where = "v - t (below the i >= 1 range)"
    else:
        where = "below v - t"
    return {"applicable": applicable, "v": v, "t": t, "u": u, "rank": rank,
            "range": [v - t + 1, v - 1] if t > 1 else None, "classification": where}


def audit_bounds(d: Design, H: BinaryMatrix | None = None) -> BoundsReport:
    """Compare every applicable bound with the computed rank and dimension of a Steiner 2-design.

    Violations are recorded in the report, never raised.
    """
    pbd = verify_pbd(d)
    if not pbd.is_pbd or not pbd.is_steiner:
        raise StructuralError("bounds audit needs a verified Steiner 2-design")
    mu = pbd.block_size_set[0]
    if H is None:
        H = incidence_matrix(d)
    n, v = H.cols, d.v
    r = gf2.rank(H)
    c = ebits(H)
    k = n - 2 * r + c
    odd, v_order = regular_admissibility(n, mu)
    hill = hillebrandt_rank_lower(v, mu)
    rep = BoundsReport(n=n, mu=mu, v=v, odd_integer_test=odd, hillebrandt_rank_lower=hill)
    rep.checks.append(BoundCheck("design_order", v_order, v, v_order == v))
    rep.checks.append(BoundCheck("odd_integer_test", odd, pbd.odd_replicate, odd == pbd.odd_replicate))
    rep.checks.append(BoundCheck("hillebrandt_rank", [hill, v], r, hill <= r <= v))
    if odd:
        pred = dimension_bounds(n, mu)
        rep.k_lower_raw = pred.k_lower_raw
        rep.k_lower = pred.k_lower
        rep.k_upper = pred.k_upper
        rep.triple_window = pred.triple_window
        one_ebit = c == 1
        rep.checks.append(BoundCheck("ebits_one", 1, c, one_ebit))
        rep.checks.append(BoundCheck("dimension_range", [pred.k_lower_raw, pred.k_upper], k,
                                     pred.k_lower_raw <= k <= pred.k_upper if one_ebit else None))
        if pred.triple_window is not None:
            lo, hi, _, _ = pred.triple_window
            rep.checks.append(BoundCheck("triple_window", [lo, hi], k, lo <= k <= hi if one_ebit else None))
    if mu == 3:
        rep.assmus = assmus_audit(v, r)
    return rep


# --- quantum distance ----------------------------------------------------------


@dataclass
class QuantumDistance:
    """Minimum weight over C minus (C intersect C-perp).

    ``status`` is "exact", "degenerate" (the difference is empty), or
    "above_cap" (no such codeword of weight <= cap).
    """

    status: str
    value: int | None = None
    cap: int | None = None
    witness: list[int] | None = None
    method: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "value": self.value, "cap": self.cap,
                "witness": self.witness, "method": self.method}


def _low_weight_codewords(H: BinaryMatrix, weight: int, node_budget: int):
    """All codewords of exactly ``weight`` as sorted column-index tuples."""
    search = _SubsetSearch(H.col_ints(), node_budget)
    search.exhaustive = True
    found = set()
    for first in range(H.cols):
        out = []
        if weight == 1:
            if search.masks[first] == 0:
                found.add((first,))
            continue
        search._extend(first, [first], search.masks[first], weight - 1, out)
        found.update(tuple(x) for x in out)
    return sorted(found)


def quantum_min_distance(H: BinaryMatrix, cap: int | None = None, enum_limit: int = QUANTUM_ENUM_LIMIT,
                         node_budget: int = DEFAULT_NODE_BUDGET) -> QuantumDistance:
    """Exact when dim C <= ``enum_limit`` (Gray-code walk over C); otherwise a
    weight-by-weight codeword search up to ``cap`` (at most 8).  Anything else
    raises InfeasibleError."""
    r = gf2.rank(H)
    c = ebits(H)
    k = H.cols - r
    if H.cols - 2 * r + c == 0:
        return QuantumDistance("degenerate", cap=cap, method="dimension")
    dual = RowSpace(H)
    if k <= enum_limit:
        basis = [gf2.bits_to_int(x) for x in gf2.nullspace_basis(H)]
        best, best_word = None, None
        x = 0
        for i in range(1, 1 << k):
            x ^= basis[(i & -i).bit_length() - 1]
            w = x.bit_count()
            if (best is None or w < best) and x not in dual:
                best, best_word = w, x
        support = [j for j in range(H.cols) if (best_word >> j) & 1]
        return QuantumDistance("exact", best, cap, support, method="enumeration")
    if cap is None or cap > 8:
        raise InfeasibleError(f"dim C = {k} exceeds the enumeration limit {enum_limit} and cap={cap} is not <= 8")
    try:
        for w in range(1, cap + 1):
            for word in _low_weight_codewords(H, w, node_budget):
                mask = sum(1 << j for j in word)
                if mask not in dual:
                    return QuantumDistance("exact", w, cap, list(word), method="low-weight search")
    except _BudgetExhausted:
        raise InfeasibleError(f"low-weight codeword search exceeded {node_budget} nodes") from None
    return QuantumDistance("above_cap", None, cap, method="low-weight search")
