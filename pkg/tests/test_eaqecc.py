import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ebw.designs import construct_pg_lines, construct_sts, incidence_matrix
from ebw.eaqecc import (
    assmus_audit,
    audit_bounds,
    characterize,
    dimension_bounds,
    ebits,
    hillebrandt_rank_lower,
    one_ebit_girth_predicate,
    one_ebit_structure_check,
    pbd_equivalence_check,
    quantum_min_distance,
    regular_admissibility,
    sts_window,
)
from ebw.errors import AdmissibilityError, InfeasibleError, StructuralError
from ebw.gf2 import BinaryMatrix

from .conftest import CORPUS
from .oracles import rank_by_elimination


def quantum_distance_brute(dense):
    """Smallest weight x with Hx = 0 and x outside the row space, by rank tests."""
    A = np.asarray(dense, dtype=np.uint8)
    r = rank_by_elimination(A)
    n = A.shape[1]
    for w in range(1, n + 1):
        for cols in itertools.combinations(range(n), w):
            x = np.zeros(n, dtype=np.uint8)
            x[list(cols)] = 1
            if (A.astype(int) @ x % 2).any():
                continue
            if rank_by_elimination(np.vstack([A, x])) > r:
                return w
    return None


def test_characterize_fano(fano_H):
    p = characterize(fano_H)
    assert (p.n, p.rank, p.c, p.quantum_k, p.girth) == (7, 4, 1, 0, 6)
    assert p.label == "[[7,0;1]]"
    assert p.classical_d.distance == 4


def test_characterize_plane4(plane4_H):
    p = characterize(plane4_H, quantum_distance=True)
    assert (p.n, p.rank, p.c, p.quantum_k) == (21, 10, 1, 2)
    assert p.classical_d.distance == 6
    assert p.quantum_d.status == "exact" and p.quantum_d.value == 6


def test_characterize_ag23_many_ebits(ag23):
    p = characterize(incidence_matrix(ag23))
    assert (p.n, p.rank, p.c, p.quantum_k) == (12, 9, 8, 2)
    assert p.label == "[[12,2;8]]"


def test_characterize_rejects_zero_lines():
    with pytest.raises(StructuralError, match="column 1"):
        characterize(BinaryMatrix.from_dense([[1, 0], [1, 0]]))
    with pytest.raises(StructuralError, match="row 1"):
        characterize(BinaryMatrix.from_dense([[1, 1], [0, 0]]))


def test_one_ebit_fano(fano_H):
    chk = one_ebit_structure_check(fano_H)
    assert chk.holds and chk.violated_condition is None


def test_one_ebit_even_row_weight():
    # two disjoint-ish rows of even weight sharing one column
    chk = one_ebit_structure_check(BinaryMatrix.from_dense([[1, 1, 0], [0, 1, 1]]))
    assert not chk.holds and chk.violated_condition == 2
    assert chk.witness == {"row": 0, "weight": 2}


def test_one_ebit_two_shared_columns():
    chk = one_ebit_structure_check(BinaryMatrix.from_dense([[1, 1, 1, 0], [1, 1, 0, 1]]))
    assert chk.violated_condition == 1 and chk.witness["shared"] == 2


def test_one_ebit_weight_one_column(ag23):
    # two points always share one line; replication 4 is even
    chk = one_ebit_structure_check(incidence_matrix(ag23))
    assert chk.violated_condition == 2 and chk.witness["weight"] == 4
    H = BinaryMatrix.from_dense([[1, 1, 1]])
    assert one_ebit_structure_check(H).violated_condition == 3


def test_pbd_equivalence_trivial_and_light_columns(fano_H):
    assert pbd_equivalence_check(fano_H)
    assert not pbd_equivalence_check(BinaryMatrix.ones(5, 1))
    assert not pbd_equivalence_check(BinaryMatrix.identity(3))


@pytest.mark.parametrize("n,mu,ok,v", [(7, 3, True, 7), (35, 3, True, 15), (21, 5, True, 21),
                                       (26, 3, False, 13), (12, 3, False, 9), (10, 3, False, None)])
def test_regular_admissibility(n, mu, ok, v):
    assert regular_admissibility(n, mu) == (ok, v)


def test_dimension_bounds_examples():
    b = dimension_bounds(7, 3)
    assert (b.v, b.hillebrandt_rank_lower, b.k_lower_raw, b.k_lower, b.k_upper) == (7, 4, -6, 0, 0)
    assert b.triple_window is None
    b = dimension_bounds(35, 3)
    assert (b.v, b.k_lower, b.k_upper) == (15, 6, 35 - 2 * b.hillebrandt_rank_lower + 1)
    assert b.triple_window == (6, 12, 4, 1)
    b = dimension_bounds(21, 5)
    assert (b.v, b.hillebrandt_rank_lower, b.k_lower) == (21, 9, 0)
    with pytest.raises(AdmissibilityError):
        dimension_bounds(26, 3)


def test_hillebrandt_against_float():
    from math import ceil, sqrt

    for v, mu in [(7, 3), (15, 3), (21, 5), (31, 3), (31, 6), (73, 9), (91, 10), (117, 3), (25, 5)]:
        assert hillebrandt_rank_lower(v, mu) == ceil(0.5 + sqrt(0.25 + (v - 1) * (v - mu) / mu))


def test_sts_window_only_on_five_mod_eight():
    # raw values; at n = 7 the window is meaningless and dimension_bounds omits it
    assert sts_window(7) == (-6, -2, 3, 1)
    assert sts_window(12) is None  # s = 17, 1 mod 8
    assert sts_window(117) == (64, 66, 2, 7)


def test_pg_ranks_match_closed_form():
    # 2-ranks of points vs lines of PG(m-1, 2): 2^m - 1 - m
    for m, r in [(3, 4), (4, 11), (5, 26)]:
        assert characterize(incidence_matrix(construct_pg_lines(m)), distance_cap=None).rank == r == 2**m - 1 - m


def test_pg4_bound_violation_reported():
    rep = audit_bounds(construct_pg_lines(4))
    names = [c.name for c in rep.violations]
    assert names == ["triple_window"]
    assert rep.to_json()["bound_violation"] == [{"bound": "triple_window", "predicted": [6, 12], "computed": 14}]
    assert rep.assmus["classification"].startswith("v - t")


def test_assmus_audit_ranges():
    a = assmus_audit(15, 11)
    assert a["t"] == 4 and a["range"] == [12, 14] and a["applicable"]
    assert assmus_audit(9, 9)["classification"] == "full"


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_bounds_consistent_with_c(name):
    d = CORPUS[name]
    rep = audit_bounds(d)
    for chk in rep.checks:
        if chk.name in ("design_order", "odd_integer_test", "hillebrandt_rank"):
            assert chk.holds, chk
    p = characterize(incidence_matrix(d), distance_cap=None)
    assert p.quantum_k + 2 * p.rank - p.c == p.n


def test_quantum_distance_fano_degenerate(fano_H):
    assert quantum_min_distance(fano_H).status == "degenerate"
    assert quantum_min_distance(BinaryMatrix.from_dense([[1, 1]])).status == "degenerate"


def test_quantum_distance_plane4_matches_brute(plane4_H):
    q = quantum_min_distance(plane4_H)
    assert q.value == 6 and q.method == "enumeration"
    x = np.zeros(21, dtype=np.uint8)
    x[q.witness] = 1
    assert not (plane4_H.to_dense().astype(int) @ x % 2).any()


def test_quantum_distance_low_weight_route_agrees(plane4_H):
    q = quantum_min_distance(plane4_H, cap=8, enum_limit=0)
    assert q.method == "low-weight search" and q.value == 6
    assert quantum_min_distance(plane4_H, cap=5, enum_limit=0).status == "above_cap"


def test_quantum_distance_infeasible():
    H = incidence_matrix(construct_sts(27))
    with pytest.raises(InfeasibleError):
        quantum_min_distance(H, cap=None)
    with pytest.raises(InfeasibleError):
        quantum_min_distance(H, cap=12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_quantum_distance_matches_brute_on_random(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=(int(rng.integers(1, 6)), int(rng.integers(2, 10))), dtype=np.uint8)
    H = BinaryMatrix.from_dense(a)
    q = quantum_min_distance(H)
    expected = quantum_distance_brute(a)
    if q.status == "degenerate":
        assert expected is None
    else:
        assert q.value == expected


def _random_matrix(rng):
    kind = rng.integers(0, 3)
    rows, cols = int(rng.integers(2, 9)), int(rng.integers(2, 13))
    if kind == 0:
        return rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
    # weight-controlled columns to hit the interesting region more often
    a = np.zeros((rows, cols), dtype=np.uint8)
    for j in range(cols):
        a[rng.choice(rows, size=min(rows, int(rng.integers(2, 4))), replace=False), j] = 1
    return a


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_three_way_equivalence_on_corpus(name):
    H = incidence_matrix(CORPUS[name])
    chk = bool(one_ebit_structure_check(H))
    assert chk == pbd_equivalence_check(H) == one_ebit_girth_predicate(H)


def test_three_way_equivalence_on_random_matrices():
    rng = np.random.default_rng(1234)
    hits = 0
    for _ in range(200):
        a = _random_matrix(rng)
        H = BinaryMatrix.from_dense(a)
        chk = bool(one_ebit_structure_check(H))
        assert chk == pbd_equivalence_check(H)
        if (a.sum(axis=0) >= 2).all() and (a.sum(axis=1) >= 2).all():
            assert chk == one_ebit_girth_predicate(H)
        hits += chk
    # the ensemble is not all trivially negative on the relevant side
    assert hits < 200


def test_ebits_fano_vs_ag(fano_H, ag23):
    assert ebits(fano_H) == 1
    assert ebits(incidence_matrix(ag23)) == 8
