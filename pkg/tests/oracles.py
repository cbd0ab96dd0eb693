"""Slow, independent reference implementations used only by the tests."""

import itertools

import networkx as nx
import numpy as np


def rank_by_span(dense) -> int:
    """log2 of the size of the row span, built by closure."""
    span = {0}
    for row in np.asarray(dense, dtype=np.uint8):
        r = int("".join(map(str, row[::-1])), 2) if row.size else 0
        span |= {a ^ r for a in span}
    return len(span).bit_length() - 1


def rank_by_elimination(dense) -> int:
    A = (np.asarray(dense, dtype=np.int64) % 2).copy()
    m, n = A.shape
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(m):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


def gram_naive(dense):
    A = np.asarray(dense, dtype=np.int64)
    m = A.shape[0]
    out = np.zeros((m, m), dtype=np.uint8)
    for i in range(m):
        for j in range(m):
            s = 0
            for k in range(A.shape[1]):
                s ^= int(A[i, k] & A[j, k])
            out[i, j] = s
    return out


def tanner_graph(dense):
    A = np.asarray(dense)
    G = nx.Graph()
    m, n = A.shape
    G.add_nodes_from(("c", i) for i in range(m))
    G.add_nodes_from(("b", j) for j in range(n))
    for i, j in zip(*np.nonzero(A)):
        G.add_edge(("c", int(i)), ("b", int(j)))
    return G


def girth_networkx(dense):
    g = nx.girth(tanner_graph(dense))
    return None if g == float("inf") else int(g)


def six_cycles_networkx(dense) -> int:
    G = tanner_graph(dense)
    return sum(1 for c in nx.simple_cycles(G, length_bound=6) if len(c) == 6)


def six_cycle_submatrices(dense) -> int:
    """3x3 submatrices with exactly two ones in every row and column."""
    A = np.asarray(dense, dtype=np.int64)
    m, n = A.shape
    total = 0
    for rows in itertools.combinations(range(m), 3):
        sub_rows = A[list(rows)]
        cand = [j for j in range(n) if sub_rows[:, j].sum() == 2]
        for cols in itertools.combinations(cand, 3):
            S = sub_rows[:, list(cols)]
            if (S.sum(axis=0) == 2).all() and (S.sum(axis=1) == 2).all():
                total += 1
    return total


def min_distance_brute(dense, cap):
    A = np.asarray(dense, dtype=np.int64)
    n = A.shape[1]
    for w in range(1, cap + 1):
        for cols in itertools.combinations(range(n), w):
            if not (A[:, list(cols)].sum(axis=1) % 2).any():
                return w
    return None


def even_configuration_sizes(blocks, max_size):
    """Sizes (<= max_size) for which some even configuration exists."""
    found = set()
    for s in range(1, max_size + 1):
        for combo in itertools.combinations(range(len(blocks)), s):
            cnt = {}
            for j in combo:
                for x in blocks[j]:
                    cnt[x] = cnt.get(x, 0) + 1
            if all(c % 2 == 0 for c in cnt.values()):
                found.add(s)
                break
    return found


def pasch_brute(blocks) -> int:
    total = 0
    for combo in itertools.combinations(range(len(blocks)), 4):
        cnt = {}
        for j in combo:
            for x in blocks[j]:
                cnt[x] = cnt.get(x, 0) + 1
        if all(c % 2 == 0 for c in cnt.values()):
            total += 1
    return total


def random_four_cycle_free(rng, rows, cols, col_weight=(2, 3), attempts=2000):
    """Random matrix with no 2x2 all-one submatrix and all row/column weights >= 2, or None."""
    chosen = []
    pairs = set()
    for _ in range(attempts):
        if len(chosen) == cols:
            break
        w = int(rng.integers(col_weight[0], col_weight[1] + 1))
        support = tuple(sorted(rng.choice(rows, size=w, replace=False).tolist()))
        ps = set(itertools.combinations(support, 2))
        if ps & pairs:
            continue
        pairs |= ps
        chosen.append(support)
    if len(chosen) < cols:
        return None
    A = np.zeros((rows, cols), dtype=np.uint8)
    for j, s in enumerate(chosen):
        A[list(s), j] = 1
    if (A.sum(axis=1) < 2).any():
        return None
    return A
