import numpy as np
import pytest

from ebw.designs import (
    construct_ag_lines,
    construct_pg_lines,
    construct_projective_plane,
    construct_sts,
    incidence_matrix,
)

STS_ORDERS = [7, 9, 13, 15, 19, 21, 25, 27]
PG_DIMS = [3, 4, 5]
AG_PARAMS = [(2, 3), (3, 3), (2, 5)]
PLANE_ORDERS = [2, 3, 4, 5]


def build_corpus():
    corpus = {}
    for v in STS_ORDERS:
        corpus[f"sts{v}"] = construct_sts(v)
    for m in PG_DIMS:
        corpus[f"pg{m}"] = construct_pg_lines(m)
    for m, q in AG_PARAMS:
        corpus[f"ag{m}_{q}"] = construct_ag_lines(m, q)
    for q in PLANE_ORDERS:
        corpus[f"plane{q}"] = construct_projective_plane(q)
    return corpus


CORPUS = build_corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def fano():
    return construct_pg_lines(3)


@pytest.fixture(scope="session")
def fano_H(fano):
    return incidence_matrix(fano)


@pytest.fixture(scope="session")
def plane4_H():
    return incidence_matrix(construct_projective_plane(4))


@pytest.fixture(scope="session")
def ag23():
    return construct_ag_lines(2, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
