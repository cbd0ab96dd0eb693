"""Two-step decoding of homogeneous codes over the depolarizing channel.

The X part and the Z part of a Pauli error are decoded separately, each
against the same parity-check matrix.  Two decoders are provided: a bounded
distance syndrome-table decoder and syndrome-conditioned sum-product belief
propagation (flooding schedule, no damping).

Channel convention: each qubit independently suffers X, Y or Z with
probability p/3 each.  Y flips both components, so each component is a
Bernoulli(2p/3) vector and the two are correlated through Y.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb, log, sqrt
from statistics import NormalDist

import numpy as np

from . import gf2
from .errors import InfeasibleError
from .gf2 import BinaryMatrix

RNG_ALGORITHM = "numpy Philox4x64-10, SeedSequence(seed, spawn_key=(chunk,)), 4096 trials per chunk"
CHUNK = 4096
TABLE_LIMIT = 5_000_000
Z95 = NormalDist().inv_cdf(0.975)


@dataclass(frozen=True)
class DepolarizingModel:
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"depolarizing probability must lie in [0, 1], got {self.p}")

    @property
    def component_marginal(self) -> float:
        return 2 * self.p / 3

    def sample(self, rng: np.random.Generator, shape) -> tuple[np.ndarray, np.ndarray]:
        """Return (x_part, z_part) 0/1 arrays of ``shape``."""
        u = rng.random(shape)
        third = self.p / 3
        x = u < 2 * third                  # X or Y
        z = (u >= third) & (u < self.p)    # Y or Z
        return x.astype(np.uint8), z.astype(np.uint8)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


# --- syndrome-table decoding ---------------------------------------------------


def _pack(bits: np.ndarray) -> list[bytes]:
    packed = np.packbits(np.atleast_2d(bits).astype(np.uint8), axis=1)
    return [row.tobytes() for row in packed]


class SyndromeTable:
    """Minimum-weight coset leaders of weight <= t_max.

    A syndrome shared by two errors of the same minimal weight is ambiguous
    and decodes to failure.
    """

    def __init__(self, H: BinaryMatrix, t_max: int):
        size = sum(comb(H.cols, w) for w in range(t_max + 1))
        if size > TABLE_LIMIT:
            raise InfeasibleError(f"syndrome table for n={H.cols}, t_max={t_max} needs {size} entries")
        self.H = H
        self.t_max = t_max
        self._Ht = H.to_dense().T.astype(np.int64)
        cols = H.to_dense().T
        table: dict[bytes, tuple[int, bytes | None]] = {}
        for w in range(t_max + 1):
            for support in itertools.combinations(range(H.cols), w):
                e = np.zeros(H.cols, dtype=np.uint8)
                e[list(support)] = 1
                s = np.bitwise_xor.reduce(cols[list(support)], axis=0) if w else np.zeros(H.rows, np.uint8)
                key = _pack(s)[0]
                prev = table.get(key)
                if prev is None:
                    table[key] = (w, _pack(e)[0])
                elif prev[0] == w:
                    table[key] = (w, None)
        self.table = table

    def syndromes(self, errors: np.ndarray) -> np.ndarray:
        return ((np.atleast_2d(errors).astype(np.int64) @ self._Ht) & 1).astype(np.uint8)

    def lookup_packed(self, syndromes: np.ndarray) -> list[bytes | None]:
        out = []
        for key in _pack(syndromes):
            hit = self.table.get(key)
            out.append(None if hit is None else hit[1])
        return out

    def decode(self, syndrome) -> np.ndarray | None:
        syndrome = np.asarray(syndrome, dtype=np.uint8).ravel()
        if syndrome.size != self.H.rows:
            raise ValueError(f"syndrome length {syndrome.size} != {self.H.rows} rows")
        hit = self.lookup_packed(syndrome[None, :])[0]
        if hit is None:
            return None
        return np.unpackbits(np.frombuffer(hit, dtype=np.uint8))[: self.H.cols]


@lru_cache(maxsize=32)
def syndrome_table(H: BinaryMatrix, t_max: int) -> SyndromeTable:
    return SyndromeTable(H, t_max)


def syndrome_decode(H: BinaryMatrix, syndrome, t_max: int) -> np.ndarray | None:
    """Unique minimum-weight error of weight <= ``t_max`` with this syndrome, or None."""
    syndrome = np.asarray(syndrome, dtype=np.uint8).ravel()
    if syndrome.size != H.rows:
        raise ValueError(f"syndrome length {syndrome.size} != {H.rows} rows")
    return syndrome_table(H, t_max).decode(syndrome)


# --- belief propagation ----------------------------------------------------------


class SumProduct:
    """Batched syndrome-conditioned sum-product decoder on the Tanner graph of H."""

    def __init__(self, H: BinaryMatrix, max_iters: int = 50):
        if max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        dense = H.to_dense()
        self.H = H
        self.max_iters = max_iters
        self.rows_e, self.cols_e = np.nonzero(dense)
        E = self.rows_e.size
        self.A_row = np.zeros((E, H.rows))
        self.A_row[np.arange(E), self.rows_e] = 1.0
        self.A_col = np.zeros((E, H.cols))
        self.A_col[np.arange(E), self.cols_e] = 1.0
        self._Ht = dense.T.astype(np.int64)

    def decode_batch(self, syndromes: np.ndarray, prior_llr: np.ndarray):
        """Returns (estimates, converged, iterations) for a (T, rows) syndrome batch."""
        S = np.atleast_2d(syndromes).astype(np.uint8)
        T = S.shape[0]
        if S.shape[1] != self.H.rows:
            raise ValueError(f"syndrome length {S.shape[1]} != {self.H.rows} rows")
        L = np.broadcast_to(np.asarray(prior_llr, dtype=float), (T, self.H.cols))
        if L.shape[1] != self.H.cols:
            raise ValueError(f"prior length {L.shape[1]} != {self.H.cols} columns")
        sign_s = 1.0 - 2.0 * S[:, self.rows_e]
        msg_vc = L[:, self.cols_e].copy()
        est = np.zeros((T, self.H.cols), dtype=np.uint8)
        done = np.zeros(T, dtype=bool)
        iters = np.full(T, self.max_iters)
        for it in range(1, self.max_iters + 1):
            t = np.tanh(msg_vc / 2)
            neg = (t < 0).astype(float)
            logabs = np.log(np.maximum(np.abs(t), 1e-300))
            neg_r = neg @ self.A_row
            log_r = logabs @ self.A_row
            parity = (neg_r[:, self.rows_e] - neg) % 2
            mag = np.minimum(np.exp(log_r[:, self.rows_e] - logabs), 1 - 1e-16)
            msg_cv = sign_s * (1 - 2 * parity) * 2 * np.arctanh(mag)
            post = L + msg_cv @ self.A_col
            hard = (post < 0).astype(np.uint8)
            ok = (((hard.astype(np.int64) @ self._Ht) & 1) == S).all(axis=1)
            newly = ok & ~done
            est[newly] = hard[newly]
            iters[newly] = it
            done |= ok
            if done.all():
                break
            msg_vc = post[:, self.cols_e] - msg_cv
        est[~done] = hard[~done]
        return est, done, iters


def sum_product_decode(H: BinaryMatrix, channel_llrs, syndrome, max_iters: int = 50):
    """Belief-propagation estimate of the error given its syndrome.

    Returns ``(estimate, converged, iterations)``; ``converged`` means the
    estimate reproduces the syndrome exactly.
    """
    syndrome = np.asarray(syndrome, dtype=np.uint8).ravel()
    llr = np.asarray(channel_llrs, dtype=float).ravel()
    if syndrome.size != H.rows or llr.size != H.cols:
        raise ValueError(f"expected syndrome of length {H.rows} and {H.cols} channel LLRs")
    est, conv, iters = SumProduct(H, max_iters).decode_batch(syndrome[None, :], llr)
    return est[0], bool(conv[0]), int(iters[0])


def prior_llr(q: float) -> float:
    q = min(max(q, 1e-15), 1 - 1e-15)
    return log((1 - q) / q)


# --- Monte Carlo -------------------------------------------------------------------


@dataclass
class SimResult:
    n: int
    k: int
    c: int
    p: float
    trials: int
    decoder: str
    seed: int
    block_errors: int
    x_failures: int
    z_failures: int
    ci_lo: float
    ci_hi: float
    rng: str = RNG_ALGORITHM
    t_max: int | None = None
    max_iters: int | None = None

    @property
    def rate(self) -> float:
        return self.block_errors / self.trials

    def to_json(self) -> dict:
        d = asdict(self)
        d["rate"] = self.rate
        return d


def worker_count() -> int:
    env = os.environ.get("EBW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


class _Decoder:
    """Decodes a batch of single-species errors; returns a per-trial failure mask."""

    def __init__(self, H: BinaryMatrix, kind: str, model: DepolarizingModel, t_max: int | None, max_iters: int):
        self.kind = kind
        if kind == "syndrome":
            self.table = syndrome_table(H, t_max)
        elif kind == "sum-product":
            self.bp = SumProduct(H, max_iters)
            self.llr = np.full(H.cols, prior_llr(model.component_marginal))
            self._Ht = H.to_dense().T.astype(np.int64)
        else:
            raise ValueError(f"unknown decoder {kind!r}; expected 'syndrome' or 'sum-product'")

    def failures(self, errors: np.ndarray) -> np.ndarray:
        if self.kind == "syndrome":
            leaders = self.table.lookup_packed(self.table.syndromes(errors))
            truth = _pack(errors)
            return np.array([g is None or g != t for g, t in zip(leaders, truth)], dtype=bool)
        syn = ((errors.astype(np.int64) @ self._Ht) & 1).astype(np.uint8)
        est, conv, _ = self.bp.decode_batch(syn, self.llr)
        return ~conv | (est != errors).any(axis=1)


def default_t_max(H: BinaryMatrix) -> int:
    from .evenfree import classical_min_distance

    d = classical_min_distance(H, 8).distance
    return 3 if d is None else min(3, (d - 1) // 2)


def simulate_depolarizing(H: BinaryMatrix, model: DepolarizingModel, trials: int, decoder: str = "syndrome",
                          seed: int = 0, t_max: int | None = None, max_iters: int = 50,
                          workers: int | None = None) -> SimResult:
    """Monte Carlo block error rate of two-step decoding.

    A trial fails when either the X-part or the Z-part estimate differs from
    the sampled component.  Chunks of trials draw from independent streams
    keyed by (seed, chunk index), so the result does not depend on
    ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if decoder == "syndrome" and t_max is None:
        t_max = default_t_max(H)
    dec = _Decoder(H, decoder, model, t_max, max_iters)
    n = H.cols

    def run_chunk(ci: int) -> tuple[int, int, int]:
        size = min(CHUNK, trials - ci * CHUNK)
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(ci,))))
        ex, ez = model.sample(rng, (size, n))
        fx = dec.failures(ex)
        fz = dec.failures(ez)
        return int((fx | fz).sum()), int(fx.sum()), int(fz.sum())

    n_chunks = (trials + CHUNK - 1) // CHUNK
    workers = workers or worker_count()
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(n_chunks)))
    else:
        parts = [run_chunk(ci) for ci in range(n_chunks)]
    block = sum(p[0] for p in parts)
    lo, hi = wilson_interval(block, trials)
    r = gf2.rank(H)
    c = gf2.rank(gf2.gram(H))
    return SimResult(
        n=n, k=n - 2 * r + c, c=c, p=model.p, trials=trials, decoder=decoder, seed=seed,
        block_errors=block, x_failures=sum(p[1] for p in parts), z_failures=sum(p[2] for p in parts),
        ci_lo=lo, ci_hi=hi, t_max=t_max if decoder == "syndrome" else None,
        max_iters=max_iters if decoder == "sum-product" else None,
    )
