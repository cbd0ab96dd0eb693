"""Small finite fields GF(q) for the geometric constructions.

Elements are the integers ``0..q-1``.  For prime ``q`` arithmetic is plain
modular arithmetic.  For ``q = p**k`` with ``k > 1`` an element is the
polynomial whose base-``p`` digits are its coefficients (least significant
digit = constant term), and multiplication goes through log/antilog tables
built from the Conway polynomial below, whose root ``x`` is primitive.

Conway polynomials (coefficients listed from the constant term up):

    q=4   x^2 + x + 1            (1, 1, 1)
    q=8   x^3 + x + 1            (1, 1, 0, 1)
    q=9   x^2 + 2x + 2           (2, 2, 1)
    q=16  x^4 + x + 1            (1, 1, 0, 0, 1)
    q=25  x^2 + 4x + 2           (2, 4, 1)
    q=27  x^3 + 2x + 1           (1, 2, 0, 1)
    q=32  x^5 + x^2 + 1          (1, 0, 1, 0, 0, 1)
    q=49  x^2 + 6x + 3           (3, 6, 1)
    q=64  x^6 + x^4 + x^3 + x + 1 (1, 1, 0, 1, 1, 0, 1)
    q=81  x^4 + 2x^3 + 2         (2, 0, 0, 2, 1)
"""

from __future__ import annotations

from functools import lru_cache

from .errors import AdmissibilityError

CONWAY = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (2, 2, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (2, 4, 1)),
    27: (3, (1, 2, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
    49: (7, (3, 6, 1)),
    64: (2, (1, 1, 0, 1, 1, 0, 1)),
    81: (3, (2, 0, 0, 2, 1)),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` and ``p`` prime, else None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


class GF:
    """Arithmetic tables for GF(q)."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise AdmissibilityError(f"q={q} is not a prime power")
        p, k = pk
        if k > 1 and q not in CONWAY:
            raise AdmissibilityError(
                f"GF({q}) not tabulated; supported prime powers: {sorted(CONWAY)}"
            )
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self.add_table = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul_table = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self._build_extension(CONWAY[q][1])
        self.neg = [next(b for b in range(q) if self.add_table[a][b] == 0) for a in range(q)]
        self.inv = [0] + [next(b for b in range(1, q) if self.mul_table[a][b] == 1) for a in range(1, q)]

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _from_digits(self, d) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def _build_extension(self, poly) -> None:
        p, k, q = self.p, self.k, self.q
        self.add_table = [
            [self._from_digits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))]) for b in range(q)]
            for a in range(q)
        ]
        # antilog[i] = x^i reduced modulo the Conway polynomial
        antilog = []
        cur = [1] + [0] * (k - 1)
        for _ in range(q - 1):
            antilog.append(self._from_digits(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * poly[i]) % p for i, c in enumerate(cur)]
        log = {a: i for i, a in enumerate(antilog)}
        if len(log) != q - 1:
            raise AssertionError(f"polynomial for GF({q}) is not primitive")
        self.mul_table = [[0] * q for _ in range(q)]
        for a in range(1, q):
            for b in range(1, q):
                self.mul_table[a][b] = antilog[(log[a] + log[b]) % (q - 1)]

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg[b]]

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
