"""Exact linear algebra over a large prime field or the rationals.

Only what the homotopy computations need: rank, span membership and an
incremental echelon form.  Vectors are plain lists of field scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_PRIME = 2_147_483_647


class PrimeField:
    """The field Z/p for a prime p below 2**31."""

    name = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if p >= 2**31:
            raise ValueError("prime must be below 2**31")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def scalar(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator % self.p * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def balanced(self, x) -> int:
        """Representative in (-p/2, p/2], so that -1 reads as -1."""
        x = self.scalar(x)
        return x - self.p if x > self.p // 2 else x

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def rank(self, rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
        if not rows:
            return 0
        m = np.array(rows, dtype=np.int64) % self.p
        return _rank_mod_p(m, self.p)


def _rank_mod_p(m: np.ndarray, p: int) -> int:
    m = m.copy()
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = m[rank] * inv % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        if others.size:
            factors = m[others, col].reshape(-1, 1)
            m[others] = (m[others] - factors * m[rank]) % p
        rank += 1
    return rank


class RationalField:
    """The rationals, with exact Fraction arithmetic."""

    name = "rational"

    def __repr__(self) -> str:
        return "RationalField()"

    def scalar(self, x) -> Fraction:
        return Fraction(x)

    def balanced(self, x) -> Fraction:
        return Fraction(x)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(a)

    def rank(self, rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
        ech = Echelon(self)
        return sum(1 for r in rows if ech.add(r))


def make_field(name: str = "prime"):
    if name == "prime":
        return PrimeField()
    if name == "rational":
        return RationalField()
    raise ValueError(f"unknown field {name!r}")


class Echelon:
    """Incrementally maintained reduced row basis of a subspace."""

    def __init__(self, field):
        self.field = field
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Iterable) -> list:
        f = self.field
        w = [f.scalar(x) for x in v]
        for row, piv in zip(self.rows, self.pivots):
            c = w[piv]
            if c:
                w = [f.sub(a, f.mul(c, b)) for a, b in zip(w, row)]
        return w

    def contains(self, v: Iterable) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Iterable) -> bool:
        """Add v to the span; return True if it was independent."""
        f = self.field
        w = self.reduce(v)
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is None:
            return False
        inv = f.inv(w[piv])
        w = [f.mul(inv, x) for x in w]
        for k, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[k] = [f.sub(a, f.mul(c, b)) for a, b in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(piv)
        return True
