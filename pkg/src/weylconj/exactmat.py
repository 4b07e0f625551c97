"""Small exact rational matrices: integer entries over a common denominator.

Built for the reflection representation, where every entry is a rational
with tiny denominator and products must stay exact.  A matrix is stored
canonically (denominator positive, gcd of all numerators and the
denominator equal to 1) so equality and hashing are structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


class Mat:
    def __init__(self, num: Sequence[Sequence[int]], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("denominator must be non-zero")
        if den < 0:
            den = -den
            num = [[-x for x in row] for row in num]
        g = den
        for row in num:
            for x in row:
                g = gcd(g, x)
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            num = [[x // g for x in row] for row in num]
            den //= g
        self.num = tuple(tuple(row) for row in num)
        self.den = den
        self._inv: "Mat | None" = None

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence[Fraction]]) -> "Mat":
        den = 1
        for row in rows:
            for x in row:
                f = Fraction(x)
                den = den * f.denominator // gcd(den, f.denominator)
        num = [[int(Fraction(x) * den) for x in row] for row in rows]
        return cls(num, den)

    @property
    def size(self) -> int:
        return len(self.num)

    def frac(self, i: int, j: int) -> Fraction:
        return Fraction(self.num[i][j], self.den)

    def rows(self) -> list[list[Fraction]]:
        d = self.den
        return [[Fraction(x, d) for x in row] for row in self.num]

    def __matmul__(self, other: "Mat") -> "Mat":
        a, b = self.num, other.num
        n = len(a)
        m = len(b[0])
        kk = len(b)
        bt = list(zip(*b))
        num = [
            [sum(arow[k] * bcol[k] for k in range(kk)) for bcol in bt]
            for arow in a
        ]
        return Mat(num, self.den * other.den)

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inv() ** (-e)
        out = Mat.identity(self.size)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def inv(self) -> "Mat":
        if self._inv is not None:
            return self._inv
        n = self.size
        d = self.den
        aug = [
            [Fraction(x, d) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(self.num)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    c = aug[r][col]
                    aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
        out = Mat.from_fractions([row[n:] for row in aug])
        self._inv = out
        out._inv = self
        return out

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.num)), self.den)

    def is_identity(self) -> bool:
        if self.den != 1:
            return False
        return all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.num)
            for j, x in enumerate(row)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"Mat({self.num!r}, den={self.den})"


def commutator(x: Mat, y: Mat) -> Mat:
    """x^-1 y^-1 x y."""
    return x.inv() @ y.inv() @ x @ y
