"""Exact cyclotomic-rational scalars, with a float fallback.

Every invariant computed by this package is a value of this scalar type.
``Cyc(n, coords)`` is an element of the n-th cyclotomic field written in the
power basis 1, z, ..., z^(d-1) where z = exp(2*pi*i/n) and d = deg Phi_n.
Arithmetic between different levels promotes to the lcm level.  Plain
``complex`` is accepted everywhere as the approximate backend.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

Rat = Fraction

_cyclo_cache: dict[int, list[Fraction]] = {}
_reduce_cache: dict[int, list[tuple[Fraction, ...]]] = {}


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    quo = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(quo) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        quo[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quo, num


def cyclotomic_poly(n: int) -> list[Fraction]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    # x^n - 1 divided by the cyclotomic polynomials of all proper divisors
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_poly(d))
            assert rem == [Fraction(0)]
    _cyclo_cache[n] = poly
    return poly


def _reduction_rows(n: int) -> list[tuple[Fraction, ...]]:
    """Row k: coordinates of z^k in the power basis, for 0 <= k < n."""
    if n in _reduce_cache:
        return _reduce_cache[n]
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(0)] * d
    cur[0] = Fraction(1)
    for _ in range(max(n, 2 * d)):
        rows.append(tuple(cur))
        # multiply by z: shift, then reduce z^d = -(phi[0] + ... + phi[d-1] z^(d-1))
        top = cur[d - 1] if d > 0 else Fraction(0)
        nxt = [Fraction(0)] + cur[: d - 1]
        if top:
            for j in range(d):
                nxt[j] -= top * phi[j]
        cur = nxt
    _reduce_cache[n] = rows
    return rows


class Cyc:
    """Element of the cyclotomic field of the given level, exact coordinates."""

    __slots__ = ("level", "coords")

    def __init__(self, level: int, coords) -> None:
        d = len(cyclotomic_poly(level)) - 1
        coords = tuple(c if type(c) is Fraction else Fraction(c) for c in coords)
        if len(coords) != d:
            raise ValueError(f"level {level} needs {d} coordinates, got {len(coords)}")
        self.level = level
        self.coords = coords

    @classmethod
    def _raw(cls, level: int, coords: tuple) -> "Cyc":
        out = object.__new__(cls)
        out.level = level
        out.coords = coords
        return out

    @classmethod
    def rational(cls, q) -> "Cyc":
        return cls(1, (Fraction(q),))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyc":
        """z_n^k, reduced into the power basis."""
        if n < 1:
            raise ValueError("level must be >= 1")
        k %= n
        g = gcd(k, n) if k else n
        n2, k2 = n // g, k // g
        if n2 == 1:
            return cls.rational(1)
        if n2 == 2:
            return cls.rational(-1 if k2 % 2 else 1)
        return cls(n2, _reduction_rows(n2)[k2])

    @property
    def degree(self) -> int:
        return len(self.coords)

    def _promoted(self, m: int) -> "Cyc":
        if m == self.level:
            return self
        step = m // self.level
        rows = _reduction_rows(m)
        d = len(cyclotomic_poly(m)) - 1
        out = [Fraction(0)] * d
        for k, c in enumerate(self.coords):
            if c:
                row = rows[k * step]
                for j in range(d):
                    out[j] += c * row[j]
        return Cyc(m, out)

    @staticmethod
    def _coerce(x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyc.rational(x)
        raise TypeError(f"cannot treat {type(x).__name__} as an exact scalar")

    def _pair(self, other) -> tuple["Cyc", "Cyc"]:
        other = self._coerce(other)
        if self.level == other.level:
            return self, other
        m = self.level * other.level // gcd(self.level, other.level)
        return self._promoted(m), other._promoted(m)

    def __add__(self, other):
        if isinstance(other, Cyc) and other.level == self.level:
            return Cyc._raw(self.level, tuple(x + y for x, y in zip(self.coords, other.coords)))
        if isinstance(other, complex):
            return self.to_complex() + other
        a, b = self._pair(other)
        return Cyc._raw(a.level, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc._raw(self.level, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other)) if not isinstance(other, complex) else self.to_complex() - other

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Cyc):
            if self.level == 1:
                q = self.coords[0]
                return Cyc._raw(other.level, tuple(q * x for x in other.coords))
            if other.level == 1:
                q = other.coords[0]
                return Cyc._raw(self.level, tuple(q * x for x in self.coords))
        if isinstance(other, complex):
            return self.to_complex() * other
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyc._raw(self.level, tuple(q * x for x in self.coords))
        a, b = self._pair(other)
        d = a.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        conv[i + j] += x * y
        rows = _reduction_rows(a.level)
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = rows[k]
                for j in range(d):
                    out[j] += c * row[j]
        return Cyc._raw(a.level, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return (self ** (-e)).inverse()
        out = Cyc.rational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "Cyc":
        """Field inverse via exact Gaussian elimination."""
        d = self.degree
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # columns: coordinates of self * z^j
        cols = []
        zj = Cyc.rational(1)._promoted(self.level) if self.level > 1 else Cyc.rational(1)
        for j in range(d):
            cols.append((self * zj).coords)
            zj = zj * Cyc.zeta(self.level) if self.level > 1 else zj
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            rhs[col] *= inv
            for r in range(d):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                    rhs[r] -= f * rhs[col]
        return Cyc(self.level, rhs)

    def __truediv__(self, other):
        if isinstance(other, complex):
            return self.to_complex() / other
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, complex):
            return abs(self.to_complex() - other) <= 1e-9
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return a.coords == b.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.level, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def conjugate(self) -> "Cyc":
        if self.level == 1:
            return self
        n = self.level
        rows = _reduction_rows(n)
        d = self.degree
        out = [Fraction(0)] * d
        for k, c in enumerate(self.coords):
            if c:
                row = rows[(n - k) % n]
                for j in range(d):
                    out[j] += c * row[j]
        return Cyc(n, out)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.level)
        return sum((complex(c) * z**k for k, c in enumerate(self.coords)), 0j)

    def __repr__(self) -> str:
        return f"Cyc({self.level}, {[str(c) for c in self.coords]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                z = f"z{self.level}" + (f"^{k}" if k > 1 else "")
                parts.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


def is_zero(x, tol: float = 1e-9) -> bool:
    if isinstance(x, Cyc):
        return x.is_zero()
    if isinstance(x, (int, Fraction)):
        return x == 0
    return abs(x) <= tol


def to_complex(x) -> complex:
    if isinstance(x, Cyc):
        return x.to_complex()
    return complex(x)


def approx_eq(a, b, tol: float = 1e-9) -> bool:
    x, y = to_complex(a), to_complex(b)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def render(x) -> str:
    """Exact form together with a decimal approximation."""
    z = to_complex(x)
    dec = f"{z.real:.12g}" + (f"{z.imag:+.12g}i" if abs(z.imag) > 1e-12 else "")
    if isinstance(x, Cyc):
        return f"{x} (~ {dec})"
    return dec
