"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis 1, zeta, ..., zeta^(phi(N)-1) with
integer coordinates over a single positive denominator.  All products are
reduced through precomputed integer rows for zeta^k, so the only rational
bookkeeping is one gcd per normalization.  Galois maps zeta -> zeta^k are
table lookups for the same reason.

Square roots are decided only for the shapes that actually occur downstream
(rationals, conductor-4 elements, monomial multiples of a root of unity);
``sqrt`` returning None means "not recognized", never "not a square".
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional, Union


class ExactFieldError(ArithmeticError):
    """Arithmetic failure in the exact field layer."""


class PoleError(ExactFieldError):
    """Raised when a specialization lands on a zero of a denominator."""


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs a positive integer")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # num, den integer coefficient lists (low to high), den monic up to sign,
    # division known to be exact.
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("inexact cyclotomic division")
        q = c // lead
        quot[k - dd] = q
        for i, dc in enumerate(den):
            num[k - dd + i] -= q * dc
    if any(num):
        raise ArithmeticError("inexact cyclotomic division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first, monic, length phi(n)+1."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in _divisors(n):
        if d < n:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # Row k expresses zeta_n^k on the power basis; integer entries because
    # Phi_n is monic over Z.  Rows cover every exponent a product of two
    # reduced elements or a Galois image can produce.
    phi = euler_phi(n)
    top = max(2 * phi - 1, n)
    cyc = cyclotomic_polynomial(n)
    rows: list[tuple[int, ...]] = []
    for k in range(phi):
        row = [0] * phi
        row[k] = 1
        rows.append(tuple(row))
    for k in range(phi, top + 1):
        prev = rows[k - 1]
        carry = prev[phi - 1]
        row = [0] + list(prev[: phi - 1])
        if carry:
            for i in range(phi):
                row[i] -= carry * cyc[i]
        rows.append(tuple(row))
    return tuple(rows)


Scalarish = Union["Cyc", int, Fraction]


class Cyc:
    """Element of Q(zeta_N) with integer coordinates over a common denominator."""

    __slots__ = ("conductor", "nums", "den")

    def __init__(self, conductor: int, nums, den: int = 1, _normalized: bool = False):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        phi = euler_phi(conductor)
        nums = list(nums)
        if len(nums) != phi:
            raise ValueError("coordinate vector has wrong length")
        if den == 0:
            raise ExactFieldError("division by zero")
        if not _normalized:
            if den < 0:
                den = -den
                nums = [-a for a in nums]
            g = den
            for a in nums:
                g = gcd(g, a)
                if g == 1:
                    break
            if g > 1:
                den //= g
                nums = [a // g for a in nums]
        self.conductor = conductor
        self.nums = tuple(nums)
        self.den = den

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, value: Union[int, Fraction], conductor: int = 1) -> "Cyc":
        q = Fraction(value)
        phi = euler_phi(conductor)
        nums = [0] * phi
        nums[0] = q.numerator
        return cls(conductor, nums, q.denominator)

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> "Cyc":
        rows = _power_rows(conductor)
        return cls(conductor, list(rows[power % conductor]), 1)

    @classmethod
    def zero(cls, conductor: int) -> "Cyc":
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int) -> "Cyc":
        return cls.rational(1, conductor)

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def is_one(self) -> bool:
        return self.den == 1 and self.nums[0] == 1 and not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ExactFieldError("element is not rational")
        return Fraction(self.nums[0], self.den)

    def lift(self, conductor: int) -> "Cyc":
        """Embed into Q(zeta_M) for a multiple M of the current conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError("target conductor must be a multiple")
        step = conductor // self.conductor
        rows = _power_rows(conductor)
        phi = euler_phi(conductor)
        acc = [0] * phi
        for i, a in enumerate(self.nums):
            if a:
                row = rows[(i * step) % conductor]
                for j in range(phi):
                    acc[j] += a * row[j]
        return Cyc(conductor, acc, self.den)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other: Scalarish) -> Optional["Cyc"]:
        if isinstance(other, Cyc):
            if other.conductor == self.conductor:
                return other
            if self.conductor % other.conductor == 0:
                return other.lift(self.conductor)
            raise ValueError("conductor mismatch")
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(other, self.conductor)
        return None

    def __add__(self, other: Scalarish) -> "Cyc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        da, db = self.den, o.den
        nums = [a * db + b * da for a, b in zip(self.nums, o.nums)]
        return Cyc(self.conductor, nums, da * db)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.conductor, [-a for a in self.nums], self.den, _normalized=True)

    def __sub__(self, other: Scalarish) -> "Cyc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalarish) -> "Cyc":
        return (-self) + other

    def __mul__(self, other: Scalarish) -> "Cyc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        phi = len(self.nums)
        conv = [0] * (2 * phi - 1)
        for i, a in enumerate(self.nums):
            if a == 0:
                continue
            for j, b in enumerate(o.nums):
                if b:
                    conv[i + j] += a * b
        rows = _power_rows(self.conductor)
        acc = [0] * phi
        for k, c in enumerate(conv):
            if c == 0:
                continue
            if k < phi:
                acc[k] += c
            else:
                row = rows[k]
                for j in range(phi):
                    acc[j] += c * row[j]
        return Cyc(self.conductor, acc, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ExactFieldError("division by zero")
        if self.is_rational():
            q = self.as_fraction()
            return Cyc.rational(Fraction(q.denominator, q.numerator), self.conductor)
        # Extended Euclid against Phi_N over Q: u*self + v*Phi = 1.
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        a = [Fraction(n, self.den) for n in self.nums]
        inv = _poly_inverse_mod(a, phi_poly)
        phi = len(self.nums)
        inv += [Fraction(0)] * (phi - len(inv))
        den = 1
        for q in inv:
            den = den * q.denominator // gcd(den, q.denominator)
        nums = [int(q * den) for q in inv]
        return Cyc(self.conductor, nums, den)

    def __truediv__(self, other: Scalarish) -> "Cyc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalarish) -> "Cyc":
        return self.inverse() * other

    def __pow__(self, k: int) -> "Cyc":
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyc.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyc":
        """Apply the automorphism zeta -> zeta^k; k must be prime to N."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError("galois exponent must be prime to the conductor")
        rows = _power_rows(n)
        phi = len(self.nums)
        acc = [0] * phi
        for i, a in enumerate(self.nums):
            if a:
                row = rows[(i * k) % n]
                for j in range(phi):
                    acc[j] += a * row[j]
        return Cyc(n, acc, self.den)

    # -- square roots (partial, verified) -------------------------------

    def sqrt(self) -> Optional["Cyc"]:
        """A verified square root, or None when the shape is not recognized.

        Handles rationals (folding -1 through zeta when 4 | N), arbitrary
        conductor-4 elements, and monomials r * zeta^j.  Every candidate is
        squared back before being returned, so a non-None answer is exact.
        """
        if self.is_zero():
            return self
        cand = self._sqrt_candidate()
        if cand is not None and cand * cand == self:
            return cand
        return None

    def _sqrt_candidate(self) -> Optional["Cyc"]:
        n = self.conductor
        if self.is_rational():
            q = self.as_fraction()
            if q > 0:
                r = _rational_sqrt(q)
                return None if r is None else Cyc.rational(r, n)
            r = _rational_sqrt(-q)
            if r is None or n % 4:
                return None
            return Cyc.rational(r, n) * Cyc.zeta(n, n // 4)
        if n == 4:
            return self._sqrt_gaussian()
        support = [i for i, a in enumerate(self.nums) if a]
        if len(support) == 1:
            return self._sqrt_monomial(support[0])
        return None

    def _sqrt_gaussian(self) -> Optional["Cyc"]:
        # z = a + b*i; |z|^2 must be a rational square r^2, then the real
        # part of the root satisfies x^2 = (a + r)/2.
        a = Fraction(self.nums[0], self.den)
        b = Fraction(self.nums[1], self.den)
        r = _rational_sqrt(a * a + b * b)
        if r is None:
            return None
        x = _rational_sqrt((a + r) / 2)
        if x is None:
            return None
        if x == 0:
            y = _rational_sqrt((r - a) / 2)
            if y is None:
                return None
        else:
            y = b / (2 * x)
        return Cyc.rational(x, 4) + Cyc.rational(y, 4) * Cyc.zeta(4)

    def _sqrt_monomial(self, idx: int) -> Optional["Cyc"]:
        n = self.conductor
        coeff = Fraction(self.nums[idx], self.den)
        if coeff < 0:
            if n % 2:
                return None
            # fold the sign through -1 = zeta^(N/2)
            return self._monomial_root(-coeff, idx + n // 2)
        return self._monomial_root(coeff, idx)

    def _monomial_root(self, coeff: Fraction, j: int) -> Optional["Cyc"]:
        n = self.conductor
        r = _rational_sqrt(coeff)
        if r is None:
            return None
        j %= n
        if n % 2 == 1:
            t = (j * pow(2, -1, n)) % n
        elif j % 2 == 0:
            t = j // 2
        else:
            return None
        return Cyc.rational(r, n) * Cyc.zeta(n, t)

    # -- comparisons, hashing, display ----------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other, self.conductor)
        if not isinstance(other, Cyc):
            return NotImplemented
        if other.conductor != self.conductor:
            try:
                other = self._coerce(other)
            except ValueError:
                return False
        return self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((self.conductor, self.nums, self.den))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, a in enumerate(self.nums):
            if a == 0:
                continue
            coeff = Fraction(a, self.den)
            if i == 0:
                parts.append(_frac_str(coeff))
                continue
            mon = "zeta" if i == 1 else f"zeta^{i}"
            if coeff == 1:
                term = mon
            elif coeff == -1:
                term = f"-{mon}"
            else:
                term = f"{_frac_str(coeff)}*{mon}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self) -> str:
        return f"Cyc({self.conductor}: {self})"

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "den": self.den, "nums": list(self.nums)}

    @classmethod
    def from_json(cls, data: dict) -> "Cyc":
        return cls(data["conductor"], data["nums"], data["den"])


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _poly_inverse_mod(a: list[Fraction], modulus: list[Fraction]) -> list[Fraction]:
    # Extended Euclid over Q[x]; gcd is 1 because Phi_N is irreducible.
    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        while len(num) >= len(den) and any(num):
            if num[-1] == 0:
                num.pop()
                continue
            shift = len(num) - len(den)
            c = num[-1] / den[-1]
            q[shift] = c
            for i, dc in enumerate(den):
                num[shift + i] -= c * dc
            num.pop()
        return trim(q), trim(num)

    r0, r1 = trim(list(modulus)), trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        # s_next = s0 - q * s1
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, qc in enumerate(q):
            if qc:
                for j, sc in enumerate(s1):
                    prod[i + j] += qc * sc
        s_next = [Fraction(0)] * max(len(s0), len(prod))
        for i, c in enumerate(s0):
            s_next[i] += c
        for i, c in enumerate(prod):
            s_next[i] -= c
        r0, r1 = r1, r
        s0, s1 = s1, trim(s_next)
    lead = r0[-1]
    return [c / lead for c in s0]


def common_conductor(m: int) -> int:
    """Smallest conductor containing both a primitive 2m-th and 4th root."""
    two_m = 2 * m
    return two_m * 4 // gcd(two_m, 4)
