"""Sparse multivariate polynomials and rational functions over Q(zeta_N).

A ``PolyRing`` fixes the variable names and the cyclotomic conductor once;
every element carries a reference to its ring, and mixing rings is an error
rather than a silent coercion.  Monomials are exponent tuples ordered by
graded reverse lexicographic order globally (leading terms, normalization,
and printing all use the same order).

``FieldElement`` is a quotient num/den of polynomials with no gcd machinery:
the denominator is normalized to leading coefficient 1, exact divisions are
collapsed when they happen to succeed, and equality is decided by cross
multiplication.  This keeps every operation exact while staying within the
sizes these computations actually produce.

``poly_sqrt`` decides squareness by recursion on the leading coefficient one
variable at a time; the scalar base case is partial (see cyclotomic.Cyc.sqrt)
so a None answer means "not recognized as a square", never "not a square".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Union

from .cyclotomic import Cyc, ExactFieldError, PoleError

ScalarLike = Union[int, Fraction, Cyc]


def _grevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class PolyRing:
    """Variable names plus a cyclotomic conductor for the coefficients."""

    __slots__ = ("variables", "conductor", "_index")

    def __init__(self, variables: Iterable[str], conductor: int = 1):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        for name in variables:
            if not name.isidentifier():
                raise ValueError(f"bad variable name: {name!r}")
        self.variables = variables
        self.conductor = conductor
        self._index = {name: k for k, name in enumerate(variables)}

    def var_index(self, name: str) -> int:
        if name not in self._index:
            raise KeyError(f"unknown variable: {name!r}")
        return self._index[name]

    def scalar_cyc(self, value: ScalarLike) -> Cyc:
        if isinstance(value, Cyc):
            if value.conductor == self.conductor:
                return value
            if self.conductor % value.conductor == 0:
                return value.lift(self.conductor)
            raise ValueError("scalar conductor does not divide ring conductor")
        return Cyc.rational(Fraction(value), self.conductor)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.scalar(1)

    def scalar(self, value: ScalarLike) -> "MultiPoly":
        c = self.scalar_cyc(value)
        if c.is_zero():
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * len(self.variables): c})

    def zeta(self, power: int = 1) -> "MultiPoly":
        return self.scalar(Cyc.zeta(self.conductor, power))

    def var(self, name: str) -> "MultiPoly":
        exps = [0] * len(self.variables)
        exps[self.var_index(name)] = 1
        return MultiPoly(self, {tuple(exps): Cyc.one(self.conductor)})

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ring is not self:
                raise ValueError("ring mismatch")
            return value
        if isinstance(value, MultiPoly):
            return FieldElement(value, self.one())
        return FieldElement(self.scalar(value), self.one())

    def parse(self, text: str) -> "FieldElement":
        return parse_element(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.conductor == other.conductor
        )

    def __hash__(self):
        return hash((self.variables, self.conductor))

    def __repr__(self):
        return f"PolyRing({', '.join(self.variables)}; conductor={self.conductor})"


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- views -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_one(self) -> bool:
        return self.is_scalar() and self.as_scalar().is_one()

    def as_scalar(self) -> Cyc:
        if self.is_zero():
            return Cyc.zero(self.ring.conductor)
        if not self.is_scalar():
            raise ExactFieldError("polynomial is not a scalar")
        return self.terms[(0,) * len(self.ring.variables)]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        k = self.ring.var_index(name)
        return max((e[k] for e in self.terms), default=0)

    def leading_exponents(self) -> tuple[int, ...]:
        if self.is_zero():
            raise ExactFieldError("zero polynomial has no leading term")
        return max(self.terms, key=_grevlex_key)

    def leading_coefficient(self) -> Cyc:
        return self.terms[self.leading_exponents()]

    def variables_present(self) -> tuple[str, ...]:
        names = self.ring.variables
        used = set()
        for e in self.terms:
            for k, x in enumerate(e):
                if x:
                    used.add(names[k])
        return tuple(n for n in names if n in used)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction, Cyc)):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return MultiPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in acc:
                    s = acc[e] + prod
                    if s.is_zero():
                        del acc[e]
                    else:
                        acc[e] = s
                else:
                    acc[e] = prod
        return MultiPoly(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ExactFieldError("negative power of a polynomial; use FieldElement")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c: ScalarLike) -> "MultiPoly":
        cc = self.ring.scalar_cyc(c)
        return MultiPoly(self.ring, {e: v * cc for e, v in self.terms.items()})

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.ring, {e: fn(c) for e, c in self.terms.items()})

    # -- structure ----------------------------------------------------------

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Split into coefficient polynomials of powers of one variable."""
        k = self.ring.var_index(name)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            d = e[k]
            rest = e[:k] + (0,) + e[k + 1 :]
            out.setdefault(d, {})[rest] = c
        return {d: MultiPoly(self.ring, t) for d, t in out.items()}

    def substitute(self, values: dict) -> "FieldElement":
        """Evaluate some variables at FieldElement/scalar values.

        Unlisted variables stay symbolic.  The result is a FieldElement
        because substituted values may themselves be quotients.
        """
        ring = self.ring
        subs: dict[int, FieldElement] = {}
        for name, val in values.items():
            subs[ring.var_index(name)] = ring.element(val)
        power_cache: dict[tuple[int, int], FieldElement] = {}

        def var_power(k: int, e: int) -> FieldElement:
            key = (k, e)
            if key not in power_cache:
                if k in subs:
                    power_cache[key] = subs[k] ** e
                else:
                    mono = [0] * len(ring.variables)
                    mono[k] = e
                    power_cache[key] = ring.element(
                        MultiPoly(ring, {tuple(mono): Cyc.one(ring.conductor)})
                    )
            return power_cache[key]

        total = ring.element(0)
        for exps, coeff in self.terms.items():
            term = ring.element(coeff)
            for k, e in enumerate(exps):
                if e:
                    term = term * var_power(k, e)
            total = total + term
        return total

    # -- comparisons, display, serialization ---------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            other = self.ring.scalar(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if self.is_zero():
            return "0"
        names = self.ring.variables
        parts = []
        for e in sorted(self.terms, key=_grevlex_key, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                name if p == 1 else f"{name}^{p}"
                for name, p in zip(names, e)
                if p
            )
            if not mon:
                parts.append(str(c) if c.is_rational() else f"({c})")
                continue
            if c.is_rational():
                q = c.as_fraction()
                if q == 1:
                    parts.append(mon)
                elif q == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{q}*{mon}")
            else:
                parts.append(f"({c})*{mon}")
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.variables),
            "conductor": self.ring.conductor,
            "terms": {
                ",".join(map(str, e)): c.to_json() for e, c in self.terms.items()
            },
        }

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "MultiPoly":
        if tuple(data["vars"]) != ring.variables or data["conductor"] != ring.conductor:
            raise ValueError("serialized polynomial belongs to a different ring")
        terms = {}
        for key, cj in data["terms"].items():
            exps = tuple(int(x) for x in key.split(",")) if key else ()
            terms[exps] = Cyc.from_json(cj)
        return cls(ring, terms)


def exact_divide(num: MultiPoly, den: MultiPoly) -> Optional[MultiPoly]:
    """num / den when the division is exact in the polynomial ring, else None."""
    if den.is_zero():
        raise ExactFieldError("division by zero")
    if num.is_zero():
        return num
    ring = num.ring
    den_lead = den.leading_exponents()
    den_lc = den.leading_coefficient()
    quot: dict = {}
    rem = num
    while not rem.is_zero():
        lead = rem.leading_exponents()
        diff = tuple(a - b for a, b in zip(lead, den_lead))
        if any(d < 0 for d in diff):
            return None
        c = rem.terms[lead] / den_lc
        quot[diff] = c
        rem = rem - MultiPoly(ring, {diff: c}) * den
    return MultiPoly(ring, quot)


def poly_sqrt(p: MultiPoly) -> Optional[MultiPoly]:
    """A verified polynomial square root, or None when not recognized."""
    if p.is_zero():
        return p
    if p.is_scalar():
        r = p.as_scalar().sqrt()
        return None if r is None else p.ring.scalar(r)
    name = p.variables_present()[0]
    coeffs = p.coefficients_in(name)
    d = max(coeffs)
    if d % 2:
        return None
    half = d // 2
    lead_root = poly_sqrt(coeffs[d])
    if lead_root is None:
        return None
    ring = p.ring
    v = ring.var(name)
    b: dict[int, MultiPoly] = {half: lead_root}
    twice_lead = lead_root + lead_root
    for k in range(half - 1, -1, -1):
        # coefficient of v^(k+half) in the square is 2*b_k*b_half plus
        # ordered products b_i*b_j with i+j = k+half and k < i,j < half
        m = k + half
        rhs = coeffs.get(m, ring.zero())
        for i in range(k + 1, half):
            rhs = rhs - b[i] * b[m - i]
        bk = exact_divide(rhs, twice_lead)
        if bk is None:
            return None
        b[k] = bk
    cand = ring.zero()
    for k, coeff in b.items():
        cand = cand + coeff * v ** k
    # low-degree coefficients were never used above; squaring back checks them
    if cand * cand == p:
        return cand
    return None


class FieldElement:
    """Quotient of polynomials, denominator normalized to leading coefficient 1."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        if num.ring != den.ring:
            raise ValueError("ring mismatch")
        if den.is_zero():
            raise ExactFieldError("division by zero")
        ring = num.ring
        if num.is_zero():
            den = ring.one()
        else:
            lc = den.leading_coefficient()
            if not lc.is_one():
                inv = lc.inverse()
                den = den.scale(inv)
                num = num.scale(inv)
            if not den.is_one():
                q = exact_divide(num, den)
                if q is not None:
                    num, den = q, ring.one()
        self.ring = ring
        self.num = num
        self.den = den

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return FieldElement(other, self.ring.one())
        if isinstance(other, (int, Fraction, Cyc)):
            return FieldElement(self.ring.scalar(other), self.ring.one())
        return None

    # -- predicates and views --------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> MultiPoly:
        if not self.den.is_one():
            q = exact_divide(self.num, self.den)
            if q is None:
                raise ExactFieldError("element is not polynomial")
            return q
        return self.num

    def is_scalar(self) -> bool:
        return self.num.is_scalar() and self.den.is_scalar()

    def as_scalar(self) -> Cyc:
        return self.num.as_scalar() / self.den.as_scalar()

    def as_fraction(self) -> Fraction:
        return self.as_scalar().as_fraction()

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement(self.num + o.num, self.den)
        return FieldElement(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ExactFieldError("division by zero")
        return FieldElement(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.element(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def substitute(self, values: dict) -> "FieldElement":
        num = self.num.substitute(values)
        den = self.den.substitute(values)
        if den.is_zero():
            raise PoleError("pole at specialization point")
        return num / den

    # -- comparisons, display, serialization ------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyc, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # quotients are not canonical, so only trivially-reduced elements hash
        if not self.den.is_one():
            raise TypeError("unreduced FieldElement is unhashable")
        return hash(self.num)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"FieldElement({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "FieldElement":
        return cls(
            MultiPoly.from_json(ring, data["num"]),
            MultiPoly.from_json(ring, data["den"]),
        )


def is_square(f: FieldElement) -> Optional[FieldElement]:
    """A verified square root of f, or None when no square root is recognized.

    g^2 = num/den exactly when (g*den)^2 = num*den, so one polynomial square
    root decides the quotient case too.
    """
    if f.is_zero():
        return f
    h = poly_sqrt(f.num * f.den)
    if h is None:
        return None
    root = FieldElement(h, f.den)
    if root * root == f:
        return root
    return None


# -- expression parsing -----------------------------------------------------


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, str]]:
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("int", text[i:j]))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(("name", text[i:j]))
                i = j
                continue
            if text.startswith("**", i):
                tokens.append(("op", "^"))
                i += 2
                continue
            if ch in "+-*/^()":
                tokens.append(("op", ch))
                i += 1
                continue
            raise ExactFieldError(f"unexpected character {ch!r} in expression")
        return tokens

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("end", "")

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> FieldElement:
        value = self._expr()
        if self._peek()[0] != "end":
            raise ExactFieldError("trailing input in expression")
        return value

    def _expr(self) -> FieldElement:
        value = self._term()
        while self._peek() == ("op", "+") or self._peek() == ("op", "-"):
            op = self._next()[1]
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> FieldElement:
        value = self._factor()
        while self._peek() == ("op", "*") or self._peek() == ("op", "/"):
            op = self._next()[1]
            rhs = self._factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def _factor(self) -> FieldElement:
        kind, text = self._peek()
        if (kind, text) == ("op", "-"):
            self._next()
            return -self._factor()
        if (kind, text) == ("op", "+"):
            self._next()
            return self._factor()
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._next()
            sign = 1
            if self._peek() == ("op", "-"):
                self._next()
                sign = -1
            kind, text = self._next()
            if kind != "int":
                raise ExactFieldError("exponent must be an integer")
            return base ** (sign * int(text))
        return base

    def _atom(self) -> FieldElement:
        kind, text = self._next()
        if kind == "int":
            return self.ring.element(int(text))
        if kind == "name":
            if text == "zeta":
                return self.ring.element(self.ring.zeta())
            if text == "i" and "i" not in self.ring.variables:
                if self.ring.conductor % 4:
                    raise ExactFieldError("no square root of -1 at this conductor")
                return self.ring.element(self.ring.zeta(self.ring.conductor // 4))
            return self.ring.element(self.ring.var(text))
        if (kind, text) == ("op", "("):
            value = self._expr()
            if self._next() != ("op", ")"):
                raise ExactFieldError("unbalanced parentheses")
            return value
        raise ExactFieldError(f"unexpected token {text!r}")


def parse_element(ring: PolyRing, text: str) -> FieldElement:
    """Parse +,-,*,/,^ expressions over declared variables, zeta, and i."""
    return _Parser(ring, text).parse()


def extend_ring(ring: PolyRing, extra: Iterable[str]) -> PolyRing:
    """Same conductor, variables of ring plus the new names (appended)."""
    return PolyRing(ring.variables + tuple(extra), ring.conductor)


def transport(value, target: PolyRing):
    """Re-express a MultiPoly or FieldElement in a ring with more variables.

    Matching is by variable name; every variable of the source ring must
    exist in the target, and conductors must agree up to divisibility.
    """
    if isinstance(value, FieldElement):
        return FieldElement(
            transport(value.num, target), transport(value.den, target)
        )
    if not isinstance(value, MultiPoly):
        return target.element(value)
    src = value.ring
    if target.conductor % src.conductor:
        raise ValueError("target conductor must contain the source conductor")
    positions = [target.var_index(name) for name in src.variables]
    width = len(target.variables)
    terms = {}
    for exps, coeff in value.terms.items():
        new = [0] * width
        for k, e in enumerate(exps):
            new[positions[k]] = e
        terms[tuple(new)] = target.scalar_cyc(coeff)
    return MultiPoly(target, terms)


def sample_specialization(
    ring: PolyRing,
    avoid: Iterable = (),
    seed: int = 0,
    low: int = -20,
    high: int = 20,
    retries: int = 100,
) -> dict[str, int]:
    """Integer values for the variables keeping every avoid-element nonzero.

    Draws uniform integers in [low, high] with a seeded generator, rejecting
    draws that put any nondegeneracy element at zero or on a pole, up to the
    retry budget.
    """
    import random

    avoid = [ring.element(p) for p in avoid]
    rng = random.Random(seed)
    for _ in range(retries):
        values = {name: rng.randint(low, high) for name in ring.variables}
        ok = True
        for p in avoid:
            try:
                if p.substitute(values).is_zero():
                    ok = False
                    break
            except PoleError:
                ok = False
                break
        if ok:
            return values
    raise ExactFieldError("no nondegenerate specialization found")
