"""Exact scalar tower and fraction-free linear algebra.

Every quantity in this package is exact: rationals are
:class:`fractions.Fraction`, polynomials carry rational coefficients in
a canonical graded-lexicographic term order, rational functions are kept
gcd-reduced with a monic denominator, and Laurent polynomials allow
negative exponents of the single variable ``t``.  A small quadratic
extension type adjoins one square root to the rationals for the few
places that need it.  No floating point is used anywhere.

Each type has a canonical textual form (integers in decimal, polynomials
as sorted monomial strings) that round-trips through the matching
``parse_*`` function; the certificate reports embed these strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

Rational = Fraction

_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_GL = lambda exps: (sum(exps), exps)  # graded-lex sort key


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class MultiPoly:
    """Multivariate polynomial over the rationals.

    Terms map exponent tuples to nonzero rational coefficients, keyed
    against the sorted tuple of variable names that actually occur.
    Variables that divide no term are dropped, so two construction
    orders of the same polynomial are structurally equal.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Fraction | int]):
        names = tuple(vars)
        for name in names:
            if not _VAR_RE.match(name):
                raise ValueError(f"bad variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        cleaned: dict[tuple, Fraction] = {}
        for exps, coeff in terms.items():
            coeff = _as_fraction(coeff)
            if len(exps) != len(names):
                raise ValueError("exponent tuple does not match variable count")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial")
            if coeff:
                cleaned[tuple(exps)] = cleaned.get(tuple(exps), Fraction(0)) + coeff
        cleaned = {e: c for e, c in cleaned.items() if c}
        # canonical variable order, then drop unused variables
        order = sorted(range(len(names)), key=lambda i: names[i])
        names = tuple(names[i] for i in order)
        cleaned = {tuple(e[i] for i in order): c for e, c in cleaned.items()}
        used = [i for i in range(len(names)) if any(e[i] for e in cleaned)]
        object.__setattr__(self, "vars", tuple(names[i] for i in used))
        object.__setattr__(
            self, "terms", {tuple(e[i] for i in used): c for e, c in cleaned.items()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> MultiPoly:
        return cls((), {})

    @classmethod
    def const(cls, c) -> MultiPoly:
        return cls((), {(): _as_fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], coeff) -> MultiPoly:
        return cls(tuple(vars), {tuple(exps): _as_fraction(coeff)})

    # -- structure ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        """Largest combined exponent of the named variables in any term."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        idx = [i for i, v in enumerate(self.vars) if v in set(names)]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def is_homogeneous_in(self, names: Iterable[str]) -> bool:
        idx = [i for i, v in enumerate(self.vars) if v in set(names)]
        degs = {sum(e[i] for i in idx) for e in self.terms}
        return len(degs) <= 1

    def leading(self) -> tuple[tuple, Fraction]:
        """Graded-lex leading (exponent tuple, coefficient)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_GL)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading()[1]

    # -- arithmetic --------------------------------------------------

    @staticmethod
    def _coerce(x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(x)
        return NotImplemented  # type: ignore[return-value]

    def _aligned(self, other: MultiPoly):
        names = tuple(sorted(set(self.vars) | set(other.vars)))
        pos = {v: i for i, v in enumerate(names)}

        def remap(p: MultiPoly) -> dict[tuple, Fraction]:
            out = {}
            idx = [pos[v] for v in p.vars]
            for e, c in p.terms.items():
                full = [0] * len(names)
                for i, exp in zip(idx, e):
                    full[i] = exp
                out[tuple(full)] = c
            return out

        return names, remap(self), remap(other)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, ta, tb = self._aligned(other)
        for e, c in tb.items():
            ta[e] = ta.get(e, Fraction(0)) + c
        return MultiPoly(names, ta)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, ta, tb = self._aligned(other)
        out: dict[tuple, Fraction] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return MultiPoly(names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers take non-negative integers")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def scale(self, c) -> MultiPoly:
        c = _as_fraction(c)
        return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    # -- division ----------------------------------------------------

    def divide_rem(self, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Single-divisor reduction: self = q * divisor + r.

        No term of ``r`` is divisible by the graded-lex leading monomial
        of ``divisor``, so ``r == 0`` exactly when the division is exact.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        names, cur, dv = self._aligned(divisor)
        de = max(dv, key=_GL)
        dc = dv[de]
        quot: dict[tuple, Fraction] = {}
        rem: dict[tuple, Fraction] = {}
        while cur:
            le = max(cur, key=_GL)
            lc = cur.pop(le)
            diff = tuple(a - b for a, b in zip(le, de))
            if any(d < 0 for d in diff):
                rem[le] = lc
                continue
            q = lc / dc
            quot[diff] = quot.get(diff, Fraction(0)) + q
            for e, c in dv.items():
                if e == de:
                    continue
                tgt = tuple(a + b for a, b in zip(diff, e))
                val = cur.get(tgt, Fraction(0)) - q * c
                if val:
                    cur[tgt] = val
                elif tgt in cur:
                    del cur[tgt]
        return MultiPoly(names, quot), MultiPoly(names, rem)

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        q = poly_divide_exact(self, divisor)
        if q is None:
            raise ArithmeticError("division is not exact")
        return q

    # -- substitution ------------------------------------------------

    def substitute(self, assignment: Mapping[str, "MultiPoly | Fraction | int"]) -> MultiPoly:
        """Replace named variables by polynomials; others are kept."""
        values = {k: self._coerce(v) for k, v in assignment.items()}
        out = MultiPoly.zero()
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            for v, exp in zip(self.vars, e):
                if exp == 0:
                    continue
                factor = values.get(v, MultiPoly.var(v))
                term = term * factor**exp
            out = out + term
        return out

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate at field values; every occurring variable must be set."""
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise ValueError(f"unassigned variables {missing}")
        total = None
        for e, c in self.terms.items():
            term = c
            for v, exp in zip(self.vars, e):
                if exp:
                    term = term * assignment[v] ** exp
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    # -- text --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_GL, reverse=True):
            c = self.terms[e]
            factors = []
            for v, exp in zip(self.vars, e):
                if exp == 1:
                    factors.append(v)
                elif exp > 1:
                    factors.append(f"{v}^{exp}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def poly_divide_exact(dividend: MultiPoly, divisor: MultiPoly) -> MultiPoly | None:
    """Exact polynomial quotient, or None when the division leaves a remainder."""
    q, r = dividend.divide_rem(divisor)
    return q if r.is_zero() else None


# -- gcd ---------------------------------------------------------------


def _coeffs_in(p: MultiPoly, v: str) -> dict[int, MultiPoly]:
    """View ``p`` as a univariate polynomial in ``v`` with polynomial coefficients."""
    if v not in p.vars:
        return {0: p}
    i = p.vars.index(v)
    rest = p.vars[:i] + p.vars[i + 1 :]
    out: dict[int, dict[tuple, Fraction]] = {}
    for e, c in p.terms.items():
        d = e[i]
        out.setdefault(d, {})[e[:i] + e[i + 1 :]] = c
    return {d: MultiPoly(rest, terms) for d, terms in out.items()}


def _from_coeffs(coeffs: Mapping[int, MultiPoly], v: str) -> MultiPoly:
    out = MultiPoly.zero()
    t = MultiPoly.var(v)
    for d, c in coeffs.items():
        out = out + c * t**d
    return out


def _monic(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    return p.scale(1 / p.leading_coefficient())


def _pseudo_rem(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    cb = _coeffs_in(b, v)
    db = max(cb)
    lb = cb[db]
    tv = MultiPoly.var(v)
    r = a
    while not r.is_zero():
        cr = _coeffs_in(r, v)
        dr = max(cr)
        if dr < db:
            break
        r = lb * r - cr[dr] * tv ** (dr - db) * b
    return r


def _content_pp(p: MultiPoly, v: str) -> tuple[MultiPoly, MultiPoly]:
    coeffs = _coeffs_in(p, v)
    content = MultiPoly.zero()
    for c in coeffs.values():
        content = poly_gcd(content, c)
    pp = {d: c.exact_div(content) for d, c in coeffs.items()}
    return content, _from_coeffs(pp, v)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized monic in graded-lex order.

    Primitive pseudo-remainder sequences with recursion over the
    variable set; adequate for the small polynomials this package
    manipulates.
    """
    a = MultiPoly._coerce(a)
    b = MultiPoly._coerce(b)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    names = tuple(sorted(set(a.vars) | set(b.vars)))
    if not names:
        return MultiPoly.const(1)
    v = names[-1]
    ca, pa = _content_pp(a, v)
    cb, pb = _content_pp(b, v)
    c = poly_gcd(ca, cb)
    if max(_coeffs_in(pa, v)) < max(_coeffs_in(pb, v)):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, v)
        if r.is_zero():
            pa, pb = pb, r
            break
        _, rpp = _content_pp(r, v)
        pa, pb = pb, _monic(rpp)
    return _monic(c * pa)


# -- rational functions --------------------------------------------------


class RatFunc:
    """Quotient of two polynomials, gcd-reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = MultiPoly._coerce(num)
        den = MultiPoly._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc takes polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = MultiPoly.zero(), MultiPoly.const(1)
        else:
            g = poly_gcd(num, den)
            num = num.exact_div(g)
            den = den.exact_div(g)
            lc = den.leading_coefficient()
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def var(cls, name: str) -> RatFunc:
        return cls(MultiPoly.var(name))

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, MultiPoly)):
            return RatFunc(x)
        return NotImplemented  # type: ignore[return-value]

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == MultiPoly.const(1)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inverse(self) -> RatFunc:
        return RatFunc(1) / self

    def __pow__(self, k: int) -> RatFunc:
        if not isinstance(k, int):
            raise TypeError("integer power expected")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# -- Laurent polynomials in t --------------------------------------------


class LaurentT:
    """Laurent polynomial in the single variable ``t`` over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction | int]):
        cleaned: dict[int, Fraction] = {}
        for e, c in terms.items():
            c = _as_fraction(c)
            if not isinstance(e, int):
                raise TypeError("Laurent exponents are integers")
            if c:
                cleaned[e] = cleaned.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in cleaned.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("LaurentT is immutable")

    @classmethod
    def zero(cls) -> LaurentT:
        return cls({})

    @classmethod
    def const(cls, c) -> LaurentT:
        return cls({0: _as_fraction(c)})

    @classmethod
    def t_power(cls, k: int, coeff=1) -> LaurentT:
        return cls({k: _as_fraction(coeff)})

    @staticmethod
    def _coerce(x) -> "LaurentT":
        if isinstance(x, LaurentT):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentT.const(x)
        return NotImplemented  # type: ignore[return-value]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentT(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentT({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                out[ea + eb] = out.get(ea + eb, Fraction(0)) + ca * cb
        return LaurentT(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentT:
        if not isinstance(k, int) or k < 0:
            raise ValueError("Laurent powers take non-negative integers")
        out = LaurentT.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"LaurentT({self})"


def laurent_degree_range(p: LaurentT) -> tuple[int, int]:
    """(minimum exponent, maximum exponent) of a nonzero Laurent polynomial."""
    if p.is_zero():
        raise ValueError("the zero Laurent polynomial has no degree range")
    return min(p.terms), max(p.terms)


# -- projective values ----------------------------------------------------


class ProjValue:
    """A point of the projective line: a finite field value, or infinity."""

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ProjValue is immutable")

    @classmethod
    def finite(cls, value) -> ProjValue:
        if value is None:
            raise ValueError("finite value may not be None")
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjValue):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        return self.value == other.value

    def __hash__(self):
        return hash(("ProjValue", None if self.is_infinite else self.value))

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)

    def __repr__(self) -> str:
        return f"ProjValue({self})"


INFINITY = ProjValue(None)


# -- quadratic extensions --------------------------------------------------


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*delta of a quadratic extension of Q with delta^2 = d."""

    a: Fraction
    b: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        object.__setattr__(self, "d", _as_fraction(self.d))

    @classmethod
    def of(cls, x, d) -> QuadExt:
        if isinstance(x, QuadExt):
            if x.d != _as_fraction(d):
                raise ValueError("mismatched extensions")
            return x
        return cls(_as_fraction(x), Fraction(0), d)

    @classmethod
    def root(cls, d) -> QuadExt:
        return cls(Fraction(0), Fraction(1), d)

    def _check(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mismatched extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt.of(other, self.d)
        return NotImplemented  # type: ignore[return-value]

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_zero(self) -> bool:
        return not self

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExt(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        # norm a^2 - d b^2 vanishes only at 0 when d is not a rational square
        n = self.a * self.a - self.d * self.b * self.b
        if not n:
            raise ZeroDivisionError("element has zero norm")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, k: int) -> QuadExt:
        if not isinstance(k, int) or k < 0:
            raise ValueError("QuadExt powers take non-negative integers")
        out = QuadExt.of(1, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*delta" if self.b else str(self.a)


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None when no rational root exists."""
    x = _as_fraction(x)
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# -- exact linear algebra ---------------------------------------------------


def _entry(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def _exact_quot(a, b):
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        a = MultiPoly._coerce(a)
        b = MultiPoly._coerce(b)
        return a.exact_div(b)
    return a / b


def matrix_rank_det(rows: Sequence[Sequence]) -> tuple[int, object | None]:
    """Rank, and determinant when square, by fraction-free Bareiss elimination.

    Entries may be rationals, polynomials, rational functions, or
    quadratic-extension elements; the successive-pivot divisions are
    exact over any integral domain, so no fractions of entries are ever
    formed.
    """
    A = [[_entry(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    sign = 1
    prev = None
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if A[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            A[r], A[pivot] = A[pivot], A[r]
            sign = -sign
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                val = A[r][c] * A[i][j] - A[i][c] * A[r][j]
                A[i][j] = val if prev is None else _exact_quot(val, prev)
            A[i][c] = A[i][c] * 0 if isinstance(A[i][c], QuadExt) else Fraction(0)
        prev = A[r][c]
        r += 1
    if m != n:
        return r, None
    if r < n:
        return r, Fraction(0)
    det = prev if sign == 1 else -prev
    return r, det


def field_nullspace(rows: Sequence[Sequence]) -> list[tuple]:
    """Basis of the right kernel {x : A x = 0} over a field, by elimination."""
    A = [[_entry(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return []
    one = None
    for row in A:
        for x in row:
            if x:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        one = Fraction(1)
    zero = one - one
    basis = []
    for fc in free:
        vec = [zero] * n
        vec[fc] = one
        for ri, pc in enumerate(pivots):
            vec[pc] = -A[ri][fc]
        basis.append(tuple(vec))
    return basis


# -- canonical text round-trip ----------------------------------------------


# sign following '^' belongs to an exponent, not a new term
_TERM_SPLIT = re.compile(r"(?<=[\w)])(?<!\^)\s*([+-])\s*")
_FRACTION_RE = re.compile(r"^-?\d+(?:/\d+)?$")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def _split_terms(text: str) -> list[str]:
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    out = []
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:].strip()
    pieces = _TERM_SPLIT.split(text)
    term = pieces[0]
    out.append((sign, term.strip()))
    for op, term in zip(pieces[1::2], pieces[2::2]):
        out.append((-1 if op == "-" else 1, term.strip()))
    return out


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not _FRACTION_RE.match(text):
        raise ValueError(f"bad rational literal {text!r}")
    return Fraction(text)


def _parse_terms(text: str, allow_negative_exp: bool):
    for sign, term in _split_terms(text):
        coeff = Fraction(sign)
        factors: dict[str, int] = {}
        seen_any = False
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"bad term {term!r}")
            if _FRACTION_RE.match(factor):
                coeff *= Fraction(factor)
                seen_any = True
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r}")
            exp = int(m.group(2)) if m.group(2) else 1
            if exp < 0 and not allow_negative_exp:
                raise ValueError(f"negative exponent in {factor!r}")
            factors[m.group(1)] = factors.get(m.group(1), 0) + exp
            seen_any = True
        if not seen_any:
            raise ValueError(f"bad term {term!r}")
        yield coeff, factors


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical polynomial string form back to a MultiPoly."""
    if text.strip() == "0":
        return MultiPoly.zero()
    out = MultiPoly.zero()
    for coeff, factors in _parse_terms(text, allow_negative_exp=False):
        names = tuple(factors)
        exps = tuple(factors[v] for v in names)
        out = out + MultiPoly.monomial(names, exps, coeff)
    return out


def parse_ratfunc(text: str) -> RatFunc:
    text = text.strip()
    m = re.match(r"^\((.*)\)/\((.*)\)$", text)
    if m:
        return RatFunc(parse_poly(m.group(1)), parse_poly(m.group(2)))
    return RatFunc(parse_poly(text))


def parse_laurent(text: str) -> LaurentT:
    if text.strip() == "0":
        return LaurentT.zero()
    out: dict[int, Fraction] = {}
    for coeff, factors in _parse_terms(text, allow_negative_exp=True):
        if set(factors) - {"t"}:
            raise ValueError("Laurent polynomials use the single variable t")
        e = factors.get("t", 0)
        out[e] = out.get(e, Fraction(0)) + coeff
    return LaurentT(out)


def parse_proj(text: str, value_parser=parse_ratfunc) -> ProjValue:
    text = text.strip()
    if text == "inf":
        return INFINITY
    return ProjValue.finite(value_parser(text))
