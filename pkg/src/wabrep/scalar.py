"""Exact multivariate polynomials and rational functions over Q.

Polynomials are sparse maps from monomials to nonzero rational coefficients.
A monomial is a tuple of ``(name, exponent)`` pairs with positive exponents,
sorted by variable priority, so equal polynomials always have identical term
maps.  Terms are ordered graded-lexicographically for display.

:class:`Scalar` is a quotient of integer polynomials.  The denominator is kept
as a positive integer times a product of primitive polynomial factors; no
multivariate gcd is ever taken.  A factor is cancelled only when it divides the
numerator exactly, and equality is decided by ``is_zero`` on a difference, so
correctness never depends on the quotient being reduced.
"""

from __future__ import annotations

import ast
import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .errors import ZeroDenominator

Monomial = Tuple[Tuple[str, int], ...]
Number = Union[int, Fraction]

# Variable priority for the graded-lex order; unlisted names sort after these,
# alphabetically.
_KNOWN_VARS = (
    "a", "b", "lam", "mu", "mu0", "mu1", "mu2", "mu_m1",
    "gamma", "c", "t", "i", "n",
)
_RANK: Dict[str, int] = {name: idx for idx, name in enumerate(_KNOWN_VARS)}


def _rank(name: str) -> int:
    r = _RANK.get(name)
    if r is None:
        raw = name.encode()
        if len(raw) > 64:
            raise ValueError(f"indeterminate name too long: {name!r}")
        r = (1 << 520) | int.from_bytes(raw.ljust(64, b"\0"), "big")
        _RANK[name] = r
    return r


def _var_key(item):
    return _rank(item[0])


_MUL_CACHE: Dict[Tuple[Monomial, Monomial], Monomial] = {}
_GRLEX_CACHE: Dict[Monomial, tuple] = {}


def _mono_mul(x: Monomial, y: Monomial) -> Monomial:
    if not x:
        return y
    if not y:
        return x
    key = (x, y)
    out = _MUL_CACHE.get(key)
    if out is None:
        d = dict(x)
        for v, e in y:
            d[v] = d.get(v, 0) + e
        out = tuple(sorted(d.items(), key=_var_key))
        if len(_MUL_CACHE) > 2_000_000:
            _MUL_CACHE.clear()
        _MUL_CACHE[key] = out
    return out


def _mono_div(x: Monomial, y: Monomial) -> Optional[Monomial]:
    """x / y if y divides x, else None."""
    if not y:
        return x
    d = dict(x)
    for v, e in y:
        have = d.get(v, 0)
        if have < e:
            return None
        if have == e:
            del d[v]
        else:
            d[v] = have - e
    return tuple(sorted(d.items(), key=_var_key))


def grlex_key(mono: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in graded-lex order."""
    key = _GRLEX_CACHE.get(mono)
    if key is None:
        key = (sum(e for _, e in mono), tuple((-_rank(v), e) for v, e in mono))
        _GRLEX_CACHE[mono] = key
    return key


def monomial(exponents: Mapping[str, int]) -> Monomial:
    """Build a canonical monomial, dropping zero exponents."""
    items = []
    for v, e in exponents.items():
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            items.append((v, int(e)))
    return tuple(sorted(items, key=_var_key))


def _coeff(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    if isinstance(c, bool):
        return int(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_rational(c: Number) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class Polynomial:
    """Sparse polynomial with rational coefficients; immutable and hashable."""

    __slots__ = ("_terms", "_hash", "_key")

    def __init__(self, terms: Optional[Mapping] = None):
        clean: Dict[Monomial, Number] = {}
        for mono, c in (terms or {}).items():
            if isinstance(mono, Mapping):
                mono = monomial(mono)
            else:
                mono = monomial(dict(mono))
            c = _coeff(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None
        self._key = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Number]) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        p._key = None
        return p

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        c = _coeff(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        _rank(name)
        return cls._raw({((name, 1),): 1})

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, mono: Monomial) -> Number:
        return self._terms.get(mono, 0)

    def variables(self) -> frozenset:
        return frozenset(v for mono in self._terms for v, _ in mono)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e for _, e in m) for m in self._terms)

    def degree_in(self, name: str) -> int:
        return max((e for m in self._terms for v, e in m if v == name), default=0)

    def leading(self) -> Tuple[Monomial, Number]:
        mono = max(self._terms, key=grlex_key)
        return mono, self._terms[mono]

    def constant_value(self) -> Optional[Fraction]:
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and () in self._terms:
            return Fraction(self._terms[()])
        return None

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive over Z."""
        if not self._terms:
            return Fraction(0)
        nums = []
        dens = []
        for c in self._terms.values():
            if isinstance(c, Fraction):
                nums.append(c.numerator)
                dens.append(c.denominator)
            else:
                nums.append(c)
        g = math.gcd(*nums)
        l = math.lcm(*dens) if dens else 1
        return Fraction(g, l)

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(
                ((grlex_key(m), c) for m, c in self._terms.items()), reverse=True))
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _coeff(s) if isinstance(s, Fraction) else s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.constant(other) - self

    def scale(self, c: Number) -> "Polynomial":
        c = _coeff(c)
        if not c:
            return Polynomial._raw({})
        if c == 1:
            return self
        if isinstance(c, int):
            if self.is_integral():
                return Polynomial._raw({m: v * c for m, v in self._terms.items()})
        return Polynomial._raw({m: _coeff(v * c) for m, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (m2, c2), = b.items()
            if not m2:
                return self.scale(c2) if a is self._terms else other.scale(c2)
        out: Dict[Monomial, Number] = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = _mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        res = {}
        for m, c in out.items():
            if c:
                res[m] = _coeff(c) if isinstance(c, Fraction) else c
        return Polynomial._raw(res)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Polynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """Quotient if ``divisor`` divides ``self`` exactly, else None."""
        if divisor.is_zero():
            raise ZeroDenominator("division by the zero polynomial")
        if self.is_zero():
            return self
        lm, lc = divisor.leading()
        rest = dict(self._terms)
        quotient: Dict[Monomial, Number] = {}
        dterms = list(divisor._terms.items())
        while rest:
            m = max(rest, key=grlex_key)
            q_m = _mono_div(m, lm)
            if q_m is None:
                return None
            c = rest[m]
            if isinstance(c, int) and isinstance(lc, int) and c % lc == 0:
                q_c = c // lc
            else:
                q_c = _coeff(Fraction(c) / lc)
            quotient[q_m] = q_c
            for dm, dc in dterms:
                mm = _mono_mul(dm, q_m)
                v = rest.get(mm, 0) - dc * q_c
                if v:
                    rest[mm] = _coeff(v) if isinstance(v, Fraction) else v
                else:
                    rest.pop(mm, None)
        return Polynomial._raw(quotient)

    def substitute(self, bindings: Mapping[str, "Polynomial"]) -> "Polynomial":
        if not bindings or not (self.variables() & set(bindings)):
            return self
        powers: Dict[Tuple[str, int], Polynomial] = {}
        out = Polynomial._raw({})
        for mono, c in self._terms.items():
            term = Polynomial.constant(c)
            keep = []
            for v, e in mono:
                if v in bindings:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = bindings[v] ** e
                    term = term * powers[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * Polynomial._raw({tuple(keep): 1})
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for mono, c in self._terms.items():
            val = Fraction(c)
            for v, e in mono:
                if v not in point:
                    raise ValueError(f"indeterminate {v!r} is not bound")
                val *= Fraction(point[v]) ** e
            total += val
        return total

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (mono, c) in enumerate(self.items()):
            neg = c < 0
            mag = -c if neg else c
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                text = _fmt_rational(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{_fmt_rational(mag)}*{body}"
            if idx == 0:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


_PZERO = Polynomial._raw({})
_PONE = Polynomial._raw({(): 1})


def _int_content(p: Polynomial) -> int:
    return math.gcd(*p._terms.values()) if p._terms else 0


def _split_factor(f: Polynomial) -> Tuple[Fraction, Optional[Polynomial]]:
    """Write f = s * g with g primitive over Z and positive leading coefficient."""
    cv = f.constant_value()
    if cv is not None:
        return cv, None
    s = f.content()
    _, lc = f.leading()
    if lc < 0:
        s = -s
    if s == 1:
        return s, f
    inv = 1 / s
    return s, Polynomial._raw({m: _coeff(c * inv) for m, c in f._terms.items()})


def _pow_cached(f: Polynomial, e: int) -> Polynomial:
    return f if e == 1 else f ** e


class Scalar:
    """Exact rational function: integer numerator over a factored denominator.

    The denominator is ``dc * prod(f**e)`` with ``dc`` a positive integer and
    each ``f`` a primitive integer polynomial with positive leading
    coefficient; numerator and ``dc`` share no integer content.
    """

    __slots__ = ("_num", "_dc", "_df", "_den")
    __hash__ = None  # equality is semantic, not structural

    def __init__(self, value: Union[int, Fraction, Polynomial, "Scalar"] = 0):
        if isinstance(value, Scalar):
            self._num, self._dc, self._df = value._num, value._dc, value._df
        else:
            if isinstance(value, Polynomial):
                poly = value
            else:
                poly = Polynomial.constant(value)
            s = _make(poly, 1, {})
            self._num, self._dc, self._df = s._num, s._dc, s._df
        self._den = None

    @classmethod
    def _raw(cls, num: Polynomial, dc: int, df: tuple) -> "Scalar":
        s = object.__new__(cls)
        s._num = num
        s._dc = dc
        s._df = df
        s._den = None
        return s

    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        return cls._raw(Polynomial.var(name), 1, ())

    @classmethod
    def fraction(cls, num: Polynomial, den: Polynomial) -> "Scalar":
        """num / den for polynomials; den must be nonzero."""
        return Scalar(num) / Scalar(den)

    # -- inspection -------------------------------------------------------
    @property
    def numerator(self) -> Polynomial:
        return self._num

    @property
    def denominator(self) -> Polynomial:
        if self._den is None:
            den = Polynomial.constant(self._dc)
            for f, e in self._df:
                den = den * _pow_cached(f, e)
            self._den = den
        return self._den

    @property
    def denominator_factors(self) -> Tuple[Tuple[Polynomial, int], ...]:
        return self._df

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    def is_polynomial(self) -> bool:
        return not self._df

    def free_symbols(self) -> frozenset:
        out = set(self._num.variables())
        for f, _ in self._df:
            out |= f.variables()
        return frozenset(out)

    def constant_value(self) -> Optional[Fraction]:
        """The exact value if this Scalar has no indeterminates."""
        if self._df:
            return None
        cv = self._num.constant_value()
        if cv is None:
            return None
        return cv / self._dc

    def is_constant(self) -> bool:
        return self.constant_value() is not None

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self._num, self._dc, self._df)

    def __add__(self, other) -> "Scalar":
        other = as_scalar(other)
        if other._num.is_zero():
            return self
        if self._num.is_zero():
            return other
        if not self._df and not other._df:
            if self._dc == other._dc:
                return _make(self._num + other._num, self._dc, {})
            l = math.lcm(self._dc, other._dc)
            num = self._num.scale(l // self._dc) + other._num.scale(l // other._dc)
            return _make(num, l, {})
        fa = dict(self._df)
        fb = dict(other._df)
        common = dict(fa)
        for f, e in fb.items():
            if common.get(f, 0) < e:
                common[f] = e
        l = math.lcm(self._dc, other._dc)
        num_a = self._num.scale(l // self._dc)
        for f, e in common.items():
            d = e - fa.get(f, 0)
            if d:
                num_a = num_a * _pow_cached(f, d)
        num_b = other._num.scale(l // other._dc)
        for f, e in common.items():
            d = e - fb.get(f, 0)
            if d:
                num_b = num_b * _pow_cached(f, d)
        return _make(num_a + num_b, l, common)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> "Scalar":
        return as_scalar(other) - self

    def __mul__(self, other) -> "Scalar":
        other = as_scalar(other)
        if self._num.is_zero() or other._num.is_zero():
            return ZERO
        if not self._df and not other._df:
            if self._dc == 1 and other._dc == 1:
                return Scalar._raw(self._num * other._num, 1, ())
            return _make(self._num * other._num, self._dc * other._dc, {})
        factors = dict(self._df)
        for f, e in other._df:
            factors[f] = factors.get(f, 0) + e
        return _make(self._num * other._num, self._dc * other._dc, factors)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        other = as_scalar(other)
        if other._num.is_zero():
            raise ZeroDenominator("division by zero")
        if self._num.is_zero():
            return ZERO
        s, g = _split_factor(other._num)
        factors = dict(self._df)
        num = self._num.scale(other._dc)
        for f, e in other._df:
            have = factors.get(f, 0)
            take = min(have, e)
            if take:
                if have == take:
                    del factors[f]
                else:
                    factors[f] = have - take
            if e - take:
                num = num * _pow_cached(f, e - take)
        if g is not None:
            factors[g] = factors.get(g, 0) + 1
        dcf = Fraction(self._dc) * s
        if dcf < 0:
            dcf = -dcf
            num = -num
        num = num.scale(dcf.denominator)
        return _make(num, dcf.numerator, factors)

    def __rtruediv__(self, other) -> "Scalar":
        return as_scalar(other) / self

    def __pow__(self, e: int) -> "Scalar":
        if not isinstance(e, int):
            raise TypeError("integer exponents only")
        if e < 0:
            return ONE / (self ** (-e))
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __ne__(self, other) -> bool:
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    # -- substitution / evaluation ---------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Scalar":
        """Simultaneously replace indeterminates by Scalars."""
        if not bindings:
            return self
        bound = {k: as_scalar(v) for k, v in bindings.items()}
        names = self.free_symbols() & set(bound)
        if not names:
            return self
        num = _subst_poly(self._num, bound)
        den = Scalar(self._dc)
        for f, e in self._df:
            fs = _subst_poly(f, bound)
            if fs.is_zero():
                raise ZeroDenominator(f"denominator factor {f} vanishes under substitution")
            den = den * fs ** e
        return num / den

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        """Exact value at a point binding every indeterminate to a rational."""
        den = Fraction(self._dc)
        for f, e in self._df:
            fv = f.evaluate(point)
            if fv == 0:
                raise ZeroDenominator(f"denominator factor {f} vanishes at the point")
            den *= fv ** e
        return self._num.evaluate(point) / den

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._df and self._dc == 1:
            return str(self._num)
        num = str(self._num)
        den = str(self.denominator)
        if len(self._num) > 1:
            num = f"({num})"
        if len(self.denominator) > 1 or self._df:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _make(num: Polynomial, dc: int, factors: Dict[Polynomial, int]) -> Scalar:
    if num.is_zero():
        return ZERO
    if not num.is_integral():
        l = num.content().denominator
        num = num.scale(l)
        dc = dc * l
    if factors:
        kept = []
        for f in sorted(factors, key=Polynomial.sort_key):
            e = factors[f]
            while e and num.total_degree() >= f.total_degree():
                q = num.exact_div(f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                kept.append((f, e))
        df = tuple(kept)
    else:
        df = ()
    if dc != 1:
        g = math.gcd(_int_content(num), dc)
        if g > 1:
            num = Polynomial._raw({m: c // g for m, c in num._terms.items()})
            dc //= g
    return Scalar._raw(num, dc, df)


def _subst_poly(p: Polynomial, bound: Mapping[str, Scalar]) -> Scalar:
    relevant = p.variables() & set(bound)
    if not relevant:
        return Scalar(p)
    if all(bound[v].is_polynomial() and bound[v]._dc == 1 for v in relevant):
        return Scalar(p.substitute({v: bound[v]._num for v in relevant}))
    powers: Dict[Tuple[str, int], Scalar] = {}
    total = ZERO
    for mono, c in p._terms.items():
        term = Scalar(c)
        keep = []
        for v, e in mono:
            if v in bound:
                key = (v, e)
                if key not in powers:
                    powers[key] = bound[v] ** e
                term = term * powers[key]
            else:
                keep.append((v, e))
        if keep:
            term = term * Scalar._raw(Polynomial._raw({tuple(keep): 1}), 1, ())
        total = total + term
    return total


ZERO = Scalar._raw(_PZERO, 1, ())
ONE = Scalar._raw(_PONE, 1, ())


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return Scalar._raw(Polynomial._raw({(): x} if x else {}), 1, ())
    if isinstance(x, (Fraction, Polynomial)):
        return Scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a Scalar")


def sym(name: str) -> Scalar:
    """The indeterminate ``name`` as a Scalar."""
    return Scalar.symbol(name)


def symbols(names: str) -> Tuple[Scalar, ...]:
    return tuple(sym(n) for n in names.replace(",", " ").split())


def add(x, y) -> Scalar:
    return as_scalar(x) + as_scalar(y)


def mul(x, y) -> Scalar:
    return as_scalar(x) * as_scalar(y)


def linear_combination(pairs: Iterable[Tuple[object, object]]) -> Scalar:
    """sum(x * y) over one common denominator, normalized once at the end.

    Equivalent to folding ``+`` and ``*`` but skips the intermediate
    cancellation attempts, which dominate when most sums are zero.
    """
    items = []
    for x, y in pairs:
        x, y = as_scalar(x), as_scalar(y)
        if x._num.is_zero() or y._num.is_zero():
            continue
        factors = dict(x._df)
        for f, e in y._df:
            factors[f] = factors.get(f, 0) + e
        items.append((x._num * y._num, x._dc * y._dc, factors))
    if not items:
        return ZERO
    common: Dict[Polynomial, int] = {}
    dc = 1
    for _, d, fs in items:
        dc = math.lcm(dc, d)
        for f, e in fs.items():
            if common.get(f, 0) < e:
                common[f] = e
    total = _PZERO
    for num, d, fs in items:
        num = num.scale(dc // d)
        for f, e in common.items():
            extra = e - fs.get(f, 0)
            if extra:
                num = num * _pow_cached(f, extra)
        total = total + num
    if total.is_zero():
        return ZERO
    return _make(total, dc, common)


def is_zero(x) -> bool:
    return as_scalar(x).is_zero()


def substitute(x, bindings: Mapping[str, object]) -> Scalar:
    return as_scalar(x).substitute(bindings)


def eval_rational(x, bindings: Mapping[str, Number]) -> Fraction:
    return as_scalar(x).evaluate(bindings)


class _Infinity:
    """The point at infinity for the gamma parameter."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
ExtendedScalar = Union[Scalar, _Infinity]


# -- expression parsing ----------------------------------------------------

_ALIASES = {"λ": "lam", "lambda": "lam", "μ": "mu", "γ": "gamma"}
_ALIAS_RE = re.compile(r"λ|μ|γ|\blambda\b")


def _delta(*args: Scalar) -> Scalar:
    diff = args[0] if len(args) == 1 else args[0] - args[1]
    cv = diff.constant_value()
    if cv is None:
        raise ValueError(f"Kronecker delta needs a concrete argument, got {diff}")
    return ONE if cv == 0 else ZERO


_FUNCS = {"delta": _delta}


def parse_scalar(text: str, env: Optional[Mapping[str, object]] = None) -> Scalar:
    """Parse an arithmetic expression into a Scalar.

    Names bound in ``env`` are replaced by their values; other names become
    indeterminates.  Both ``**`` and ``^`` denote integer powers.  ``delta(x)`` and ``delta(x, y)`` are Kronecker deltas and
    need a concrete argument.
    """
    text = _ALIAS_RE.sub(lambda m: _ALIASES[m.group(0)], text)
    # "^" is accepted as power so that printed Scalars parse back
    text = text.replace("^", "**")
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {text!r}") from exc
    return _eval_node(tree.body, env or {})


def _eval_node(node, env) -> Scalar:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed, got {node.value!r}")
        return as_scalar(node.value)
    if isinstance(node, ast.Name):
        if node.id in env:
            return as_scalar(env[node.id])
        return sym(node.id)
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand, env)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, env)
        right = _eval_node(node.right, env)
        op = node.op
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            return left * right
        if isinstance(op, ast.Div):
            return left / right
        if isinstance(op, ast.Pow):
            e = right.constant_value()
            if e is None or e.denominator != 1:
                raise ValueError("exponents must be integer constants")
            return left ** int(e)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        fn = _FUNCS.get(node.func.id)
        if fn is not None and not node.keywords:
            return fn(*(_eval_node(arg, env) for arg in node.args))
    raise ValueError(f"unsupported expression element: {ast.dump(node)}")


def parse_rational(token: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into a Fraction."""
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {token!r}") from exc


def iter_terms(p: Polynomial) -> Iterable[Tuple[Dict[str, int], Number]]:
    for mono, c in p.items():
        yield dict(mono), c
