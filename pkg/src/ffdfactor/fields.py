"""Exact coefficient fields.

Four kinds of ground field are supported, each as a small descriptor object
that knows its zero, one, how to coerce integers and parse literals:

* ``QQ``: the rationals, with :class:`gmpy2.mpq` elements (they compare and
  hash equal to :class:`fractions.Fraction`, which is accepted everywhere);
* ``GF(p)``: prime fields, with :class:`Fp` elements;
* ``QQ_I``: Gaussian rationals, with :class:`GaussianRational` elements;
* ``RationalFunctionField(base, var)``: univariate rational functions over
  any of the above (including another rational function field).

Elements are immutable and overload the arithmetic operators, so generic
code never needs to know which field it is working over.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from itertools import product

from flint import fmpz_poly
from gmpy2 import mpq, mpz

from .errors import FieldMismatch, ParseError, ZeroPolynomial

# rational scalars accepted from callers; QQ itself produces mpq
RATIONALS = (Fraction, type(mpq()))
# exact types that UniPoly coerces into its base field
_SCALAR_TYPES = frozenset({int, bool, Fraction, type(mpq()), type(mpz())})

__all__ = [
    "QQ", "QQ_I", "GF", "Fp", "PrimeField", "RationalField", "GaussianField",
    "GaussianRational", "UniPoly", "RationalFunction", "RationalFunctionField",
    "conjugate", "field_arith", "rational_roots", "field_roots", "parse_field",
]

MAX_PRIME = 2 ** 31


def _parse_fraction(text):
    text = text.strip().replace("−", "-")
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational literal: {text!r}") from exc
    return mpq(f.numerator, f.denominator)


def _format_fraction(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------- rationals

class RationalField:
    name = "Q"
    element_type = type(mpq())
    characteristic = 0
    is_finite = False
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, value):
        if type(value) is self.element_type:
            return value
        if isinstance(value, (int, type(mpz())) + RATIONALS):
            return mpq(value)
        if isinstance(value, str):
            return _parse_fraction(value)
        if isinstance(value, GaussianRational) and value.imag == 0:
            return value.real
        raise FieldMismatch(f"cannot coerce {value!r} into Q")

    def contains(self, value):
        return isinstance(value, (int,) + RATIONALS) and not isinstance(value, bool)

    def parse(self, text):
        return _parse_fraction(text)

    def format(self, c):
        return _format_fraction(c)

    def random(self, rng, size=9):
        return mpq(rng.randint(-size, size), rng.randint(1, 5))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


# ------------------------------------------------------------- prime fields

def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


class Fp:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if type(other) is Fp:
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, RATIONALS):
            num, den = int(other.numerator), int(other.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return num * pow(den, -1, self.p)
        raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise ZeroDivisionError(f"division by 0 in GF({self.p})")
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if type(other) is Fp:
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class PrimeField:
    element_type = Fp
    characteristic: int
    is_finite = True

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime modulus, got {p!r}")
        if p > MAX_PRIME:
            raise ValueError(f"prime modulus {p} exceeds 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, value):
        if type(value) is Fp:
            if value.p != self.p:
                raise FieldMismatch(f"GF({value.p}) element given to GF({self.p})")
            return value
        if isinstance(value, (int, type(mpz()))):
            return Fp(int(value), self.p)
        if isinstance(value, RATIONALS):
            return self.one * value
        if isinstance(value, str):
            return self.one * _parse_fraction(value)
        raise FieldMismatch(f"cannot coerce {value!r} into GF({self.p})")

    def contains(self, value):
        return type(value) is Fp and value.p == self.p

    def parse(self, text):
        return self(text)

    def format(self, c):
        return str(c.value)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def random(self, rng, size=None):
        return Fp(rng.randrange(self.p), self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


@functools.lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


# -------------------------------------------------------- gaussian rationals

class GaussianRational:
    """``real + imag*i`` with rational parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        self.real = QQ(real)
        self.imag = QQ(imag)

    @staticmethod
    def _coerce(other):
        if type(other) is GaussianRational:
            return other
        if isinstance(other, (int,) + RATIONALS) and not isinstance(other, bool):
            return GaussianRational(other, 0)
        raise FieldMismatch(f"cannot combine Q(i) with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return GaussianRational(self.real * o.real - self.imag * o.imag,
                                self.real * o.imag + self.imag * o.real)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def norm(self):
        return self.real * self.real + self.imag * self.imag

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.real / n, -self.imag / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, (int,) + RATIONALS):
            return self.imag == 0 and self.real == other
        return NotImplemented

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __repr__(self):
        return f"GaussianRational({self.real!s}, {self.imag!s})"

    def __str__(self):
        return QQ_I.format(self)


def conjugate(z):
    """Complex conjugate of a Gaussian rational (rationals are fixed)."""
    if isinstance(z, GaussianRational):
        return z.conjugate()
    return QQ_I(z)


_GAUSS_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?:(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)?\*?i)?$")


class GaussianField:
    name = "QI"
    element_type = GaussianRational
    characteristic = 0
    is_finite = False
    zero = GaussianRational(0)
    one = GaussianRational(1)
    i = GaussianRational(0, 1)

    def __call__(self, value):
        if type(value) is GaussianRational:
            return value
        if isinstance(value, (int,) + RATIONALS) and not isinstance(value, bool):
            return GaussianRational(value)
        if isinstance(value, str):
            return self.parse(value)
        raise FieldMismatch(f"cannot coerce {value!r} into Q(i)")

    def contains(self, value):
        return type(value) is GaussianRational

    def parse(self, text):
        s = text.strip().replace("−", "-").replace(" ", "")
        m = _GAUSS_RE.match(s)
        if not s or m is None:
            raise ParseError(f"not a Gaussian rational literal: {text!r}")
        real = _parse_fraction(m["re"]) if m["re"] else QQ.zero
        imag = QQ.zero
        if s.endswith("i"):
            imag = _parse_fraction(m["im"]) if m["im"] else QQ.one
            if m["sign"] == "-":
                imag = -imag
            elif m["sign"] is None and m["re"] and m["im"] is None:
                # "2i" is parsed by the regex as re="2", im=None
                real, imag = QQ.zero, real
            elif m["sign"] is None and m["re"] and m["im"]:
                raise ParseError(f"not a Gaussian rational literal: {text!r}")
        return GaussianRational(real, imag)

    def format(self, z):
        if z.imag == 0:
            return _format_fraction(z.real)
        mag = abs(z.imag)
        im = "i" if mag == 1 else _format_fraction(mag) + "i"
        if z.real == 0:
            return ("-" if z.imag < 0 else "") + im
        return _format_fraction(z.real) + ("-" if z.imag < 0 else "+") + im

    def random(self, rng, size=9):
        return GaussianRational(QQ.random(rng, size), QQ.random(rng, size))

    def __repr__(self):
        return "QQ_I"

    def __eq__(self, other):
        return isinstance(other, GaussianField)

    def __hash__(self):
        return hash("QQ_I")


QQ_I = GaussianField()


# ----------------------------------------------------- univariate polynomials

class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``var**k``.

    ``base`` is the field descriptor of the coefficients. Trailing zeros are
    stripped so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("base", "coeffs", "var")

    def __init__(self, base, coeffs, var="x"):
        native = base.element_type
        cs = [c if type(c) is native or type(c) not in _SCALAR_TYPES else base(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.base = base
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, base, k, c=None, var="x"):
        return cls(base, [base.zero] * k + [base.one if c is None else c], var)

    def _new(self, coeffs):
        return UniPoly(self.base, coeffs, self.var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return self._new([self.base(other) if isinstance(other, (int,) + RATIONALS) else other])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self._new([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._new([])
        out = [self.base.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    def __rmul__(self, other):
        return self._new([other * c for c in self.coeffs])

    def __pow__(self, k):
        result = self._new([self.base.one])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dl = len(other.coeffs)
        inv = self.base.one / other.lc
        if len(rem) < dl:
            return self._new([]), self
        quot = [self.base.zero] * (len(rem) - dl + 1)
        for k in range(len(rem) - dl, -1, -1):
            c = rem[k + dl - 1] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return self._new(quot), self._new(rem[:dl - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self * (self.base.one / self.lc)

    def gcd(self, other):
        """Monic greatest common divisor."""
        if self.coeffs and other.coeffs:
            lin = self if self.degree == 1 else other if other.degree == 1 else None
            if lin is not None:
                rest = other if lin is self else self
                if rest.degree == 0:
                    return self._new([self.base.one])
                root = -lin.coeffs[0] / lin.coeffs[1]
                return lin.monic() if not rest(root) else self._new([self.base.one])
            if self.degree == 0 or other.degree == 0:
                return self._new([self.base.one])
        if self.base == QQ and self.coeffs and other.coeffs:
            return self._new(_qq_gcd(self.coeffs, other.coeffs))
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, value):
        acc = self.base.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self):
        return self._new([c * k for k, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, a, b):
        """Substitute ``var -> a*var + b``."""
        lin = self._new([b, a])
        acc = self._new([])
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def map_coeffs(self, fn):
        return self._new([fn(c) for c in self.coeffs])

    def squarefree_part(self):
        if self.degree < 1:
            return self.monic()
        d = self.derivative()
        if not d:
            # characteristic p and f is a p-th power; nothing to strip cheaply
            return self.monic()
        return (self // self.gcd(d)).monic()

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.format()!r})"

    def __str__(self):
        return self.format()

    def format(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            text = _format_coeff(self.base, c)
            neg = text.startswith("-") and not text.startswith("-(")
            if neg:
                text = text[1:]
            if mono:
                text = mono if text == "1" else f"{text}*{mono}"
            if not parts:
                parts.append("-" + text if neg else text)
            else:
                parts.append(("- " if neg else "+ ") + text)
        return " ".join(parts)


def _qq_gcd(f, g):
    """Monic gcd of two nonzero coefficient lists over Q (lowest degree first).

    Euclid's algorithm over Q suffers coefficient growth; after clearing
    denominators FLINT's integer polynomial gcd avoids it.
    """
    def integral(cs):
        den = 1
        for c in cs:
            den = den * int(c.denominator) // math.gcd(den, int(c.denominator))
        return fmpz_poly([int(c * den) for c in cs])

    h = [int(c) for c in integral(f).gcd(integral(g)).coeffs()]
    lc = h[-1]
    return [mpq(c, lc) for c in h]


def _format_coeff(base, c):
    """Coefficient text safe to splice in front of ``*monomial``."""
    from .expr import coeff_text
    return coeff_text(base, c)


# -------------------------------------------------------- rational functions

class RationalFunction:
    """Reduced fraction ``num/den`` with ``den`` monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None, _reduced=False):
        self.field = field
        if den is None:
            den = UniPoly(field.base, [field.base.one], field.var)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = UniPoly(field.base, [field.base.one], field.var)
            else:
                if num.degree > 0 and den.degree > 0:
                    g = num.gcd(den)
                    if g.degree > 0:
                        num, den = num // g, den // g
                lc = den.lc
                if lc != field.base.one:
                    inv = field.base.one / lc
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    def _coerce(self, other):
        if type(other) is RationalFunction:
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.field, self.num + o.num, self.den)
        # Henrici: with g = gcd(d1, d2) only gcd(numerator, g) can cancel
        d1, d2 = self.den, o.den
        g = d1.gcd(d2) if d1.degree > 0 and d2.degree > 0 else None
        if g is None or g.degree == 0:
            return RationalFunction(self.field, self.num * d2 + o.num * d1, d1 * d2, _reduced=True)
        e1, e2 = d1 // g, d2 // g
        num = self.num * e2 + o.num * e1
        if not num:
            return self.field.zero
        h = num.gcd(g)
        if h.degree > 0:
            num, g = num // h, g // h
        return RationalFunction(self.field, num, e1 * e2 * g, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.num or not o.num:
            return self.field.zero
        # cross-cancel: the two products are then already coprime
        g1 = self.num.gcd(o.den) if self.num.degree > 0 and o.den.degree > 0 else None
        g2 = o.num.gcd(self.den) if o.num.degree > 0 and self.den.degree > 0 else None
        n1, d2 = (self.num // g1, o.den // g1) if g1 is not None and g1.degree > 0 else (self.num, o.den)
        n2, d1 = (o.num // g2, self.den // g2) if g2 is not None and g2.degree > 0 else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if lc != self.field.base.one:
            inv = self.field.base.one / lc
            num, den = num * inv, den * inv
        return RationalFunction(self.field, num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.field, self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        if type(other) is RationalFunction:
            return self.field == other.field and self.num == other.num and self.den == other.den
        try:
            o = self.field(other)
        except (FieldMismatch, ParseError):
            return NotImplemented
        return self == o

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(self.field, n.derivative() * d - n * d.derivative(), d * d)

    def compose_linear(self, a, b):
        """Substitute ``var -> a*var + b`` (a ring automorphism for ``a != 0``)."""
        return RationalFunction(self.field, self.num.compose_linear(a, b),
                                self.den.compose_linear(a, b))

    def map_coeffs(self, fn):
        return RationalFunction(self.field, self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def __repr__(self):
        return f"RationalFunction({self.field.format(self)!r})"

    def __str__(self):
        return self.field.format(self)


class RationalFunctionField:
    element_type = RationalFunction
    """``base(var)``: fractions of univariate polynomials over ``base``."""

    is_finite = False

    def __init__(self, base=QQ, var="x"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.name = f"{base.name}({var})"
        self.zero = RationalFunction(self, UniPoly(base, [], var), _reduced=True)
        self.one = self.from_poly(UniPoly(base, [base.one], var))
        self.gen = self.from_poly(UniPoly(base, [base.zero, base.one], var))

    def from_poly(self, num, den=None):
        return RationalFunction(self, num, den)

    def poly(self, coeffs):
        return UniPoly(self.base, coeffs, self.var)

    def __call__(self, value):
        if type(value) is RationalFunction:
            if value.field == self:
                return value
            if value.field != self.base:
                raise FieldMismatch(f"{value.field!r} element given to {self!r}")
        if isinstance(value, UniPoly):
            return self.from_poly(value)
        if isinstance(value, str):
            return self.parse(value)
        try:
            c = self.base(value)
        except FieldMismatch:
            raise FieldMismatch(f"cannot coerce {value!r} into {self!r}") from None
        return self.from_poly(UniPoly(self.base, [c], self.var))

    def contains(self, value):
        return type(value) is RationalFunction and value.field == self

    def parse(self, text):
        from .expr import evaluate_field_expression
        return evaluate_field_expression(text, self)

    def format(self, f):
        num = f.num.format()
        if f.den.degree == 0:
            return num
        den = f.den.format()
        atomic = r"-?\d+|" + re.escape(self.var)
        if not re.fullmatch(atomic, num):
            num = f"({num})"
        if not re.fullmatch(atomic, den):
            den = f"({den})"
        return f"{num}/{den}"

    def random(self, rng, size=5, degree=2):
        base = self.base
        num = UniPoly(base, [base.random(rng, size) for _ in range(rng.randint(0, degree) + 1)], self.var)
        while True:
            den = UniPoly(base, [base.random(rng, size) for _ in range(rng.randint(0, degree) + 1)], self.var)
            if den:
                return self.from_poly(num, den)

    def __repr__(self):
        return f"RationalFunctionField({self.base!r}, {self.var!r})"

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField) and other.base == self.base
                and other.var == self.var)

    def __hash__(self):
        return hash(("RF", self.base, self.var))


# ------------------------------------------------------------------- helpers

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "eq": lambda a, b: a == b,
}


def field_arith(a, b, op):
    """Functional front end to element arithmetic (``b`` ignored for neg/inv)."""
    if op == "neg":
        return -a
    if op == "inv":
        return 1 / a
    if op == "div" and not b:
        raise ZeroDivisionError("division by zero")
    if type(a) is not type(b) and not (isinstance(a, RATIONALS) and isinstance(b, RATIONALS)):
        raise FieldMismatch(f"{type(a).__name__} vs {type(b).__name__}")
    if type(a) is Fp and a.p != b.p:
        raise FieldMismatch(f"GF({a.p}) vs GF({b.p})")
    return _OPS[op](a, b)


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(f):
    """Rational roots of ``f`` (a :class:`UniPoly` over QQ or a coefficient list).

    Returns ``(roots, flag)``; ``flag`` is true when the squarefree part of
    ``f`` has more roots over the algebraic closure than were found in Q.
    """
    if not isinstance(f, UniPoly):
        f = UniPoly(QQ, [QQ(c) for c in f])
    if not f:
        raise ZeroPolynomial("rational_roots of the zero polynomial")
    sf = f.squarefree_part()
    roots = set()
    cs = list(sf.coeffs)
    if cs and cs[0] == 0:
        roots.add(QQ.zero)
        while cs and cs[0] == 0:
            cs.pop(0)
    if len(cs) > 1:
        lcm = 1
        for c in cs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in cs]
        g = functools.reduce(math.gcd, ints)
        ints = [c // g for c in ints]
        poly = UniPoly(QQ, ints)
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for sign in (1, -1):
                    r = mpq(sign * num, den)
                    if r not in roots and poly(r) == 0:
                        roots.add(r)
    return roots, sf.degree > len(roots)


def _fp_roots(f):
    p = f.base.p
    if p > 2 ** 20:
        # restrict the search to gcd(f, x^p - x), whose roots are those of f
        x = UniPoly(f.base, [0, 1], f.var)
        acc, base, k = UniPoly(f.base, [1], f.var), x, p
        while k:
            if k & 1:
                acc = (acc * base) % f
            base = (base * base) % f
            k >>= 1
        g = f.gcd(acc - x)
        if g.degree <= 0:
            return set()
        if g.degree == 1:
            return {-g.coeffs[0] / g.lc}
        raise NotImplementedError("root splitting over large prime fields")
    return {Fp(v, p) for v in range(p) if f(Fp(v, p)) == 0}


def _gaussian_roots(f):
    import sympy
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(int(c.real.numerator), int(c.real.denominator)) * z ** k
               + sympy.I * sympy.Rational(int(c.imag.numerator), int(c.imag.denominator)) * z ** k
               for k, c in enumerate(f.coeffs))
    _, factors = sympy.factor_list(sympy.expand(expr), z, extension=sympy.I)
    roots = set()
    for fac, _mult in factors:
        poly = sympy.Poly(fac, z)
        if poly.degree() == 1:
            a, b = poly.all_coeffs()
            r = sympy.nsimplify(-b / a)
            re_, im_ = sympy.re(r), sympy.im(r)
            roots.add(GaussianRational(mpq(int(re_.p), int(re_.q)),
                                       mpq(int(im_.p), int(im_.q))))
    return {r for r in roots if f(r) == 0}


def field_roots(f):
    """Roots of ``f`` lying in its coefficient field, plus the extension flag."""
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    base = f.base
    if base == QQ:
        return rational_roots(f)
    sf = f.squarefree_part()
    if isinstance(base, PrimeField):
        roots = _fp_roots(sf)
    elif base == QQ_I:
        roots = _gaussian_roots(sf) if sf.degree > 0 else set()
    else:
        raise FieldMismatch(f"root finding not supported over {base!r}")
    return roots, sf.degree > len(roots)


def parse_field(text):
    """Field selector strings: ``Q``, ``QI``/``Q(i)``, ``F5``/``GF(5)``, ``Q(x)``."""
    s = text.strip().replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    if s in ("QI", "Q(i)", "QQ_I", "QQ(i)"):
        return QQ_I
    m = re.fullmatch(r"(?:F|GF|GF\()(\d+)\)?", s)
    if m:
        return GF(int(m.group(1)))
    m = re.fullmatch(r"(Q|QQ|QI|F\d+|GF\(\d+\))\(([A-Za-z]\w*)\)", s)
    if m:
        return RationalFunctionField(parse_field(m.group(1)), m.group(2))
    raise ParseError(f"unknown field selector {text!r}")


def all_vectors(field, length):
    """Every vector of ``field**length`` (finite fields only)."""
    return product(field.elements(), repeat=length)
