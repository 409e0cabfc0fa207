"""Univariate Ore polynomials ``K[op; sigma, delta]``.

Multiplication follows ``op * a = sigma(a) * op + delta(a)`` for ``a`` in the
coefficient field ``K``. ``sigma`` and ``delta`` are taken from a fixed
registry so that the skew Leibniz rule can be checked mechanically.
"""

from __future__ import annotations

import random

from . import expr
from .errors import BadParameter, ParseError, RingMismatch, UnknownSymbol, ZeroInput
from .fields import QQ, QQ_I, GaussianRational, RationalFunction, RationalFunctionField, conjugate

SIGMAS = ("identity", "shift", "qdilation", "conjugation")
DELTAS = ("zero", "derivative")


def _conj(a):
    if isinstance(a, GaussianRational):
        return a.conjugate()
    if isinstance(a, RationalFunction):
        return a.map_coeffs(_conj)
    return a


class OreRing:
    def __init__(self, field, sigma="identity", delta="zero", symbol="d", q=None,
                 check_samples=20, seed=0):
        if sigma not in SIGMAS:
            raise BadParameter(f"unknown automorphism {sigma!r}; choose from {SIGMAS}")
        if delta not in DELTAS:
            raise BadParameter(f"unknown derivation {delta!r}; choose from {DELTAS}")
        needs_var = sigma in ("shift", "qdilation") or delta == "derivative"
        if needs_var and not isinstance(field, RationalFunctionField):
            raise BadParameter(f"{sigma}/{delta} needs a rational function field")
        if sigma == "conjugation" and not (field == QQ_I or getattr(field, "base", None) == QQ_I):
            raise BadParameter("conjugation needs Gaussian coefficients")
        if sigma == "qdilation":
            if q is None:
                raise BadParameter("qdilation needs q")
            q = field.base(q)
            if not q:
                raise BadParameter("q must be nonzero")
        self.field = field
        self.sigma_name = sigma
        self.delta_name = delta
        self.symbol = symbol
        self.q = q
        if check_samples:
            bad = self.leibniz_failures(check_samples, random.Random(seed))
            if bad:
                raise BadParameter(f"sigma/delta violate the skew Leibniz rule at {bad[0]}")

    @classmethod
    def differential(cls, field=None, symbol="d"):
        return cls(field or RationalFunctionField(QQ, "x"), "identity", "derivative", symbol)

    @classmethod
    def shift(cls, field=None, symbol="s", check_samples=20):
        return cls(field or RationalFunctionField(QQ, "x"), "shift", "zero", symbol,
                   check_samples=check_samples)

    @classmethod
    def qshift(cls, q, field=None, symbol="sq"):
        return cls(field or RationalFunctionField(QQ, "x"), "qdilation", "zero", symbol, q=q)

    @classmethod
    def conjugation(cls, field=QQ_I, symbol="t"):
        return cls(field, "conjugation", "zero", symbol)

    def sigma(self, a):
        name = self.sigma_name
        if name == "identity":
            return a
        if name == "shift":
            return a.compose_linear(self.field.base.one, self.field.base.one)
        if name == "qdilation":
            return a.compose_linear(self.q, self.field.base.zero)
        return _conj(a)

    def delta(self, a):
        if self.delta_name == "zero":
            return self.field.zero
        return a.derivative()

    def is_central_constant(self, lam):
        return bool(lam) and self.sigma(lam) == lam and not self.delta(lam)

    def leibniz_failures(self, samples, rng):
        bad = []
        for _ in range(samples):
            a, b = self.field.random(rng), self.field.random(rng)
            if self.delta(a * b) != self.sigma(a) * self.delta(b) + self.delta(a) * b:
                bad.append((a, b))
            if self.sigma(a * b) != self.sigma(a) * self.sigma(b):
                bad.append((a, b))
        return bad

    def __eq__(self, other):
        return (isinstance(other, OreRing) and self.field == other.field
                and self.sigma_name == other.sigma_name and self.delta_name == other.delta_name
                and self.symbol == other.symbol and self.q == other.q)

    def __hash__(self):
        return hash((self.field, self.sigma_name, self.delta_name, self.symbol))

    def __repr__(self):
        q = f", q={self.q}" if self.q is not None else ""
        return f"OreRing({self.field!r}, {self.sigma_name}, {self.delta_name}, {self.symbol!r}{q})"

    # elements

    def zero(self):
        return OrePolynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, a):
        a = self.field(a)
        return OrePolynomial(self, {0: a} if a else {})

    def gen(self):
        return OrePolynomial(self, {1: self.field.one})

    def from_coeffs(self, coeffs):
        """``coeffs[k]`` multiplies ``op**k``."""
        return OrePolynomial(self, {k: self.field(c) for k, c in enumerate(coeffs) if c})

    def parse(self, src):
        def symbol(name, offset):
            if name == self.symbol:
                return self.gen()
            try:
                return self.const(expr._field_symbol(self.field, name, offset))
            except UnknownSymbol:
                raise UnknownSymbol(f"unknown symbol {name!r}", offset) from None

        def divide(a, b, offset):
            if b.degree() != 0:
                raise ParseError("division only by nonzero coefficients", offset)
            return a * self.const(self.field.one / b.coeffs[0])

        return expr.evaluate(expr.parse_ast(src), self.const, symbol, divide)

    def random_element(self, rng, max_degree):
        coeffs = [self.field.random(rng) for _ in range(rng.randint(0, max_degree) + 1)]
        while not coeffs[-1]:
            coeffs[-1] = self.field.random(rng)
        return self.from_coeffs(coeffs)


class OrePolynomial:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, OrePolynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroInput("zero has no leading coefficient")
        return self.coeffs[max(self.coeffs)]

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, self.ring.field.zero) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return OrePolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return OrePolynomial(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def _times_op(self):
        """Return ``op * self``."""
        ring = self.ring
        out = {}
        zero = ring.field.zero
        for k, c in self.coeffs.items():
            s = ring.sigma(c)
            if s:
                out[k + 1] = out.get(k + 1, zero) + s
            dc = ring.delta(c)
            if dc:
                out[k] = out.get(k, zero) + dc
        return OrePolynomial(ring, {k: v for k, v in out.items() if v})

    def scale_left(self, a):
        a = self.ring.field(a)
        return OrePolynomial(self.ring, {k: a * c for k, c in self.coeffs.items()} if a else {})

    def __mul__(self, other):
        other = self._check(other)
        result = self.ring.zero()
        power = other  # op**k * other
        for k in range(self.degree() + 1):
            a = self.coeffs.get(k)
            if a:
                result = result + power.scale_left(a)
            if k < self.degree():
                power = power._times_op()
        return result

    def __rmul__(self, other):
        return self.ring.const(other) * self

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, OrePolynomial):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return self == self.ring.const(other)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"OrePolynomial({str(self)!r})"

    def __str__(self):
        sym = self.ring.symbol
        terms = [(c, "" if k == 0 else (sym if k == 1 else f"{sym}^{k}"))
                 for k, c in sorted(self.coeffs.items(), reverse=True)]
        return expr.format_sum(self.ring.field, terms)


def ore_mul(f, g):
    return f * g


def ore_normalize(f):
    """Left-multiply by the inverse of the leading coefficient."""
    if not f:
        raise ZeroInput("cannot normalize zero")
    return f.scale_left(f.ring.field.one / f.lc)


def ore_equal_up_to_center(f, g):
    """True iff ``f = lam * g`` for a nonzero central constant ``lam``."""
    if not f or not g:
        raise ZeroInput("central equivalence is defined for nonzero inputs")
    if f.ring != g.ring or f.degree() != g.degree():
        return False
    lam = f.lc / g.lc
    return f.ring.is_central_constant(lam) and f == g.scale_left(lam)


def ring_from_selector(selector, var="x"):
    """CLI selectors ``diff``, ``shift``, ``qshift:q`` and ``conj``."""
    sel = selector.strip()
    rf = RationalFunctionField(QQ, var)
    if sel == "diff":
        return OreRing.differential(rf)
    if sel == "shift":
        return OreRing.shift(rf)
    if sel.startswith("qshift:"):
        return OreRing.qshift(QQ.parse(sel.split(":", 1)[1]), rf)
    if sel == "conj":
        return OreRing.conjugation()
    raise BadParameter(f"unknown Ore ring selector {selector!r}")


__all__ = ["OreRing", "OrePolynomial", "ore_mul", "ore_normalize", "ore_equal_up_to_center",
           "ring_from_selector", "conjugate"]
