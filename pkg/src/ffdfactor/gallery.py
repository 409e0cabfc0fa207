"""Exact verification of infinite factorization families in Ore rings.

Each ``verify_*`` function builds both sides of an identity ``lhs = left * right``
in a univariate Ore ring over a rational function field (or over Q(i)) and
compares them exactly. Sampling many parameters from distinct projective
classes, and checking that the resulting right factors are pairwise
inequivalent up to central units, witnesses that one element has infinitely
many essentially different factorizations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .errors import BadParameter
from .fields import QQ, QQ_I, GaussianRational, RationalFunctionField
from .ore import OreRing, ore_equal_up_to_center

FAMILIES = ("ratWeyl", "ratShift", "ratQShift", "conjugation")


@dataclass
class IdentityCase:
    name: str
    ring: str
    params: dict
    lhs: object
    rhs: object
    factors: tuple = ()
    verified: bool = False
    notes: list = dc_field(default_factory=list)
    expected: bool = True

    @property
    def as_expected(self):
        return self.verified == self.expected

    def to_json(self):
        return {
            "name": self.name,
            "ring": self.ring,
            "params": {k: str(v) for k, v in self.params.items()},
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "factors": [str(f) for f in self.factors],
            "verified": self.verified,
            "notes": list(self.notes),
            "expected": self.expected,
        }


def _case(name, ring_name, params, lhs, left, right, notes=()):
    rhs = left * right
    return IdentityCase(name, ring_name, params, lhs, rhs, (left, right), lhs == rhs, list(notes))


_RINGS = {}


def _ring(kind, q=None):
    """Cached Ore rings; the skew Leibniz self-check runs once per ring."""
    key = (kind, q)
    if key not in _RINGS:
        if kind == "diff":
            ring = OreRing.differential(RationalFunctionField(QQ, "x"), "d")
        elif kind == "shift":
            ring = OreRing.shift(RationalFunctionField(QQ, "n"), "s")
        elif kind == "shift-symbolic":
            # random nested elements make the sampled Leibniz check very slow;
            # the same automorphism is already checked on the flat Q(n) ring
            K = RationalFunctionField(RationalFunctionField(QQ, "c"), "n")
            ring = OreRing.shift(K, "s", check_samples=0)
        elif kind == "qshift":
            ring = OreRing.qshift(q, RationalFunctionField(QQ, "x"), "sq")
        else:
            ring = OreRing.conjugation(QQ_I, "t")
        _RINGS[key] = ring
    return _RINGS[key]


def _rational(v, what):
    try:
        return QQ(v)
    except Exception as exc:
        raise BadParameter(f"{what} must be rational, got {v!r}") from exc


def verify_rat_weyl(b, c):
    """``d^2 = (d + f)(d - f)`` with ``f = b/(b*x - c)`` over Q(x)."""
    b, c = _rational(b, "b"), _rational(c, "c")
    if not b and not c:
        raise BadParameter("(b, c) must not both be zero")
    ring = _ring("diff")
    K = ring.field
    x = K.gen
    f = K(b) / (K(b) * x - K(c)) if b else K.zero
    d = ring.gen()
    left = d + ring.const(f)
    right = d - ring.const(f)
    return _case("ratWeyl", "Q(x)[d; id, d/dx]", {"b": b, "c": c}, d * d, left, right)


def verify_rat_shift(c1, c2, form="general"):
    """Two-factor identity for ``s^2 - 2(n+2)s + (n+2)(n+1)`` over Q(n).

    ``form="general"`` uses the two-parameter family with denominators
    ``c1*(n+1) + c2`` and ``c1*n + c2``; ``form="specialized"`` uses the
    one-parameter family with ``c = c2/c1`` (needs ``c1 != 0``).
    """
    c1, c2 = _rational(c1, "c1"), _rational(c2, "c2")
    if not c1 and not c2:
        raise BadParameter("(c1, c2) must not both be zero")
    ring = _ring("shift")
    K = ring.field
    n = K.gen
    if form == "general":
        A = (n + 2) * (K(c1) * n + K(c2)) / (K(c1) * (n + 1) + K(c2))
        B = (n + 1) * (K(c1) * (n + 1) + K(c2)) / (K(c1) * n + K(c2))
    elif form == "specialized":
        if not c1:
            raise BadParameter("the specialized form needs c1 != 0")
        c = K(c2 / c1)
        A = (n + 2) * (1 - 1 / (n + c + 1))
        B = (n + 1) * (1 + 1 / (n + c))
    else:
        raise BadParameter(f"unknown form {form!r}")
    s = ring.gen()
    lhs = s * s - ring.const(2 * (n + 2)) * s + ring.const((n + 2) * (n + 1))
    left, right = s - ring.const(A), s - ring.const(B)
    return _case("ratShift", "Q(n)[s; n->n+1]", {"c1": c1, "c2": c2, "form": form},
                 lhs, left, right)


def verify_rat_shift_symbolic():
    """The one-parameter shift family with ``c`` kept symbolic, over Q(c)(n)."""
    ring = _ring("shift-symbolic")
    K = ring.field
    n = K.gen
    c = K(K.base.gen)
    A = (n + 2) * (1 - 1 / (n + c + 1))
    B = (n + 1) * (1 + 1 / (n + c))
    s = ring.gen()
    lhs = s * s - ring.const(2 * (n + 2)) * s + ring.const((n + 2) * (n + 1))
    return _case("ratShiftSymbolic", "Q(c)(n)[s; n->n+1]", {"c": "c"},
                 lhs, s - ring.const(A), s - ring.const(B))


def verify_rat_qshift(c1, c2, q, variant="display"):
    """Two-factor identity for ``sq^2 - (1+q)sq + q`` over Q(x), ``sq*x = q*x*sq``.

    The family is written with ``e = c2*(1-q)/(c1*x + c2*(x+1))``; at
    ``(c1, c2) = (c-1, 1)`` this is ``(1-q)/(c*x+1)``. The factors are
    ``sq - (1 - e)`` and ``sq - (q + e)``. ``variant="corrected"`` replaces
    ``e`` in the left factor by its image ``e(q*x)`` under the automorphism,
    which is what the product actually requires.
    """
    c1, c2, q = _rational(c1, "c1"), _rational(c2, "c2"), _rational(q, "q")
    if not q:
        raise BadParameter("q must be nonzero")
    if not c1 and not c2:
        raise BadParameter("(c1, c2) must not both be zero")
    if variant not in ("display", "corrected"):
        raise BadParameter(f"unknown variant {variant!r}")
    ring = _ring("qshift", q)
    K = ring.field
    x = K.gen
    e = K(c2 * (1 - q)) / (K(c1) * x + K(c2) * (x + 1)) if c2 else K.zero
    e_left = ring.sigma(e) if variant == "corrected" else e
    s = ring.gen()
    lhs = s * s - ring.const(1 + q) * s + ring.const(q)
    left = s - ring.const(1 - e_left)
    right = s - ring.const(q + e)
    case = _case("ratQShift", f"Q(x)[sq; x->{q}*x]", {"c1": c1, "c2": c2, "q": q, "variant": variant},
                 lhs, left, right)
    if not case.verified:
        case.notes.append(f"product differs: {case.rhs}")
    return case


def verify_conjugation(w):
    """``t^2 - 1 = (t - conj(w))(t + w)`` over Q(i) with ``t*a = conj(a)*t``."""
    w = QQ_I(w)
    if w.norm() != 1:
        raise BadParameter(f"{w} does not have norm 1")
    ring = _ring("conj")
    t = ring.gen()
    lhs = t * t - ring.one()
    left = t - ring.const(w.conjugate())
    right = t + ring.const(w)
    return _case("conjugation", "Q(i)[t; conj]", {"w": w}, lhs, left, right)


def pythagorean_units(count):
    """Distinct Gaussian rationals of norm 1: ``1`` and ``(a + b*i)/h`` from
    primitive triples ``a^2 + b^2 = h^2``."""
    out = [GaussianRational(1, 0)]
    m = 2
    while len(out) < count:
        for k in range(1, m):
            if len(out) >= count:
                break
            if (m - k) % 2 == 1 and gcd(m, k) == 1:
                a, b, h = m * m - k * k, 2 * m * k, m * m + k * k
                out.append(GaussianRational(Fraction(a, h), Fraction(b, h)))
        m += 1
    return out[:count]


def family_parameters(family, samples, q=2):
    """Parameters from ``samples`` distinct projective classes."""
    if family == "ratWeyl":
        return [(1, k) for k in range(samples)]
    if family == "ratShift":
        return [(0, 1)] + [(1, k) for k in range(samples - 1)]
    if family == "ratQShift":
        return [(c - 1, 1, q) for c in range(samples)]
    if family == "conjugation":
        return [(w,) for w in pythagorean_units(samples)]
    raise BadParameter(f"unknown family {family!r}; choose from {FAMILIES}")


_VERIFIERS = {
    "ratWeyl": verify_rat_weyl,
    "ratShift": verify_rat_shift,
    "ratQShift": verify_rat_qshift,
    "conjugation": verify_conjugation,
}


def distinctness_sweep(family, samples, q=2, variant="display"):
    """Verify ``samples`` members of a family and compare their right factors.

    Returns a report dict; ``pairwiseDistinct`` is true when no two right
    factors agree up to a central unit.
    """
    if samples < 2:
        raise BadParameter("distinctness needs at least two samples")
    cases = []
    for params in family_parameters(family, samples, q):
        if family == "ratQShift":
            cases.append(verify_rat_qshift(*params, variant=variant))
        else:
            cases.append(_VERIFIERS[family](*params))
    rights = [case.factors[1] for case in cases]
    collisions = []
    for i in range(len(rights)):
        for j in range(i + 1, len(rights)):
            if ore_equal_up_to_center(rights[i], rights[j]):
                collisions.append((i, j))
    return {
        "family": family,
        "samples": samples,
        "verified": sum(case.verified for case in cases),
        "allVerified": all(case.verified for case in cases),
        "pairwiseDistinct": not collisions,
        "collisions": collisions,
        "cases": [case.to_json() for case in cases],
    }


def regression_cases():
    """Named cases shipped as a regression set.

    The q-shift family in its displayed form does not multiply out for
    ``q != 1`` (the left factor needs the automorphism applied to ``e``);
    those cases are kept with ``expected=False`` next to the corrected ones.
    """
    cases = [
        verify_rat_weyl(1, 0),
        verify_rat_weyl(0, 1),
        verify_rat_weyl(2, 3),
        verify_rat_shift(1, 5),
        verify_rat_shift(1, 5, form="specialized"),
        verify_rat_shift(0, 1),
        verify_rat_shift(2, -1),
        verify_rat_shift_symbolic(),
        verify_rat_qshift(1, 1, 1),
        verify_rat_qshift(1, 1, 3, variant="corrected"),
        verify_rat_qshift(1, 1, 2, variant="corrected"),
        verify_conjugation(GaussianRational(Fraction(3, 5), Fraction(4, 5))),
        verify_conjugation(GaussianRational(1, 0)),
        verify_conjugation(GaussianRational(Fraction(5, 13), Fraction(12, 13))),
    ]
    for args in ((1, 1, 3), (1, 1, 2)):
        case = verify_rat_qshift(*args)
        case.expected = False
        cases.append(case)
    return cases
