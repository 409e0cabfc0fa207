import json
import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ffdfactor.errors import BadParameter, FieldMismatch, InadmissibleRing, RingMismatch
from ffdfactor.fields import GF, QQ
from ffdfactor.pbw import (COUNTEREXAMPLE_PRESENTATION, GAlgebra, builtin, find_weights, gr_check,
                           growth, integration, leading_form, load_presentation, polynomial,
                           qshift, quantum_affine, shift_algebra, weighted_degree, weyl)

t = sympy.Symbol("t")


def _apply_word(ring, action, exps, p):
    # monomial x1^a1 ... xn^an acts right-to-left
    for name, e in reversed(list(zip(ring.names, exps))):
        for _ in range(e):
            p = sympy.expand(action[name](p))
    return p


def _apply(f, action, p):
    return sympy.expand(sum(sympy.Rational(int(c.numerator), int(c.denominator)) * _apply_word(f.ring, action, e, p)
                            for e, c in f.terms.items()))


ACTIONS = {
    "weyl:1": {"x": lambda p: t * p, "d": lambda p: sympy.diff(p, t)},
    "shift": {"x": lambda p: t * p, "s": lambda p: p.subs(t, t + 1)},
    "qshift(3)": {"x": lambda p: t * p, "sq": lambda p: p.subs(t, 3 * t)},
    "integration": {"x": lambda p: t * p, "I": lambda p: sympy.integrate(p, (t, 0, t))},
}


@pytest.mark.parametrize("spec", sorted(ACTIONS))
def test_multiplication_matches_operator_representation(spec):
    ring = builtin(spec)
    action = ACTIONS[spec]
    rng = random.Random(spec)
    tests = [sympy.Integer(1), t, t ** 3 - 2 * t + 5]
    for _ in range(25):
        f, g = ring.random_element(rng, 2), ring.random_element(rng, 2)
        fg = f * g
        for p in tests:
            assert _apply(fg, action, p) == _apply(f, action, _apply(g, action, p))


def test_defining_relations():
    W = weyl(1)
    assert W.parse("d*x - x*d") == W.one()
    Q = builtin("qweyl:1(5)")
    x, dq = Q.gens()
    assert dq * x == Q.scalar(5) * x * dq + Q.one()
    S = qshift(Fraction(2, 3))
    x, sq = S.gens()
    assert sq * x == S.scalar(Fraction(2, 3)) * x * sq
    I = integration()
    assert str(I.parse("I*x")) == "x*I - I^2"
    assert str(shift_algebra().parse("s*x")) == "x*s + s"


def test_weyl_n_commutators():
    W = weyl(2)
    x1, x2, d1, d2 = W.gens()
    assert d1 * x1 - x1 * d1 == W.one()
    assert d1 * x2 == x2 * d1
    assert d2 * x2 - x2 * d2 == W.one()
    assert W.names == ("x1", "x2", "d1", "d2") or list(W.names) == ["x1", "x2", "d1", "d2"]


def test_quantum_affine_matrix_checks():
    R = quantum_affine([[1, 3], [Fraction(1, 3), 1]])
    x1, x2 = R.gens()
    assert x2 * x1 == R.scalar(Fraction(1, 3)) * x1 * x2
    with pytest.raises(BadParameter):
        quantum_affine([[1, 2], [2, 1]])
    R7 = builtin("quantum_affine:2(3)", GF(7))
    x1, x2 = R7.gens()
    assert x1 * x2 == R7.scalar(3) * x2 * x1


RING_SPECS = ["weyl:1", "weyl:2", "shift", "integration", "qshift(2)", "qweyl:1(3)",
              "quantum_affine:2(2)", "quantum_affine:3(3)", "polynomial:2"]


def _triples(spec, field, count, degree=2):
    ring = builtin(spec, field)
    rng = random.Random(f"{spec}/{field}")
    return ring, [tuple(ring.random_element(rng, degree) for _ in range(3)) for _ in range(count)]


@pytest.mark.parametrize("spec", RING_SPECS)
def test_associativity_and_distributivity(spec):
    for field in (QQ, GF(5)):
        ring, triples = _triples(spec, field, 120)
        for a, b, c in triples:
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c


@pytest.mark.parametrize("spec", RING_SPECS)
def test_degree_additivity_and_leading_forms(spec):
    ring, triples = _triples(spec, QQ, 120, 3)
    for a, b, _ in triples:
        if not a or not b:
            continue
        ab = a * b
        assert weighted_degree(ab) == weighted_degree(a) + weighted_degree(b)
        # leading forms multiply in the associated graded (a quantum affine space)
        assert leading_form(ab) == leading_form(leading_form(a) * leading_form(b))


@settings(max_examples=60)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_weyl_monomial_product_closed_form(a, b, c, d):
    # x^a d^b * x^c d^d = sum_k k! C(b,k) C(c,k) x^(a+c-k) d^(b+d-k)
    from math import comb, factorial
    W = weyl(1)
    lhs = W.monomial((a, b)) * W.monomial((c, d))
    expected = {}
    for k in range(min(b, c) + 1):
        expected[(a + c - k, b + d - k)] = Fraction(factorial(k) * comb(b, k) * comb(c, k))
    assert lhs.terms == expected


def _count_monomials(weights, level):
    return sum(1 for e in product(range(level + 1), repeat=len(weights))
               if sum(w * a for w, a in zip(weights, e)) <= level)


@pytest.mark.parametrize("spec", ["weyl:1", "weyl:2", "polynomial:3", "shift"])
def test_growth_matches_enumeration(spec):
    ring = builtin(spec)
    for n in range(0, 8):
        assert growth(ring, n) == _count_monomials(ring.weights, n)


def test_growth_with_weights():
    W = weyl(1).with_weights([1, 2])
    for n in range(0, 10):
        assert W.growth(n) == _count_monomials((1, 2), n)


def test_monomials_sorted_ascending():
    W = weyl(1)
    basis = W.monomials_upto(2)
    assert [W.order_key(e) for e in basis] == sorted(W.order_key(e) for e in basis)
    assert len(basis) == 6


@pytest.mark.parametrize("spec", ["weyl:1", "weyl:2", "shift", "qshift(2)", "qweyl:2(3)",
                                  "quantum_affine:3(2)", "integration", "polynomial:2"])
def test_builtins_admissible(spec):
    report = gr_check(builtin(spec))
    assert report.admissible
    assert report.violations == []


def test_counterexample_inadmissible():
    ring = load_presentation(COUNTEREXAMPLE_PRESENTATION)
    x1, x2, x3 = ring.gens()
    assert x2 * x1 == x1 * x2 * x3
    report = gr_check(ring)
    assert not report.admissible
    assert report.violations
    assert find_weights(ring, 5) is None


def test_find_weights_repairs_bad_weights():
    # tail x of d*x = x*d + x is fine with any weights; a tail x^2 needs w(d) >= 2
    ring = GAlgebra(["x", "d"], QQ, d={(0, 1): "x^2"})
    assert not gr_check(ring).admissible
    w = find_weights(ring, 5)
    assert w == (1, 2)
    assert gr_check(ring.with_weights(w)).admissible


def test_inadmissible_ring_raises_in_factorization():
    from ffdfactor.ansatz import factor_two
    ring = load_presentation(COUNTEREXAMPLE_PRESENTATION)
    with pytest.raises(InadmissibleRing):
        factor_two(ring.parse("x1*x2"))


def test_presentation_round_trip(tmp_path):
    for spec in ["weyl:1", "shift", "quantum_affine:2(3)", "integration"]:
        ring = builtin(spec)
        data = ring.to_json()
        again = load_presentation(json.dumps(data))
        path = tmp_path / "p.json"
        path.write_text(json.dumps(data))
        from_file = load_presentation(str(path))
        rng = random.Random(spec)
        for _ in range(20):
            f, g = ring.random_element(rng, 2), ring.random_element(rng, 2)
            assert str(again.parse(str(f)) * again.parse(str(g))) == str(f * g)
            assert str(from_file.parse(str(f)) * from_file.parse(str(g))) == str(f * g)


def test_ring_and_field_mismatch():
    with pytest.raises(RingMismatch):
        weyl(1).gen(0) * shift_algebra().gen(0)
    with pytest.raises((FieldMismatch, RingMismatch)):
        weyl(1).gen(0) + weyl(1, GF(3)).gen(0)


def test_polynomial_ring_commutes():
    P = polynomial(2)
    x1, x2 = P.gens()
    assert x1 * x2 == x2 * x1
