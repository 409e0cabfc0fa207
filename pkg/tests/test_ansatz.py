import random
from itertools import product

import pytest

from ffdfactor.ansatz import (bounds, build_system, canonical_chain, canonical_pair, factor_all,
                              factor_two, is_irreducible, solve_ff, solve_groebner)
from ffdfactor.errors import BadSplit, FieldMismatch, InadmissibleRing, UnitInput, ZeroInput
from ffdfactor.fields import GF, QQ, QQ_I
from ffdfactor.oracle import census_two
from ffdfactor.pbw import COUNTEREXAMPLE_PRESENTATION, PBWPolynomial, builtin, is_unit, load_presentation


def _pairs(fs):
    return {(str(b), str(c)) for b, c in fs.pairs}


def _element(ring, basis, coords):
    return PBWPolynomial(ring, {e: c for e, c in zip(basis, coords) if c})


# ----------------------------------------------------------- build_system

def test_build_system_weyl_x_d():
    R = builtin("weyl:1")
    S = build_system(R.parse("x*d"), 1, 1)
    assert (S.p, S.q, S.t) == (3, 3, 6)
    assert set(S.v_basis) == {(0, 0), (1, 0), (0, 1)}
    u = {R.monomial(e).__str__(): l for l, e in enumerate(S.u_basis)}
    i_d, j_x = S.v_basis.index((0, 1)), S.w_basis.index((1, 0))
    # d*x = x*d + 1
    assert S.gamma[(i_d, j_x)] == {u["x*d"]: QQ(1), u["1"]: QQ(1)}
    assert [str(c) for c in S.alpha] == ["1" if l == u["x*d"] else "0" for l in range(6)]


def test_build_system_gamma_matches_products():
    R = builtin("qweyl:1(3)")
    S = build_system(R.parse("x^2*dq"), 2, 1)
    for (i, j), col in S.gamma.items():
        prod = R.monomial(S.v_basis[i]) * R.monomial(S.w_basis[j])
        assert prod.terms == {S.u_basis[l]: c for l, c in col.items()}


def test_build_system_errors():
    R = builtin("weyl:1")
    with pytest.raises(BadSplit):
        build_system(R.parse("x*d"), 0, 2)
    with pytest.raises(BadSplit):
        build_system(R.parse("x^2*d"), 1, 1)
    bad = load_presentation(COUNTEREXAMPLE_PRESENTATION)
    with pytest.raises(InadmissibleRing):
        build_system(bad.parse("x1*x2"), 1, 1)


def test_build_system_unit_target():
    R = builtin("weyl:1")
    S = build_system(R.one(), 1, 1)
    assert S.alpha[0] == 1 and not any(S.alpha[1:])


# ---------------------------------------------------------------- solvers

def _brute_force_solutions(system):
    """Every (x, y) over F_p with the x normalization of the solvers."""
    field = system.ring.field
    elems = list(field.elements())
    found = set()
    for x in product(elems, repeat=system.p):
        nz = [i for i, v in enumerate(x) if v]
        if not nz or x[nz[-1]] != field.one:
            continue
        for y in product(elems, repeat=system.q):
            if not any(system.residual(x, y)):
                found.add((x, y))
    return found


def test_solve_ff_matches_brute_force_weyl_f3():
    R = builtin("weyl:1", GF(3))
    S = build_system(R.parse("x*d"), 1, 1)
    sols = solve_ff(S)
    assert {(s.x, s.y) for s in sols} == _brute_force_solutions(S)
    pairs = set()
    for s in sols:
        b = _element(R, S.v_basis, s.x)
        c = _element(R, S.w_basis, s.y)
        if not is_unit(b) and not is_unit(c):
            pairs.add((str(b), str(c)))
    assert pairs == {("x", "d")}


def test_solve_ff_x_squared_over_f2():
    R = builtin("polynomial:1", GF(2))
    S = build_system(R.parse("x^2"), 1, 1)
    sols = solve_ff(S)
    assert {(s.x, s.y) for s in sols} == _brute_force_solutions(S)
    assert _pairs(factor_two(R.parse("x^2"))) == {("x", "x")}


def test_solve_ff_unit_splits_and_wrong_field():
    R = builtin("weyl:1", GF(3))
    S = build_system(R.parse("x"), 1, 1)
    # x = b*c with b, c of degree <= 1 has only unit-factor solutions
    sols = solve_ff(S)
    for s in sols:
        b = _element(R, S.v_basis, s.x)
        c = _element(R, S.w_basis, s.y)
        assert is_unit(b) or is_unit(c)
    with pytest.raises(FieldMismatch):
        solve_ff(build_system(builtin("weyl:1").parse("x*d"), 1, 1))


@pytest.mark.parametrize("src, expected", [
    ("x*d", {("x", "d")}),
    ("d^2", {("d", "d")}),
])
def test_solve_groebner_normalized_solutions(src, expected):
    R = builtin("weyl:1")
    S = build_system(R.parse(src), 1, 1)
    sols, diags = solve_groebner(S)
    assert not diags
    for s in sols:
        assert not any(S.residual(s.x, s.y))
    pairs = set()
    for s in sols:
        b = _element(R, S.v_basis, s.x)
        c = _element(R, S.w_basis, s.y)
        if not is_unit(b) and not is_unit(c):
            pairs.add((str(b), str(c)))
    assert pairs == expected


def test_solve_groebner_reports_irrational_branch():
    R = builtin("polynomial:1")
    S = build_system(R.parse("x^2 + 1"), 1, 1)
    sols, diags = solve_groebner(S)
    assert diags
    for s in sols:
        b = _element(R, S.v_basis, s.x)
        c = _element(R, S.w_basis, s.y)
        assert is_unit(b) or is_unit(c)


@pytest.mark.parametrize("spec", ["weyl:1", "shift", "quantum_affine:2(2)", "qweyl:1(2)", "integration"])
@pytest.mark.parametrize("p", [3, 5])
def test_backends_agree_over_prime_fields(spec, p):
    R = builtin(spec, GF(p))
    rng = random.Random(f"{spec}/{p}")
    for _ in range(15):
        a = R.random_element(rng, 2)
        if not a or is_unit(a):
            continue
        assert _pairs(factor_two(a, "ff")) == _pairs(factor_two(a, "groebner"))


# ------------------------------------------------------------- factor_two

@pytest.mark.parametrize("src, expected", [
    ("x*d", {("x", "d")}),
    ("d*x", {("d", "x")}),
    ("d^2", {("d", "d")}),
    ("d", set()),
    ("x", set()),
])
def test_factor_two_weyl(src, expected):
    R = builtin("weyl:1")
    fs = factor_two(R.parse(src))
    assert _pairs(fs) == expected
    assert fs.exhaustive


def test_factor_two_d_x_is_x_d_plus_one():
    R = builtin("weyl:1")
    assert str(R.parse("d*x")) == "x*d + 1"


def test_factor_two_soundness_and_dedup():
    R = builtin("weyl:1")
    rng = random.Random(3)
    for _ in range(10):
        a = R.random_element(rng, 1) * R.random_element(rng, 1)
        if not a or is_unit(a):
            continue
        fs = factor_two(a)
        for b, c in fs.pairs:
            assert b * c == a
            assert b.leading_coefficient() == 1
        for (b, c), (b2, c2) in product(fs.pairs, repeat=2):
            if (b, c) != (b2, c2):
                lam = b2.leading_coefficient() / b.leading_coefficient()
                assert not (b2 == b * lam and c2 * lam == c)


def test_factor_two_errors():
    R = builtin("weyl:1")
    with pytest.raises(ZeroInput):
        factor_two(R.zero())
    with pytest.raises(UnitInput):
        factor_two(R.parse("3"))
    bad = load_presentation(COUNTEREXAMPLE_PRESENTATION)
    with pytest.raises(InadmissibleRing):
        factor_two(bad.parse("x1*x2"))


def test_factor_two_matches_census_over_f5():
    R = builtin("weyl:1", GF(5))
    for src in ["x*d", "x*d*x", "d^2 + x", "x^2*d", "(x + d)*(x - d)"]:
        a = R.parse(src)
        assert _pairs(factor_two(a)) == {(str(b), str(c)) for b, c in census_two(a).pairs}


def test_factor_two_over_gaussian_rationals():
    R = builtin("polynomial:1", QQ_I)
    assert _pairs(factor_two(R.parse("x^2 + 1"))) == {("x - i", "x + i"), ("x + i", "x - i")}


def test_factor_two_threads_agree(monkeypatch):
    R = builtin("weyl:1")
    a = R.parse("x*d*x*d")
    single = _pairs(factor_two(a, workers=1))
    assert _pairs(factor_two(a, workers=4)) == single
    monkeypatch.setenv("FFDFACTOR_THREADS", "3")
    assert _pairs(factor_two(a)) == single


def test_canonical_pair_scales_inversely():
    R = builtin("weyl:1")
    b, c = canonical_pair(R.parse("2*x"), R.parse("d/2"))
    assert (str(b), str(c)) == ("x", "d")


# ---------------------------------------------------------- irreducibility

def test_is_irreducible():
    R = builtin("weyl:1")
    assert is_irreducible(R.parse("d"))
    assert not is_irreducible(R.parse("x*d"))
    P = builtin("polynomial:1")
    assert is_irreducible(P.parse("x^2 + 1"), with_qualifier=True) == (True, "field-relative")
    assert is_irreducible(P.parse("x^2 + x + 1"), with_qualifier=True) == (True, "field-relative")
    assert is_irreducible(R.parse("d"), with_qualifier=True) == (True, "absolute")
    assert is_irreducible(P.parse("x^2 - 1"), with_qualifier=True) == (False, "absolute")


# --------------------------------------------------------------- factor_all

def _chains(fs):
    return {tuple(str(f) for f in ch) for ch in fs.chains}


def test_factor_all_d_squared():
    R = builtin("weyl:1")
    assert _chains(factor_all(R.parse("d^2"))) == {("d", "d")}


def test_factor_all_x_d_x_matches_f5_census():
    R = builtin("weyl:1")
    fs = factor_all(R.parse("x*d*x"))
    assert ("x", "d", "x") in _chains(fs)
    F = builtin("weyl:1", GF(5))
    assert _chains(fs) == _chains(factor_all(F.parse("x*d*x")))
    # two-level census: chains from census pairs whose factors have no census pairs
    a = F.parse("x*d*x")
    census_chains = set()

    def expand(f):
        if weighted_degree_one(f):
            return [(f,)]
        pairs = census_two(f).pairs
        if not pairs:
            return [(f,)]
        return [l + r for b, c in pairs for l in expand(b) for r in expand(c)]

    for ch in expand(a):
        census_chains.add(tuple(str(f) for f in canonical_chain(ch)))
    assert census_chains == _chains(fs)


def weighted_degree_one(f):
    from ffdfactor.pbw import weighted_degree
    return weighted_degree(f) <= 1


def test_factor_all_chains_multiply_out():
    R = builtin("weyl:1")
    a = R.parse("x^2*d^2")
    fs = factor_all(a)
    assert len(fs.chains) == 3
    for ch in fs.chains:
        prod = ch[0]
        for f in ch[1:]:
            prod = prod * f
        assert prod == a
        for f in ch:
            assert is_irreducible(f)


def test_factor_all_unit_input():
    with pytest.raises(UnitInput):
        factor_all(builtin("weyl:1").parse("7"))


def test_factor_all_json_shape():
    R = builtin("weyl:1")
    doc = factor_all(R.parse("x*d")).to_json()
    assert doc["pairs"] == [["x", "d"]]
    assert doc["chains"] == [["x", "d"]]
    assert doc["exhaustive"] is True
    assert doc["bounds"]["twoFactor"] == 2048


# ------------------------------------------------------------------ bounds

def test_bounds_weyl():
    R = builtin("weyl:1")
    b = bounds(R, 2)
    assert (b["g"], b["twoFactor"], b["total"]) == (6, 2048, 4096)
    assert b["perSplit"] == [(1, 1, 64)]
    assert bounds(R, 1)["twoFactor"] == 4 ** 3 // 4
    assert b["proofTwoFactor"] == 1 * 4 ** 5
    with pytest.raises(BadSplit):
        bounds(R, 0)


def test_bounds_are_respected_on_random_elements():
    R = builtin("shift", GF(3))
    rng = random.Random(11)
    for _ in range(20):
        a = R.random_element(rng, 3)
        if not a or is_unit(a):
            continue
        fs = factor_two(a)
        assert len(fs.pairs) <= fs.bounds["twoFactor"]
        assert len(fs.pairs) <= sum(t[2] for t in fs.bounds["perSplit"])
