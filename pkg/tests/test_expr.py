import random

import pytest
from hypothesis import given, settings, strategies as st

from ffdfactor.errors import ExponentOverflow, ExprSyntaxError, ParseError, UnknownSymbol
from ffdfactor.expr import BinOp, Neg, Num, Pow, Sym, parse_ast
from ffdfactor.fields import GF, QQ
from ffdfactor.pbw import builtin, weyl

W = weyl(1)


def test_precedence():
    # power > unary minus > product > sum
    ast = parse_ast("-x*d^2 + 1")
    assert isinstance(ast, BinOp) and ast.op == "+"
    prod = ast.left
    assert isinstance(prod, BinOp) and prod.op == "*"
    assert isinstance(prod.left, Neg) and isinstance(prod.left.operand, Sym)
    assert isinstance(prod.right, Pow) and prod.right.exponent == 2
    assert isinstance(ast.right, Num) and ast.right.value == 1


def test_power_binds_tighter_than_minus():
    assert W.parse("-x^2") == -(W.parse("x") ** 2)


@pytest.mark.parametrize("src,expected", [
    ("d*x - x*d", "1"),
    ("x*d^2", "x*d^2"),
    ("d*x*d", "x*d^2 + d"),
    ("d*x", "x*d + 1"),
    ("0", "0"),
    ("-1/2*x^2", "-1/2*x^2"),
    ("(x + d)^2", "x^2 + 2*x*d + d^2 + 1"),
    ("x/2", "1/2*x"),
])
def test_weyl_parse_and_print(src, expected):
    assert str(W.parse(src)) == expected


NEGATIVE = [
    ("x*(d", ExprSyntaxError), ("x)", ExprSyntaxError), ("x d", ExprSyntaxError),
    ("x^-1", ExprSyntaxError), ("y", UnknownSymbol), ("x^", ExprSyntaxError),
    ("", ExprSyntaxError), ("x^^2", ExprSyntaxError), ("2x", ExprSyntaxError),
    ("x^99999999999", ExponentOverflow), ("x/d", ParseError), ("x^1.5", ExprSyntaxError),
    ("((x)", ExprSyntaxError), ("x $ d", ExprSyntaxError), ("*x", ExprSyntaxError),
]


@pytest.mark.parametrize("src,err", NEGATIVE)
def test_negative_corpus(src, err):
    with pytest.raises(err) as info:
        W.parse(src)
    assert info.value.offset is not None
    assert 0 <= info.value.offset <= len(src.encode())


def test_error_offsets_are_bytes():
    with pytest.raises(ExprSyntaxError) as info:
        W.parse("x + é")
    assert info.value.offset == 4
    with pytest.raises(UnknownSymbol) as info:
        W.parse("∂*x + y")         # '∂' is three bytes in UTF-8
    assert info.value.offset == 8


RINGS = ["weyl:1", "weyl:2", "shift", "integration", "qshift(3)", "qweyl:1(2)",
         "quantum_affine:2(3)", "polynomial:3"]


@pytest.mark.parametrize("spec", RINGS)
@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_round_trip_random(spec, field):
    ring = builtin(spec, field)
    rng = random.Random(spec + str(field))
    # 5000 per field, 10^4 per ring
    for _ in range(5000):
        f = ring.random_element(rng, 3)
        assert ring.parse(str(f)) == f


@settings(max_examples=200)
@given(st.lists(st.sampled_from(["x", "d", "x*d", "d^2", "2", "-1/3", "x^2"]), min_size=1, max_size=5),
       st.lists(st.sampled_from(["+", "-", "*"]), min_size=4, max_size=4))
def test_parse_agrees_with_ring_arithmetic(atoms, ops):
    src = atoms[0]
    value = W.parse(atoms[0])
    for atom, op in zip(atoms[1:], ops):
        rhs = W.parse(atom)
        src = f"({src}) {op} ({atom})"
        value = value + rhs if op == "+" else value - rhs if op == "-" else value * rhs
    assert W.parse(src) == value
