import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

import gen
from nestsum import (
    Const, CSum, Expr, HSum, HWord, ParseError, SemanticError, SSum,
    canonicalize, format_expr, from_json, parse, to_json, weight,
)


def test_golden_strings():
    assert format_expr(parse("S[1,1](N)*2 - S[2](N)")) == "2*S[1,1](N) - S[2](N)"
    assert format_expr(parse("-z3 + H[0,1,1](x)")) == "H[0,1,1](x) - z3"
    assert format_expr(Expr()) == "0"


def test_atom_kinds():
    (mon, c), = parse("S[-2,1,1](N)").items()
    assert mon == (HSum((-2, 1, 1)),) and c == 1
    (mon, _), = parse("S[(1,1/2),(2,1)](N)").items()
    assert mon == (SSum((1, 2), (Fraction(1, 2), Fraction(1))),)
    (mon, _), = parse("CS[{2,1,2,-1}](N)").items()
    assert mon == (CSum(((2, 1, 2),), (-1,)),)
    e = parse("H[0,1,1](x) - z3")
    assert e.coeff((Const("z", (3,)),)) == -1


def test_weights():
    assert weight(HSum((-2, 1, 1))) == 4
    assert weight(HWord((0, (4, 1), 1))) == 3
    assert weight(Const("catalan")) == 2
    assert weight(Const("z", (2, 1))) == 3


@pytest.mark.parametrize(
    "text",
    ["S[0](N)", "CS[{2,3,1,1}](N)", "S[1", "H[0](x) +", "S[1](N) @ 2", "CS[{2,1,0,1}](N)"],
)
def test_errors_have_positions(text):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert "position" in str(exc.value)


def test_semantic_errors():
    with pytest.raises(SemanticError):
        parse("S[0](N)")
    with pytest.raises(SemanticError):
        parse("CS[{2,3,1,1}](N)")


def test_cyclotomic_letter_validation():
    with pytest.raises(Exception):
        HWord(((4, 2),))  # l must be < phi(4) = 2
    assert HWord(((1, 0),)).letters == (1,)


def test_arithmetic():
    a = parse("S[1](N)")
    assert a * 0 == Expr()
    assert (a + a) == a * 2
    assert (a - a) == Expr()
    assert parse("(S[1](N) + z2)^2") == a * a + a * parse("z2") * 2 + parse("z2^2")
    assert canonicalize(parse("1/2*z2 + 1/2*z2")) == parse("z2")


def test_json_roundtrip_and_shape():
    e = parse("2*S[1,1](N) - 1/3*S[2](N) + 5")
    obj = json.loads(to_json(e))
    assert {"term": "1", "coeff": {"num": 5, "den": 1}} in obj
    assert from_json(to_json(e)) == e


@given(seed=gen.seeds)
def test_roundtrip_property(seed):
    e = gen.random_expr(random.Random(seed))
    s = format_expr(e)
    assert parse(s) == e
    assert format_expr(parse(s)) == s
    assert from_json(to_json(e)) == e


@given(seed=gen.seeds)
def test_addition_commutes(seed):
    rng = random.Random(seed)
    a, b = gen.random_expr(rng), gen.random_expr(rng)
    assert a + b == b + a
    assert format_expr(a * b) == format_expr(b * a)
