"""Expression parsing, evaluation, pretty-printing, and jet arithmetic."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indefsum.exprlang import (
    ArityError,
    Binary,
    ExprDomainError,
    ExprSyntaxError,
    UnknownIdentifierError,
    eval_jet,
    evaluate,
    parse,
    pretty,
)
from indefsum.catalog import named_constant

from _frozen import LN_2PI


PIN_SRC = "x*ln(x) - x + ln(2*pi)/2"


def _binary_count(e):
    if isinstance(e, Binary):
        return 1 + _binary_count(e.left) + _binary_count(e.right)
    if hasattr(e, "child"):
        return _binary_count(e.child)
    return 0


# ---------------------------------------------------------------------------
# parsing

def test_parse_operator_count():
    assert _binary_count(parse(PIN_SRC)) == 5


def test_parse_reports_error_offset():
    with pytest.raises(ExprSyntaxError) as exc:
        parse("ln(x")
    assert exc.value.offset == 4


@pytest.mark.parametrize("src", ["ln(x, 2)", "2 +", "(x", "x 3"])
def test_parse_rejects_malformed(src):
    with pytest.raises(ExprSyntaxError):
        parse(src)


def test_parse_rejects_unknown_identifiers():
    with pytest.raises(UnknownIdentifierError):
        parse("y + 1")
    with pytest.raises(UnknownIdentifierError):
        parse("foo(x)")


def test_function_requires_parenthesized_argument():
    with pytest.raises(ArityError):
        parse("ln x")


@pytest.mark.parametrize("src", ["2^x", "x^x", "x^(x+1)"])
def test_pow_exponent_must_be_constant(src):
    with pytest.raises(ExprSyntaxError):
        parse(src)


# ---------------------------------------------------------------------------
# evaluation

def test_evaluate_pinned_expression():
    tree = parse(PIN_SRC)
    assert evaluate(tree, 1.0) == pytest.approx(0.5 * LN_2PI - 1.0, abs=1e-15)
    assert evaluate(tree, 2.0) == pytest.approx(
        2.0 * math.log(2.0) - 2.0 + 0.5 * LN_2PI, abs=1e-14)


def test_evaluate_powers():
    assert evaluate(parse("x^2"), 3.0) == 9.0
    assert evaluate(parse("x^(1+1)"), 3.0) == 9.0
    assert evaluate(parse("x^0.5"), 4.0) == pytest.approx(2.0, abs=1e-15)
    assert evaluate(parse("(x+1)^3"), 2.0) == 27.0
    assert evaluate(parse("x^(-2)"), 2.0) == pytest.approx(0.25, abs=1e-16)


@pytest.mark.parametrize("src,x", [
    ("1/(x-1)", 1.0),
    ("ln(x-2)", 1.0),
    ("sqrt(-x)", 2.0),
])
def test_evaluate_domain_errors(src, x):
    with pytest.raises(ExprDomainError):
        evaluate(parse(src), x)


def test_named_constants_match_catalog():
    # the same pinned doubles must be visible through both surfaces
    assert evaluate(parse("euler_gamma"), 1.0) == named_constant("euler_gamma")
    assert evaluate(parse("ln_glaisher"), 1.0) == named_constant("ln_glaisher")
    assert evaluate(parse("pi"), 1.0) == math.pi
    assert evaluate(parse("e"), 1.0) == math.e


# ---------------------------------------------------------------------------
# pretty printing

@pytest.mark.parametrize("src", [
    PIN_SRC,
    "x^2 + 1/x",
    "exp(-x)*sin(x)",
    "sqrt(x+1) - ln(x)/2",
    "-x + 3.5e-1",
    "ln(euler_gamma + x)*cos(2*x)",
    "(x+1)^3/(x-0.5)",
])
def test_pretty_parse_is_a_fixed_point(src):
    once = pretty(parse(src))
    twice = pretty(parse(once))
    assert once == twice
    # and printing preserves the value
    for x in (0.7, 1.3, 2.9):
        assert evaluate(parse(once), x) == pytest.approx(
            evaluate(parse(src), x), rel=1e-15, abs=1e-15)


# ---------------------------------------------------------------------------
# jets

def test_eval_jet_log():
    jet = eval_jet(parse("ln(x)"), 2.0, 2)
    assert jet.coeffs[0] == pytest.approx(math.log(2.0), abs=1e-16)
    assert jet.coeffs[1] == pytest.approx(0.5, abs=1e-16)
    assert jet.coeffs[2] == pytest.approx(-0.125, abs=1e-16)
    # derivative(k) rescales the Taylor coefficient by k!
    assert jet.derivative(2) == pytest.approx(-0.25, abs=1e-15)


def test_eval_jet_identity_and_pin():
    jet = eval_jet(parse("x"), 3.0, 1)
    assert jet.coeffs == (3.0, 1.0)
    jet = eval_jet(parse(PIN_SRC), 1.0, 1)
    assert jet.coeffs[0] == pytest.approx(0.5 * LN_2PI - 1.0, abs=1e-15)
    assert jet.coeffs[1] == pytest.approx(0.0, abs=1e-15)


def test_eval_jet_validation():
    with pytest.raises(ExprDomainError):
        eval_jet(parse("ln(x)"), 0.0, 2)
    with pytest.raises(ValueError):
        eval_jet(parse("x"), 1.0, 9)


def _central_derivative(tree, x0: float, k: int, h: float = 0.02) -> float:
    def stencil(hh: float) -> float:
        acc = 0.0
        for i in range(k + 1):
            acc += (-1.0) ** (k - i) * math.comb(k, i) * evaluate(tree, x0 + (i - k / 2.0) * hh)
        return acc / hh ** k
    v1, v2 = stencil(h), stencil(h / 2.0)
    return (4.0 * v2 - v1) / 3.0


@pytest.mark.parametrize("src", [
    "x^2*ln(x)",
    "exp(-x/4)*cos(x)",
    "sqrt(x)*sin(x)",
    "1/(1+x^2)",
])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_jet_matches_central_differences(src, k):
    tree = parse(src)
    x0 = 1.7
    want = _central_derivative(tree, x0, k)
    got = eval_jet(tree, x0, k).derivative(k)
    assert got == pytest.approx(want, rel=1e-6, abs=1e-6)


@given(x=st.floats(min_value=0.3, max_value=8.0))
@settings(max_examples=30, deadline=None)
def test_jet_constant_term_equals_evaluation(x):
    tree = parse(PIN_SRC)
    assert eval_jet(tree, x, 3).coeffs[0] == pytest.approx(
        evaluate(tree, x), rel=1e-15, abs=1e-15)
