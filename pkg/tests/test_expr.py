"""Mean-expression parsing."""

import pytest

from meanlab import core, families
from meanlab.expr import MeanExprError, parse_mean_expr
from meanlab.families import ParameterError


@pytest.mark.parametrize("name", list("HGLIASPT"))
def test_elementary_names(name):
    assert parse_mean_expr(name) is core.ELEMENTARY[name]


@pytest.mark.parametrize(
    "text,expected",
    [
        ("holder(2)", families.holder(2)),
        ("holder(0.5)", families.holder(0.5)),
        ("lehmer(-1/3)", families.lehmer(-1 / 3)),
        ("genlog(3)", families.gen_log(3)),
        ("lambda(2)", families.lambda_mean(2)),
        ("k(2)", families.k_mean(2)),
        ("stolarsky(1, 3)", families.stolarsky(1, 3)),
        ("stolarsky(3,1)", families.stolarsky(1, 3)),  # params stored sorted
        ("dual(S)", core.dual(core.S)),
        ("pow(I, 3)", families.power_transform(core.I, 3)),
        ("pow(dual(S), 1/2)", families.power_transform(core.dual(core.S), 0.5)),
        ("holder(1e-1)", families.holder(0.1)),
        ("holder(+2.5e0)", families.holder(2.5)),
        ("  holder ( 2 ) ", families.holder(2)),
        ("genlog(-3)", families.gen_log(-3)),
    ],
)
def test_valid_expressions(text, expected):
    assert parse_mean_expr(text) == expected


def test_rational_parameters():
    m = parse_mean_expr("stolarsky(-1/3, 2/3)")
    assert m.params == pytest.approx((-1 / 3, 2 / 3))


def test_round_trip_through_str():
    # str() of a descriptor is itself parseable for the plain families
    for text in ("holder(2)", "dual(S)", "pow(I, 3)", "stolarsky(1, 3)", "k(2)"):
        m = parse_mean_expr(text)
        assert parse_mean_expr(str(m)) == m


@pytest.mark.parametrize(
    "text,pos_hint",
    [
        ("holder", 6),       # missing (
        ("holder(", 7),      # missing number
        ("holder(2", 8),     # missing )
        ("stolarsky(1)", 11),  # missing comma
        ("pow(I)", 5),       # missing exponent
        ("dual()", 5),       # missing inner expr
        ("holder(2))", 9),   # trailing input
        ("A(2)", 1),         # elementary takes no arguments
        ("1.5", 0),          # not a mean
        ("frobnicate(2)", 0),  # unknown name
        ("holder(1/0)", 9),  # zero denominator
        ("holder(2;)", 8),   # bad character
    ],
)
def test_syntax_errors_carry_position(text, pos_hint):
    with pytest.raises(MeanExprError) as err:
        parse_mean_expr(text)
    assert err.value.pos == pos_hint
    assert f"(at position {pos_hint})" in str(err.value)


def test_unknown_name_lists_valid_forms():
    with pytest.raises(MeanExprError, match="valid forms"):
        parse_mean_expr("median(2)")


def test_parameter_errors_pass_through():
    with pytest.raises(ParameterError):
        parse_mean_expr("holder(100)")
    with pytest.raises(ParameterError):
        parse_mean_expr("stolarsky(1, 1e9)")


def test_parsed_descriptor_evaluates():
    m = parse_mean_expr("pow(dual(S), 1/2)")
    v = m.value(1.0, 3.0)
    assert 1.0 < v < 3.0
