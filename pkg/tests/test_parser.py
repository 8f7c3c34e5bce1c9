import pytest
from hypothesis import given, settings, strategies as st

from ekedahl.errors import ExprSyntaxError, NotAUnit, PrecisionRequired
from ekedahl.kring import GeneratorSymbol, KElement, class_gl, projective_space
from ekedahl.parser import parse_kring_expr, render
from ekedahl.varieties import table_projective_space

L = KElement.lefschetz()
SYMS = {
    "X": GeneratorSymbol("X", 2, True, table_projective_space(2)),
    "Y": GeneratorSymbol("Y", 1, True, table_projective_space(1)),
    "Curve_2": GeneratorSymbol("Curve_2", 1),
}


def test_examples():
    assert parse_kring_expr("P^2") == projective_space(2)
    assert parse_kring_expr("inv(L-1) mod Fil(-4)") == KElement(
        {(None, -1): 1, (None, -2): 1, (None, -3): 1}, -4)
    assert parse_kring_expr("GL(2)*B(GL(2)) mod Fil(-10)") == KElement.one().truncate(-6)
    assert parse_kring_expr("inv(L-1)", -4) == parse_kring_expr("inv(L-1) mod Fil(-4)")


def test_annotation_wins():
    assert parse_kring_expr("inv(L) mod Fil(-3)", -10).precision == -3


def test_grammar():
    assert parse_kring_expr("2*L^3 - (L + 1)*(L - 1)") == 2 * L ** 3 - L ** 2 + 1
    assert parse_kring_expr("-L^-2") == -KElement.lefschetz(-2)
    assert parse_kring_expr("GL(3)") == class_gl(3)
    assert parse_kring_expr("X*Y + Y*X", symbols=SYMS) == \
        2 * KElement.symbol(SYMS["X"]) * KElement.symbol(SYMS["Y"])
    assert parse_kring_expr("  1+ L  ") == 1 + L


@pytest.mark.parametrize("text, pos", [
    ("1 +", 3), ("L^", 2), ("(1", 2), ("1 2", 2), ("Q", 0), ("GL(0)", 0), ("P^x", 2),
])
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as err:
        parse_kring_expr(text, symbols=SYMS)
    assert err.value.position == pos


def test_errors():
    with pytest.raises(ExprSyntaxError):
        parse_kring_expr("   ")
    with pytest.raises(PrecisionRequired):
        parse_kring_expr("inv(L-1)")
    with pytest.raises(NotAUnit):
        parse_kring_expr("inv(L+1) mod Fil(-3)")
    with pytest.raises(NotAUnit):
        parse_kring_expr("B(X) mod Fil(-3)", symbols=SYMS)


leaf = st.one_of(
    st.integers(-5, 5).map(str),
    st.integers(-4, 4).map(lambda e: f"L^{e}"),
    st.integers(0, 3).map(lambda n: f"P^{n}"),
    st.integers(1, 3).map(lambda n: f"GL({n})"),
    st.sampled_from(["X", "Y", "Curve_2", "L"]),
    st.integers(1, 3).map(lambda n: f"inv(L^{n} - 1)"),
)


def _compose(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: f"({t[0]}) + ({t[1]})"),
        st.tuples(children, children).map(lambda t: f"{t[0]} - {t[1]}"),
        st.tuples(children, children).map(lambda t: f"({t[0]})*({t[1]})"),
        children.map(lambda c: f"-({c})"),
    )


expressions = st.recursive(leaf, _compose, max_leaves=6)


@settings(max_examples=150)
@given(expressions, st.integers(-12, -1))
def test_round_trip(text, tau):
    x = parse_kring_expr(text, tau, SYMS)
    again = parse_kring_expr(render(x), None, SYMS)
    assert again == x
