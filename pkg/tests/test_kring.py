import math

import pytest
from hypothesis import given, settings, strategies as st

from ekedahl.errors import NotAUnit, NotConverging
from ekedahl.kring import (
    EXACT,
    GeneratorSymbol,
    KElement,
    class_b_subgroup,
    class_gl,
    fil_degree,
    k_invert_unit,
    k_mul,
    k_normalize,
    limit_of_sequence,
    projective_space,
    quotient_stack_classes,
    unit_factors,
)

L = KElement.lefschetz()
ONE = KElement.one()
X = GeneratorSymbol("X", 2)
Y = GeneratorSymbol("Y", 1)
Z = GeneratorSymbol("Z", 3)


def series(exps, tau):
    return KElement({(None, e): 1 for e in exps}, tau)


def test_normalize_examples():
    raw = [((None, 0), 1), ((None, 1), 1), ((None, 1), 1)]
    assert k_normalize(raw) == ONE + 2 * L
    y = k_normalize([((None, -5), 1)], -3)
    assert y.is_zero() and y.precision == -3
    assert k_normalize({(None, 0): 1, (None, 1): 1, (None, 2): 1}) == projective_space(2)


def test_mul_examples():
    assert KElement.lefschetz(3) * KElement.lefschetz(-5) == KElement.lefschetz(-2)
    assert (ONE + L) * (ONE - L) == ONE - L ** 2
    approx = KElement.one().truncate(-3)
    assert k_mul(approx, L ** 2) == KElement({(None, 2): 1}, -1)


def test_product_symbols():
    xy = KElement.symbol(X) * KElement.symbol(Y)
    ((sym, e), c), = xy.terms.items()
    assert sym.name == "X*Y" and sym.dimension == 3 and c == 1 and e == 0
    assert KElement.symbol(Y) * KElement.symbol(X) == xy
    assert [f.name for f in sym.factors] == ["X", "Y"]


def test_invert_examples():
    assert k_invert_unit(ONE - KElement.lefschetz(-1), -4) == series([0, -1, -2, -3], -4)
    assert k_invert_unit(L - 1, -4) == series([-1, -2, -3], -4)
    assert k_invert_unit(L ** 2 - 1, -5) == series([-2, -4], -5)
    assert k_invert_unit(-KElement.lefschetz(2), -6) == KElement({(None, -2): -1}, -6)


def test_not_units():
    for bad in (2 * L - 1, ONE + L, KElement.symbol(X), KElement.zero(), L ** 2 - 2):
        with pytest.raises(NotAUnit):
            k_invert_unit(bad, -4)
    with pytest.raises(NotAUnit):
        k_invert_unit((L - 1).truncate(-3), -4)


def test_unit_factorization():
    assert unit_factors(class_gl(3)) == (1, 3, (1, 2, 3))
    assert unit_factors(ONE - L) == (-1, 0, (1,))


def test_class_gl():
    assert class_gl(1) == L - 1
    assert class_gl(2) == L ** 4 - L ** 3 - L ** 2 + L


def evaluate(x: KElement, q: int):
    assert x.is_laurent_in_L() and x.is_exact
    from fractions import Fraction
    return sum(c * Fraction(q) ** e for (_, e), c in x.terms.items())


def gl_order(n, q):
    return math.prod(q ** n - q ** i for i in range(n))


def brute_gl2(q):
    return sum(1 for a in range(q) for b in range(q) for c in range(q) for d in range(q)
               if (a * d - b * c) % q)


@pytest.mark.parametrize("q", [2, 3])
def test_gl_point_counts(q):
    assert evaluate(class_gl(2), q) == brute_gl2(q)
    for n in (1, 2, 3, 4):
        assert evaluate(class_gl(n), q) == gl_order(n, q)
    assert evaluate(class_gl(3), 2) == 168


def test_class_b_examples():
    assert class_b_subgroup(class_gl(1), None, -4) == series([-1, -2, -3], -4)
    # mu_n in GL_1 with GL_1/mu_n = G_m, whatever n is
    assert class_b_subgroup(class_gl(1), L - 1, -8) == KElement.one().truncate(-8)
    out = class_gl(2) * class_b_subgroup(class_gl(2), None, -20)
    assert out == KElement.one().truncate(-16)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("tau", [-20, -7])
def test_inverse_contract(n, tau):
    g = class_gl(n)
    deg = fil_degree(g)
    prod = g * class_b_subgroup(g, None, tau)
    assert prod.precision == tau + deg
    assert prod.congruent(ONE, tau + deg)


def test_quotient_stacks():
    assert quotient_stack_classes(ONE, 1, 3) == (L ** 3, ONE)
    assert quotient_stack_classes(ONE, 3, 1) == (L ** 3, projective_space(2))
    bg = KElement.symbol(X, -2) * 5
    aff, proj = quotient_stack_classes(bg, 2, 2)
    assert aff == KElement({(X, 2): 5}) and proj == KElement({(X, -2): 5, (X, -1): 5})


def test_fil_degree():
    assert fil_degree(KElement.symbol(X, -3)) == -1
    assert fil_degree(ONE) == 0
    assert fil_degree(KElement.zero()) == EXACT
    assert fil_degree(KElement.zero(-4)) == -4


def test_limits():
    x = projective_space(3)
    assert limit_of_sequence([x, x, x]) == x
    partial = [series(range(0, -j - 1, -1), EXACT) for j in range(3)]
    # 1, 1 + L^-1, 1 + L^-1 + L^-2: last difference has degree -2
    assert limit_of_sequence(partial) == series([0, -1], -2)
    with pytest.raises(NotConverging) as err:
        limit_of_sequence([ONE, ONE + KElement.lefschetz(-3), ONE + KElement.lefschetz(-1)])
    assert err.value.index == 2


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("tau", [-1, -5, -12])
def test_projective_space_series(n, tau):
    rhs = (KElement.lefschetz(n + 1) - 1) * k_invert_unit(L - 1, tau - n - 1)
    assert rhs.congruent(projective_space(n), tau)


# ----------------------------------------------------------------- properties

SYMS = [None, X, Y, Z]
monomial = st.tuples(st.sampled_from(SYMS), st.integers(-4, 4))
exact_elements = st.dictionaries(monomial, st.integers(-3, 3), max_size=5).map(KElement)


@settings(max_examples=80)
@given(exact_elements, exact_elements, exact_elements)
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (b - a) == b
    assert a * ONE == a


@settings(max_examples=80)
@given(exact_elements, exact_elements, st.integers(-8, 3))
def test_precision_soundness(x, y, tau):
    approx = k_mul(x.truncate(tau), y)
    exact = k_mul(x, y)
    assert exact.congruent(approx, approx.precision) or approx.precision == EXACT


@settings(max_examples=60)
@given(st.integers(-3, 3), st.lists(st.integers(1, 4), max_size=3), st.sampled_from([1, -1]),
       st.integers(-15, -1))
def test_invert_random_units(a, ns, sign, tau):
    u = KElement.integer(sign) * KElement.lefschetz(a)
    for n in ns:
        u = u * (KElement.lefschetz(n) - 1)
    inv = k_invert_unit(u, tau)
    prod = u * inv
    assert prod.congruent(ONE, tau + fil_degree(u))
