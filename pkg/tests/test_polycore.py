"""Polynomial kernel tests: arithmetic, division, determinants, series."""

import random
from fractions import Fraction

import pytest

from icisres.errors import InexactDivision
from icisres.polycore import (Poly, PolyMatrix, TruncatedSeries, default_names,
                              exact_div, series_determinant)

X = Poly.variable(2, 0)
Y = Poly.variable(2, 1)
N2 = ("x", "y")


def rand_poly(rng, n, deg, terms=5):
    p = Poly.zero(n)
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(n)] += 1
        c = rng.randint(-4, 4)
        p = p + Poly(n, {tuple(e): Fraction(c)})
    return p


def test_constructors_and_zero():
    assert Poly.zero(3).is_zero()
    assert Poly.const(2, Fraction(0)).is_zero()
    one = Poly.const(2, Fraction(1))
    assert not one.is_zero()
    assert one.total_degree() == 0
    assert Poly.zero(2).total_degree() == -1
    # zero coefficients never survive construction
    assert Poly(2, {(1, 0): Fraction(0)}).is_zero()


def test_binomial_square():
    p = (X + Y) ** 2
    assert p == X**2 + (X * Y).scale(Fraction(2)) + Y**2
    assert p.coefficient((1, 1)) == 2
    assert p.coefficient((3, 0)) == 0


def test_arithmetic_ring_axioms_random():
    rng = random.Random(41)
    for _ in range(25):
        a = rand_poly(rng, 2, 3)
        b = rand_poly(rng, 2, 3)
        c = rand_poly(rng, 2, 3)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a - a).is_zero()
        assert (a * b) * c == a * (b * c)


def test_scale_and_neg():
    p = X**2 - Y
    assert p.scale(Fraction(-3)) == -(p + p + p)
    assert p.scale(Fraction(0)).is_zero()


def test_diff():
    p = X**3 * Y + X
    assert p.diff(0) == (X**2 * Y).scale(Fraction(3)) + Poly.const(2, Fraction(1))
    assert p.diff(1) == X**3
    assert Poly.const(2, Fraction(5)).diff(0).is_zero()


def test_diff_product_rule_random():
    rng = random.Random(42)
    for _ in range(15):
        a = rand_poly(rng, 3, 2)
        b = rand_poly(rng, 3, 2)
        for i in range(3):
            assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


def test_substitute_chain():
    # p(x, y) -> p(u + v, u*v)
    U = Poly.variable(2, 0)
    V = Poly.variable(2, 1)
    p = X * Y
    q = p.substitute([U + V, U * V])
    assert q == (U + V) * (U * V)


def test_evaluate():
    p = X**2 + Y.scale(Fraction(3))
    assert p.evaluate([Fraction(2), Fraction(-1)]) == 1
    assert p.evaluate([Fraction(0), Fraction(0)]) == 0


def test_degrees():
    p = X**2 * Y + X
    assert p.total_degree() == 3
    assert p.min_degree() == 1
    assert Poly.const(2, Fraction(7)).min_degree() == 0


def test_exact_div():
    p = X**2 * Y + X * Y**2
    assert exact_div(p, X * Y) == X + Y
    with pytest.raises(InexactDivision):
        exact_div(X**2 + Y, X)


def test_exact_div_random_roundtrip():
    rng = random.Random(43)
    for _ in range(20):
        a = rand_poly(rng, 2, 2)
        b = rand_poly(rng, 2, 2)
        if a.is_zero() or b.is_zero():
            continue
        assert exact_div(a * b, b) == a


def test_truncate():
    p = (X + Y) ** 4
    t = p.truncate(2)
    assert t.is_zero()
    t3 = (Poly.const(2, Fraction(1)) + X) ** 5
    assert t3.truncate(1) == Poly.const(2, Fraction(1)) + X.scale(Fraction(5))


def test_render():
    p = X**2 - Y**3 + Poly.const(2, Fraction(1, 2))
    assert p.render(N2) == "-y^3 + x^2 + 1/2"
    assert Poly.zero(2).render(N2) == "0"
    assert (-X).render(N2) == "-x"
    assert (X * Y**2).scale(Fraction(1, 3)).render(N2) == "1/3*x*y^2"


def test_default_names():
    assert default_names(2) == ("x", "y")
    assert default_names(3) == ("x", "y", "z")
    assert default_names(5) == ("x", "y", "z", "w", "u")


def test_matrix_determinant_known():
    a = PolyMatrix([[X, Y], [Y, X]])
    assert a.determinant() == X**2 - Y**2
    one = Poly.const(2, Fraction(1))
    b = PolyMatrix([[one, X, Y],
                    [Poly.zero(2), one, X],
                    [Poly.zero(2), Poly.zero(2), one]])
    assert b.determinant() == one


def test_matrix_determinant_alternating():
    rng = random.Random(44)
    for _ in range(10):
        rows = [[rand_poly(rng, 2, 1, terms=3) for _ in range(3)] for _ in range(3)]
        d = PolyMatrix(rows).determinant()
        swapped = [rows[1], rows[0], rows[2]]
        assert PolyMatrix(swapped).determinant() == -d
        degenerate = [rows[0], rows[0], rows[2]]
        assert PolyMatrix(degenerate).determinant().is_zero()


def test_matrix_determinant_multiplicative_numeric():
    rng = random.Random(45)
    for _ in range(10):
        a = [[Poly.const(1, Fraction(rng.randint(-3, 3))) for _ in range(3)]
             for _ in range(3)]
        b = [[Poly.const(1, Fraction(rng.randint(-3, 3))) for _ in range(3)]
             for _ in range(3)]
        prod = [[sum((a[i][k] * b[k][j] for k in range(3)), Poly.zero(1))
                 for j in range(3)] for i in range(3)]
        da = PolyMatrix(a).determinant()
        db = PolyMatrix(b).determinant()
        assert PolyMatrix(prod).determinant() == da * db


def test_truncated_series_arithmetic():
    one = Poly.const(2, Fraction(1))
    s = TruncatedSeries(one - X, 3)
    geom = TruncatedSeries(one + X + X**2 + X**3, 3)
    # (1 - x)(1 + x + x^2 + x^3) = 1 - x^4, gone at cap 3
    assert (s * geom).poly == one
    assert (s + geom).poly == one + one + X**2 + X**3
    assert (s - s).is_zero()
    assert (-s).poly == X - one


def test_truncated_series_truncates_products():
    s = TruncatedSeries(X + Y, 2)
    sq = s * s
    assert sq.poly == (X + Y) ** 2
    cube = sq * s
    assert cube.poly.is_zero()  # every cubic term exceeds the cap


def test_series_determinant_matches_poly_determinant():
    rng = random.Random(46)
    cap = 4
    for _ in range(8):
        rows = [[rand_poly(rng, 2, 2, terms=3) for _ in range(3)] for _ in range(3)]
        exact = PolyMatrix(rows).determinant().truncate(cap)
        series = [[TruncatedSeries(p, cap) for p in row] for row in rows]
        assert series_determinant(series, cap).poly == exact


def test_series_determinant_identity():
    one = TruncatedSeries(Poly.const(2, Fraction(1)), 3)
    zero = TruncatedSeries(Poly.zero(2), 3)
    assert series_determinant([[one, zero], [zero, one]], 3).poly == Poly.const(2, Fraction(1))
