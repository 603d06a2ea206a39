"""Residue pairing: Gram matrices, annihilator quotient, socle structure."""

import random
from fractions import Fraction

import pytest

from icisres.errors import NotRegularSequence
from icisres.index import GermProblem, main_residue, minors, sigma_data
from icisres.pairing import (algebra_B, algebra_C, gram_beta, index_algebra,
                             kernel_basis, matrix_rank, pairing_report,
                             residue_functional, rref, socle)
from icisres.polycore import Poly

N3 = ("x", "y", "z")
X = Poly.variable(2, 0)
Y = Poly.variable(2, 1)
x3 = Poly.variable(3, 0)
y3 = Poly.variable(3, 1)
z3 = Poly.variable(3, 2)
ONE3 = Poly.const(3, Fraction(1))
SPHERE = x3**2 + y3**2 + z3**2


def sphere_dz():
    return GermProblem(3, (SPHERE,), (Poly.zero(3), Poly.zero(3), ONE3))


def F(*vals):
    return [Fraction(v) for v in vals]


def test_rref_and_rank():
    rows = [F(1, 2, 3), F(2, 4, 6), F(0, 1, 1)]
    assert matrix_rank(rows) == 2
    assert matrix_rank([F(0, 0), F(0, 0)]) == 0
    assert matrix_rank([F(1, 0), F(0, 1)]) == 2
    rank, pivots, _ = rref([F(0, 3, 1)])
    assert rank == 1 and pivots == [1]


def test_kernel_basis():
    # x + y + z = 0 has a two dimensional kernel
    vecs = kernel_basis([F(1, 1, 1)], 3)
    assert len(vecs) == 2
    for v in vecs:
        assert sum(v) == 0
    assert kernel_basis([], 2) == [F(1, 0), F(0, 1)]
    assert kernel_basis([F(1, 0), F(0, 1)], 2) == []


def test_algebra_b_sphere():
    b = algebra_B(sphere_dz())
    assert b.dim == 2
    assert b.basis == [(0, 0, 0), (0, 0, 1)]


def test_algebra_b_degenerate_raises():
    # omega = df makes every principal minor vanish identically
    degen = GermProblem(3, (z3,), (Poly.zero(3), Poly.zero(3), ONE3))
    with pytest.raises(NotRegularSequence):
        algebra_B(degen)


def test_index_algebra_matches_eg_index():
    a = index_algebra(sphere_dz())
    assert a.dim == 2


def test_residue_functional_sphere():
    fn = residue_functional(sphere_dz())
    assert dict(fn.values) == {(0, 0, 0): Fraction(0), (0, 0, 1): Fraction(-1, 4)}
    # the functional agrees with the index-oriented germ residue
    sigma = sigma_data(sphere_dz()).sigma
    assert fn.v_residue(sigma) == main_residue(sphere_dz()) == 2
    assert fn.v_residue(Poly.zero(3)) == 0


def test_residue_functional_is_linear():
    fn = residue_functional(sphere_dz())
    rng = random.Random(31)
    for _ in range(8):
        h1 = Poly(3, {(rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 2)):
                      Fraction(rng.randint(-3, 3)) for _ in range(2)})
        h2 = Poly(3, {(rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 2)):
                      Fraction(rng.randint(-3, 3)) for _ in range(2)})
        assert fn.v_residue(h1 + h2) == fn.v_residue(h1) + fn.v_residue(h2)


def test_residue_functional_kills_index_ideal():
    # residues of J-multiples vanish: the functional descends to A
    for p in (sphere_dz(),
              GermProblem(3, (x3**2 + y3**3 + z3**5,), (ONE3, ONE3, ONE3), seed=1)):
        fn = residue_functional(p)
        alg = index_algebra(p)
        ms = minors(p)
        df = sigma_data(p).df
        gens = list(p.f) + list(ms.principal) + [df * df]
        for g in gens:
            for e in alg.basis:
                mono = Poly.monomial(3, e)
                assert fn.v_residue(g * mono) == 0


def test_algebra_c_sphere():
    c = algebra_C(sphere_dz())
    assert (c.dim_b, c.dim_c) == (2, 1)
    assert [e.render(N3) for e in c.ann_elements] == ["z"]


def test_algebra_c_unit_df_is_whole_algebra():
    # smooth case: DF is a unit, the annihilator vanishes
    p = GermProblem(2, (), (X**2, Y**2))
    c = algebra_C(p)
    assert c.dim_b == c.dim_c == 4
    assert c.ann_elements == []


def test_zero_operator_multiplication():
    b = algebra_B(sphere_dz())
    m1 = minors(sphere_dz()).principal[0]
    mat = b.multiplication_matrix(m1)
    assert matrix_rank(mat) == 0


def test_gram_sphere():
    g = gram_beta(sphere_dz())
    assert g.basis == [(0, 0, 0), (0, 0, 1)]
    assert g.matrix == [[Fraction(1, 2), Fraction(0)], [Fraction(0), Fraction(0)]]
    assert g.rank == 1


def test_gram_smooth_diagonal():
    g = gram_beta(GermProblem(2, (), (X**2, Y**2)))
    assert g.basis == [(0, 0), (0, 1), (1, 0), (1, 1)]
    anti = [[Fraction(int(i + j == 3)) for j in range(4)] for i in range(4)]
    assert g.matrix == anti
    assert g.rank == 4


def test_gram_symmetric():
    p = GermProblem(3, (x3**2 + y3**3 + z3**5,), (ONE3, ONE3, ONE3), seed=1)
    g = gram_beta(p)
    n = len(g.basis)
    assert all(g.matrix[i][j] == g.matrix[j][i] for i in range(n) for j in range(n))


def test_socle_values():
    b = algebra_B(sphere_dz())
    assert socle(b) == [[Fraction(0), Fraction(1)]]
    from icisres.localalg import quotient_algebra, standard_basis
    alg = quotient_algebra(standard_basis([X**2, Y**2]))
    vecs = socle(alg)
    assert len(vecs) == 1
    assert alg.element(vecs[0]) == X * Y


def test_pairing_report_sphere():
    rep = pairing_report(sphere_dz())
    assert (rep.dim_a, rep.dim_b, rep.dim_c) == (2, 2, 1)
    assert rep.rank_beta == 1
    assert rep.soc_a_dim == 1
    assert [e.render(N3) for e in rep.soc_a_elements] == ["z"]
    assert rep.sigma_residue == 2
    assert rep.sigma_in_soc_c is True
    assert rep.bound_holds
    assert rep.discrepancies == []


def test_pairing_report_smooth():
    rep = pairing_report(GermProblem(2, (), (X**2, Y**2)))
    assert (rep.dim_a, rep.dim_b, rep.dim_c) == (4, 4, 4)
    assert rep.rank_beta == 4
    assert rep.soc_a_dim == 1
    assert rep.discrepancies == []


def test_pairing_report_e8():
    p = GermProblem(3, (x3**2 + y3**3 + z3**5,), (ONE3, ONE3, ONE3), seed=1)
    rep = pairing_report(p)
    assert (rep.dim_a, rep.dim_b, rep.dim_c) == (10, 10, 2)
    assert rep.rank_beta == 2
    assert rep.soc_a_dim == 1
    assert rep.sigma_residue == 10
    assert rep.sigma_in_soc_c is True
    assert rep.bound_holds
    assert rep.discrepancies == []


def test_pairing_report_zero_index_degenerates_cleanly():
    rep = pairing_report(GermProblem(2, (), (Poly.const(2, Fraction(1)), Poly.zero(2)),
                                     seed=5))
    assert (rep.dim_a, rep.dim_b, rep.dim_c) == (0, 0, 0)
    assert rep.rank_beta == 0
    assert rep.sigma_in_soc_c is None
    assert rep.bound_holds
    assert rep.discrepancies == []


def test_dim_c_coordinate_invariant():
    from icisres.index import find_good_coordinates
    for p in (sphere_dz(), GermProblem(2, (), (X**2, Y**3))):
        base = algebra_C(p).dim_c
        dims = []
        for seed in (101, 202):
            shifted = GermProblem(p.nvars, p.f, p.omega, seed=seed)
            _, q = find_good_coordinates(shifted, force_random=True)
            dims.append(algebra_C(q).dim_c)
        assert dims == [base, base]
