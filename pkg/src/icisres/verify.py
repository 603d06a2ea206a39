"""Randomized and corpus-driven checks of the identities behind the engine.

Every suite draws deterministic instances from a seeded generator and
asserts an exact identity; a failure is data (the trial seed plus a
payload that reproduces the instance), never an exception.  Degenerate
draws (non-isolated zeros, singular matrices) are resampled with a
bounded counter so a run can never loop forever.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import (CapExceeded, GoodCoordsNotFound, NotIsolated,
                     NotRegularSequence, NotZeroDimensional)
from .index import (CoordinateChange, GermProblem, eg_index,
                    f_jacobian_minor, main_residue, minor, minors,
                    sigma_data, solve)
from .localalg import INFINITE, colength, normal_form, standard_basis
from .polycore import Poly, PolyMatrix, default_names
from .residues import grothendieck_residue, intersection_multiplicity_both_ways
from .pairing import pairing_report

RESAMPLE_LIMIT = 20

DEFAULT_TRIALS = {
    "det-lemmas": 100,
    "eq1": 50,
    "lem2": 25,
    "eq2-transform": 25,
    "ann-invariance": 10,
    "theorem1": 7,
    "smooth-duality": 10,
    "cor-mult": 10,
}

SUITES = tuple(DEFAULT_TRIALS)


@dataclass
class VerificationPlan:
    """What to run: which suites, how many trials, from which seed."""

    suites: Tuple[str, ...] = SUITES
    trials: Optional[int] = None        # None: per-suite default
    seed: int = 0
    degree_bound: int = 2
    nvars_bound: int = 4

    def __post_init__(self):
        for s in self.suites:
            if s not in DEFAULT_TRIALS:
                raise ValueError(f"unknown suite {s!r}")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be positive")
        if not 2 <= self.nvars_bound <= 4:
            raise ValueError("nvars_bound must stay in 2..4")
        if not 1 <= self.degree_bound <= 3:
            raise ValueError("degree_bound must stay in 1..3")


@dataclass
class VerificationOutcome:
    suite: str
    trials_run: int
    failures: List[Tuple[str, Dict[str, str]]]
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def _poly(n: int, terms: Dict[tuple, int]) -> Poly:
    return Poly(n, {e: Fraction(c) for e, c in terms.items()})


def builtin_corpus() -> List[Tuple[str, GermProblem]]:
    """The named germs every corpus-driven suite and test runs against."""
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    a1 = _poly(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    e8 = _poly(3, {(2, 0, 0): 1, (0, 3, 0): 1, (0, 0, 5): 1})
    return [
        ("a1-dz", GermProblem(3, (a1,), (Poly.zero(3), Poly.zero(3),
                                         Poly.const(3, 1)))),
        ("diag-1-1", GermProblem(2, (), (x, y))),
        ("diag-2-3", GermProblem(2, (), (x ** 2, y ** 3))),
        ("diag-3-3", GermProblem(2, (), (x ** 3, y ** 3))),
        ("smooth-plane", GermProblem(3, (Poly.variable(3, 2),),
                                     (Poly.variable(3, 0),
                                      Poly.variable(3, 1), Poly.zero(3)))),
        ("e8-sum", GermProblem(3, (e8,), (Poly.const(3, 1),) * 3, seed=1)),
        ("unit-dx", GermProblem(2, (), (Poly.const(2, 1), Poly.zero(2)),
                                seed=5)),
    ]


# random instance helpers ---------------------------------------------------

_EXP_CACHE: Dict[Tuple[int, int, int], Tuple[tuple, ...]] = {}


def _exponents(n: int, degree: int, min_degree: int) -> Tuple[tuple, ...]:
    key = (n, degree, min_degree)
    if key not in _EXP_CACHE:
        _EXP_CACHE[key] = tuple(
            e for e in itertools.product(range(degree + 1), repeat=n)
            if min_degree <= sum(e) <= degree)
    return _EXP_CACHE[key]


def random_poly(rng: random.Random, n: int, degree: int,
                min_degree: int = 1, max_terms: int = 6) -> Poly:
    pool = _exponents(n, degree, min_degree)
    k = rng.randint(1, min(max_terms, len(pool)))
    support = rng.sample(pool, k)
    terms = {}
    for e in support:
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[e] = Fraction(c)
    return Poly(n, terms)


def _resample(rng: random.Random, make: Callable, ok: Callable,
              limit: int = RESAMPLE_LIMIT):
    item = make()
    for _ in range(limit):
        if ok(item):
            return item
        item = make()
    return item


def _det(m: List[List[Fraction]]) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            r = m[i][k] / m[k][k]
            if r:
                m[i] = [a - r * b for a, b in zip(m[i], m[k])]
    return det


def _inverse(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    aug = [list(map(Fraction, m[i])) + [Fraction(1 if j == i else 0)
                                        for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        lead = aug[k][k]
        aug[k] = [a / lead for a in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    return [row[n:] for row in aug]


def _random_matrix(rng: random.Random, n: int) -> List[List[Fraction]]:
    return [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]


def _compose(p: Poly, matrix: Sequence[Sequence[Fraction]]) -> Poly:
    """p(C y): substitute the linear map given by the matrix rows."""
    n = p.nvars
    targets = [sum((Poly.variable(n, j).scale(matrix[i][j]) for j in range(n)),
                   Poly.zero(n)) for i in range(n)]
    return p.substitute(targets)


def _render(p: Poly) -> str:
    return p.render(default_names(p.nvars)) or "0"


def _render_matrix(m: Sequence[Sequence[Fraction]]) -> str:
    return "[" + "; ".join(",".join(str(a) for a in row) for row in m) + "]"


def _random_germ(rng: random.Random, n: int, degree: int) -> GermProblem:
    f = tuple(random_poly(rng, n, degree, min_degree=1) for _ in range(n - 2))
    omega = tuple(random_poly(rng, n, degree, min_degree=0)
                  for _ in range(n))
    return GermProblem(n, f, omega)


# suites --------------------------------------------------------------------

def _trial_det_lemmas(rng: random.Random, plan: VerificationPlan,
                      t: int) -> Optional[Dict[str, str]]:
    n = rng.randint(2, 6)
    j = rng.randint(1, n - 1)

    def blocks(h):
        a = [row[:j] for row in h[:j]]
        b = [row[j:] for row in h[:j]]
        c = [row[:j] for row in h[j:]]
        d = [row[j:] for row in h[j:]]
        return a, b, c, d

    h = _resample(rng, lambda: _random_matrix(rng, n),
                  lambda m: _det(blocks(m)[0]) != 0)
    a, b, c, d = blocks(h)
    if _det(a) != 0:
        ainv = _inverse(a)
        # D - C A^{-1} B
        ca = [[sum(c[i][k] * ainv[k][l] for k in range(j)) for l in range(j)]
              for i in range(n - j)]
        cab = [[sum(ca[i][k] * b[k][l] for k in range(j)) for l in range(n - j)]
               for i in range(n - j)]
        schur = [[d[i][l] - cab[i][l] for l in range(n - j)]
                 for i in range(n - j)]
        if _det(h) != _det(a) * _det(schur):
            return {"identity": "block-schur", "matrix": _render_matrix(h),
                    "split": str(j)}

    h2 = _resample(rng, lambda: _random_matrix(rng, n),
                   lambda m: _det(m) != 0)
    if _det(h2) != 0:
        inv = _inverse(h2)
        d2 = [row[j:] for row in h2[j:]]
        e2 = [row[:j] for row in inv[:j]]
        if _det(d2) != _det(e2) * _det(h2):
            return {"identity": "inverse-block", "matrix": _render_matrix(h2),
                    "split": str(j)}
    return None


def _trial_eq1(rng: random.Random, plan: VerificationPlan,
               t: int) -> Optional[Dict[str, str]]:
    n = plan.nvars_bound
    q = n - 2
    degree = min(2, plan.degree_bound)
    p = _random_germ(rng, n, degree)
    i_cols = tuple(rng.randrange(n) for _ in range(q))
    j_cols = tuple(rng.randrange(n) for _ in range(q + 1))
    lhs = f_jacobian_minor(p, i_cols) * minor(p, j_cols)
    rhs = Poly.zero(n)
    for l, jl in enumerate(j_cols):
        rest = j_cols[:l] + j_cols[l + 1:]
        piece = f_jacobian_minor(p, rest) * minor(p, (jl,) + i_cols)
        rhs = rhs + piece if l % 2 == 0 else rhs - piece
    if lhs != rhs:
        return {"f": "; ".join(_render(fi) for fi in p.f),
                "omega": "; ".join(_render(w) for w in p.omega),
                "i_cols": str(i_cols), "j_cols": str(j_cols)}
    return None


def _trial_lem2(rng: random.Random, plan: VerificationPlan,
                t: int) -> Optional[Dict[str, str]]:
    degree = min(2, plan.degree_bound)

    def make():
        return _random_germ(rng, 3, degree)

    def proper(p):
        return not any(m.is_unit() for m in minors(p).all.values())

    p = _resample(rng, make, proper)
    ms = minors(p)
    gens = list(p.f) + [ms.all[c] for c in sorted(ms.all)]
    try:
        sb = standard_basis(gens)
    except CapExceeded:
        return None
    sd = sigma_data(p)
    for (j, k) in [(0, 1), (0, 2), (1, 2)]:
        rows = [[fi.diff(c) for c in range(3)] for fi in p.f]
        rows.append([ms.principal[j].diff(c) for c in range(3)])
        rows.append([ms.principal[k].diff(c) for c in range(3)])
        jac = PolyMatrix(rows).determinant()
        target = jac + ms.f_minors[(j, k)] * sd.sigma
        if not normal_form(target, sb).poly.is_zero():
            return {"f": _render(p.f[0]),
                    "omega": "; ".join(_render(w) for w in p.omega),
                    "pair": str((j + 1, k + 1))}
    return None


def _trial_eq2(rng: random.Random, plan: VerificationPlan,
               t: int) -> Optional[Dict[str, str]]:
    n = rng.randint(2, min(4, plan.nvars_bound))
    degree = min(2, plan.degree_bound)
    p = _random_germ(rng, n, degree)
    c = _resample(rng, lambda: _random_matrix(rng, n),
                  lambda m: _det(m) != 0)
    if _det(c) == 0:
        return None
    change = CoordinateChange(tuple(tuple(row) for row in c))
    transformed = change.apply(p)
    cinv = _inverse(c)
    detc = _det(c)
    base = minors(p).principal
    for i, lhs in enumerate(minors(transformed).principal):
        rhs = Poly.zero(n)
        for jj in range(n):
            coeff = detc * cinv[i][jj]
            if coeff == 0:
                continue
            piece = _compose(base[jj], c).scale(coeff)
            rhs = rhs + piece if (i + jj) % 2 == 0 else rhs - piece
        if lhs != rhs:
            return {"f": "; ".join(_render(fi) for fi in p.f),
                    "omega": "; ".join(_render(w) for w in p.omega),
                    "matrix": _render_matrix(c), "minor": str(i + 1)}
    return None


def _trial_ann(rng: random.Random, plan: VerificationPlan,
               t: int) -> Optional[Dict[str, str]]:
    corpus = builtin_corpus()
    name, p = corpus[0] if t % 2 == 0 else ("diag-2-2", GermProblem(
        2, (), (Poly.variable(2, 0) ** 2, Poly.variable(2, 1) ** 2)))
    n = p.nvars
    ms = minors(p)

    def transformed_pair(c):
        change = CoordinateChange(tuple(tuple(row) for row in c))
        good = change.apply(p)
        cinv = _inverse(c)
        msy = minors(good)
        m1 = _compose(msy.principal[0], cinv)
        m2 = _compose(msy.principal[1], cinv)
        dfy = _compose(f_jacobian_minor(good, tuple(range(2, n))), cinv)
        return m1, m2, dfy

    def regular(c):
        if _det(c) == 0:
            return False
        m1, m2, _ = transformed_pair(c)
        sb = standard_basis([m1, m2] + list(p.f))
        return colength(sb) != INFINITE

    c = _resample(rng, lambda: _random_matrix(rng, n), regular)
    if not regular(c):
        return None
    m1y, m2y, dfy = transformed_pair(c)
    h = random_poly(rng, n, min(2, plan.degree_bound), min_degree=0)
    df = f_jacobian_minor(p, tuple(range(2, n)))
    lhs = grothendieck_residue(h * df,
                               list(p.f) + [ms.principal[0], ms.principal[1]])
    rhs = grothendieck_residue((h * dfy).scale(_det(c)),
                               list(p.f) + [m1y, m2y])
    if lhs != rhs:
        return {"germ": name, "matrix": _render_matrix(c), "h": _render(h),
                "lhs": str(lhs), "rhs": str(rhs)}
    return None


def _trial_theorem1(rng: random.Random, plan: VerificationPlan,
                    t: int) -> Optional[Dict[str, str]]:
    corpus = builtin_corpus()
    if t < len(corpus):
        name, p = corpus[t]
    else:
        name = "random"

        def make():
            return _random_germ(rng, 3, min(2, plan.degree_bound))

        def solvable(p):
            try:
                eg_index(p)
                return True
            except (NotIsolated, CapExceeded):
                return False

        p = _resample(rng, make, solvable)
        if not solvable(p):
            return None
    try:
        report = solve(p)
    except (NotIsolated, GoodCoordsNotFound, CapExceeded) as exc:
        if name == "random":
            return None
        return {"germ": name, "error": type(exc).__name__}
    if not report.match:
        return {"germ": name, "index": str(report.index),
                "residue": str(report.residue)}
    return None


def _trial_smooth_duality(rng: random.Random, plan: VerificationPlan,
                          t: int) -> Optional[Dict[str, str]]:
    degree = min(2, plan.degree_bound)

    def make():
        return GermProblem(2, (), (random_poly(rng, 2, degree),
                                   random_poly(rng, 2, degree)))

    def finite(p):
        try:
            return colength(standard_basis(list(p.omega))) != INFINITE
        except CapExceeded:
            return False

    p = _resample(rng, make, finite)
    if not finite(p):
        return None
    rep = pairing_report(p)
    problems = []
    if rep.rank_beta != rep.dim_a:
        problems.append(f"rank {rep.rank_beta} != dimA {rep.dim_a}")
    if rep.dim_a > 0 and rep.soc_a_dim != 1:
        problems.append(f"socle dim {rep.soc_a_dim}")
    if rep.sigma_in_soc_c is False:
        problems.append("sigma not in socle")
    if problems:
        return {"omega": "; ".join(_render(w) for w in p.omega),
                "problems": "; ".join(problems)}
    return None


def _trial_cor_mult(rng: random.Random, plan: VerificationPlan,
                    t: int) -> Optional[Dict[str, str]]:
    degree = min(2, plan.degree_bound)
    q = t % 2
    n = q + 2

    def make():
        f = [random_poly(rng, n, degree) for _ in range(q)]
        g = [random_poly(rng, n, degree) for _ in range(n - q)]
        return f, g

    def compute(pair):
        f, g = pair
        try:
            return intersection_multiplicity_both_ways(f, g)
        except (NotRegularSequence, CapExceeded, NotIsolated,
                NotZeroDimensional):
            return None

    pair = _resample(rng, make, lambda fg: compute(fg) is not None)
    result = compute(pair)
    if result is None:
        return None
    lhs, rhs = result
    if lhs != rhs:
        f, g = pair
        return {"f": "; ".join(_render(fi) for fi in f),
                "g": "; ".join(_render(gi) for gi in g),
                "colength": str(lhs), "residue": str(rhs)}
    return None


_TRIALS: Dict[str, Callable] = {
    "det-lemmas": _trial_det_lemmas,
    "eq1": _trial_eq1,
    "lem2": _trial_lem2,
    "eq2-transform": _trial_eq2,
    "ann-invariance": _trial_ann,
    "theorem1": _trial_theorem1,
    "smooth-duality": _trial_smooth_duality,
    "cor-mult": _trial_cor_mult,
}


def run(plan: VerificationPlan) -> List[VerificationOutcome]:
    outcomes = []
    for suite in plan.suites:
        start = time.perf_counter()
        trials = plan.trials if plan.trials is not None else DEFAULT_TRIALS[suite]
        failures: List[Tuple[str, Dict[str, str]]] = []
        fn = _TRIALS[suite]
        for t in range(trials):
            trial_seed = f"{plan.seed}:{suite}:{t}"
            rng = random.Random(trial_seed)
            payload = fn(rng, plan, t)
            if payload is not None:
                failures.append((trial_seed, payload))
        outcomes.append(VerificationOutcome(suite, trials, failures,
                                            time.perf_counter() - start))
    return outcomes
