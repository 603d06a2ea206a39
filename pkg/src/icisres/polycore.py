"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in n variables is a mapping from exponent tuples of length n
to nonzero Fractions.  All arithmetic is exact; nothing here ever touches
floats.  Truncated power series reuse the same representation together
with a total-degree cap, and a small polynomial matrix type provides
exact determinants (cofactor expansion for tiny matrices, fraction-free
Bareiss elimination above that).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InexactDivision

Exponent = Tuple[int, ...]
Terms = Dict[Exponent, Fraction]

_DEFAULT_NAMES = ("x", "y", "z", "w", "u", "v")


def default_names(nvars: int) -> Tuple[str, ...]:
    if nvars <= len(_DEFAULT_NAMES):
        return _DEFAULT_NAMES[:nvars]
    return tuple(f"z{i + 1}" for i in range(nvars))


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exponent, b: Exponent) -> Optional[Exponent]:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_divides(b: Exponent, a: Exponent) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Exponent) -> int:
    return sum(a)


def _grlex_key(e: Exponent) -> Tuple[int, Exponent]:
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Terms):
        self.nvars = nvars
        self.terms: Terms = {e: c for e, c in terms.items() if c != 0}

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=1) -> "Poly":
        return cls(nvars, {tuple(exps): Fraction(c)})

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """Nonzero constant term, i.e. invertible in the local ring."""
        return self.constant_term() != 0

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        out: Terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def mul_truncated(self, other: "Poly", cap: int) -> "Poly":
        """Product dropping every monomial of total degree above cap."""
        out: Terms = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > cap:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                e = mono_mul(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    def truncate(self, cap: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= cap})

    def diff(self, i: int) -> "Poly":
        out: Terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
        return Poly(self.nvars, out)

    def substitute(self, targets: Sequence["Poly"]) -> "Poly":
        """Replace variable i by targets[i] (all over the same new ring)."""
        if len(targets) != self.nvars:
            raise ValueError("substitution needs one target per variable")
        m = targets[0].nvars if targets else 0
        result = Poly.zero(m)
        powers: List[Dict[int, Poly]] = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                cache = powers[i]
                if k not in cache:
                    cache[k] = targets[i] ** k
                term = term * cache[k]
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            prod = c
            for i, k in enumerate(e):
                if k:
                    prod *= vals[i] ** k
            total += prod
        return total

    # comparison / rendering ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in descending graded lexicographic order, for stable output."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = default_names(self.nvars)
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def exact_div(p: Poly, q: Poly) -> Poly:
    """Quotient p/q when the division is exact; raises InexactDivision otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero():
        return Poly.zero(p.nvars)
    qe, qc = max(q.terms.items(), key=lambda t: _grlex_key(t[0]))
    rem = dict(p.terms)
    out: Terms = {}
    while rem:
        re, rc = max(rem.items(), key=lambda t: _grlex_key(t[0]))
        e = mono_div(re, qe)
        if e is None:
            raise InexactDivision(f"{q.render()} does not divide {p.render()}")
        c = rc / qc
        out[e] = c
        for fe, fc in q.terms.items():
            ge = mono_mul(e, fe)
            s = rem.get(ge, Fraction(0)) - c * fc
            if s:
                rem[ge] = s
            else:
                rem.pop(ge, None)
    return Poly(p.nvars, out)


class TruncatedSeries:
    """Polynomial data plus a total-degree cap; arithmetic re-truncates."""

    __slots__ = ("poly", "cap")

    def __init__(self, poly: Poly, cap: int):
        self.poly = poly.truncate(cap)
        self.cap = cap

    @classmethod
    def from_poly(cls, p: Poly, cap: int) -> "TruncatedSeries":
        return cls(p, cap)

    def _join(self, other) -> Tuple[Poly, int]:
        if isinstance(other, TruncatedSeries):
            return other.poly, min(self.cap, other.cap)
        return Poly.const(self.poly.nvars, other), self.cap

    def __add__(self, other) -> "TruncatedSeries":
        q, cap = self._join(other)
        return TruncatedSeries(self.poly + q, cap)

    def __sub__(self, other) -> "TruncatedSeries":
        q, cap = self._join(other)
        return TruncatedSeries(self.poly - q, cap)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.poly, self.cap)

    def __mul__(self, other) -> "TruncatedSeries":
        q, cap = self._join(other)
        return TruncatedSeries(self.poly.mul_truncated(q, cap), cap)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.cap == other.cap and self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash((self.cap, self.poly))

    def render(self, names=None) -> str:
        return self.poly.render(names)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.poly.render()}, cap={self.cap})"


class PolyMatrix:
    """Dense matrix of Poly entries."""

    def __init__(self, rows: Sequence[Sequence[Poly]]):
        self.rows: List[List[Poly]] = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def submatrix(self, keep_rows: Iterable[int], keep_cols: Iterable[int]) -> "PolyMatrix":
        kr, kc = list(keep_rows), list(keep_cols)
        return PolyMatrix([[self.rows[i][j] for j in kc] for i in kr])

    def determinant(self) -> Poly:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            raise ValueError("empty determinant needs an explicit variable count; "
                             "build the constant 1 at the call site")
        if n <= 4:
            return _det_cofactor(self.rows)
        return _det_bareiss(self.rows)


def _det_cofactor(rows: List[List[Poly]]) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Poly.zero(rows[0][0].nvars)
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        piece = a * _det_cofactor(minor)
        total = total + piece if j % 2 == 0 else total - piece
    return total


def _det_bareiss(rows: List[List[Poly]]) -> Poly:
    """Fraction-free elimination; every division is exact over the poly ring."""
    n = len(rows)
    m = [[p for p in row] for row in rows]
    nv = m[0][0].nvars
    sign = 1
    prev = Poly.const(nv, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot is None:
                return Poly.zero(nv)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = Poly.zero(nv)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def series_determinant(rows: Sequence[Sequence[TruncatedSeries]], cap: int) -> TruncatedSeries:
    """Determinant of a matrix of truncated series via subset dynamic programming.

    Avoids division entirely, so truncation error never compounds; cost is
    O(2^n * n) series products, fine for the n <= 8 germs handled here.
    """
    n = len(rows)
    nv = rows[0][0].poly.nvars if n else 0
    one = TruncatedSeries(Poly.const(nv, 1), cap)
    if n == 0:
        return one
    # state: subset of rows already consumed while filling columns 0..popcount-1
    states = {0: one}
    for col in range(n):
        nxt: Dict[int, TruncatedSeries] = {}
        for mask, val in states.items():
            if val.is_zero():
                continue
            seen = 0
            for row in range(n):
                bit = 1 << row
                if mask & bit:
                    seen += 1
                    continue
                entry = rows[row][col]
                if entry.is_zero():
                    continue
                piece = val * entry
                # Laplace sign for placing `row` as the entry of column `col`:
                # parity of (rows already used below it) + (column index)
                if (seen + col) % 2 == 1:
                    piece = -piece
                key = mask | bit
                nxt[key] = nxt[key] + piece if key in nxt else piece
        states = nxt
    full = (1 << n) - 1
    return states.get(full, TruncatedSeries(Poly.zero(nv), cap))
