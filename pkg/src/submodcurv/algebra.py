"""Exact scalar and truncated-series arithmetic.

Everything here is over the rationals: scalars are fractions.Fraction,
exponents are MultiIndex tuples, and power series are truncated at a fixed
total degree with sparse Fraction coefficients.  A TruncSeries lives in 2*m
formal variables: the first m slots of each exponent key are the holomorphic
variables w_1..w_m, the last m slots their formal conjugates wb_1..wb_m.
Real-analytic germs (metrics, kernels restricted to the diagonal) become
polynomials in these 2*m commuting variables; conjugation is the involution
swapping the two halves.

No floating point enters any function in this module.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import DomainError, ShapeError, SingularityError, TruncationError

Rational = Fraction


def rat(x) -> Fraction:
    """Coerce ints / strings / Fractions to Fraction, rejecting floats.

    Floats are rejected on purpose: silently converting 0.1 to
    3602879701896397/36028797018963968 would poison exactness guarantees.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def pochhammer(a: Fraction, n: int) -> Fraction:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    a = rat(a)
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


@functools.total_ordering
class MultiIndex(tuple):
    """Exponent vector ordered by graded lexicographic order.

    Total degree decides first; ties break lexicographically.  Instances are
    plain tuples of non-negative ints, so they hash and unpack like tuples.
    """

    def __new__(cls, exps: Iterable[int]):
        t = tuple(int(e) for e in exps)
        if any(e < 0 for e in t):
            raise DomainError(f"negative exponent in multi-index {t}")
        return super().__new__(cls, t)

    @property
    def degree(self) -> int:
        return sum(self)

    def __add__(self, other):
        if len(self) != len(other):
            raise ShapeError("multi-index length mismatch in +")
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise ShapeError("multi-index length mismatch in -")
        return MultiIndex(a - b for a, b in zip(self, other))

    def divides(self, other) -> bool:
        """Componentwise <=, i.e. the monomial z^self divides z^other."""
        return len(self) == len(other) and all(a <= b for a, b in zip(self, other))

    def __lt__(self, other):
        return (self.degree, tuple(self)) < (sum(other), tuple(other))

    @staticmethod
    def unit(n: int, i: int, power: int = 1) -> "MultiIndex":
        """The multi-index power * e_i of length n (i is 0-based)."""
        return MultiIndex(power if k == i else 0 for k in range(n))

    @staticmethod
    def zero(n: int) -> "MultiIndex":
        return MultiIndex((0,) * n)


def iter_multiindices(nvars: int, max_degree: int):
    """All multi-indices of length nvars with total degree <= max_degree,
    in graded-lex order."""
    def of_degree(n, d):
        if n == 1:
            yield (d,)
            return
        for first in range(d, -1, -1):
            for rest in of_degree(n - 1, d - first):
                yield (first,) + rest
    for d in range(max_degree + 1):
        for t in of_degree(nvars, d):
            yield MultiIndex(t)


# ---------------------------------------------------------------------------
# Truncated multivariate series


class TruncSeries:
    """Sparse truncated series in w_1..w_m and their formal conjugates.

    coeffs maps MultiIndex keys of length 2*npairs (w-half then wb-half) to
    nonzero Fractions; every key has total degree <= trunc.  Terms beyond the
    truncation degree are dropped by every operation, so the invariant is
    maintained by construction.
    """

    __slots__ = ("npairs", "trunc", "coeffs")

    def __init__(self, npairs: int, trunc: int, coeffs: Mapping | None = None):
        if npairs < 1:
            raise DomainError(f"need at least one variable pair, got {npairs}")
        if trunc < 0:
            raise DomainError(f"truncation degree must be >= 0, got {trunc}")
        self.npairs = npairs
        self.trunc = trunc
        clean = {}
        if coeffs:
            width = 2 * npairs
            for key, val in coeffs.items():
                k = key if isinstance(key, MultiIndex) else MultiIndex(key)
                if len(k) != width:
                    raise ShapeError(
                        f"series key {tuple(k)} has length {len(k)}, expected {width}")
                v = rat(val)
                if v != 0 and k.degree <= trunc:
                    clean[k] = v
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(npairs: int, trunc: int, c) -> "TruncSeries":
        c = rat(c)
        if c == 0:
            return TruncSeries(npairs, trunc)
        return TruncSeries(npairs, trunc, {MultiIndex.zero(2 * npairs): c})

    @staticmethod
    def zero(npairs: int, trunc: int) -> "TruncSeries":
        return TruncSeries(npairs, trunc)

    @staticmethod
    def one(npairs: int, trunc: int) -> "TruncSeries":
        return TruncSeries.constant(npairs, trunc, 1)

    @staticmethod
    def w(npairs: int, trunc: int, i: int, power: int = 1) -> "TruncSeries":
        """The monomial w_i^power (i is 0-based)."""
        key = MultiIndex.unit(2 * npairs, i, power)
        return TruncSeries(npairs, trunc, {key: 1})

    @staticmethod
    def wbar(npairs: int, trunc: int, i: int, power: int = 1) -> "TruncSeries":
        """The monomial wb_i^power (i is 0-based)."""
        key = MultiIndex.unit(2 * npairs, npairs + i, power)
        return TruncSeries(npairs, trunc, {key: 1})

    @staticmethod
    def monomial(npairs: int, trunc: int, wexp, wbexp, c=1) -> "TruncSeries":
        key = MultiIndex(tuple(wexp) + tuple(wbexp))
        return TruncSeries(npairs, trunc, {key: c})

    # -- basic queries -----------------------------------------------------

    def constant_term(self) -> Fraction:
        return self.coeffs.get(MultiIndex.zero(2 * self.npairs), Fraction(0))

    def coefficient(self, wexp, wbexp) -> Fraction:
        key = MultiIndex(tuple(wexp) + tuple(wbexp))
        return self.coeffs.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compat(self, other: "TruncSeries"):
        if self.npairs != other.npairs or self.trunc != other.trunc:
            raise ShapeError(
                f"series mismatch: ({self.npairs} pairs, D={self.trunc}) vs "
                f"({other.npairs} pairs, D={other.trunc})")

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.npairs, self.trunc, self.coeffs) == \
               (other.npairs, other.trunc, other.coeffs)

    __hash__ = None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(self.npairs, self.trunc, other)
        self._check_compat(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, Fraction(0)) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return TruncSeries(self.npairs, self.trunc, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.npairs, self.trunc,
                           {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(self.npairs, self.trunc, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        c = rat(c)
        if c == 0:
            return TruncSeries.zero(self.npairs, self.trunc)
        return TruncSeries(self.npairs, self.trunc,
                           {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compat(other)
        D = self.trunc
        out: dict = {}
        # convolution with degree filtering; the smaller factor drives the loop
        a, b = self, other
        if len(a.coeffs) > len(b.coeffs):
            a, b = b, a
        for ka, va in a.coeffs.items():
            da = ka.degree
            for kb, vb in b.coeffs.items():
                if da + kb.degree > D:
                    continue
                k = ka + kb
                s = out.get(k, Fraction(0)) + va * vb
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return TruncSeries(self.npairs, self.trunc, out)

    __rmul__ = __mul__

    # -- structural operations ---------------------------------------------

    def conj(self) -> "TruncSeries":
        """Formal conjugation: swap the w and wb halves of every exponent.

        Coefficients are real rationals, so they are fixed by conjugation.
        """
        m = self.npairs
        out = {}
        for k, v in self.coeffs.items():
            out[MultiIndex(k[m:] + k[:m])] = v
        return TruncSeries(self.npairs, self.trunc, out)

    def truncate(self, new_trunc: int) -> "TruncSeries":
        if new_trunc > self.trunc:
            raise ShapeError(
                f"cannot extend truncation {self.trunc} to {new_trunc}; "
                "terms beyond the original degree were never computed")
        return TruncSeries(self.npairs, new_trunc, self.coeffs)

    def dw(self, i: int) -> "TruncSeries":
        """Formal partial derivative with respect to w_i (0-based)."""
        return self._formal_derivative(i)

    def dwbar(self, i: int) -> "TruncSeries":
        """Formal partial derivative with respect to wb_i (0-based)."""
        return self._formal_derivative(self.npairs + i)

    def _formal_derivative(self, slot: int) -> "TruncSeries":
        if not 0 <= slot < 2 * self.npairs:
            raise ShapeError(f"variable slot {slot} out of range")
        out = {}
        for k, v in self.coeffs.items():
            e = k[slot]
            if e == 0:
                continue
            down = list(k)
            down[slot] = e - 1
            out[MultiIndex(down)] = v * e
        # derivative of an exactly known degree-D jet is only trustworthy
        # to degree D-1; record that by dropping the truncation degree
        return TruncSeries(self.npairs, max(self.trunc - 1, 0), out)

    def evaluate(self, wvals, wbvals) -> Fraction:
        """Evaluate the truncated polynomial at exact rational arguments.

        This is a plain polynomial evaluation of the jet; the caller owns any
        statement about how well the jet approximates the analytic function.
        """
        wvals = [rat(x) for x in wvals]
        wbvals = [rat(x) for x in wbvals]
        if len(wvals) != self.npairs or len(wbvals) != self.npairs:
            raise ShapeError("evaluation point has wrong arity")
        vals = wvals + wbvals
        total = Fraction(0)
        for k, v in self.coeffs.items():
            term = v
            for slot, e in enumerate(k):
                if e:
                    term *= vals[slot] ** e
            total += term
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        m = self.npairs
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            factors = []
            for i in range(m):
                if k[i] == 1:
                    factors.append(f"w{i+1}")
                elif k[i] > 1:
                    factors.append(f"w{i+1}^{k[i]}")
            for i in range(m):
                e = k[m + i]
                if e == 1:
                    factors.append(f"wb{i+1}")
                elif e > 1:
                    factors.append(f"wb{i+1}^{e}")
            if not factors:
                parts.append(str(v))
            elif v == 1:
                parts.append("*".join(factors))
            elif v == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{v}*" + "*".join(factors))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"TruncSeries({self.npairs} pairs, D={self.trunc}: {self})"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Product of two truncated series (degree-filtered convolution)."""
    return a * b


def series_inverse(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series with nonzero constant term.

    Writes s = c(1 - u) with u of positive order and expands the geometric
    series by Horner's scheme; exact through the truncation degree.
    """
    c = s.constant_term()
    if c == 0:
        raise SingularityError("series has zero constant term; not invertible")
    u = TruncSeries.one(s.npairs, s.trunc) - s.scale(Fraction(1) / c)
    acc = TruncSeries.one(s.npairs, s.trunc)
    for _ in range(s.trunc):
        acc = TruncSeries.one(s.npairs, s.trunc) + u * acc
    return acc.scale(Fraction(1) / c)


@dataclass(frozen=True)
class LogSeries:
    """log s split as log(scale) + series, with series(0) = 0.

    scale is the (positive rational) constant term of s; its logarithm is
    irrational in general, so it is kept symbolically.  Mixed derivatives of
    log s never see it, which is why curvature stays exact.
    """
    series: TruncSeries
    scale: Fraction


def series_log(s: TruncSeries) -> LogSeries:
    """Logarithm of a series with positive constant term.

    Returns the constant-free Mercator expansion of log(s / s(0)) together
    with the dropped constant s(0).
    """
    c = s.constant_term()
    if c <= 0:
        raise SingularityError(
            f"series_log needs a positive constant term, got {c}")
    v = s.scale(Fraction(1) / c) - 1
    D = s.trunc
    if D == 0 or v.is_zero():
        return LogSeries(TruncSeries.zero(s.npairs, s.trunc), c)
    # log(1+v) = sum_{k=1..D} (-1)^(k+1) v^k / k, by Horner from the inside
    acc = TruncSeries.constant(s.npairs, D, Fraction((-1) ** (D + 1), D))
    for k in range(D - 1, 0, -1):
        acc = TruncSeries.constant(s.npairs, D, Fraction((-1) ** (k + 1), k)) + v * acc
    return LogSeries(v * acc, c)


def series_exp(s: TruncSeries) -> TruncSeries:
    """Exponential of a series with zero constant term (so the result is
    rational), via the truncated factorial sum."""
    if s.constant_term() != 0:
        raise DomainError("series_exp needs zero constant term for exactness")
    D = s.trunc
    acc = TruncSeries.constant(s.npairs, D, Fraction(1, math.factorial(D)))
    for k in range(D - 1, -1, -1):
        acc = TruncSeries.constant(s.npairs, D, Fraction(1, math.factorial(k))) + s * acc
    return acc


def mixed_hessian(s: TruncSeries, i: int, j: int) -> Fraction:
    """d^2 s / (dw_i dwb_j) evaluated at the base point (0-based i, j).

    For a series this is just the coefficient of w_i * wb_j.
    """
    m = s.npairs
    if not (0 <= i < m and 0 <= j < m):
        raise ShapeError(f"hessian indices ({i},{j}) out of range for m={m}")
    if s.trunc < 2:
        raise TruncationError("mixed_hessian needs truncation degree >= 2")
    wexp = MultiIndex.unit(m, i)
    wbexp = MultiIndex.unit(m, j)
    return s.coefficient(wexp, wbexp)


# ---------------------------------------------------------------------------
# Matrices of series


class SeriesMatrix:
    """Square matrix with TruncSeries entries, all sharing (npairs, trunc)."""

    __slots__ = ("n", "npairs", "trunc", "entries")

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ShapeError("SeriesMatrix must be square and non-empty")
        first = rows[0][0]
        for r in rows:
            for s in r:
                if not isinstance(s, TruncSeries):
                    raise ShapeError("SeriesMatrix entries must be TruncSeries")
                first._check_compat(s)
        self.n = n
        self.npairs = first.npairs
        self.trunc = first.trunc
        self.entries = rows

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @staticmethod
    def identity(n: int, npairs: int, trunc: int) -> "SeriesMatrix":
        return SeriesMatrix(
            [[TruncSeries.one(npairs, trunc) if i == j
              else TruncSeries.zero(npairs, trunc) for j in range(n)]
             for i in range(n)])

    def __add__(self, other):
        self._check_same_shape(other)
        return SeriesMatrix(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.n)]
             for i in range(self.n)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return SeriesMatrix(
            [[self.entries[i][j] - other.entries[i][j] for j in range(self.n)]
             for i in range(self.n)])

    def _check_same_shape(self, other):
        if not isinstance(other, SeriesMatrix) or other.n != self.n:
            raise ShapeError("matrix shape mismatch")

    def __matmul__(self, other):
        self._check_same_shape(other)
        n = self.n
        z = TruncSeries.zero(self.npairs, self.trunc)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = z
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out)

    def map(self, f: Callable[[TruncSeries], TruncSeries]) -> "SeriesMatrix":
        return SeriesMatrix([[f(s) for s in row] for row in self.entries])

    def conj_transpose(self) -> "SeriesMatrix":
        return SeriesMatrix(
            [[self.entries[j][i].conj() for j in range(self.n)]
             for i in range(self.n)])

    def is_hermitian(self) -> bool:
        ct = self.conj_transpose()
        return all(ct.entries[i][j] == self.entries[i][j]
                   for i in range(self.n) for j in range(self.n))

    def value_at_base(self):
        """Constant-term matrix as a list of lists of Fractions."""
        return [[s.constant_term() for s in row] for row in self.entries]

    def det(self) -> TruncSeries:
        return series_det(self)

    def inverse(self) -> "SeriesMatrix":
        """Inverse via adjugate / det; exact through the truncation degree."""
        d = self.det()
        if d.constant_term() == 0:
            raise SingularityError("series matrix is singular at the base point")
        dinv = series_inverse(d)
        n = self.n
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = _series_minor(self, j, i)
                sign = -1 if (i + j) % 2 else 1
                out[i][j] = (series_det_of_rows(minor, self.npairs, self.trunc)
                             * dinv).scale(sign)
        return SeriesMatrix(out)


def _series_minor(M: SeriesMatrix, drop_row: int, drop_col: int):
    return [[M.entries[i][j] for j in range(M.n) if j != drop_col]
            for i in range(M.n) if i != drop_row]


def series_det_of_rows(rows, npairs, trunc) -> TruncSeries:
    """Determinant of a list-of-lists of TruncSeries by cofactor expansion."""
    n = len(rows)
    if n == 0:
        return TruncSeries.one(npairs, trunc)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = TruncSeries.zero(npairs, trunc)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * series_det_of_rows(minor, npairs, trunc)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def series_det(M: SeriesMatrix) -> TruncSeries:
    """Determinant of a SeriesMatrix (cofactor expansion; fine for the small
    frame counts this package works at)."""
    return series_det_of_rows(M.entries, M.npairs, M.trunc)
