"""Weighted analytic modules on the polydisc and submodule kernels.

The ambient module with weight vector (l_1, ..., l_m), all positive
rationals, has reproducing kernel prod_i (1 - z_i conj(w_i))^(-l_i); the
monomials are orthogonal with ||z^alpha||^2 = 1 / diag_coeff(alpha) where
diag_coeff(alpha) = prod_i poch(l_i, alpha_i) / alpha_i!.  Weight 1 in every
slot is the Hardy module, weight 2 the unweighted Bergman module.

Submodules generated by polynomial ideals get one of three kernel
representations, chosen by the ideal family:

  DiagonalFilteredKernel   monomial ideals: the ambient diagonal restricted
                           to exponents divisible by some generator
  RankOneCorrectedKernel   vanishing ideals of a point: Cholesky-style
                           rank-one corrections of the ambient kernel
  GramFormKernel           anything else: exact Gram matrix of a degree-
                           truncated generating basis

Exact evaluation works at real rational points of the open polydisc.  The
integer-weight closed forms are rational; everything else goes through
partial sums that carry an explicit rational remainder bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import MultiIndex, iter_multiindices, pochhammer, rat
from .errors import DomainError, ShapeError, TruncationError
from .ideals import (COORDINATE_VANISHING, GENERAL, MONOMIAL, CATALOGUED,
                     IdealSpec, vanishing_point)
from .linalg import leading_principal_minors, mat_rank, mat_solve
from .polynomials import Poly
import math


@dataclass(frozen=True)
class WeightedPolydiscModule:
    """The weighted analytic Hilbert module on the polydisc of dimension dim."""
    dim: int
    weights: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"polydisc dimension must be >= 1, got {self.dim}")
        ws = tuple(rat(x) for x in self.weights)
        if len(ws) != self.dim:
            raise DomainError(
                f"need {self.dim} weights, got {len(ws)}")
        if any(w <= 0 for w in ws):
            raise DomainError(f"weights must be positive, got {ws}")
        object.__setattr__(self, "weights", ws)

    @staticmethod
    def hardy(dim: int) -> "WeightedPolydiscModule":
        return WeightedPolydiscModule(dim, (Fraction(1),) * dim)

    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self.weights)

    def describe(self) -> str:
        return ("weighted module on D^%d with weights (%s)"
                % (self.dim, ", ".join(str(w) for w in self.weights)))


def diag_coeff(module: WeightedPolydiscModule, alpha) -> Fraction:
    """Kernel diagonal coefficient c_alpha = prod poch(l_i, a_i) / a_i!."""
    a = MultiIndex(alpha)
    if len(a) != module.dim:
        raise ShapeError(f"multi-index arity {len(a)} != dimension {module.dim}")
    out = Fraction(1)
    for w, e in zip(module.weights, a):
        out *= pochhammer(w, e) / math.factorial(e)
    return out


def monomial_norm_sq(module: WeightedPolydiscModule, alpha) -> Fraction:
    return 1 / diag_coeff(module, alpha)


def poly_inner(module: WeightedPolydiscModule, p: Poly, q: Poly) -> Fraction:
    """Inner product <p, q> via monomial orthogonality.

    Coefficients are real rationals, so no conjugation shows up.
    """
    if p.nvars != module.dim or q.nvars != module.dim:
        raise ShapeError("polynomial arity does not match the module dimension")
    if len(p.coeffs) > len(q.coeffs):
        p, q = q, p
    total = Fraction(0)
    for k, v in p.coeffs.items():
        u = q.coeffs.get(k)
        if u is not None:
            total += v * u / diag_coeff(module, k)
    return total


def _check_point(module, point, label="point"):
    pt = tuple(rat(x) for x in point)
    if len(pt) != module.dim:
        raise ShapeError(f"{label} has arity {len(pt)}, expected {module.dim}")
    if any(abs(x) >= 1 for x in pt):
        raise DomainError(f"{label} {pt} is not inside the open polydisc")
    return pt


def ambient_kernel_exact(module: WeightedPolydiscModule, z, w) -> Fraction:
    """prod (1 - z_i w_i)^(-l_i) at real rational points; integer weights only."""
    z = _check_point(module, z, "z")
    w = _check_point(module, w, "w")
    if not module.has_integer_weights():
        raise DomainError("closed-form ambient kernel needs integer weights")
    out = Fraction(1)
    for l, zi, wi in zip(module.weights, z, w):
        out *= (1 - zi * wi) ** (-int(l))
    return out


@dataclass(frozen=True)
class Bounded:
    """An exact partial-sum value together with a rational remainder bound:
    the true value lies in [value - bound, value + bound]."""
    value: Fraction
    bound: Fraction

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Bounded(rat(other), Fraction(0))
        return Bounded(self.value + other.value, self.bound + other.bound)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Bounded(rat(other), Fraction(0))
        return Bounded(self.value - other.value, self.bound + other.bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Bounded(rat(other), Fraction(0))
        return Bounded(self.value * other.value,
                       abs(self.value) * other.bound
                       + abs(other.value) * self.bound
                       + self.bound * other.bound)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Bounded(rat(other), Fraction(0))
        if abs(other.value) <= other.bound:
            raise DomainError(
                "division by a bounded quantity whose interval contains zero")
        lo = abs(other.value) - other.bound
        err = (self.bound * abs(other.value) + abs(self.value) * other.bound) \
            / (lo * abs(other.value))
        return Bounded(self.value / other.value, err)


def _diagonal_tail_bound(total_weight: Fraction, rho: Fraction, N: int) -> Fraction:
    """Upper bound for sum_{n > N} poch(L, n)/n! rho^n with 0 <= rho < 1.

    Works by summing exact terms until the term ratio rho (L+n)/(n+1) drops
    below 1, then closing with a geometric tail.
    """
    if rho == 0:
        return Fraction(0)
    if not 0 < rho < 1:
        raise DomainError(f"tail bound needs 0 <= rho < 1, got {rho}")
    n = N + 1
    term = pochhammer(total_weight, n) / math.factorial(n) * rho ** n
    total = Fraction(0)
    while True:
        ratio = rho * (total_weight + n) / (n + 1)
        if ratio < 1:
            return total + term / (1 - ratio)
        total += term
        term *= ratio
        n += 1


def ambient_kernel_bounded(module: WeightedPolydiscModule, z, w, N: int) -> Bounded:
    """Degree-N partial sum of the ambient kernel with a remainder bound."""
    z = _check_point(module, z, "z")
    w = _check_point(module, w, "w")
    value = Fraction(0)
    for alpha in iter_multiindices(module.dim, N):
        c = diag_coeff(module, alpha)
        term = c
        for zi, wi, e in zip(z, w, alpha):
            term *= (zi * wi) ** e
        value += term
    rho = max(abs(zi * wi) for zi, wi in zip(z, w))
    return Bounded(value, _diagonal_tail_bound(sum(module.weights), rho, N))


# ---------------------------------------------------------------------------
# Kernel representations


class DiagonalFilteredKernel:
    """Submodule kernel of a monomial ideal: the ambient diagonal sum
    restricted to exponents divisible by some generator."""

    variant = "diagonal_filtered"

    def __init__(self, module: WeightedPolydiscModule, generator_exponents,
                 default_trunc: int = 30):
        self.module = module
        self.generator_exponents = tuple(MultiIndex(e) for e in generator_exponents)
        if not self.generator_exponents:
            raise DomainError("need at least one generator exponent")
        for e in self.generator_exponents:
            if len(e) != module.dim:
                raise ShapeError("generator exponent arity mismatch")
            if e.degree == 0:
                raise DomainError("the unit monomial generates the whole module")
        self.default_trunc = default_trunc

    def supports(self, alpha) -> bool:
        a = MultiIndex(alpha)
        return any(g.divides(a) for g in self.generator_exponents)

    def eval_exact(self, z, w) -> Fraction:
        """Closed form by inclusion-exclusion over generator subsets.

        For a subset S the exponents divisible by every generator in S are
        those >= the componentwise max gamma_S, and the coordinatewise sum
        sum_{a >= g} poch(l,a)/a! x^a is the full binomial series minus a
        polynomial, which is rational iff the weight is a positive integer.
        """
        z = _check_point(self.module, z, "z")
        w = _check_point(self.module, w, "w")
        if not self.module.has_integer_weights():
            raise DomainError(
                "closed-form evaluation needs integer weights; "
                "use eval_truncated for fractional weights")
        gens = self.generator_exponents
        total = Fraction(0)
        for mask in range(1, 1 << len(gens)):
            chosen = [gens[i] for i in range(len(gens)) if mask >> i & 1]
            gamma = MultiIndex(max(g[i] for g in chosen)
                               for i in range(self.module.dim))
            sign = -1 if bin(mask).count("1") % 2 == 0 else 1
            term = Fraction(1)
            for l, zi, wi, g in zip(self.module.weights, z, w, gamma):
                x = zi * wi
                full = (1 - x) ** (-int(l))
                head = sum((pochhammer(l, a) / math.factorial(a) * x ** a
                            for a in range(g)), Fraction(0))
                term *= full - head
            total += sign * term
        return total

    def eval_truncated(self, z, w, N: Optional[int] = None) -> Bounded:
        z = _check_point(self.module, z, "z")
        w = _check_point(self.module, w, "w")
        if N is None:
            N = self.default_trunc
        value = Fraction(0)
        for alpha in iter_multiindices(self.module.dim, N):
            if not self.supports(alpha):
                continue
            term = diag_coeff(self.module, alpha)
            for zi, wi, e in zip(z, w, alpha):
                term *= (zi * wi) ** e
            value += term
        rho = max(abs(zi * wi) for zi, wi in zip(z, w))
        # the filtered diagonal is dominated termwise by the full diagonal
        return Bounded(value, _diagonal_tail_bound(sum(self.module.weights), rho, N))


class RankOneCorrectedKernel:
    """Ambient kernel minus successive rank-one corrections, one per point:
    the kernel of functions vanishing at all the correction points."""

    variant = "rank_one_corrected"

    def __init__(self, module: WeightedPolydiscModule, points,
                 default_trunc: int = 30):
        self.module = module
        self.points = tuple(_check_point(module, p, "correction point")
                            for p in points)
        if not self.points:
            raise DomainError("need at least one correction point")
        self.default_trunc = default_trunc

    def _eval(self, z, w, base_eval):
        def k(depth, x, y):
            if depth == 0:
                return base_eval(x, y)
            a = self.points[depth - 1]
            kxy = k(depth - 1, x, y)
            kxa = k(depth - 1, x, a)
            kay = k(depth - 1, a, y)
            kaa = k(depth - 1, a, a)
            return kxy - kxa * kay / kaa
        return k(len(self.points), z, w)

    def eval_exact(self, z, w) -> Fraction:
        z = _check_point(self.module, z, "z")
        w = _check_point(self.module, w, "w")
        return self._eval(z, w, lambda x, y: ambient_kernel_exact(self.module, x, y))

    def eval_truncated(self, z, w, N: Optional[int] = None) -> Bounded:
        z = _check_point(self.module, z, "z")
        w = _check_point(self.module, w, "w")
        if N is None:
            N = self.default_trunc
        return self._eval(
            z, w, lambda x, y: ambient_kernel_bounded(self.module, x, y, N))


class GramFormKernel:
    """Reproducing kernel of the span of generator multiples up to a degree.

    basis holds a maximal independent subset of {z^beta p_j} with
    deg <= trunc_degree, picked greedily in a deterministic order; gram is
    the exact Gram matrix, positive definite by construction (checked).
    """

    variant = "gram_form"

    def __init__(self, module: WeightedPolydiscModule, basis, gram,
                 trunc_degree: int):
        self.module = module
        self.basis = tuple(basis)
        self.gram = [list(row) for row in gram]
        self.trunc_degree = trunc_degree
        minors = leading_principal_minors(self.gram)
        if any(d <= 0 for d in minors):
            raise DomainError("Gram matrix is not positive definite")
        self.gram_minors = minors

    @staticmethod
    def from_ideal(module: WeightedPolydiscModule, ideal: IdealSpec,
                   trunc_degree: int) -> "GramFormKernel":
        if trunc_degree < ideal.max_degree:
            raise TruncationError(
                f"truncation degree {trunc_degree} is below the maximal "
                f"generator degree {ideal.max_degree}")
        m = module.dim
        candidates = []
        for g in ideal.generators:
            for beta in iter_multiindices(m, trunc_degree - g.degree):
                candidates.append(g.shift_by_monomial(beta))
        # greedy maximal independent subset, deterministic given the order
        index = {a: k for k, a in enumerate(iter_multiindices(m, trunc_degree))}
        chosen, rows = [], []
        for p in candidates:
            row = [Fraction(0)] * len(index)
            for k, v in p.coeffs.items():
                row[index[k]] = v
            if mat_rank(rows + [row]) > len(chosen):
                chosen.append(p)
                rows.append(row)
        gram = [[poly_inner(module, a, b) for b in chosen] for a in chosen]
        return GramFormKernel(module, chosen, gram, trunc_degree)

    def eval_exact(self, z, w) -> Fraction:
        """b(z)^T G^{-1} b(w); exact for every rational weight vector."""
        z = _check_point(self.module, z, "z")
        w = _check_point(self.module, w, "w")
        bw = [p.evaluate(w) for p in self.basis]
        x = mat_solve(self.gram, bw)
        return sum((p.evaluate(z) * xi for p, xi in zip(self.basis, x)),
                   Fraction(0))

    def eval_truncated(self, z, w, N: Optional[int] = None) -> Bounded:
        # the Gram form *is* the degree-truncated kernel; no analytic tail
        # is claimed beyond the construction degree
        return Bounded(self.eval_exact(z, w), Fraction(0))


def submodule_kernel(module: WeightedPolydiscModule, ideal: IdealSpec,
                     trunc_degree: int = 6):
    """Kernel representation of the submodule generated by the ideal.

    Dispatches on the ideal family; the returned object exposes
    eval_exact / eval_truncated plus a .variant tag for reports.
    """
    if ideal.nvars != module.dim:
        raise ShapeError("ideal and module live in different dimensions")
    if trunc_degree < 1:
        raise TruncationError("truncation degree must be >= 1")
    if ideal.family == COORDINATE_VANISHING:
        return RankOneCorrectedKernel(module, [vanishing_point(ideal)])
    if ideal.family == MONOMIAL:
        exps = [g.monomial_exponent() for g in ideal.generators]
        return DiagonalFilteredKernel(module, exps)
    if ideal.family in (CATALOGUED, GENERAL):
        return GramFormKernel.from_ideal(module, ideal, trunc_degree)
    raise DomainError(f"unknown ideal family {ideal.family!r}")
