"""Frame decompositions of submodule kernels and their Grammian metrics.

For an ideal generated by coordinate powers z_{v_1}^{i_1}, ..., z_{v_t}^{i_t}
the submodule kernel splits as

    K_M(., u) = sum_k conj(p_k)(u) F^k(., u)

with frame vectors built by distributing each diagonal kernel term c_a z^a
conj(u)^a over the generators that divide it.  The splitting rule used here
weights generator k on exponent a by

    s_k(a) = l_k a_k [a_k >= i_k] / sum_j l_j a_j [a_j >= i_j]

which reproduces the kernel exactly (the weights sum to 1 on the support)
and restricts on the zero variety to the product closed form
(poch(l_k, i_k)/i_k!) z_k^{i_k} prod_{free i} (1 - z_i conj(w_i))^{-l_i}.
Other splittings differ by a gauge transformation; the rule in force is
recorded on the frame so reports can state it.

Frame vectors are stored as maps from z-exponents to truncated series in the
displacement (u, ubar) from the base point.  The Grammian pairs frames by
monomial orthogonality; at a nonzero base point on the zero variety the
metric instead comes from the recentered closed form, with positive constants
that may be irrational (fractional powers) carried symbolically, since they
never influence curvature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (MultiIndex, SeriesMatrix, TruncSeries, iter_multiindices,
                      pochhammer, rat)
from .errors import (DegeneracyError, DomainError, ShapeError,
                     TruncationError, UnsupportedIdealError)
from .ideals import MONOMIAL, IdealSpec
from .linalg import leading_principal_minors
from .polynomials import Poly
from .rkhs import WeightedPolydiscModule, diag_coeff

COORDINATE_KIND = "coordinate_neighborhood"
ZERO_SET_KIND = "zero_set_slice"

SPLITTING_NOTE = ("kernel terms split over generators proportionally to "
                  "weight*exponent on the generator variable, restricted to "
                  "generators whose power divides the term")


@dataclass(frozen=True)
class PowerProduct:
    """Product of positive rational bases raised to rational exponents.

    Keeps quantities like (1 - |w|^2)^(-3/2) exact without evaluating the
    irrational power.  Factors with base 1 or exponent 0 are dropped.
    """
    factors: tuple = ()

    @staticmethod
    def one() -> "PowerProduct":
        return PowerProduct(())

    def times(self, base, exp) -> "PowerProduct":
        base, exp = rat(base), rat(exp)
        if base <= 0:
            raise DomainError(f"power-product base must be positive, got {base}")
        if base == 1 or exp == 0:
            return self
        merged = dict(self.factors)
        merged[base] = merged.get(base, Fraction(0)) + exp
        return PowerProduct(tuple(sorted((b, e) for b, e in merged.items() if e != 0)))

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        out = self
        for b, e in other.factors:
            out = out.times(b, e)
        return out

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for _, e in self.factors)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is irrational")
        out = Fraction(1)
        for b, e in self.factors:
            out *= b ** int(e)
        return out

    def float_value(self) -> float:
        out = 1.0
        for b, e in self.factors:
            out *= float(b) ** float(e)
        return out

    def is_one(self) -> bool:
        return not self.factors

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"({b})^({e})" for b, e in self.factors)


@dataclass(frozen=True)
class FrameSeries:
    """A finite frame for a submodule kernel near a base point.

    vectors[k] maps a z-exponent to the truncated (u, ubar)-series of that
    coefficient of F^k; generator k is the monomial z_{gen_vars[k]+1} to the
    power gen_powers[k].  free_slots lists the variables transverse to the
    generators (all variables for the coordinate-neighborhood kind).
    """
    module: WeightedPolydiscModule
    kind: str
    base_point: tuple
    trunc: int
    gen_vars: tuple
    gen_powers: tuple
    vectors: tuple
    free_slots: tuple
    lead_coeffs: tuple
    splitting_note: str = SPLITTING_NOTE

    @property
    def count(self) -> int:
        return len(self.vectors)

    def generator_polys(self):
        m = self.module.dim
        return tuple(Poly.monomial(m, MultiIndex.unit(m, v, p))
                     for v, p in zip(self.gen_vars, self.gen_powers))


def _build_splitting_frame(module, gen_vars, gen_powers, base_point, trunc):
    m = module.dim
    t = len(gen_vars)
    weights = module.weights
    zcap = trunc + max(gen_powers)
    # precompute the recentered conjugate-variable expansions (wb*_j + ub_j)^n
    base = [rat(x) for x in base_point]
    binom_pow = []
    for j in range(m):
        per_var = [TruncSeries.one(m, trunc)]
        lin = TruncSeries.wbar(m, trunc, j) + TruncSeries.constant(m, trunc, base[j])
        for _ in range(zcap):
            per_var.append(per_var[-1] * lin)
        binom_pow.append(per_var)

    vectors = [dict() for _ in range(t)]
    for alpha in iter_multiindices(m, zcap):
        qualifying = [k for k in range(t)
                      if alpha[gen_vars[k]] >= gen_powers[k]]
        if not qualifying:
            continue
        denom = sum(weights[gen_vars[k]] * alpha[gen_vars[k]]
                    for k in qualifying)
        c = diag_coeff(module, alpha)
        for k in qualifying:
            v = gen_vars[k]
            s = weights[v] * alpha[v] / denom
            down = list(alpha)
            down[v] -= gen_powers[k]
            series = TruncSeries.constant(m, trunc, s * c)
            for j, e in enumerate(down):
                if e:
                    series = series * binom_pow[j][e]
            if not series.is_zero():
                vectors[k][alpha] = series
    return vectors


def decompose_coordinate_ideal(module: WeightedPolydiscModule, trunc: int,
                               t: Optional[int] = None) -> FrameSeries:
    """Frame for the submodule generated by z_1, ..., z_t near the origin.

    The frame lives over a full neighborhood of 0 (all variables vary), one
    vector per coordinate generator, with F^k(., 0) = l_k z_k.
    """
    m = module.dim
    if t is None:
        t = m
    if not 1 <= t <= m:
        raise DomainError(f"need 1 <= t <= {m}, got {t}")
    if trunc < 2:
        raise TruncationError("frame truncation degree must be >= 2")
    gen_vars = tuple(range(t))
    gen_powers = (1,) * t
    vectors = _build_splitting_frame(module, gen_vars, gen_powers,
                                     (Fraction(0),) * m, trunc)
    leads = tuple(module.weights[v] for v in gen_vars)
    return FrameSeries(module, COORDINATE_KIND, (Fraction(0),) * m, trunc,
                       gen_vars, gen_powers, tuple(vectors),
                       tuple(range(m)), leads)


def _coordinate_power_data(ideal: IdealSpec):
    """(var, power) per generator, sorted by variable; distinct vars only."""
    if ideal.family != MONOMIAL:
        raise UnsupportedIdealError(
            "zero-set frames need a monomial ideal of coordinate powers")
    data = []
    for g in ideal.generators:
        e = g.monomial_exponent()
        support = [i for i, x in enumerate(e) if x > 0]
        if len(support) != 1:
            raise UnsupportedIdealError(
                f"generator {g} mixes variables; no closed-form frame")
        if next(iter(g.coeffs.values())) != 1:
            raise UnsupportedIdealError("generators must be monic monomials")
        data.append((support[0], e[support[0]]))
    vars_seen = [v for v, _ in data]
    if len(set(vars_seen)) != len(vars_seen):
        raise UnsupportedIdealError(
            "two generators share a variable; the generating set is redundant")
    data.sort()
    return data


def frame_on_zero_set(module: WeightedPolydiscModule, ideal: IdealSpec,
                      base_point, trunc: int) -> FrameSeries:
    """Frame for a coordinate-power ideal at a point of its zero variety.

    The base point must vanish on every generator variable and stay inside
    the open polydisc.  Frame vectors restrict on the variety to the product
    closed form and are pairwise orthogonal there.
    """
    if trunc < 2:
        raise TruncationError("frame truncation degree must be >= 2")
    m = module.dim
    data = _coordinate_power_data(ideal)
    gen_vars = tuple(v for v, _ in data)
    gen_powers = tuple(p for _, p in data)
    base = tuple(rat(x) for x in base_point)
    if len(base) != m:
        raise ShapeError(f"base point has arity {len(base)}, expected {m}")
    if any(abs(x) >= 1 for x in base):
        raise DomainError(f"base point {base} is outside the open polydisc")
    for v in gen_vars:
        if base[v] != 0:
            raise DomainError(
                f"base point must lie on the zero variety: z{v+1} component "
                f"is {base[v]}, expected 0")
    vectors = _build_splitting_frame(module, gen_vars, gen_powers, base, trunc)
    free = tuple(i for i in range(m) if i not in gen_vars)
    leads = tuple(pochhammer(module.weights[v], p) / math.factorial(p)
                  for v, p in zip(gen_vars, gen_powers))
    return FrameSeries(module, ZERO_SET_KIND, base, trunc,
                       gen_vars, gen_powers, tuple(vectors), free, leads)


# ---------------------------------------------------------------------------
# Grammian metric


@dataclass(frozen=True)
class MetricSeries:
    """Grammian of a frame as a matrix of truncated series.

    Entry (i, j) is <F_j, F_i> expanded around the base point.  For
    zero-variety frames at a nonzero base the diagonal carries a symbolic
    positive constant (scales[k]); scales multiply the stored series and are
    irrelevant to every log-derivative.  scales None means all ones.
    """
    matrix: SeriesMatrix
    base_point: tuple
    free_slots: tuple
    scales: Optional[tuple] = None

    @property
    def size(self) -> int:
        return self.matrix.n

    def is_diagonal(self) -> bool:
        n = self.matrix.n
        return all(self.matrix[i, j].is_zero()
                   for i in range(n) for j in range(n) if i != j)

    def value_at_base(self):
        return self.matrix.value_at_base()


def _restrict_to_slice(series: TruncSeries, killed):
    """Zero out terms that move in the killed directions (u_j or ub_j)."""
    m = series.npairs
    out = {}
    for k, v in series.coeffs.items():
        if all(k[j] == 0 and k[m + j] == 0 for j in killed):
            out[k] = v
    return TruncSeries(m, series.trunc, out)


def _metric_by_monomial_sum(frame: FrameSeries) -> SeriesMatrix:
    module = frame.module
    m = module.dim
    D = frame.trunc
    t = frame.count
    killed = [] if frame.kind == COORDINATE_KIND else list(frame.gen_vars)
    restricted = []
    for vec in frame.vectors:
        if killed:
            restricted.append({a: _restrict_to_slice(s, killed)
                               for a, s in vec.items()})
        else:
            restricted.append(vec)
    entries = [[TruncSeries.zero(m, D) for _ in range(t)] for _ in range(t)]
    for i in range(t):
        for j in range(t):
            acc = TruncSeries.zero(m, D)
            vi, vj = restricted[i], restricted[j]
            if len(vi) > len(vj):
                common = (a for a in vj if a in vi)
            else:
                common = (a for a in vi if a in vj)
            for a in common:
                term = vj[a] * vi[a].conj()
                if not term.is_zero():
                    acc = acc + term * (1 / diag_coeff(module, a))
            entries[i][j] = acc
    return SeriesMatrix(entries)


def _recentered_inverse_power(m, trunc, slot, center, weight) -> TruncSeries:
    """(1 - w w_bar)^(-weight) recentered at a real rational center,
    normalized by its value there: the series of (1 - v)^(-weight) with
    v = (c*u + c*ub + u*ub) / (1 - c^2)."""
    c = rat(center)
    denom = 1 - c * c
    u = TruncSeries.w(m, trunc, slot)
    ub = TruncSeries.wbar(m, trunc, slot)
    v = (u.scale(c) + ub.scale(c) + u * ub).scale(Fraction(1) / denom)
    acc = TruncSeries.constant(m, trunc, pochhammer(weight, trunc)
                               / math.factorial(trunc))
    for n in range(trunc - 1, -1, -1):
        acc = TruncSeries.constant(m, trunc,
                                   pochhammer(weight, n) / math.factorial(n)) \
            + v * acc
    return acc


def _metric_by_closed_form(frame: FrameSeries):
    """Diagonal zero-variety metric from the recentered product form."""
    module = frame.module
    m = module.dim
    D = frame.trunc
    t = frame.count
    factors = {}
    for i in frame.free_slots:
        factors[i] = _recentered_inverse_power(
            m, D, i, frame.base_point[i], module.weights[i])
    entries = [[TruncSeries.zero(m, D) for _ in range(t)] for _ in range(t)]
    scales = []
    for k in range(t):
        s = TruncSeries.constant(m, D, frame.lead_coeffs[k])
        scale = PowerProduct.one()
        for i in frame.free_slots:
            s = s * factors[i]
            c = rat(frame.base_point[i])
            scale = scale.times(1 - c * c, -module.weights[i])
        entries[k][k] = s
        scales.append(scale)
    return SeriesMatrix(entries), tuple(scales)


def grammian(frame: FrameSeries) -> MetricSeries:
    """Grammian metric of a frame, exact through the truncation degree.

    Coordinate-neighborhood frames and zero-variety frames based at the
    origin slice pair off by monomial orthogonality.  A zero-variety frame
    at a nonzero base point uses the recentered closed form instead, because
    infinitely many kernel terms hit every series degree there; the two
    routes agree where both apply.
    """
    base_is_zero = all(x == 0 for x in frame.base_point)
    scales = None
    if frame.kind == COORDINATE_KIND or base_is_zero:
        matrix = _metric_by_monomial_sum(frame)
    else:
        matrix, scales = _metric_by_closed_form(frame)
        if all(s.is_rational() for s in scales):
            # fold rational scale constants into the series so reported
            # values are the true norms; symbolic carry is only for
            # irrational powers arising from fractional weights
            folded = [[matrix[i, j] for j in range(matrix.n)]
                      for i in range(matrix.n)]
            for k, s in enumerate(scales):
                folded[k][k] = folded[k][k].scale(s.rational_value())
            matrix = SeriesMatrix(folded)
            scales = None
    if not matrix.is_hermitian():
        raise DegeneracyError("Grammian failed the Hermitian check")
    base_vals = matrix.value_at_base()
    minors = leading_principal_minors(base_vals)
    if any(d <= 0 for d in minors):
        raise DegeneracyError(
            "frame is linearly dependent (Grammian not positive definite "
            f"at the base point; principal minors {minors})")
    return MetricSeries(matrix, frame.base_point, frame.free_slots, scales)


# ---------------------------------------------------------------------------
# Reconstruction check


def reconstruction_residual(frame: FrameSeries) -> dict:
    """Residual of sum_k conj(p_k) F^k against the kernel, per z-exponent.

    Returns only the nonzero residual series; an empty dict certifies the
    reconstruction identity on the stored support through the truncation
    degree.  Exact rational arithmetic throughout.
    """
    module = frame.module
    m = module.dim
    D = frame.trunc
    base = frame.base_point
    zcap = D + max(frame.gen_powers)

    pbar = []
    for v, p in zip(frame.gen_vars, frame.gen_powers):
        # conj(p_k)(base + u) = ub_v^p since the base vanishes there
        pbar.append(TruncSeries.wbar(m, D, v, p))

    binom_pow = []
    for j in range(m):
        per_var = [TruncSeries.one(m, D)]
        lin = TruncSeries.wbar(m, D, j) + TruncSeries.constant(m, D, base[j])
        for _ in range(zcap):
            per_var.append(per_var[-1] * lin)
        binom_pow.append(per_var)

    residuals = {}
    for alpha in iter_multiindices(m, zcap):
        if not any(alpha[v] >= p
                   for v, p in zip(frame.gen_vars, frame.gen_powers)):
            continue
        lhs = TruncSeries.zero(m, D)
        for k in range(frame.count):
            fk = frame.vectors[k].get(alpha)
            if fk is not None:
                lhs = lhs + pbar[k] * fk
        rhs = TruncSeries.constant(m, D, diag_coeff(module, alpha))
        for j, e in enumerate(alpha):
            if e:
                rhs = rhs * binom_pow[j][e]
        diff = lhs - rhs
        if not diff.is_zero():
            residuals[alpha] = diff
    return residuals


def frame_vector_at_base(frame: FrameSeries, k: int) -> dict:
    """z-exponent -> Fraction coefficient of F^k frozen at the base point."""
    out = {}
    for a, s in frame.vectors[k].items():
        c = s.constant_term()
        if c != 0:
            out[a] = c
    return out
