"""Curvature of Grammian metrics, gauge transformations, and a floating
cross-check oracle.

Conventions, fixed once here and echoed into every report:

  * metric entry (i, j) pairs the j-th frame vector against the i-th, so a
    frame change F -> F A transforms the metric by H -> A* H A;
  * the curvature block (i, j) is d/dw_i ( H^{-1} d/dwbar_j H ) frozen at
    the base point, which transforms by K -> A^{-1} K A;
  * the determinant-bundle curvature is the mixed Hessian of log det H,
    equal to the blockwise trace of the curvature matrix.

With these signs the catalogued rank-one examples come out positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable, Optional

from .algebra import (SeriesMatrix, TruncSeries, iter_multiindices,
                      mixed_hessian, pochhammer, rat, series_log)
from .errors import DomainError, ShapeError, SingularityError, TruncationError
from .frames import MetricSeries, frame_on_zero_set, grammian
from .ideals import IdealSpec
from .linalg import mat_det, mat_inverse, mat_mul, nullspace
from .polynomials import Poly
from .rkhs import WeightedPolydiscModule, diag_coeff

CONVENTION = ("metric H_ij = <F_j, F_i>; curvature block (i,j) = "
              "d_{w_i}(H^{-1} d_{wbar_j} H) at the base point; "
              "det-bundle curvature = mixed Hessian of log det H "
              "(= blockwise trace of the curvature matrix)")


def line_curvature(h: TruncSeries, i: int, j: int) -> Fraction:
    """Mixed Hessian d_i dbar_j of log h at the base point, for a scalar
    (line-bundle) metric h with positive value there.

    Multiplying h by any positive constant, or by f * conj(f) for f with
    f(0) != 0, leaves the result unchanged.
    """
    return mixed_hessian(series_log(h).series, i, j)


def det_bundle_curvature(metric: MetricSeries):
    """Full matrix of mixed Hessians of log det H at the base point.

    Symbolic diagonal scales multiply det H by a positive constant only, so
    they drop out of the logarithm's derivatives and are ignored here.
    """
    d = metric.matrix.det()
    logd = series_log(d).series
    m = metric.matrix.npairs
    return tuple(tuple(mixed_hessian(logd, i, j) for j in range(m))
                 for i in range(m))


@dataclass(frozen=True)
class CurvatureTensor:
    """Curvature blocks of a Grammian metric at its base point.

    blocks[i][j] is the t-by-t rational matrix of the (i, j) mixed
    derivative; i, j run over all ambient variables, with blocks vanishing
    identically in directions the metric does not move in.
    """
    base_point: tuple
    size: int
    blocks: tuple
    free_slots: tuple
    convention: str = CONVENTION

    def block(self, i: int, j: int):
        return self.blocks[i][j]

    def trace_matrix(self):
        m = len(self.blocks)
        return tuple(
            tuple(sum((self.blocks[i][j][k][k] for k in range(self.size)),
                      Fraction(0)) for j in range(m))
            for i in range(m))


def _fold_scales(metric: MetricSeries) -> SeriesMatrix:
    """Fold symbolic scales into the stored series when they are rational;
    refuse otherwise, since exact matrix algebra cannot absorb them."""
    if metric.scales is None:
        return metric.matrix
    n = metric.matrix.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            s = metric.matrix[i, j]
            if i == j:
                if not metric.scales[i].is_rational():
                    raise DomainError(
                        "metric carries irrational symbolic scales; "
                        "diagonal-only operations apply, not full matrix algebra")
                s = s.scale(metric.scales[i].rational_value())
            row.append(s)
        rows.append(row)
    return SeriesMatrix(rows)


def curvature_matrix(metric: MetricSeries) -> CurvatureTensor:
    """Curvature blocks d_i(H^{-1} dbar_j H)(base) for every variable pair.

    Needs truncation degree >= 4 so the inverse-times-derivative product is
    exact through the extraction order with margin.  Diagonal metrics with
    symbolic scales are handled entrywise (the scales cancel); general
    matrices must carry rational entries only.
    """
    H = metric.matrix
    m = H.npairs
    t = H.n
    if H.trunc < 4:
        raise TruncationError(
            f"curvature_matrix needs truncation degree >= 4, got {H.trunc}")
    if metric.scales is not None and metric.is_diagonal():
        # h_k = scale_k * series: scale cancels in dbar(h)/h
        blocks = []
        for i in range(m):
            row_i = []
            for j in range(m):
                block = [[Fraction(0)] * t for _ in range(t)]
                for k in range(t):
                    h = H[k, k]
                    block[k][k] = line_curvature_unnormalized(h, i, j)
                row_i.append(tuple(tuple(r) for r in block))
            blocks.append(tuple(row_i))
        return CurvatureTensor(metric.base_point, t, tuple(blocks),
                               metric.free_slots)
    Hf = _fold_scales(metric)
    if Hf.det().constant_term() == 0:
        raise SingularityError("metric is singular at the base point")
    Hinv = Hf.inverse()
    D1 = Hf.trunc - 1
    blocks = []
    for i in range(m):
        row_i = []
        for j in range(m):
            Bj = SeriesMatrix([[ (Hinv.entries[a][b].truncate(D1))
                                 for b in range(t)] for a in range(t)]) @ \
                 Hf.map(lambda s, jj=j: s.dwbar(jj))
            block = tuple(
                tuple(Bj.entries[a][b].dw(i).constant_term() for b in range(t))
                for a in range(t))
            row_i.append(block)
        blocks.append(tuple(row_i))
    return CurvatureTensor(metric.base_point, t, tuple(blocks),
                           metric.free_slots)


def line_curvature_unnormalized(h: TruncSeries, i: int, j: int) -> Fraction:
    """d_i(dbar_j h / h)(base) for a scalar metric entry; equals the mixed
    Hessian of log h at the base point."""
    c = h.constant_term()
    if c <= 0:
        raise SingularityError("scalar metric must be positive at the base")
    # d_i(dbar_j h / h) at 0 = (h d_i dbar_j h - d_i h dbar_j h) / h^2 at 0
    dij = mixed_hessian(h, i, j)
    di = h.dw(i).constant_term()
    dj = h.dwbar(j).constant_term()
    return (c * dij - di * dj) / (c * c)


# ---------------------------------------------------------------------------
# Gauge transformations


def _check_square_rational(A, size=None):
    M = [[rat(x) for x in row] for row in A]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ShapeError("gauge matrix must be square")
    if size is not None and n != size:
        raise ShapeError(f"gauge matrix must be {size}x{size}, got {n}x{n}")
    if mat_det(M) == 0:
        raise SingularityError("gauge matrix is not invertible")
    return M


def gauge_transform_metric(metric: MetricSeries, A) -> MetricSeries:
    """Metric of the re-combined frame F' = F A:  H' = A* H A.

    A has rational (hence real) entries, so A* is the transpose.
    """
    Hf = _fold_scales(metric)
    t = Hf.n
    M = _check_square_rational(A, t)
    rows = []
    for i in range(t):
        row = []
        for j in range(t):
            acc = TruncSeries.zero(Hf.npairs, Hf.trunc)
            for k in range(t):
                for l in range(t):
                    c = M[k][i] * M[l][j]
                    if c != 0:
                        acc = acc + Hf.entries[k][l].scale(c)
            row.append(acc)
        rows.append(row)
    return MetricSeries(SeriesMatrix(rows), metric.base_point,
                        metric.free_slots, None)


def gauge_conjugate(K: CurvatureTensor, A) -> CurvatureTensor:
    """Curvature of the gauge-transformed frame: every block goes to
    A^{-1} block A."""
    M = _check_square_rational(A, K.size)
    Minv = mat_inverse(M)
    blocks = tuple(
        tuple(tuple(tuple(row) for row in mat_mul(mat_mul(Minv, [list(r) for r in K.blocks[i][j]]), M))
              for j in range(len(K.blocks[i])))
        for i in range(len(K.blocks)))
    return CurvatureTensor(K.base_point, K.size, blocks, K.free_slots,
                           K.convention)


def gauge_equivalent(K1: CurvatureTensor, K2: CurvatureTensor):
    """Invertible rational A with A^{-1} K1 A = K2 blockwise, or None.

    The intertwining equations K1_b A = A K2_b are linear in A; an
    invertible element of their solution space is found, when one exists, by
    expanding the determinant of a generic combination as an exact
    polynomial and scanning a small deterministic grid (a nonzero polynomial
    of per-variable degree <= t cannot vanish on a grid with t+1 values per
    variable).
    """
    if K1.size != K2.size or len(K1.blocks) != len(K2.blocks):
        raise ShapeError("curvature tensors have different shapes")
    t = K1.size
    rows = []
    for i in range(len(K1.blocks)):
        for j in range(len(K1.blocks[i])):
            B1 = K1.blocks[i][j]
            B2 = K2.blocks[i][j]
            for r in range(t):
                for c in range(t):
                    row = [Fraction(0)] * (t * t)
                    for s in range(t):
                        row[s * t + c] += B1[r][s]
                        row[r * t + s] -= B2[s][c]
                    rows.append(row)
    if not rows:
        raise ShapeError("curvature tensors carry no blocks")
    basis = nullspace(rows)
    if not basis:
        return None
    r = len(basis)
    # det of sum x_i X_i as an exact polynomial in x_1..x_r
    entries = [[Poly.zero(r) for _ in range(t)] for _ in range(t)]
    for idx, vec in enumerate(basis):
        xi = Poly.variable(r, idx)
        for a in range(t):
            for b in range(t):
                if vec[a * t + b] != 0:
                    entries[a][b] = entries[a][b] + xi * vec[a * t + b]
    detp = _poly_det(entries)
    if detp.is_zero():
        return None
    for point in iter_product(range(t + 1), repeat=r):
        if detp.evaluate([Fraction(x) for x in point]) != 0:
            A = [[Fraction(0)] * t for _ in range(t)]
            for idx, vec in enumerate(basis):
                if point[idx]:
                    for a in range(t):
                        for b in range(t):
                            A[a][b] += point[idx] * vec[a * t + b]
            return tuple(tuple(row) for row in A)
    return None  # unreachable for nonzero detp by the grid argument


def _poly_det(entries):
    n = len(entries)
    if n == 1:
        return entries[0][0]
    acc = Poly.zero(entries[0][0].nvars)
    for j in range(n):
        if entries[0][j].is_zero():
            continue
        minor = [[entries[i][k] for k in range(n) if k != j]
                 for i in range(1, n)]
        term = entries[0][j] * _poly_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


# ---------------------------------------------------------------------------
# Principal-ideal curvature pair

EQCC_NOTE = ("two readings of the transverse curvature of a principal "
             "power-ideal frame on the bidisc: the mixed Hessian of the "
             "squared frame norm itself equals mu * poch(lambda, p)/p!, "
             "while the mixed Hessian of its logarithm equals mu; the two "
             "differ by the squared norm at the base point, and both are "
             "reported because the source display uses the un-logged value "
             "where the log-derivative convention would give mu")


@dataclass(frozen=True)
class PrincipalCurvaturePair:
    raw: Fraction        # mixed Hessian of ||F_1||^2 itself
    log_based: Fraction  # mixed Hessian of log ||F_1||^2
    note: str = EQCC_NOTE


def principal_curvature_pair(module: WeightedPolydiscModule, p: int,
                             trunc: int = 4) -> PrincipalCurvaturePair:
    """Both transverse-curvature readings for <z_1^p> on the bidisc at the
    origin slice point."""
    if module.dim != 2:
        raise DomainError("the principal curvature pair is a bidisc quantity")
    if p < 1:
        raise DomainError(f"need p >= 1, got {p}")
    ideal = IdealSpec.coordinate_powers(2, (p,))
    frame = frame_on_zero_set(module, ideal, (Fraction(0), Fraction(0)), trunc)
    H = grammian(frame)
    h = H.matrix[0, 0]
    return PrincipalCurvaturePair(raw=mixed_hessian(h, 1, 1),
                                  log_based=line_curvature(h, 1, 1))


# ---------------------------------------------------------------------------
# Floating-point finite-difference oracle


def fd_mixed_hessian(f: Callable, point, i: int, j: int, h: float = 1e-3):
    """Central finite-difference estimate of d_i dbar_j f at a point.

    f maps a tuple of complex numbers to a real float.  The diagonal uses
    the five-point quarter-Laplacian; off-diagonal terms combine four-point
    mixed stencils through the Wirtinger identities.  Truncation error is
    O(h^2) against the analytic value.
    """
    pt = [complex(x) for x in point]

    def at(*shifts):
        q = list(pt)
        for slot, dz in shifts:
            q[slot] = q[slot] + dz
        return f(tuple(q))

    if i == j:
        lap = (at((i, h)) + at((i, -h)) + at((i, 1j * h)) + at((i, -1j * h))
               - 4.0 * at())
        return lap / (4.0 * h * h)

    def mixed(di, dj):
        return (at((i, di), (j, dj)) - at((i, di), (j, -dj))
                - at((i, -di), (j, dj)) + at((i, -di), (j, -dj))) / (4.0 * h * h)

    dxx = mixed(h, h)
    dyy = mixed(1j * h, 1j * h)
    dxy = mixed(h, 1j * h)
    dyx = mixed(1j * h, h)
    return 0.25 * (dxx + dyy) + 0.25j * (dxy - dyx)


def fd_log_hessian(f: Callable, point, i: int, j: int, h: float = 1e-3):
    """Finite-difference mixed Hessian of log f, for positive real f."""
    return fd_mixed_hessian(lambda w: math.log(f(w)), point, i, j, h)


def zero_set_metric_fn(module: WeightedPolydiscModule, ideal: IdealSpec,
                       k: int = 0) -> Callable:
    """Float evaluator of the squared norm of the k-th zero-variety frame
    vector as a function of the variety point: the closed product form
    evaluated directly in floating point.

    Independent of the exact series machinery by construction.
    """
    from .frames import _coordinate_power_data
    data = _coordinate_power_data(ideal)
    gen_vars = [v for v, _ in data]
    v, p = data[k]
    lead = float(pochhammer(module.weights[v], p) / math.factorial(p))
    free = [i for i in range(module.dim) if i not in gen_vars]
    weights = [float(w) for w in module.weights]

    def f(w):
        out = lead
        for i in free:
            out *= (1.0 - (w[i] * w[i].conjugate()).real) ** (-weights[i])
        return out
    return f


def _complex_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = 0.0 + 0.0j
    for j in range(n):
        minor = [[M[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = M[0][j] * _complex_det(minor)
        acc += term if j % 2 == 0 else -term
    return acc


def coordinate_det_fn(module: WeightedPolydiscModule, t: Optional[int] = None,
                      degree_cap: int = 24) -> Callable:
    """Float evaluator of det H(w) for the coordinate-ideal frame Grammian,
    summed termwise in complex floats from the definition
    H_ij = sum_a s_i s_j c_a w^(a - e_i) conj(w)^(a - e_j).

    No truncated-series arithmetic is involved, so this serves as an
    independent cross-check of the exact pipeline near the origin; the
    degree cap leaves a tail far below double precision for |w| << 1.
    """
    m = module.dim
    if t is None:
        t = m
    weights = module.weights
    terms = []
    for alpha in iter_multiindices(m, degree_cap):
        if all(alpha[k] == 0 for k in range(t)):
            continue
        denom = sum(weights[k] * alpha[k] for k in range(t))
        c = diag_coeff(module, alpha)
        svals = [float(weights[k] * alpha[k] / denom * c) if alpha[k] else 0.0
                 for k in range(t)]
        terms.append((tuple(alpha), svals, c))

    def f(w):
        H = [[0.0 + 0.0j for _ in range(t)] for _ in range(t)]
        for alpha, svals, c in terms:
            zpows = []
            cpows = []
            for i in range(t):
                if svals[i] == 0.0:
                    zpows.append(0.0)
                    cpows.append(0.0)
                    continue
                zp = 1.0 + 0.0j
                cp = 1.0 + 0.0j
                for k, e in enumerate(alpha):
                    ek = e - (1 if k == i else 0)
                    if ek:
                        zp *= w[k] ** ek
                        cp *= w[k].conjugate() ** ek
                zpows.append(zp)
                cpows.append(cp)
            for i in range(t):
                if svals[i] == 0.0:
                    continue
                si_c = svals[i]
                for j in range(t):
                    if svals[j] == 0.0:
                        continue
                    # one factor of c_a total: s_i s_j c_a with svals = s*c
                    H[i][j] += si_c * svals[j] / float(c) * zpows[i] * cpows[j]
        return _complex_det(H).real
    return f
