"""Polynomial ideals, their zero sets, and localization dimensions.

An IdealSpec is a finite generator list tagged with a structural family:

  monomial              every generator is a single monomial
  coordinate_vanishing  generators z_i - a_i for one rational point a
  catalogued            a named ideal from the built-in catalogue
  general               anything else

The family tag decides which closed-form constructions apply downstream;
nothing here attempts Groebner-style normal forms.  The localization
dimension at a point w counts dim J_N - dim J'_N for spaces of generator
multiples of bounded degree, which stabilizes at the fibre dimension of the
associated quotient for the families treated here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import MultiIndex, iter_multiindices, rat
from .errors import DomainError, UnsupportedIdealError
from .linalg import mat_rank
from .polynomials import Poly

MONOMIAL = "monomial"
COORDINATE_VANISHING = "coordinate_vanishing"
CATALOGUED = "catalogued"
GENERAL = "general"


# ---------------------------------------------------------------------------
# Zero set descriptors


@dataclass(frozen=True)
class CoordinateSubspace:
    """{z : z_i = 0 for i in vanishing}; indices are 0-based."""
    nvars: int
    vanishing: frozenset

    @property
    def codim(self) -> int:
        return len(self.vanishing)

    def contains(self, point) -> bool:
        pt = [rat(x) for x in point]
        return all(pt[i] == 0 for i in self.vanishing)

    def describe(self) -> str:
        vs = ", ".join(f"z{i+1} = 0" for i in sorted(self.vanishing))
        return f"coordinate subspace {{{vs}}}"


@dataclass(frozen=True)
class PointSet:
    """A single point of the polydisc."""
    coords: tuple

    @property
    def codim(self) -> int:
        return len(self.coords)

    def contains(self, point) -> bool:
        pt = tuple(rat(x) for x in point)
        return pt == self.coords

    def describe(self) -> str:
        return "point (" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class UserParametrized:
    """Caller-supplied variety data: sample points plus the codimension."""
    nvars: int
    samples: tuple
    codim_value: int

    @property
    def codim(self) -> int:
        return self.codim_value

    def contains(self, point) -> Optional[bool]:
        pt = tuple(rat(x) for x in point)
        if any(pt == tuple(rat(c) for c in s) for s in self.samples):
            return True
        return None  # membership beyond the samples is unknown

    def describe(self) -> str:
        return f"user-parametrized variety (codim {self.codim_value})"


# ---------------------------------------------------------------------------
# The ideal specification


@dataclass(frozen=True)
class IdealSpec:
    nvars: int
    generators: tuple
    family: str
    name: Optional[str] = None

    def __post_init__(self):
        if not self.generators:
            raise DomainError("ideal needs at least one generator")
        for g in self.generators:
            if not isinstance(g, Poly) or g.nvars != self.nvars:
                raise DomainError("generators must be Poly over the same variables")
            if g.is_zero():
                raise DomainError("zero polynomial is not a valid generator")
        if self.family == MONOMIAL and not all(g.is_monomial() for g in self.generators):
            raise DomainError("monomial family requires monomial generators")

    @property
    def max_degree(self) -> int:
        return max(g.degree for g in self.generators)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_generators(nvars: int, generators, family: Optional[str] = None,
                        name: Optional[str] = None) -> "IdealSpec":
        """Build an IdealSpec, auto-classifying the family when not forced."""
        gens = tuple(generators)
        if family is None:
            # monomial wins over vanishing-point: a monomial ideal that
            # happens to vanish only at the origin still carries the full
            # diagonal structure (frames, filtered kernels)
            if all(g.is_monomial() for g in gens):
                family = MONOMIAL
            elif _vanishing_point(nvars, gens) is not None:
                family = COORDINATE_VANISHING
            elif _match_catalogue(nvars, gens) is not None:
                family = CATALOGUED
                name = name or _match_catalogue(nvars, gens)
            else:
                family = GENERAL
        if family not in (MONOMIAL, COORDINATE_VANISHING, CATALOGUED, GENERAL):
            raise DomainError(f"unknown ideal family {family!r}")
        if family == CATALOGUED:
            if name is None:
                name = _match_catalogue(nvars, gens)
            if name is None or name not in CATALOGUE:
                raise UnsupportedIdealError(
                    f"catalogued family requires a known catalogue name, got {name!r}")
        return IdealSpec(nvars, gens, family, name)

    @staticmethod
    def monomial(nvars: int, exponent_lists) -> "IdealSpec":
        gens = tuple(Poly.monomial(nvars, e) for e in exponent_lists)
        return IdealSpec(nvars, gens, MONOMIAL)

    @staticmethod
    def coordinate_powers(nvars: int, powers) -> "IdealSpec":
        """<z_1^{i_1}, ..., z_t^{i_t}> with powers = (i_1, ..., i_t), t <= m."""
        powers = tuple(int(p) for p in powers)
        if not 1 <= len(powers) <= nvars:
            raise DomainError("need between 1 and nvars coordinate powers")
        if any(p < 1 for p in powers):
            raise DomainError("coordinate powers must be >= 1")
        gens = tuple(Poly.monomial(nvars, MultiIndex.unit(nvars, k, p))
                     for k, p in enumerate(powers))
        return IdealSpec(nvars, gens, MONOMIAL)

    @staticmethod
    def vanishing_at(point) -> "IdealSpec":
        coords = tuple(rat(x) for x in point)
        m = len(coords)
        gens = tuple(Poly.variable(m, i) - Poly.constant(m, coords[i])
                     for i in range(m))
        return IdealSpec(m, gens, COORDINATE_VANISHING)

    @staticmethod
    def catalogued(name: str, nvars: int) -> "IdealSpec":
        if name not in CATALOGUE:
            raise UnsupportedIdealError(
                f"unknown catalogue ideal {name!r}; known: {sorted(CATALOGUE)}")
        builder, _ = CATALOGUE[name]
        return IdealSpec(nvars, tuple(builder(nvars)), CATALOGUED, name)


def _vanishing_point(nvars, gens):
    """Detect <z_1 - a_1, ..., z_m - a_m>; return the point or None."""
    if len(gens) != nvars:
        return None
    point = [None] * nvars
    for g in gens:
        # must be z_i - a_i: one linear term with coefficient 1 plus a constant
        linear = [(k, v) for k, v in g.coeffs.items() if k.degree == 1]
        consts = [v for k, v in g.coeffs.items() if k.degree == 0]
        if len(linear) != 1 or len(g.coeffs) - len(consts) != 1:
            return None
        k, v = linear[0]
        if v != 1 or max(k) != 1:
            return None
        i = list(k).index(1)
        if point[i] is not None:
            return None
        point[i] = -consts[0] if consts else Fraction(0)
    if any(p is None for p in point):
        return None
    return tuple(point)


def vanishing_point(ideal: IdealSpec):
    pt = _vanishing_point(ideal.nvars, ideal.generators)
    if pt is None:
        raise DomainError("ideal is not the vanishing ideal of a point")
    return pt


# ---------------------------------------------------------------------------
# Catalogue of named ideals with hand-verified zero-set data


def _product_difference_gens(nvars):
    if nvars < 2:
        raise DomainError("product_difference needs at least 2 variables")
    z1 = Poly.variable(nvars, 0)
    z2 = Poly.variable(nvars, 1)
    return [z1 * z2, z1 - z2]


def _product_difference_zeroset(nvars):
    # z1 z2 = 0 and z1 = z2 force z1 = z2 = 0
    return CoordinateSubspace(nvars, frozenset({0, 1}))


CATALOGUE = {
    "product_difference": (_product_difference_gens, _product_difference_zeroset),
}


def _match_catalogue(nvars, gens):
    for name, (builder, _) in CATALOGUE.items():
        try:
            if tuple(builder(nvars)) == tuple(gens):
                return name
        except DomainError:
            continue
    return None


# ---------------------------------------------------------------------------
# Zero sets and minimality


def zero_set(ideal: IdealSpec):
    """Exact zero-set descriptor for the supported families.

    Monomial ideals are handled when every generator is a power of a single
    variable (the zero set is then a coordinate subspace).  A monomial ideal
    with a genuinely mixed generator has a reducible zero set that none of
    the descriptor kinds represents, so it is rejected rather than guessed.
    """
    if ideal.family == COORDINATE_VANISHING:
        return PointSet(vanishing_point(ideal))
    if ideal.family == CATALOGUED:
        _, descriptor = CATALOGUE[ideal.name]
        return descriptor(ideal.nvars)
    if ideal.family == MONOMIAL:
        vanishing = set()
        for g in ideal.generators:
            e = g.monomial_exponent()
            support = [i for i, x in enumerate(e) if x > 0]
            if len(support) != 1:
                raise UnsupportedIdealError(
                    f"zero set of mixed monomial generator {g} is a union of "
                    "coordinate subspaces; supply the variety data explicitly")
            vanishing.add(support[0])
        return CoordinateSubspace(ideal.nvars, frozenset(vanishing))
    raise UnsupportedIdealError(
        "no exact zero-set computation for general ideals")


@dataclass(frozen=True)
class MinimalityCertificate:
    status: str              # "minimal_by_codim" or "hypothesis_fails"
    codim: int
    generator_count: int

    @property
    def minimal(self) -> bool:
        return self.status == "minimal_by_codim"


def minimality_certificate(ideal: IdealSpec) -> MinimalityCertificate:
    """Certify minimal generation by comparing generator count with the
    zero-set codimension.  Equality certifies; anything else only reports
    that this particular sufficient condition failed."""
    v = zero_set(ideal)
    t = len(ideal.generators)
    status = "minimal_by_codim" if v.codim == t else "hypothesis_fails"
    return MinimalityCertificate(status, v.codim, t)


# ---------------------------------------------------------------------------
# Localization dimension


@dataclass(frozen=True)
class LocalizationResult:
    dim: int
    stabilized_at: Optional[int]
    dims_by_degree: tuple = field(default=())
    monotone_violation: bool = False
    conditional: bool = False

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None


def localization_dim(ideal: IdealSpec, point, max_degree: int = 8) -> LocalizationResult:
    """Dimension of the localization of the ideal at a point.

    For each degree N let J_N be the span of the generator multiples
    z^beta p_j of total degree <= N, and J'_N the span of (z_i - w_i) f with
    f running over such multiples of degree <= N-1.  The defect
    d_N = dim J_N - dim J'_N counts generators surviving localization at w;
    it is reported stabilized once two consecutive degrees agree.

    The stabilized value is provable for the monomial / coordinate /
    catalogued families; for general ideals it is a conditional answer
    (flagged in the result) since two equal consecutive defects do not rule
    out a later drop.
    """
    m = ideal.nvars
    w = [rat(x) for x in point]
    if len(w) != m:
        raise DomainError(f"point has arity {len(w)}, ideal lives in {m} variables")
    dmax = ideal.max_degree
    if max_degree < dmax + 1:
        raise DomainError(
            f"max_degree {max_degree} too small; need at least {dmax + 1}")

    def monomial_rows(N):
        index = {alpha: k for k, alpha in enumerate(iter_multiindices(m, N))}
        return index

    def row_of(poly: Poly, index):
        row = [Fraction(0)] * len(index)
        for k, v in poly.coeffs.items():
            row[index[k]] = v
        return row

    def span_dims(N):
        index = monomial_rows(N)
        j_rows = []
        multiples = []
        for g in ideal.generators:
            dg = g.degree
            for beta in iter_multiindices(m, max(N - dg, 0)):
                f = g.shift_by_monomial(beta)
                multiples.append((f, beta.degree + dg))
                j_rows.append(row_of(f, index))
        jp_rows = []
        for f, deg in multiples:
            if deg <= N - 1:
                for i in range(m):
                    shifted = f.shift_by_monomial(MultiIndex.unit(m, i)) - f * w[i]
                    jp_rows.append(row_of(shifted, index))
        dim_j = mat_rank(j_rows) if j_rows else 0
        dim_jp = mat_rank(jp_rows) if jp_rows else 0
        return dim_j - dim_jp

    dims = []
    stabilized_at = None
    start = dmax
    for N in range(start, max_degree + 1):
        dims.append((N, span_dims(N)))
        if len(dims) >= 2 and dims[-1][1] == dims[-2][1]:
            stabilized_at = N
            break

    values = [d for _, d in dims]
    monotone_violation = any(b > a for a, b in zip(values, values[1:]))
    return LocalizationResult(
        dim=values[-1],
        stabilized_at=stabilized_at,
        dims_by_degree=tuple(dims),
        monotone_violation=monotone_violation,
        conditional=(ideal.family == GENERAL),
    )
