"""Linear systems of plane curves with prescribed singularities.

The dimension count at the center of the package works entirely in the
coordinate space of degree-d forms in x, y, z: a configuration imposes three
derivative rows per marked point, while a full line or conic component forces
divisibility by the square of its equation.  The space of degree-5 curves
singular along the configuration is then an exact kernel/intersection
computation over the chosen field.

The module also provides the inverse direction used as an oracle: exhaustive
enumeration of singular points of a form over a small prime field, grouping
of full line/conic components, and classification of the resulting incidence
pattern against the 42-entry configuration taxonomy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .errors import FieldMismatchError, InputError, TaxonomyError
from .exactalg import (
    DenseMatrix,
    Field,
    PrimeField,
    SubspaceBasis,
    intersect,
    kernel,
    row_space,
)
from .projgeom import (
    CONIC_MONOMIALS,
    Config,
    Conic,
    ProjLine,
    ProjPoint,
    collinear,
    conic_line_second_point,
    conic_through,
    incident,
    line_intersection,
    line_through,
    veronese,
)
from .rng import SplitMix64, derive_seed


# ---------------------------------------------------------------------------
# monomials and homogeneous polynomials


@lru_cache(maxsize=None)
def monomial_basis(d: int) -> tuple:
    """All exponent triples of total degree d in graded-lex order, x > y > z."""
    if d < 0:
        raise InputError("degree must be nonnegative")
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            out.append((a, b, d - a - b))
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(d: int) -> dict:
    return {e: i for i, e in enumerate(monomial_basis(d))}


def space_dim(d: int) -> int:
    return (d + 1) * (d + 2) // 2


class HomogeneousPoly:
    """A homogeneous polynomial in x, y, z with exact coefficients.

    Terms map exponent triples summing to the degree to nonzero coefficients;
    the graded-lex monomial order fixes the embedding into coordinate vectors.
    """

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: Field, degree: int, terms: dict):
        if degree < 0:
            raise InputError("degree must be nonnegative")
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != 3 or any(e < 0 for e in exps) or sum(exps) != degree:
                raise InputError(f"exponent triple {exps} does not have degree {degree}")
            val = field.coerce(coeff)
            if not field.is_zero(val):
                clean[tuple(exps)] = val
        self.field = field
        self.degree = degree
        self.terms = clean

    @classmethod
    def from_vector(cls, field: Field, degree: int, vec: Sequence) -> "HomogeneousPoly":
        basis = monomial_basis(degree)
        if len(vec) != len(basis):
            raise InputError("coefficient vector has the wrong length")
        return cls(field, degree, dict(zip(basis, vec)))

    def to_vector(self) -> tuple:
        basis = monomial_basis(self.degree)
        zero = self.field.zero()
        return tuple(self.terms.get(e, zero) for e in basis)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomogeneousPoly) and self.field == other.field
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.field, self.degree, tuple(sorted(self.terms.items()))))

    def __mul__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if self.field != other.field:
            raise FieldMismatchError("cannot multiply over different fields")
        f = self.field
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                prev = acc.get(key, f.zero())
                acc[key] = f.add(prev, f.mul(c1, c2))
        return HomogeneousPoly(f, self.degree + other.degree, acc)

    def __pow__(self, n: int) -> "HomogeneousPoly":
        if n < 0:
            raise InputError("negative powers are not polynomials")
        out = HomogeneousPoly(self.field, 0, {(0, 0, 0): self.field.one()})
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "HomogeneousPoly":
        f = self.field
        cc = f.coerce(c)
        return HomogeneousPoly(f, self.degree,
                               {e: f.mul(cc, v) for e, v in self.terms.items()})

    def add(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if self.degree != other.degree:
            raise InputError("cannot add forms of different degrees")
        f = self.field
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = f.add(acc.get(e, f.zero()), c)
        return HomogeneousPoly(f, self.degree, acc)

    def partial(self, var: int) -> "HomogeneousPoly":
        """Formal partial derivative with respect to variable 0, 1 or 2."""
        f = self.field
        acc: dict = {}
        for exps, coeff in self.terms.items():
            e = exps[var]
            if e == 0:
                continue
            key = list(exps)
            key[var] = e - 1
            acc[tuple(key)] = f.mul(coeff, f.coerce(e))
        return HomogeneousPoly(f, max(self.degree - 1, 0), acc)

    def evaluate(self, coords: Sequence):
        f = self.field
        d = self.degree
        pows = [[f.one()] for _ in range(3)]
        for i in range(3):
            for _ in range(d):
                pows[i].append(f.mul(pows[i][-1], f.coerce(coords[i])))
        acc = f.zero()
        for (a, b, c), coeff in self.terms.items():
            term = f.mul(coeff, f.mul(pows[0][a], f.mul(pows[1][b], pows[2][c])))
            acc = f.add(acc, term)
        return acc

    def gradient_at(self, pt: ProjPoint) -> tuple:
        return tuple(self.partial(v).evaluate(pt.coords) for v in range(3))

    def __repr__(self) -> str:
        return f"HomogeneousPoly(deg={self.degree}, {len(self.terms)} terms)"


def line_poly(ln: ProjLine) -> HomogeneousPoly:
    a, b, c = ln.coeffs
    return HomogeneousPoly(ln.field, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def conic_poly(c: Conic) -> HomogeneousPoly:
    return HomogeneousPoly(c.field, 2, dict(zip(CONIC_MONOMIALS, c.coeffs)))


def random_poly(field: Field, degree: int, seed: int) -> HomogeneousPoly:
    """A deterministic pseudo-random form, used by the oracle test sweeps."""
    rng = SplitMix64(derive_seed(seed, degree))
    coeffs = {}
    for exps in monomial_basis(degree):
        if isinstance(field, PrimeField):
            coeffs[exps] = rng.below(field.p)
        else:
            coeffs[exps] = rng.int_in(-9, 9)
    return HomogeneousPoly(field, degree, coeffs)


# ---------------------------------------------------------------------------
# constraint rows


def _power_table(field: Field, coords: Sequence, top: int) -> list:
    pows = [[field.one()] for _ in range(3)]
    for i in range(3):
        for _ in range(top):
            pows[i].append(field.mul(pows[i][-1], coords[i]))
    return pows


def vanishing_row(a: ProjPoint, d: int) -> DenseMatrix:
    """The single row expressing f(a) = 0 on degree-d coefficient vectors."""
    f = a.field
    pows = _power_table(f, a.coords, d)
    row = [f.mul(pows[0][e0], f.mul(pows[1][e1], pows[2][e2]))
           for (e0, e1, e2) in monomial_basis(d)]
    return DenseMatrix(f, [row], space_dim(d))


def singularity_rows(a: ProjPoint, d: int) -> DenseMatrix:
    """Three rows expressing that all partials of f vanish at the point a.

    The rows depend on the projective representative only up to scaling, so
    their row space, which is all downstream code uses, is well defined.
    """
    f = a.field
    pows = _power_table(f, a.coords, d)
    rows = []
    for var in range(3):
        row = []
        for exps in monomial_basis(d):
            e = exps[var]
            if e == 0:
                row.append(f.zero())
                continue
            shifted = list(exps)
            shifted[var] = e - 1
            mono = f.mul(pows[0][shifted[0]],
                         f.mul(pows[1][shifted[1]], pows[2][shifted[2]]))
            row.append(f.mul(f.coerce(e), mono))
        rows.append(row)
    return DenseMatrix(f, rows, space_dim(d))


def divisibility_subspace(g: HomogeneousPoly, m: int, d: int) -> SubspaceBasis:
    """Basis of the forms of degree d divisible by g^m."""
    if m < 0:
        raise InputError("multiplicity must be nonnegative")
    rest = d - m * g.degree
    if rest < 0:
        raise InputError("multiplicity times degree exceeds the ambient degree")
    if g.is_zero():
        raise InputError("cannot divide by the zero form")
    power = g ** m
    rows = []
    f = g.field
    for exps in monomial_basis(rest):
        mono = HomogeneousPoly(f, rest, {exps: f.one()})
        rows.append((power * mono).to_vector())
    return row_space(DenseMatrix(f, rows, space_dim(d)))


def constraint_matrix(cfg: Config, d: int = 5) -> DenseMatrix:
    """Stacked singularity rows of all marked points of a configuration."""
    rows: list = []
    for pt in cfg.points:
        rows.extend(singularity_rows(pt, d).rows)
    return DenseMatrix(cfg.field, rows, space_dim(d))


def linear_system_dim(cfg: Config, d: int = 5) -> int:
    """Dimension of the space of degree-d forms singular along ``cfg``.

    Marked points contribute their three derivative rows; full line and conic
    components force divisibility by the squared component equation.  The
    whole-plane configuration is the one case with no matrix: only the zero
    form is singular everywhere.
    """
    if cfg.whole_plane:
        return 0
    space = kernel(constraint_matrix(cfg, d))
    for ln in cfg.lines:
        space = intersect(space, divisibility_subspace(line_poly(ln), 2, d))
    for qc in cfg.conics:
        space = intersect(space, divisibility_subspace(conic_poly(qc), 2, d))
    return space.dim


def linear_system_basis(cfg: Config, d: int = 5) -> SubspaceBasis:
    """Echelonized basis of the same space ``linear_system_dim`` measures."""
    if cfg.whole_plane:
        return SubspaceBasis(cfg.field, space_dim(d), ())
    space = kernel(constraint_matrix(cfg, d))
    for ln in cfg.lines:
        space = intersect(space, divisibility_subspace(line_poly(ln), 2, d))
    for qc in cfg.conics:
        space = intersect(space, divisibility_subspace(conic_poly(qc), 2, d))
    return space


def sample_quartic_contact_system(field: Field, seed: int) -> DenseMatrix:
    """The 13 x 15 quartic system: 4 vanishing rows on a line, 9 derivative rows.

    Four points on a line contribute one evaluation row each; three further
    points in general position (not collinear, off the line) contribute their
    three derivative rows.  For generic data the 13 rows are independent, so
    the kernel is 2-dimensional.
    """
    from .sampling import _Draw, _Reject  # local import to avoid a cycle

    rng = SplitMix64(derive_seed(seed, 13))
    draw = _Draw(field, rng)
    while True:
        try:
            ln = draw.line()
            on_line = draw.distinct_points_on(ln, 4)
            off = []
            guard = 0
            while len(off) < 3:
                guard += 1
                if guard > 200:
                    raise _Reject
                q = draw.point()
                if incident(q, ln) or q in off:
                    continue
                off.append(q)
            if collinear(*off):
                continue
        except _Reject:
            continue
        rows: list = []
        for pt in on_line:
            rows.extend(vanishing_row(pt, 4).rows)
        for pt in off:
            rows.extend(singularity_rows(pt, 4).rows)
        return DenseMatrix(field, rows, space_dim(4))


# ---------------------------------------------------------------------------
# brute-force singular sets over a prime field


@dataclass(frozen=True)
class SingularSet:
    """The singular locus of a form: isolated points plus full components."""

    field: Field
    isolated_points: tuple = ()
    line_components: tuple = ()
    conic_components: tuple = ()
    whole_plane: bool = False

    def is_empty(self) -> bool:
        return not (self.isolated_points or self.line_components
                    or self.conic_components or self.whole_plane)

    def as_config(self) -> Config:
        return Config(self.field, points=self.isolated_points,
                      lines=self.line_components, conics=self.conic_components,
                      whole_plane=self.whole_plane)


@lru_cache(maxsize=8)
def plane_points(p: int) -> tuple:
    """All p^2 + p + 1 normalized points of the projective plane over GF(p)."""
    field = PrimeField(p)
    pts = [ProjPoint(field, (1, y, z)) for y in range(p) for z in range(p)]
    pts.extend(ProjPoint(field, (0, 1, z)) for z in range(p))
    pts.append(ProjPoint(field, (0, 0, 1)))
    return tuple(pts)


@lru_cache(maxsize=8)
def _monomial_value_table(p: int, d: int) -> tuple:
    """Values of every degree-d monomial at every plane point over GF(p)."""
    basis = monomial_basis(d)
    table = []
    for pt in plane_points(p):
        x, y, z = pt.coords
        xp = [1] * (d + 1)
        yp = [1] * (d + 1)
        zp = [1] * (d + 1)
        for i in range(1, d + 1):
            xp[i] = xp[i - 1] * x % p
            yp[i] = yp[i - 1] * y % p
            zp[i] = zp[i - 1] * z % p
        table.append(tuple(xp[a] * yp[b] % p * zp[c] % p for (a, b, c) in basis))
    return tuple(table)


def _sparse_terms(poly: HomogeneousPoly) -> list:
    index = _monomial_index(poly.degree)
    return [(index[e], c) for e, c in sorted(poly.terms.items(), reverse=True)]


# Enumeration is quadratic in p and caches a per-point monomial table, so the
# brute force is capped at desk scale.
MAX_BRUTEFORCE_PRIME = 251


def singular_points_bruteforce(f: HomogeneousPoly, p: int) -> list:
    """All projective points over GF(p) where every partial of f vanishes."""
    field = PrimeField(p)
    if f.field != field:
        raise FieldMismatchError(f"form is not over GF({p})")
    if f.degree % p == 0:
        raise InputError("p divides the degree; the Euler relation degenerates")
    if p < 5:
        raise InputError("brute force needs p >= 5")
    if p > MAX_BRUTEFORCE_PRIME:
        raise InputError(f"brute force enumerates p^2+p+1 points; use p <= "
                         f"{MAX_BRUTEFORCE_PRIME}")
    if f.is_zero():
        return list(plane_points(p))
    partials = [_sparse_terms(f.partial(v)) for v in range(3)]
    values = _monomial_value_table(p, f.degree - 1)
    pts = plane_points(p)
    out = []
    for i, vals in enumerate(values):
        hit = True
        for terms in partials:
            acc = 0
            for j, c in terms:
                acc += c * vals[j]
            if acc % p:
                hit = False
                break
        if hit:
            out.append(pts[i])
    return out


def _peel_line_components(points: list, p: int) -> tuple[list, list]:
    """Split off every full line contained in the given point set."""
    point_set = set(points)
    pair_lines: dict = {}
    pts = list(points)
    for a, b in combinations(pts, 2):
        ln = line_through(a, b)
        pair_lines[ln] = pair_lines.get(ln, 0) + 1
    full = p * (p + 1) // 2  # pair count of a complete line over GF(p)
    lines = []
    for ln, cnt in sorted(pair_lines.items(), key=lambda kv: kv[0].coeffs):
        if cnt == full:
            lines.append(ln)
    remaining = [q for q in pts if not any(incident(q, ln) for ln in lines)]
    assert len(point_set) == len(points)
    return lines, remaining


def _peel_conic_component(points: list, p: int) -> tuple[list, list]:
    """Detect one full nondegenerate conic inside the point set, if any.

    A quintic form can carry at most one doubled conic, and its leftover
    isolated singularities number at most four, so scanning five-subsets of
    the first twelve points always sees five points of the conic.
    """
    if len(points) < p + 1:
        return [], points
    head = points[: min(len(points), 12)]
    for five in combinations(head, 5):
        if len(set(five)) != 5:
            continue
        conic = conic_through(list(five))
        if conic is None or conic.is_degenerate():
            continue
        on = [q for q in points if conic.contains(q)]
        total = sum(1 for q in plane_points(p) if conic.contains(q))
        if total == p + 1 and len(on) == total:
            rest = [q for q in points if not conic.contains(q)]
            return [conic], rest
    return [], points


def singular_set_bruteforce(f: HomogeneousPoly, p: int) -> SingularSet:
    """Exhaustive singular locus of f over GF(p), grouped into components.

    A line or conic is reported as a component only when every one of its
    p + 1 rational points is singular; everything else stays isolated.
    Grouping is attempted only above the counting thresholds where it is
    forced: a fully singular line needs p + 1 > deg f roots of the restricted
    form, a fully singular conic needs p + 1 > 2 deg f.
    """
    if f.is_zero():
        return SingularSet(PrimeField(p), whole_plane=True)
    pts = singular_points_bruteforce(f, p)
    lines: list = []
    rest = pts
    if len(pts) >= p + 1 and p + 1 > f.degree:
        lines, rest = _peel_line_components(pts, p)
    conics: list = []
    if p + 1 > 2 * f.degree:
        conics, rest = _peel_conic_component(rest, p)
    rest_sorted = tuple(sorted(rest, key=lambda q: q.coords))
    return SingularSet(PrimeField(p), isolated_points=rest_sorted,
                       line_components=tuple(lines), conic_components=tuple(conics))


# ---------------------------------------------------------------------------
# the 42-entry taxonomy


@dataclass(frozen=True)
class ConfigTypeRecord:
    type_id: int
    k_points: Union[int, str]  # point count, or "nondiscrete"
    expected_dim: int
    description: str


TYPE_TABLE: tuple = (
    ConfigTypeRecord(1, 1, 18, "one point"),
    ConfigTypeRecord(2, 2, 15, "two points"),
    ConfigTypeRecord(3, 3, 12, "three points"),
    ConfigTypeRecord(4, 4, 11, "four points on a line"),
    ConfigTypeRecord(5, 5, 10, "five points on a line"),
    ConfigTypeRecord(6, 6, 10, "six points on a line"),
    ConfigTypeRecord(7, 7, 10, "seven points on a line"),
    ConfigTypeRecord(8, 8, 10, "eight points on a line"),
    ConfigTypeRecord(9, 9, 10, "nine points on a line"),
    ConfigTypeRecord(10, 10, 10, "ten points on a line"),
    ConfigTypeRecord(11, "nondiscrete", 10, "a full line"),
    ConfigTypeRecord(12, 4, 9, "four points not all on a line"),
    ConfigTypeRecord(13, 5, 8, "four points on a line plus one off it"),
    ConfigTypeRecord(14, 6, 7, "five points on a line plus one off it"),
    ConfigTypeRecord(15, 7, 7, "six points on a line plus one off it"),
    ConfigTypeRecord(16, 8, 7, "seven points on a line plus one off it"),
    ConfigTypeRecord(17, "nondiscrete", 7, "a full line plus one point off it"),
    ConfigTypeRecord(18, 5, 6, "five points, no four on a line"),
    ConfigTypeRecord(19, 6, 5, "four points on a line plus two off it"),
    ConfigTypeRecord(20, 7, 4, "five points on a line plus two off it"),
    ConfigTypeRecord(21, 8, 4, "six points on a line plus two off it"),
    ConfigTypeRecord(22, "nondiscrete", 4, "a full line plus two points off it"),
    ConfigTypeRecord(23, 6, 4, "three points on each of two lines, intersection free"),
    ConfigTypeRecord(24, 6, 4, "six points on a nondegenerate conic"),
    ConfigTypeRecord(25, 7, 4, "two three-point lines plus their intersection point"),
    ConfigTypeRecord(26, 6, 3, "six points on no conic, no four on a line"),
    ConfigTypeRecord(27, 7, 3, "four points on one line, three on another, intersection free"),
    ConfigTypeRecord(28, 8, 3, "five points on one line plus three on another line off it"),
    ConfigTypeRecord(29, "nondiscrete", 3, "a full line plus three collinear points off it"),
    ConfigTypeRecord(30, 8, 3, "four points on each of two lines, intersection free"),
    ConfigTypeRecord(31, "nondiscrete", 3, "a pair of full lines"),
    ConfigTypeRecord(32, 7, 3, "seven points on a nondegenerate conic"),
    ConfigTypeRecord(33, "nondiscrete", 3, "a full nondegenerate conic"),
    ConfigTypeRecord(34, 7, 2, "four points on a line plus three generic points off it"),
    ConfigTypeRecord(35, 7, 1, "two three-point lines plus a point off both"),
    ConfigTypeRecord(36, 7, 1, "six points on a nondegenerate conic plus a point off it"),
    ConfigTypeRecord(37, 8, 1, "two three-point lines, their intersection, and a free point"),
    ConfigTypeRecord(38, 8, 1, "four generic base points plus four cuts of a line by two conics through them"),
    ConfigTypeRecord(39, 9, 1, "a triangle of three generic points plus six cuts of its sides by a conic"),
    ConfigTypeRecord(40, 10, 1, "the ten pairwise intersections of five generic lines"),
    ConfigTypeRecord(41, "nondiscrete", 1, "a full line plus three generic points off it"),
    ConfigTypeRecord(42, "nondiscrete", 0, "the whole plane"),
)

GOLDEN_DIMS = {rec.type_id: rec.expected_dim for rec in TYPE_TABLE}
K_POINTS = {rec.type_id: rec.k_points for rec in TYPE_TABLE}


def type_record(type_id: int) -> ConfigTypeRecord:
    if not 1 <= type_id <= 42:
        raise InputError(f"type_id {type_id} out of range 1..42")
    return TYPE_TABLE[type_id - 1]


# ---------------------------------------------------------------------------
# classification


def _line_groups(points: Sequence[ProjPoint]) -> dict:
    """Map each line through at least two of the points to its incident points."""
    groups: dict = {}
    for a, b in combinations(points, 2):
        ln = line_through(a, b)
        if ln in groups:
            continue
        groups[ln] = tuple(q for q in points if incident(q, ln))
    return groups


def _conic_containing(points: Sequence[ProjPoint]) -> Optional[Conic]:
    """The conic through six points when it exists and is unique."""
    m = DenseMatrix(points[0].field, [veronese(q) for q in points], 6)
    basis = kernel(m).basis
    if len(basis) != 1:
        return None
    return Conic(points[0].field, basis[0])


def _six_on_conic(points: Sequence[ProjPoint]) -> bool:
    m = DenseMatrix(points[0].field, [veronese(q) for q in points], 6)
    return kernel(m).dim > 0


def _pencil_partner(base: Sequence[ProjPoint], ln: ProjLine, pt: ProjPoint) -> Optional[ProjPoint]:
    """Second cut of the line by the conic through the four base points and pt."""
    q = conic_through(list(base) + [pt])
    if q is None:
        return None
    try:
        return conic_line_second_point(q, ln, pt)
    except InputError:
        return None


def _classify_pencil_quadruple(on_line: Sequence[ProjPoint], rest: Sequence[ProjPoint],
                               ln: ProjLine) -> Optional[int]:
    if not all(not collinear(a, b, c) for a, b, c in combinations(rest, 3)):
        return None
    partner = {}
    for pt in on_line:
        mate = _pencil_partner(rest, ln, pt)
        if mate is None or mate == pt or mate not in on_line:
            return None
        partner[pt] = mate
    pairs = {frozenset((a, b)) for a, b in partner.items()}
    if len(pairs) == 2 and all(partner[partner[p]] == p for p in on_line):
        return 38
    return None


def _classify_triangle_conic(points: Sequence[ProjPoint], groups: dict) -> Optional[int]:
    four_lines = {ln: pts for ln, pts in groups.items() if len(pts) == 4}
    if len(four_lines) != 3 or any(len(pts) > 4 for pts in groups.values()):
        return None
    (la, sa), (lb, sb), (lc, sc) = sorted(four_lines.items(), key=lambda kv: kv[0].coeffs)
    sets = [set(sa), set(sb), set(sc)]
    shared = []
    for i, j in combinations(range(3), 2):
        inter = sets[i] & sets[j]
        if len(inter) != 1:
            return None
        shared.append(next(iter(inter)))
    if len(set(shared)) != 3:
        return None
    vertices = set(shared)
    others = [q for q in points if q not in vertices]
    if len(others) != 6 or sets[0] | sets[1] | sets[2] != set(points):
        return None
    conic = _conic_containing(others)
    if conic is None:
        return None
    if not all(conic.contains(q) for q in others):
        return None
    if any(conic.contains(v) for v in vertices):
        return None
    return 39


def _classify_five_lines(points: Sequence[ProjPoint], groups: dict) -> Optional[int]:
    four_lines = [ln for ln, pts in groups.items() if len(pts) == 4]
    if len(four_lines) != 5 or any(len(pts) > 4 for pts in groups.values()):
        return None
    for q in points:
        if sum(1 for ln in four_lines if incident(q, ln)) != 2:
            return None
    return 40


def classify_points(points: Sequence[ProjPoint]) -> Optional[int]:
    """Classify a finite point set against the taxonomy; None when no type fits."""
    pts = tuple(points)
    k = len(pts)
    if k == 0 or k > 10:
        return None
    if k == 1:
        return 1
    if k == 2:
        return 2
    groups = _line_groups(pts)
    sized = {ln: p for ln, p in groups.items() if len(p) >= 3}
    m = max((len(p) for p in sized.values()), default=2)
    if k == 3:
        return 3
    if m == k:
        # all points on one line
        return {4: 4, 5: 5, 6: 6, 7: 7, 8: 8, 9: 9, 10: 10}[k]
    if k == 4:
        return 12
    if k == 5:
        return 13 if m == 4 else 18
    if k == 6:
        if m == 5:
            return 14
        if m == 4:
            return 19
        trio = _two_trio_partition(pts, sized)
        if trio:
            return 23
        if _six_on_conic(pts):
            conic = _conic_containing(pts)
            if conic is not None and not conic.is_degenerate() \
                    and all(conic.contains(q) for q in pts):
                return 24
            return None
        return 26
    if k == 7:
        return _classify_seven(pts, sized, m)
    if k == 8:
        return _classify_eight(pts, sized, m)
    if k == 9:
        if m == 9:
            return 9
        return _classify_triangle_conic(pts, sized)
    if k == 10:
        if m == 10:
            return 10
        return _classify_five_lines(pts, sized)
    return None


def _two_trio_partition(pts, sized) -> bool:
    trios = [set(p) for p in sized.values() if len(p) == 3]
    for s1, s2 in combinations(trios, 2):
        if not (s1 & s2) and len(s1 | s2) == len(pts) == 6:
            return True
    return False


def _classify_seven(pts, sized, m) -> Optional[int]:
    if m == 6:
        return 15
    if m == 5:
        return 20
    if m == 4:
        four = {ln: set(p) for ln, p in sized.items() if len(p) == 4}
        if len(four) == 2:
            (l1, s1), (l2, s2) = four.items()
            if len(s1 & s2) == 1 and len(s1 | s2) == 7:
                return 25
            return None
        if len(four) == 1:
            (ln, on_line), = four.items()
            rest = [q for q in pts if q not in on_line]
            if collinear(*rest):
                other = line_through(rest[0], rest[1])
                if line_intersection(ln, other) not in pts:
                    return 27
                return None
            return 34
        return None
    # m <= 3
    conic = conic_through(list(pts[:5])) if _no_triple_in(pts[:5]) else None
    if conic is not None and not conic.is_degenerate() \
            and all(conic.contains(q) for q in pts):
        return 32
    trios = [set(p) for p in sized.values() if len(p) == 3]
    for s1, s2 in combinations(trios, 2):
        if not (s1 & s2) and len(s1 | s2) == 6:
            (free,) = set(pts) - (s1 | s2)
            return 35
    for skip in range(7):
        six = [q for i, q in enumerate(pts) if i != skip]
        m6 = DenseMatrix(pts[0].field, [veronese(q) for q in six], 6)
        basis = kernel(m6).basis
        if len(basis) != 1:
            continue
        conic = Conic(pts[0].field, basis[0])
        if conic.is_degenerate():
            continue
        if not conic.contains(pts[skip]):
            return 36
    return None


def _no_triple_in(points) -> bool:
    return all(not collinear(a, b, c) for a, b, c in combinations(points, 3))


def _classify_eight(pts, sized, m) -> Optional[int]:
    if m == 7:
        return 16
    if m == 6:
        return 21
    if m == 5:
        (ln, on_line), = ((ln, p) for ln, p in sized.items() if len(p) == 5)
        rest = [q for q in pts if q not in on_line]
        if collinear(*rest):
            return 28
        return None
    if m == 4:
        four = {ln: set(p) for ln, p in sized.items() if len(p) == 4}
        if len(four) == 2:
            (l1, s1), (l2, s2) = four.items()
            union = s1 | s2
            if not (s1 & s2) and len(union) == 8:
                return 30
            if len(s1 & s2) == 1 and len(union) == 7:
                (free,) = set(pts) - union
                if not incident(free, l1) and not incident(free, l2):
                    return 37
            return None
        if len(four) == 1:
            (ln, on_line), = four.items()
            rest = [q for q in pts if q not in on_line]
            return _classify_pencil_quadruple(sorted(on_line, key=lambda q: q.coords),
                                              sorted(rest, key=lambda q: q.coords), ln)
        return None
    return None


def classify(obj: Union[Config, SingularSet]) -> Optional[int]:
    """Match a configuration or singular set against the 42-type taxonomy.

    Returns the unique matching type id, or None when no pattern fits.  The
    decision tree checks full components first, then maximal collinear
    subsets, then conic membership, then intersection-point membership.
    """
    if isinstance(obj, SingularSet):
        cfg = obj.as_config()
    else:
        cfg = obj
    if cfg.whole_plane:
        return 42
    if cfg.conics:
        if len(cfg.conics) == 1 and not cfg.lines and not cfg.points \
                and not cfg.conics[0].is_degenerate():
            return 33
        return None
    if cfg.lines:
        return _classify_with_lines(cfg)
    return classify_points(cfg.points)


def _classify_with_lines(cfg: Config) -> Optional[int]:
    if len(cfg.lines) == 2 and not cfg.points:
        return 31 if cfg.lines[0] != cfg.lines[1] else None
    if len(cfg.lines) != 1:
        return None
    comp = cfg.lines[0]
    pts = cfg.points
    if any(incident(q, comp) for q in pts):
        return None
    n = len(pts)
    if n == 0:
        return 11
    if n == 1:
        return 17
    if n == 2:
        return 22
    if n == 3:
        if collinear(*pts):
            other = line_through(pts[0], pts[1])
            meet = line_intersection(comp, other)
            if meet not in pts:
                return 29
            return None
        return 41
    return None


# ---------------------------------------------------------------------------
# structural condition checks on sampled taxonomies


@dataclass
class ConditionReport:
    checked: int
    subset_checks: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_conditions(samples: Iterable[Config]) -> ConditionReport:
    """Check the taxonomy ordering conditions on sampled configurations.

    For every finite sample K of type i: K itself must classify back to i
    (the patterns are mutually exclusive and exhaustive on their strata), and
    every proper subset that matches any type at all must match one with a
    strictly smaller index.
    """
    checked = 0
    subset_checks = 0
    violations = []
    for cfg in samples:
        if not cfg.is_finite():
            continue
        if not isinstance(cfg.type_id, int):
            raise InputError("condition checks need typed configurations")
        checked += 1
        own = classify(cfg)
        if own != cfg.type_id:
            violations.append((cfg.type_id, "self", own))
            continue
        pts = cfg.points
        for r in range(1, len(pts)):
            for subset in combinations(pts, r):
                subset_checks += 1
                sub_type = classify_points(subset)
                if sub_type is not None and sub_type >= cfg.type_id:
                    violations.append((cfg.type_id, subset, sub_type))
    return ConditionReport(checked, subset_checks, violations)


def verify_taxonomy_table() -> None:
    """Internal invariants of the golden table."""
    if len(TYPE_TABLE) != 42:
        raise TaxonomyError("taxonomy table must have 42 entries")
    dims = [rec.expected_dim for rec in TYPE_TABLE]
    if dims[0] != 18 or dims[-1] != 0:
        raise TaxonomyError("taxonomy table endpoints are wrong")
    if any(a < b for a, b in zip(dims, dims[1:])):
        raise TaxonomyError("expected dimensions must be nonincreasing")
