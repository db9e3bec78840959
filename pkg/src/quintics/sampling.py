"""Deterministic generic sampling of the 42 configuration types.

Every sampler is a pure function of (type_id, field, seed): one SplitMix64
stream is derived per call and rejection sampling enforces the genericity
predicates of the type (distinctness, no unintended collinear triples, no
unintended six-on-a-conic, conic nondegeneracy, avoidance of intersection
points).  Types whose points must lie on a conic are built by pushing the
rational parametrization (s^2, s t, t^2) of a reference conic through a random
invertible change of coordinates, so sampling works verbatim over the
rationals, where finding points on an arbitrary conic would not be possible.

Sampling that keeps failing its predicates gives up after ``MAX_ATTEMPTS``
rejections; over a very small prime field this is the expected outcome.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

from .errors import InputError, SamplingError
from .exactalg import Field, PrimeField
from .projgeom import (
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
    on_common_conic,
    points_on_line_basis,
)
from .rng import SplitMix64, derive_seed

MAX_ATTEMPTS = 1000

# Bound for rational coordinate draws; small values keep the exact linear
# algebra downstream fast.
_QQ_COORD_BOUND = 9


class _Draw:
    """Field-aware random draws from one SplitMix64 stream."""

    def __init__(self, field: Field, rng: SplitMix64):
        self.field = field
        self.rng = rng

    def coord(self):
        if isinstance(self.field, PrimeField):
            return self.rng.below(self.field.p)
        return self.field.coerce(self.rng.int_in(-_QQ_COORD_BOUND, _QQ_COORD_BOUND))

    def coords(self, n: int) -> list:
        return [self.coord() for _ in range(n)]

    def point(self) -> ProjPoint:
        while True:
            c = self.coords(3)
            if any(not self.field.is_zero(v) for v in c):
                return ProjPoint(self.field, c)

    def line(self) -> ProjLine:
        while True:
            c = self.coords(3)
            if any(not self.field.is_zero(v) for v in c):
                return ProjLine(self.field, c)

    def point_on(self, ln: ProjLine) -> ProjPoint:
        u, v = points_on_line_basis(ln)
        f = self.field
        while True:
            s, t = self.coord(), self.coord()
            if f.is_zero(s) and f.is_zero(t):
                continue
            coords = tuple(f.add(f.mul(s, a), f.mul(t, b))
                           for a, b in zip(u.coords, v.coords))
            if any(not f.is_zero(c) for c in coords):
                return ProjPoint(f, coords)

    def distinct_points_on(self, ln: ProjLine, n: int, avoid: Sequence[ProjPoint] = ()) -> list:
        got: list[ProjPoint] = []
        banned = set(avoid)
        guard = 0
        while len(got) < n:
            p = self.point_on(ln)
            if p not in banned:
                got.append(p)
                banned.add(p)
            guard += 1
            if guard > 64 * n + 64:
                raise _Reject
        return got


class _Reject(Exception):
    """Internal signal: this attempt violated a genericity predicate."""


def _no_collinear_triple(points: Sequence[ProjPoint]) -> bool:
    return all(not collinear(a, b, c) for a, b, c in combinations(points, 3))


def _only_allowed_collinear(points: Sequence[ProjPoint], allowed: Sequence[ProjLine]) -> bool:
    """Every collinear triple must lie on one of the allowed lines."""
    for a, b, c in combinations(points, 3):
        if collinear(a, b, c):
            ln = line_through(a, b)
            if ln not in tuple(allowed):
                return False
    return True


def _on_some_conic(points: Sequence[ProjPoint]) -> bool:
    return on_common_conic(points)


def _reference_conic_points(draw: _Draw, n: int) -> tuple[Conic, list[ProjPoint]]:
    """A nondegenerate conic with ``n`` rational points on it.

    Applies a random invertible coordinate change T to the parametrized conic
    x z = y^2; the image conic has coefficients (r0 . x)(r2 . x) - (r1 . x)^2
    where r0, r1, r2 are the rows of T^{-1}.
    """
    f = draw.field
    while True:
        t_rows = [draw.coords(3) for _ in range(3)]
        det = _det3(f, t_rows)
        if not f.is_zero(det):
            break
    inv = _adjugate3(f, t_rows)  # rows of T^{-1} up to the harmless factor det
    conic = _conic_from_forms(f, inv[0], inv[2], inv[1])
    params: set = set()
    guard = 0
    points = []
    while len(points) < n:
        guard += 1
        if guard > 64 * n + 64:
            raise _Reject
        t = draw.coord()
        if t in params:
            continue
        params.add(t)
        base = (f.one(), t, f.mul(t, t))
        pt = tuple(
            f.add(f.add(f.mul(row[0], base[0]), f.mul(row[1], base[1])),
                  f.mul(row[2], base[2]))
            for row in t_rows
        )
        points.append(ProjPoint(f, pt))
    return conic, points


def _det3(f: Field, rows) -> object:
    (a, b, c), (d, e, g), (h, i, j) = rows
    return f.add(
        f.sub(f.mul(a, f.sub(f.mul(e, j), f.mul(g, i))),
              f.mul(b, f.sub(f.mul(d, j), f.mul(g, h)))),
        f.mul(c, f.sub(f.mul(d, i), f.mul(e, h))),
    )


def _adjugate3(f: Field, m) -> list:
    def co(i, j):
        sub = [[m[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
        det2 = f.sub(f.mul(sub[0][0], sub[1][1]), f.mul(sub[0][1], sub[1][0]))
        return det2 if (i + j) % 2 == 0 else f.neg(det2)

    return [[co(j, i) for j in range(3)] for i in range(3)]


def _conic_from_forms(f: Field, u, v, w) -> Conic:
    """Conic (u.x)(v.x) - (w.x)^2 in the package coefficient ordering."""

    def sym(a, b):
        return (
            f.mul(a[0], b[0]),
            f.mul(a[1], b[1]),
            f.mul(a[2], b[2]),
            f.add(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
            f.add(f.mul(a[0], b[2]), f.mul(a[2], b[0])),
            f.add(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        )

    uv = sym(u, v)
    ww = sym(w, w)
    return Conic(f, tuple(f.sub(a, b) for a, b in zip(uv, ww)))


def conic_from_line_pair(l1: ProjLine, l2: ProjLine) -> Conic:
    """The degenerate conic that is the union of two lines."""
    f = l1.field
    zero3 = (f.zero(), f.zero(), f.zero())
    return _conic_from_forms(f, l1.coeffs, l2.coeffs, zero3)


# ---------------------------------------------------------------------------
# per-type constructions


def _points_config(f: Field, pts: Sequence[ProjPoint], tid: int) -> Config:
    return Config(f, points=tuple(pts), type_id=tid)


def _k_on_line(draw: _Draw, k: int, tid: int) -> Config:
    ln = draw.line()
    pts = draw.distinct_points_on(ln, k)
    return _points_config(draw.field, pts, tid)


def _k_on_line_plus_off(draw: _Draw, k: int, off: int, tid: int) -> Config:
    ln = draw.line()
    pts = draw.distinct_points_on(ln, k)
    extras: list[ProjPoint] = []
    guard = 0
    while len(extras) < off:
        guard += 1
        if guard > 200:
            raise _Reject
        p = draw.point()
        if incident(p, ln) or p in extras:
            continue
        extras.append(p)
    allpts = pts + extras
    if not _only_allowed_collinear(allpts, [ln]):
        raise _Reject
    return _points_config(draw.field, allpts, tid)


def _two_line_trios(draw: _Draw, include_intersection: bool, extra_off: int, tid: int) -> Config:
    f = draw.field
    l1 = draw.line()
    l2 = draw.line()
    if l1 == l2:
        raise _Reject
    p12 = line_intersection(l1, l2)
    a = draw.distinct_points_on(l1, 3, avoid=[p12])
    b = draw.distinct_points_on(l2, 3, avoid=[p12] + a)
    pts = a + b
    if include_intersection:
        pts.append(p12)
    for _ in range(extra_off):
        guard = 0
        while True:
            guard += 1
            if guard > 200:
                raise _Reject
            q = draw.point()
            if incident(q, l1) or incident(q, l2) or q in pts:
                continue
            pts.append(q)
            break
    if not _only_allowed_collinear(pts, [l1, l2]):
        raise _Reject
    return _points_config(f, pts, tid)


def _two_lines_points(draw: _Draw, k1: int, k2: int, tid: int) -> Config:
    l1 = draw.line()
    l2 = draw.line()
    if l1 == l2:
        raise _Reject
    p12 = line_intersection(l1, l2)
    a = draw.distinct_points_on(l1, k1, avoid=[p12])
    b = draw.distinct_points_on(l2, k2, avoid=[p12] + a)
    return _points_config(draw.field, a + b, tid)


def _conic_points(draw: _Draw, n: int, extra_off: int, tid: int) -> Config:
    conic, pts = _reference_conic_points(draw, n)
    if conic.is_degenerate():
        raise _Reject
    pts = list(pts)
    for _ in range(extra_off):
        guard = 0
        while True:
            guard += 1
            if guard > 200:
                raise _Reject
            q = draw.point()
            if conic.contains(q) or q in pts:
                continue
            if not _no_collinear_triple(pts + [q]):
                continue
            pts.append(q)
            break
    return _points_config(draw.field, pts, tid)


def _line_component(draw: _Draw, off: int, tid: int, *, off_collinear: bool | None = None) -> Config:
    f = draw.field
    comp = draw.line()
    pts: list[ProjPoint] = []
    if off_collinear:
        other = draw.line()
        if other == comp:
            raise _Reject
        p12 = line_intersection(comp, other)
        pts = draw.distinct_points_on(other, off, avoid=[p12])
    else:
        guard = 0
        while len(pts) < off:
            guard += 1
            if guard > 200:
                raise _Reject
            q = draw.point()
            if incident(q, comp) or q in pts:
                continue
            pts.append(q)
        if off_collinear is False and len(pts) == 3 and collinear(*pts):
            raise _Reject
    return Config(f, points=tuple(pts), lines=(comp,), type_id=tid)


def _pencil_quadruple(draw: _Draw, tid: int) -> Config:
    """Four generic base points plus the four cuts of a line by two conics
    through the base points."""
    f = draw.field
    base = []
    guard = 0
    while len(base) < 4:
        guard += 1
        if guard > 200:
            raise _Reject
        p = draw.point()
        if p in base:
            continue
        base.append(p)
    if not _no_collinear_triple(base):
        raise _Reject
    ln = draw.line()
    if any(incident(p, ln) for p in base):
        raise _Reject

    def cut_pair(avoid: set) -> tuple[ProjPoint, ProjPoint, Conic]:
        for _ in range(64):
            p = draw.point_on(ln)
            if p in avoid:
                continue
            q = conic_through(base + [p])
            if q is None or q.is_degenerate():
                continue
            other = conic_line_second_point(q, ln, p)
            if other is None or other == p or other in avoid:
                continue
            return p, other, q
        raise _Reject

    p1, p1x, q1 = cut_pair(set())
    p2, p2x, q2 = cut_pair({p1, p1x})
    if q2 == q1:
        raise _Reject
    pts = base + [p1, p1x, p2, p2x]
    if len(set(pts)) != 8:
        raise _Reject
    if not _only_allowed_collinear(pts, [ln]):
        raise _Reject
    return _points_config(f, pts, tid)


def _triangle_conic(draw: _Draw, tid: int) -> Config:
    """Three generic vertices plus the six cuts of the triangle sides by a
    conic avoiding the vertices."""
    f = draw.field
    verts = []
    guard = 0
    while len(verts) < 3:
        guard += 1
        if guard > 200:
            raise _Reject
        p = draw.point()
        if p in verts:
            continue
        verts.append(p)
    a, b, c = verts
    if collinear(a, b, c):
        raise _Reject
    ab, bc, ca = line_through(a, b), line_through(b, c), line_through(c, a)
    q12 = draw.distinct_points_on(ab, 2, avoid=[a, b])
    q34 = draw.distinct_points_on(bc, 2, avoid=[b, c] + q12)
    (q5,) = draw.distinct_points_on(ca, 1, avoid=[c, a] + q12 + q34)
    quad = conic_through(q12 + q34 + [q5])
    if quad is None or quad.is_degenerate():
        raise _Reject
    if any(quad.contains(v) for v in verts):
        raise _Reject
    q6 = conic_line_second_point(quad, ca, q5)
    if q6 is None or q6 in verts + q12 + q34 + [q5]:
        raise _Reject
    pts = verts + q12 + q34 + [q5, q6]
    if not _only_allowed_collinear(pts, [ab, bc, ca]):
        raise _Reject
    return _points_config(f, pts, tid)


def _five_lines(draw: _Draw, tid: int) -> Config:
    lines = []
    guard = 0
    while len(lines) < 5:
        guard += 1
        if guard > 200:
            raise _Reject
        ln = draw.line()
        if ln in lines:
            continue
        lines.append(ln)
    pts = []
    for l1, l2 in combinations(lines, 2):
        p = line_intersection(l1, l2)
        if p in pts:
            raise _Reject
        pts.append(p)
    if not _only_allowed_collinear(pts, lines):
        raise _Reject
    return _points_config(draw.field, pts, tid)


def _generic_points(draw: _Draw, k: int, tid: int | str) -> Config:
    pts: list[ProjPoint] = []
    guard = 0
    while len(pts) < k:
        guard += 1
        if guard > 400:
            raise _Reject
        p = draw.point()
        if p in pts:
            continue
        pts.append(p)
    if not _no_collinear_triple(pts):
        raise _Reject
    if k >= 6:
        for six in combinations(pts, 6):
            if _on_some_conic(six):
                raise _Reject
    return _points_config(draw.field, pts, tid)


def _builder(type_id: int) -> Callable[[_Draw], Config]:
    simple = {
        1: lambda d: _points_config(d.field, [d.point()], 1),
        2: lambda d: _generic_points(d, 2, 2),
        3: lambda d: _generic_points(d, 3, 3),
        4: lambda d: _k_on_line(d, 4, 4),
        5: lambda d: _k_on_line(d, 5, 5),
        6: lambda d: _k_on_line(d, 6, 6),
        7: lambda d: _k_on_line(d, 7, 7),
        8: lambda d: _k_on_line(d, 8, 8),
        9: lambda d: _k_on_line(d, 9, 9),
        10: lambda d: _k_on_line(d, 10, 10),
        11: lambda d: _line_component(d, 0, 11),
        12: lambda d: _generic_points(d, 4, 12),
        13: lambda d: _k_on_line_plus_off(d, 4, 1, 13),
        14: lambda d: _k_on_line_plus_off(d, 5, 1, 14),
        15: lambda d: _k_on_line_plus_off(d, 6, 1, 15),
        16: lambda d: _k_on_line_plus_off(d, 7, 1, 16),
        17: lambda d: _line_component(d, 1, 17),
        18: lambda d: _generic_points(d, 5, 18),
        19: lambda d: _k_on_line_plus_off(d, 4, 2, 19),
        20: lambda d: _k_on_line_plus_off(d, 5, 2, 20),
        21: lambda d: _k_on_line_plus_off(d, 6, 2, 21),
        22: lambda d: _line_component(d, 2, 22),
        23: lambda d: _two_line_trios(d, False, 0, 23),
        24: lambda d: _conic_points(d, 6, 0, 24),
        25: lambda d: _two_line_trios(d, True, 0, 25),
        26: lambda d: _generic_points(d, 6, 26),
        27: lambda d: _two_lines_points(d, 4, 3, 27),
        28: lambda d: _two_lines_points(d, 5, 3, 28),
        29: lambda d: _line_component(d, 3, 29, off_collinear=True),
        30: lambda d: _two_lines_points(d, 4, 4, 30),
        31: lambda d: _two_line_components(d),
        32: lambda d: _conic_points(d, 7, 0, 32),
        33: lambda d: _conic_component(d),
        34: lambda d: _k_on_line_plus_off(d, 4, 3, 34),
        35: lambda d: _two_line_trios(d, False, 1, 35),
        36: lambda d: _conic_points(d, 6, 1, 36),
        37: lambda d: _two_line_trios(d, True, 1, 37),
        38: lambda d: _pencil_quadruple(d, 38),
        39: lambda d: _triangle_conic(d, 39),
        40: lambda d: _five_lines(d, 40),
        41: lambda d: _line_component(d, 3, 41, off_collinear=False),
        42: lambda d: Config(d.field, type_id=42, whole_plane=True),
    }
    return simple[type_id]


def _two_line_components(draw: _Draw) -> Config:
    l1 = draw.line()
    l2 = draw.line()
    if l1 == l2:
        raise _Reject
    return Config(draw.field, lines=(l1, l2), type_id=31)


def _conic_component(draw: _Draw) -> Config:
    f = draw.field
    while True:
        coeffs = draw.coords(6)
        if all(f.is_zero(v) for v in coeffs):
            continue
        conic = Conic(f, coeffs)
        if conic.is_degenerate():
            raise _Reject
        return Config(f, conics=(conic,), type_id=33)


def sample_generic(type_id: int, field: Field, seed: int) -> Config:
    """Deterministically sample a generic configuration of the given type."""
    if not 1 <= type_id <= 42:
        raise InputError(f"type_id {type_id} out of range 1..42")
    build = _builder(type_id)
    rng = SplitMix64(derive_seed(seed, type_id))
    draw = _Draw(field, rng)
    for _ in range(MAX_ATTEMPTS):
        try:
            return build(draw)
        except _Reject:
            continue
    raise SamplingError(
        f"could not satisfy genericity for type {type_id} over {field} "
        f"within {MAX_ATTEMPTS} attempts; the field may be too small")


def sample_generic_points(k: int, field: Field, seed: int) -> Config:
    """Sample k points in general position: no 3 collinear, no 6 on a conic."""
    rng = SplitMix64(derive_seed(seed, 100 + k))
    draw = _Draw(field, rng)
    for _ in range(MAX_ATTEMPTS):
        try:
            return _generic_points(draw, k, "untyped")
        except _Reject:
            continue
    raise SamplingError(
        f"could not place {k} generic points over {field} "
        f"within {MAX_ATTEMPTS} attempts; the field may be too small")


def random_projective_transform(field: Field, seed: int) -> list:
    """A random invertible 3x3 matrix, for projective-invariance tests."""
    draw = _Draw(field, SplitMix64(derive_seed(seed, 777)))
    while True:
        rows = [draw.coords(3) for _ in range(3)]
        if not field.is_zero(_det3(field, rows)):
            return rows


def apply_transform_to_point(m: list, pt: ProjPoint) -> ProjPoint:
    f = pt.field
    coords = tuple(
        f.add(f.add(f.mul(row[0], pt.coords[0]), f.mul(row[1], pt.coords[1])),
              f.mul(row[2], pt.coords[2]))
        for row in m
    )
    return ProjPoint(f, coords)


def apply_transform_to_line(m: list, ln: ProjLine) -> ProjLine:
    # Lines transform by the inverse transpose; the adjugate differs from it
    # by a nonzero determinant factor, which projective normalization kills.
    f = ln.field
    adj = _adjugate3(f, m)
    coeffs = tuple(
        f.add(f.add(f.mul(adj[0][i], ln.coeffs[0]), f.mul(adj[1][i], ln.coeffs[1])),
              f.mul(adj[2][i], ln.coeffs[2]))
        for i in range(3)
    )
    return ProjLine(f, coeffs)


def apply_transform_to_config(m: list, cfg: Config) -> Config:
    pts = tuple(apply_transform_to_point(m, p) for p in cfg.points)
    lines = tuple(apply_transform_to_line(m, ln) for ln in cfg.lines)
    conics = tuple(_transform_conic(m, c) for c in cfg.conics)
    return Config(cfg.field, points=pts, lines=lines, conics=conics,
                  type_id=cfg.type_id, whole_plane=cfg.whole_plane)


def _transform_conic(m: list, c: Conic) -> Conic:
    # Pull back the quadratic form along the adjugate (inverse up to scale):
    # q'(x) = q(Ax) with A = adjugate(m), expanded through the Veronese map.
    f = c.field
    adj = _adjugate3(f, m)
    a, b, cc, d, e, g = c.coeffs
    r0, r1, r2 = tuple(adj[0]), tuple(adj[1]), tuple(adj[2])

    def sym(u, v):
        return (
            f.mul(u[0], v[0]), f.mul(u[1], v[1]), f.mul(u[2], v[2]),
            f.add(f.mul(u[0], v[1]), f.mul(u[1], v[0])),
            f.add(f.mul(u[0], v[2]), f.mul(u[2], v[0])),
            f.add(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
        )

    acc = [f.zero()] * 6
    for coef, (u, v) in (
        (a, (r0, r0)), (b, (r1, r1)), (cc, (r2, r2)),
        (d, (r0, r1)), (e, (r0, r2)), (g, (r1, r2)),
    ):
        for i, val in enumerate(sym(u, v)):
            acc[i] = f.add(acc[i], f.mul(coef, val))
    return Conic(f, tuple(acc))
