"""Exact scalar arithmetic and dense linear algebra.

Two coefficient fields are supported: arbitrary-precision rationals (``QQ``)
and prime fields ``GF(p)``.  Rationals are stored as ``fractions.Fraction``
(always in lowest terms with positive denominator), prime-field elements as
plain ints in ``[0, p)``.

Rank over the rationals is computed by fraction-free Bareiss elimination on
integerized rows, which keeps intermediate entries polynomial in the input
instead of letting gcd-heavy Fraction arithmetic blow up.  Reduced row
echelon form (used for kernels and canonical subspace bases) uses ordinary
exact Gaussian elimination; over ``GF(p)`` everything is plain modular
elimination.  All routines are deterministic: identical inputs give
bit-identical outputs, so echelon bases are usable in regression tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import FieldMismatchError, InputError

RawValue = Union[Fraction, int]


def _is_probable_prime(n: int) -> bool:
    # Deterministic Miller-Rabin for n < 3.3 * 10^24 with the standard witness set.
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of the two supported coefficient fields."""

    name: str

    def coerce(self, value) -> RawValue:
        raise NotImplementedError

    def zero(self) -> RawValue:
        raise NotImplementedError

    def one(self) -> RawValue:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    name = "qq"

    def coerce(self, value) -> Fraction:
        if isinstance(value, float):
            raise InputError("floats are not exact; pass Fraction, int or str")
        return Fraction(value)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("qq")


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_probable_prime(p):
            raise InputError(f"modulus {p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def coerce(self, value) -> int:
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise InputError(f"denominator divisible by {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, float):
            raise InputError("floats are not exact; pass int or str")
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        return int(value) % self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("fp", self.p))


QQ = RationalField()


def parse_field(spec: str) -> Field:
    """Parse a field specification string: ``qq`` or ``fp:<prime>``."""
    if spec == "qq":
        return QQ
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError as exc:
            raise InputError(f"bad field spec {spec!r}") from exc
        return PrimeField(p)
    raise InputError(f"bad field spec {spec!r}")


@dataclass(frozen=True)
class Scalar:
    """A single exact field element tagged with its field."""

    field: Field
    value: RawValue

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _check(self, other: "Scalar") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"mixed fields {self.field} and {other.field}")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __str__(self) -> str:
        return str(self.value)


class DenseMatrix:
    """Immutable dense matrix over a single exact field.

    Zero-row matrices are allowed (the empty constraint system); they must be
    constructed with an explicit column count.
    """

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        grid = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        if grid:
            widths = {len(r) for r in grid}
            if len(widths) != 1:
                raise InputError("ragged rows")
            inferred = widths.pop()
            if ncols is not None and ncols != inferred:
                raise InputError("ncols does not match row width")
            ncols = inferred
        elif ncols is None:
            raise InputError("zero-row matrix needs an explicit column count")
        if ncols == 0 and grid:
            raise InputError("rows must have at least one column")
        self.field = field
        self.rows = grid
        self.nrows = len(grid)
        self.ncols = ncols

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[Scalar]], ncols: int | None = None,
                     field: Field | None = None) -> "DenseMatrix":
        tags = {s.field for row in rows for s in row}
        if field is not None:
            tags.add(field)
        if len(tags) > 1:
            raise FieldMismatchError("matrix entries carry mixed field tags")
        if not tags:
            raise InputError("cannot infer field from an empty matrix")
        fld = tags.pop()
        return cls(fld, [[s.value for s in row] for row in rows], ncols)

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.rows[i][j])

    def transpose(self) -> "DenseMatrix":
        if self.nrows == 0:
            return DenseMatrix(self.field, [() for _ in range(self.ncols)], 0) \
                if self.ncols else DenseMatrix(self.field, [], 0)
        return DenseMatrix(self.field, list(zip(*self.rows)), self.nrows)

    def stack(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.field != other.field:
            raise FieldMismatchError("cannot stack matrices over different fields")
        if self.ncols != other.ncols:
            raise InputError("cannot stack matrices of different widths")
        return DenseMatrix(self.field, self.rows + other.rows, self.ncols)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix times column vector, returned as a tuple of raw values."""
        if len(vector) != self.ncols:
            raise InputError("vector length does not match column count")
        f = self.field
        vec = [f.coerce(v) for v in vector]
        out = []
        for row in self.rows:
            acc = f.zero()
            for a, b in zip(row, vec):
                acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DenseMatrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"DenseMatrix({self.field}, {self.nrows}x{self.ncols})"


@dataclass(frozen=True)
class SubspaceBasis:
    """A linear subspace given by a reduced-echelon basis of row vectors.

    Pivots strictly increase row by row and every pivot entry is 1, so equal
    subspaces always produce identical objects.
    """

    field: Field
    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        prev = -1
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise InputError("basis vector of wrong length")
            piv = next((j for j, v in enumerate(row) if not self.field.is_zero(v)), None)
            if piv is None:
                raise InputError("zero vector in basis")
            if piv <= prev:
                raise InputError("basis rows are not in echelon order")
            if row[piv] != self.field.one():
                raise InputError("pivot entries must equal 1")
            prev = piv

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector: Sequence) -> bool:
        f = self.field
        vec = [f.coerce(v) for v in vector]
        if len(vec) != self.ambient_dim:
            raise InputError("vector length does not match ambient dimension")
        for row in self.basis:
            piv = next(j for j, v in enumerate(row) if not f.is_zero(v))
            coef = vec[piv]
            if not f.is_zero(coef):
                for j in range(self.ambient_dim):
                    vec[j] = f.sub(vec[j], f.mul(coef, row[j]))
        return all(f.is_zero(v) for v in vec)

    def to_matrix(self) -> DenseMatrix:
        return DenseMatrix(self.field, self.basis, self.ambient_dim)


# ---------------------------------------------------------------------------
# elimination cores


def _rref(field: Field, rows: list) -> tuple[list, list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [field.sub(a, field.mul(factor, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _integerize(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        lcm = 1
        for v in row:
            d = v.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(v * lcm) for v in row])
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination."""
    m = [row[:] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            mic = mi[c]
            mr = m[r]
            for j in range(c, ncols):
                mi[j] = (pivot * mi[j] - mic * mr[j]) // prev
        prev = pivot
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# public operations


def rank(m: DenseMatrix) -> int:
    """Rank of a dense matrix over its field."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if isinstance(m.field, RationalField):
        return _bareiss_rank(_integerize(m.rows))
    _, pivots = _rref(m.field, [list(r) for r in m.rows])
    return len(pivots)


def rref(m: DenseMatrix) -> tuple[DenseMatrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows, pivots = _rref(m.field, [list(r) for r in m.rows])
    kept = [row for row in rows if any(not m.field.is_zero(v) for v in row)]
    return DenseMatrix(m.field, kept, m.ncols), tuple(pivots)


def kernel(m: DenseMatrix) -> SubspaceBasis:
    """Echelonized basis of the right null space of ``m``."""
    field = m.field
    if m.nrows == 0:
        basis = [[field.one() if j == i else field.zero() for j in range(m.ncols)]
                 for i in range(m.ncols)]
        return SubspaceBasis(field, m.ncols, tuple(tuple(r) for r in basis))
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        vec = [field.zero()] * m.ncols
        vec[fc] = field.one()
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(reduced.rows[i][fc])
        vectors.append(vec)
    echelon, _ = _rref(field, vectors)
    kept = tuple(tuple(row) for row in echelon
                 if any(not field.is_zero(v) for v in row))
    return SubspaceBasis(field, m.ncols, kept)


def row_space(m: DenseMatrix) -> SubspaceBasis:
    """Echelonized basis of the row space of ``m``."""
    reduced, _ = rref(m)
    return SubspaceBasis(m.field, m.ncols, reduced.rows)


def span_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Echelonized basis of the subspace sum a + b."""
    _check_compatible(a, b)
    stacked = DenseMatrix(a.field, a.basis + b.basis, a.ambient_dim)
    return row_space(stacked)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Echelonized basis of the intersection of two subspaces.

    Uses the annihilator trick: the intersection is the kernel of the stacked
    annihilators of the two row spaces.
    """
    _check_compatible(a, b)
    ann_a = kernel(a.to_matrix())
    ann_b = kernel(b.to_matrix())
    stacked = DenseMatrix(a.field, ann_a.basis + ann_b.basis, a.ambient_dim)
    return kernel(stacked)


def _check_compatible(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.field != b.field:
        raise FieldMismatchError("subspaces over different fields")
    if a.ambient_dim != b.ambient_dim:
        raise InputError("subspaces have different ambient dimensions")


def full_space(field: Field, n: int) -> SubspaceBasis:
    basis = tuple(tuple(field.one() if j == i else field.zero() for j in range(n))
                  for i in range(n))
    return SubspaceBasis(field, n, basis)


def matrix_mod_p(m: DenseMatrix, p: int) -> DenseMatrix:
    """Reduce a rational matrix modulo a prime.

    Raises InputError when some denominator is divisible by ``p``; callers
    doing rank comparisons across fields resample in that case.
    """
    if not isinstance(m.field, RationalField):
        raise InputError("matrix_mod_p expects a rational matrix")
    fp = PrimeField(p)
    return DenseMatrix(fp, [[fp.coerce(v) for v in row] for row in m.rows], m.ncols)
