"""Exact scalar, vector and matrix arithmetic over Q and prime fields.

Every computation in this package reduces to linear algebra over an exact
field: rationals with arbitrary precision, or F_p for a prime p.  Floats
never appear.  Rationals are plain ``fractions.Fraction`` values (already
kept in lowest terms with positive denominator); prime-field elements are
canonical representatives in [0, p) wrapped so that mixed-field arithmetic
fails loudly instead of silently coercing.

Gaussian elimination preserves exact fractions and always picks the first
nonzero entry in row-major order as the pivot, so ranks, nullspace
witnesses and span tests are deterministic functions of their input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatchError, FieldMismatchError, InvalidInputError

# Elements are Fraction (rational) or FpElement (prime field).
Scalar = Union[Fraction, "FpElement"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime p.

    p is capped so that a single product fits comfortably in a machine
    word; Python integers would not overflow anyway, but the cap keeps
    the door open for compiled arithmetic and rejects absurd moduli.
    """

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= 2**31 - 1:
            raise InvalidInputError(f"prime modulus out of range: {self.p!r}")
        if not _is_prime(self.p):
            raise InvalidInputError(f"modulus is not prime: {self.p}")

    # -- element construction ------------------------------------------
    def element(self, value: int) -> "FpElement":
        return FpElement(self, value % self.p)

    from_int = element

    @property
    def zero(self) -> "FpElement":
        return self.element(0)

    @property
    def one(self) -> "FpElement":
        return self.element(1)

    def coerce(self, x) -> "FpElement":
        if isinstance(x, FpElement):
            if x.field != self:
                raise FieldMismatchError(f"element of F_{x.field.p} used in F_{self.p}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return self.element(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into F_{self.p}")

    def elements(self) -> Iterable["FpElement"]:
        """All p elements, in canonical order 0, 1, ..., p-1."""
        for v in range(self.p):
            yield self.element(v)

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True, slots=True)
class FpElement:
    """Canonical representative of a residue class mod a prime."""

    field: PrimeField
    value: int

    def _check(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"mixed moduli: F_{self.field.p} vs F_{other.field.p}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.field, (self.value + other.value) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.field, (self.value - other.value) % self.field.p)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.field, (self.value * other.value) % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.field.p}")
        inv = pow(other.value, -1, self.field.p)
        return FpElement(self.field, (self.value * inv) % self.field.p)

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0 and self.value == 0:
            raise ZeroDivisionError(f"inverting zero in F_{self.field.p}")
        return FpElement(self.field, pow(self.value, exponent, self.field.p))

    def __neg__(self):
        return FpElement(self.field, (-self.value) % self.field.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FpElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.value))

    def __repr__(self) -> str:
        return f"{self.value}(mod {self.field.p})"


class RationalField:
    """The rationals, with Fraction as the element type.

    Fraction already normalizes to lowest terms with a positive
    denominator, which is exactly the canonical form required here.
    """

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def element(self, numerator, denominator=1) -> Fraction:
        return Fraction(numerator, denominator)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into Q")

    @property
    def name(self) -> str:
        return "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(RationalField)

    def __repr__(self) -> str:
        return "RationalField()"


QQ = RationalField()

Field = Union[RationalField, PrimeField]


def field_to_json(field: Field):
    if isinstance(field, PrimeField):
        return {"prime": field.p}
    return "rational"


def field_from_json(data) -> Field:
    if data == "rational":
        return QQ
    if isinstance(data, dict) and set(data) == {"prime"}:
        return PrimeField(data["prime"])
    raise InvalidInputError(f"unrecognized field descriptor: {data!r}")


def scalar_to_str(x: Scalar) -> str:
    if isinstance(x, FpElement):
        return str(x.value)
    return str(x)  # Fraction renders as "n" or "n/d"


def scalar_from_str(field: Field, text: str) -> Scalar:
    try:
        if isinstance(field, PrimeField):
            return field.element(int(text))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad scalar {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vector:
    """Immutable fixed-width vector with a field tag."""

    field: Field
    entries: tuple

    @staticmethod
    def make(field: Field, values: Iterable) -> "Vector":
        return Vector(field, tuple(field.coerce(v) for v in values))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _check(self, other: "Vector") -> None:
        if not isinstance(other, Vector):
            raise FieldMismatchError(f"expected Vector, got {other!r}")
        if other.field != self.field:
            raise FieldMismatchError(f"mixed fields: {self.field.name} vs {other.field.name}")
        if len(other) != len(self):
            raise DimensionMismatchError(f"widths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.field, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.field, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Vector":
        c = self.field.coerce(c)
        return Vector(self.field, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(a == zero for a in self.entries)

    def __repr__(self) -> str:
        return "(" + ", ".join(scalar_to_str(a) for a in self.entries) + ")"


def zero_vector(field: Field, width: int) -> Vector:
    return Vector(field, (field.zero,) * width)


def basis_vector(field: Field, width: int, index: int) -> Vector:
    if not 0 <= index < width:
        raise DimensionMismatchError(f"basis index {index} out of range for width {width}")
    entries = [field.zero] * width
    entries[index] = field.one
    return Vector(field, tuple(entries))


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major matrix; rows share one field and width."""

    field: Field
    rows: tuple

    @staticmethod
    def from_rows(rows: Sequence[Vector]) -> "Matrix":
        rows = tuple(rows)
        if not rows:
            raise DimensionMismatchError("matrix needs at least one row; use rank([]) helpers instead")
        field = rows[0].field
        width = len(rows[0])
        for r in rows[1:]:
            if r.field != field:
                raise FieldMismatchError("rows over different fields")
            if len(r) != width:
                raise DimensionMismatchError("ragged rows")
        return Matrix(field, rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def transpose(m: Matrix) -> Matrix:
    cols = [
        Vector(m.field, tuple(row[j] for row in m.rows)) for j in range(m.ncols)
    ]
    return Matrix.from_rows(cols)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return Vector(m.field, tuple(dot(row, v) for row in m.rows))


def dot(a: Vector, b: Vector) -> Scalar:
    """Exact inner product; errors on width or field mismatch."""
    a._check(b)
    total = a.field.zero
    for x, y in zip(a.entries, b.entries):
        total = total + x * y
    return total


def _echelon(rows: list, width: int, field: Field):
    """Forward elimination, in place; returns (pivot_cols, rows).

    Pivot choice: first nonzero entry in row-major order, i.e. scan
    columns left to right and rows top to bottom.  Entries stay in
    canonical form automatically (Fraction normalizes, F_p reduces).
    """
    zero = field.zero
    pivot_cols = []
    pivot_row = 0
    for col in range(width):
        found = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col] != zero:
                found = r
                break
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        pivot = rows[pivot_row][col]
        for r in range(pivot_row + 1, len(rows)):
            if rows[r][col] != zero:
                factor = rows[r][col] / pivot
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return pivot_cols, rows


def _as_row_lists(vectors: Sequence[Vector]):
    if not vectors:
        return None, 0, []
    field = vectors[0].field
    width = len(vectors[0])
    for v in vectors:
        if v.field != field:
            raise FieldMismatchError("vectors over different fields")
        if len(v) != width:
            raise DimensionMismatchError("vectors of different widths")
    return field, width, [list(v.entries) for v in vectors]


def rank(m: Union[Matrix, Sequence[Vector]]) -> int:
    """Row rank via fraction-preserving elimination.  rank([]) == 0."""
    vectors = m.rows if isinstance(m, Matrix) else tuple(m)
    field, width, rows = _as_row_lists(vectors)
    if field is None:
        return 0
    pivot_cols, _ = _echelon(rows, width, field)
    return len(pivot_cols)


def independent(vectors: Sequence[Vector]) -> bool:
    """True iff the vectors are linearly independent (vacuously for [])."""
    vectors = tuple(vectors)
    return rank(vectors) == len(vectors)


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    """Membership of v in span(basis), decided by rank comparison."""
    basis = tuple(basis)
    if not basis:
        return v.is_zero()
    return rank(basis) == rank(basis + (v,))


def projective_normalize(v: Vector) -> Vector:
    """Scale a nonzero vector so its first nonzero entry is 1.

    This is the canonical representative of the line through v, used
    for witness vectors so that reports and JSON exports are stable.
    """
    zero = v.field.zero
    for entry in v.entries:
        if entry != zero:
            return v.scale(v.field.one / entry)
    raise InvalidInputError("cannot normalize the zero vector")


def row_space_canonical(vectors: Sequence[Vector]) -> tuple:
    """Canonical basis of the span: reduced echelon rows, zero rows dropped.

    Two vector lists span the same subspace iff their canonical forms
    are equal, so the result doubles as a hashable span identity.
    """
    field, width, rows = _as_row_lists(tuple(vectors))
    if field is None:
        return ()
    zero = field.zero
    pivot_cols, rows = _echelon(rows, width, field)
    reduced = [rows[i] for i in range(len(pivot_cols))]
    for i in range(len(pivot_cols) - 1, -1, -1):
        col = pivot_cols[i]
        pivot = reduced[i][col]
        reduced[i] = [a / pivot for a in reduced[i]]
        for r in range(i):
            factor = reduced[r][col]
            if factor != zero:
                reduced[r] = [a - factor * b for a, b in zip(reduced[r], reduced[i])]
    return tuple(Vector(field, tuple(row)) for row in reduced)


def nullspace_basis(field: Field, width: int, vectors: Sequence[Vector]) -> list:
    """Deterministic basis of {a : v . a == 0 for every row v}.

    One basis vector per free column of the echelon form, in column
    order: it carries 1 at its own free column, 0 at the other free
    columns, and back-substituted pivot coordinates.  With no rows the
    result is the standard basis of F^width.
    """
    if width < 1:
        raise DimensionMismatchError("kernel basis needs width >= 1")
    vectors = tuple(vectors)
    for v in vectors:
        if v.field != field:
            raise FieldMismatchError("row field differs from the requested field")
        if len(v) != width:
            raise DimensionMismatchError("row width differs from the requested width")
    zero = field.zero
    rows = [list(v.entries) for v in vectors]
    pivot_cols, rows = _echelon(rows, width, field)
    pivot_set = set(pivot_cols)
    basis = []
    for free_col in range(width):
        if free_col in pivot_set:
            continue
        solution = [zero] * width
        solution[free_col] = field.one
        for i in range(len(pivot_cols) - 1, -1, -1):
            col = pivot_cols[i]
            row = rows[i]
            acc = zero
            for j in range(col + 1, width):
                if solution[j] != zero and row[j] != zero:
                    acc = acc + row[j] * solution[j]
            solution[col] = -acc / row[col]
        basis.append(Vector(field, tuple(solution)))
    return basis


def nullspace_witness(m: Union[Matrix, Sequence[Vector]]):
    """One nonzero kernel vector of the row system, or None if the
    matrix has full column rank.

    The witness fixes the lexicographically-first free column at 1 and
    back-substitutes, then is projectively normalized.  With the fixed
    pivot order this makes the witness a deterministic function of the
    input rows.
    """
    vectors = m.rows if isinstance(m, Matrix) else tuple(m)
    field, width, rows = _as_row_lists(vectors)
    if field is None:
        raise InvalidInputError("nullspace of an empty system is ambiguous; supply the width via a zero row")
    zero = field.zero
    pivot_cols, rows = _echelon(rows, width, field)
    if len(pivot_cols) == width:
        return None
    free_col = next(c for c in range(width) if c not in pivot_cols)
    solution = [zero] * width
    solution[free_col] = field.one
    # Back-substitute pivot variables, bottom row of the echelon first.
    for i in range(len(pivot_cols) - 1, -1, -1):
        col = pivot_cols[i]
        row = rows[i]
        acc = zero
        for j in range(col + 1, width):
            if solution[j] != zero and row[j] != zero:
                acc = acc + row[j] * solution[j]
        solution[col] = -acc / row[col]
    return projective_normalize(Vector(field, tuple(solution)))
