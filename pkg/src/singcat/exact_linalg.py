"""Exact scalar arithmetic and the dense matrix kernel everything else reduces to.

Two field kinds: the rationals (fractions.Fraction) and prime fields F_p
(ints reduced into [0, p)).  No floating point anywhere.  All eliminations
use the same canonical pivot order (leftmost nonzero column, topmost row),
so ranks, kernels and particular solutions are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """A field spec: kind 'rational' or 'prime' with modulus p.

    Scalars are Fraction for the rationals and plain ints in [0, p) for F_p.
    The methods keep every value in canonical reduced form.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "rational":
            if p is not None:
                raise FieldError("rational field takes no modulus")
        elif kind == "prime":
            if p is None or not _is_prime(p):
                raise FieldError(f"modulus must be prime, got {p!r}")
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return "Field(rational)" if self.kind == "rational" else f"Field(F_{self.p})"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def of_int(self, n: int):
        return Fraction(n) if self.kind == "rational" else n % self.p

    def add(self, a, b):
        return a + b if self.kind == "rational" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "rational" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "rational" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "rational" else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("field inverse of zero")
        if self.kind == "rational":
            return 1 / a
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_str(self, s: str):
        """Parse a decimal coefficient string, '2/3' style for rationals."""
        s = s.strip()
        if self.kind == "rational":
            return Fraction(s)
        if "/" in s:
            num, den = s.split("/")
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(s) % self.p

    def to_str(self, a) -> str:
        return str(a)


def rational_field() -> Field:
    return Field("rational")


def prime_field(p: int) -> Field:
    return Field("prime", p)


class Matrix:
    """Dense exact matrix over a Field, row-major tuple-of-tuples storage.

    Immutable after construction.  A 0xN or Nx0 matrix is legal and shows up
    constantly (zero modules, empty Hom spaces).
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int,
                 entries: Iterable[Iterable]):
        ent = tuple(tuple(row) for row in entries)
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise ValueError(f"entry shape does not match {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = ent

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero
        return Matrix(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return Matrix(field, n, n,
                      [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for a rowless matrix")
            cols = len(rows[0])
        return Matrix(field, len(rows), cols, rows)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self.entries!r})"

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(e == z for r in self.entries for e in r)

    def mul(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            out.append([
                _dot(f, ri, [other.entries[k][j] for k in range(other.rows)])
                for j in range(other.cols)
            ])
        return Matrix(f, self.rows, other.cols, out)

    def add(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def sub(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.sub(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def scale(self, c) -> Matrix:
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [[f.mul(c, a) for a in r] for r in self.entries])

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def hstack(self, other: Matrix) -> Matrix:
        if self.rows != other.rows:
            raise ValueError("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [ra + rb for ra, rb in zip(self.entries, other.entries)])

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise ValueError("vstack col mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      self.entries + other.entries)

    def _same_shape(self, other: Matrix) -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def _dot(f: Field, u: Sequence, v: Sequence):
    acc = f.zero
    for a, b in zip(u, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def _rref(field: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list).

    Pivot choice is the canonical one: scan columns left to right, take the
    topmost unused row with a nonzero entry.
    """
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                ci = rows[i][c]
                rows[i] = [field.sub(x, field.mul(ci, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = _rref(m.field, [list(r) for r in m.entries])
    return Matrix(m.field, m.rows, m.cols, rows), pivots


def rank(m: Matrix) -> int:
    _, pivots = _rref(m.field, [list(r) for r in m.entries])
    return len(pivots)


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the left kernel {v : v.m = 0}, as row tuples.

    Size is always m.rows - rank(m).  Computed by reducing [m | I] and
    reading off the rows whose m-part vanished; deterministic.
    """
    f = m.field
    aug = [list(m.entries[i]) + [f.one if j == i else f.zero for j in range(m.rows)]
           for i in range(m.rows)]
    aug, _ = _rref(f, aug)
    z = f.zero
    out = []
    for row in aug:
        if all(x == z for x in row[:m.cols]):
            out.append(tuple(row[m.cols:]))
    return out


def solve_right(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a.x = b for x; None when inconsistent.

    Free variables are set to zero under the canonical pivot order, so the
    returned solution is unique as a function of (a, b).
    """
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: {a.rows} vs {b.rows}")
    f = a.field
    aug = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
    aug, pivots = _rref(f, aug)
    pivots = [c for c in pivots if c < a.cols]
    z = f.zero
    # any pivot landing in the b-block marks an inconsistent row
    for row in aug:
        if all(x == z for x in row[:a.cols]) and any(x != z for x in row[a.cols:]):
            return None
    x = [[z] * b.cols for _ in range(a.cols)]
    for r, c in enumerate(pivots):
        x[c] = list(aug[r][a.cols:])
    return Matrix(f, a.cols, b.cols, x)


def solve_left(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve x.a = b; the transposed twin of solve_right."""
    xt = solve_right(a.transpose(), b.transpose())
    return None if xt is None else xt.transpose()


def row_space_contains(m: Matrix, v: Sequence) -> bool:
    vm = Matrix.from_rows(m.field, [list(v)], m.cols)
    return solve_left(m, vm) is not None
