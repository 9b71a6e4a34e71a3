"""Exact rational matrices and the elimination kernels built on them.

Everything here works over :class:`fractions.Fraction`; there is no
floating point anywhere, so ranks and kernels are exact.  Matrices are
immutable.  Rows are stored as ``{column: value}`` dicts holding only the
nonzero entries, which keeps the cochain-complex matrices (very sparse)
cheap to multiply and reduce, while the public interface stays dense:
``m[i, j]`` returns a value for every position.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Q",
    "parse_rational",
    "format_rational",
    "Matrix",
    "DimensionError",
    "InconsistencyError",
    "rank",
    "rref",
    "kernel_basis",
    "solve",
    "quotient_dim",
]


class DimensionError(ValueError):
    """Shapes of the operands do not fit together."""


class InconsistencyError(ArithmeticError):
    """A computed invariant contradicts the algebra (e.g. coboundaries exceed cocycles)."""


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would smuggle rounding into exact code.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (integers, optional sign) into lowest terms."""
    text = s.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Matrix:
    """Immutable rational matrix.

    ``Matrix([[1, 2], [3, 4]])`` builds from nested rows; entries may be
    ints, Fractions or rational strings.  Columns of a matrix standing for
    a linear map are the images of the domain basis vectors.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, rows: Iterable[Sequence] = (), ncols: int | None = None):
        data = []
        width = ncols
        for row in rows:
            row = list(row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise DimensionError("ragged rows")
            data.append({j: v for j, v in ((j, Q(x)) for j, x in enumerate(row)) if v})
        self.nrows = len(data)
        self.ncols = 0 if width is None else width
        self._rows = tuple(data)
        self._hash = None

    @classmethod
    def _wrap(cls, rows: Sequence[dict], ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.nrows = len(rows)
        m.ncols = ncols
        m._rows = tuple(rows)
        m._hash = None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._wrap([{} for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap([{i: _ONE} for i in range(n)], n)

    @classmethod
    def scalar(cls, n: int, c) -> "Matrix":
        c = Q(c)
        return cls._wrap([{i: c} if c else {} for i in range(n)], n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [Q(v) for v in values]
        return cls._wrap([{i: v} if v else {} for i, v in enumerate(vals)], len(vals))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict) -> "Matrix":
        """Build from a ``{(i, j): value}`` mapping; absent entries are zero."""
        rows = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            v = Q(v)
            if v:
                rows[i][j] = v
        return cls._wrap(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            if not columns:
                raise DimensionError("row count needed for an empty column list")
            nrows = len(columns[0])
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise DimensionError("column length mismatch")
            for i, x in enumerate(col):
                x = Q(x)
                if x:
                    rows[i][j] = x
        return cls._wrap(rows, len(columns))

    @staticmethod
    def hstack(blocks: Sequence["Matrix"]) -> "Matrix":
        nrows = blocks[0].nrows
        rows = [{} for _ in range(nrows)]
        offset = 0
        for b in blocks:
            if b.nrows != nrows:
                raise DimensionError("hstack row mismatch")
            for i, r in enumerate(b._rows):
                rows[i].update({j + offset: v for j, v in r.items()})
            offset += b.ncols
        return Matrix._wrap(rows, offset)

    @staticmethod
    def vstack(blocks: Sequence["Matrix"]) -> "Matrix":
        ncols = blocks[0].ncols
        rows = []
        for b in blocks:
            if b.ncols != ncols:
                raise DimensionError("vstack column mismatch")
            rows.extend(dict(r) for r in b._rows)
        return Matrix._wrap(rows, ncols)

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"]) -> "Matrix":
        rows = []
        offset = 0
        total = sum(b.ncols for b in blocks)
        for b in blocks:
            rows.extend({j + offset: v for j, v in r.items()} for r in b._rows)
            offset += b.ncols
        return Matrix._wrap(rows, total)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if not (0 <= j < self.ncols):
            raise IndexError(j)
        return self._rows[i].get(j, _ZERO)

    def row(self, i: int) -> tuple:
        r = self._rows[i]
        return tuple(r.get(j, _ZERO) for j in range(self.ncols))

    def column(self, j: int) -> tuple:
        if not (0 <= j < self.ncols):
            raise IndexError(j)
        return tuple(r.get(j, _ZERO) for r in self._rows)

    def column_items(self, j: int) -> list[tuple[int, Fraction]]:
        """Nonzero entries of column ``j`` as ``(row, value)`` pairs."""
        return [(i, r[j]) for i, r in enumerate(self._rows) if j in r]

    def row_items(self, i: int) -> list[tuple[int, Fraction]]:
        return sorted(self._rows[i].items())

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    @property
    def T(self) -> "Matrix":
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix._wrap(rows, self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.nrows))
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for j, v in b.items():
                s = r.get(j, _ZERO) + sign * v
                if s:
                    r[j] = s
                else:
                    r.pop(j, None)
            rows.append(r)
        return Matrix._wrap(rows, self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap([{j: -v for j, v in r.items()} for r in self._rows], self.ncols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = Q(c)
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix._wrap([{j: c * v for j, v in r.items()} for r in self._rows], self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            orows = other._rows
            out = []
            for r in self._rows:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, _ZERO) + a * b
                out.append({j: v for j, v in acc.items() if v})
            return Matrix._wrap(out, other.ncols)
        vec = other
        if len(vec) != self.ncols:
            raise DimensionError(f"vector of length {len(vec)} against {self.shape}")
        return tuple(sum((v * vec[j] for j, v in r.items()), _ZERO) for r in self._rows)

    def apply_sparse(self, vec: dict) -> dict:
        """Multiply against a ``{index: value}`` vector, returning the same form."""
        out = {}
        for i, r in enumerate(self._rows):
            s = _ZERO
            for j, v in vec.items():
                a = r.get(j)
                if a is not None:
                    s += a * v
            if s:
                out[i] = s
        return out

    def pow(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionError("power of a non-square matrix")
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out


def _gauss_jordan(rows: list[dict], ncols: int, reduce_above: bool) -> tuple[list[dict], list[int]]:
    """Row-reduce sparse rows in place; returns (pivot rows, pivot columns).

    Each pivot row is normalized so its pivot entry is 1.  Among candidate
    rows the one with the fewest nonzeros is chosen, which limits fill-in.
    """
    active = [r for r in rows if r]
    pivots: list[int] = []
    pivot_rows: list[dict] = []
    for c in range(ncols):
        cand = [k for k, r in enumerate(active) if c in r]
        if not cand:
            continue
        best = min(cand, key=lambda k: len(active[k]))
        prow = active[best]
        inv = _ONE / prow[c]
        if inv != 1:
            prow = {j: v * inv for j, v in prow.items()}
        targets = [active[k] for k in cand if k != best]
        if reduce_above:
            targets += [pr for pr in pivot_rows if c in pr]
        for r in targets:
            f = r[c]
            for j, v in prow.items():
                s = r.get(j, _ZERO) - f * v
                if s:
                    r[j] = s
                else:
                    del r[j]
        pivot_rows.append(prow)
        pivots.append(c)
        del active[best]
        active = [r for r in active if r]
    return pivot_rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    prows, pivots = _gauss_jordan([dict(r) for r in m._rows], m.ncols, reduce_above=True)
    return Matrix._wrap(prows, m.ncols), pivots


def rank(m: Matrix) -> int:
    """Exact rank over the rationals."""
    if m.nrows < m.ncols:
        m = m.T
    _, pivots = _gauss_jordan([dict(r) for r in m._rows], m.ncols, reduce_above=False)
    return len(pivots)


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space; one vector per free column."""
    prows, pivots = _gauss_jordan([dict(r) for r in m._rows], m.ncols, reduce_above=True)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [_ZERO] * m.ncols
        v[free] = _ONE
        for p, r in zip(pivots, prows):
            x = r.get(free)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """Some ``x`` with ``m @ x == b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {m.nrows} rows")
    n = m.ncols
    rows = []
    for r, bi in zip(m._rows, b):
        r = dict(r)
        bi = Q(bi)
        if bi:
            r[n] = bi
        rows.append(r)
    prows, pivots = _gauss_jordan(rows, n + 1, reduce_above=True)
    if pivots and pivots[-1] == n:
        return None
    x = [_ZERO] * n
    for p, r in zip(pivots, prows):
        x[p] = r.get(n, _ZERO)
    return tuple(x)


def quotient_dim(z: int, b: int) -> int:
    """Dimension of Z/B given dim Z and dim B (requires B inside Z)."""
    if b > z:
        raise InconsistencyError(f"coboundaries ({b}) exceed cocycles ({z}); the differential does not square to zero")
    return z - b
