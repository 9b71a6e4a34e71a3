"""Algebras by structure constants and their representations.

Basis vectors are indexed from 0.  A vector is a tuple of Fractions of
length ``dim``.  Structure constants are given as sparse quadruples
``(i, j, k, c)`` meaning that the product of basis vectors ``i`` and ``j``
has coefficient ``c`` on basis vector ``k``.

These classes hold raw data only: a :class:`LieAlgebra` is any
antisymmetric bracket table (the Jacobi identity is a *property*, checked
by :func:`rbder.structures.check_jacobi`), and representations are any
families of action matrices.  The pair types in :mod:`.pairs` are where
axioms get enforced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..linalg import DimensionError, Matrix, Q

__all__ = [
    "LieAlgebra",
    "AssocAlgebra",
    "LieRep",
    "AssBimodule",
    "zero_vector",
    "unit_vector",
    "add_vectors",
    "scale_vector",
]

_ZERO = Fraction(0)


def zero_vector(n: int) -> tuple:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> tuple:
    v = [_ZERO] * n
    v[i] = Fraction(1)
    return tuple(v)


def add_vectors(*vs) -> tuple:
    return tuple(sum(xs, _ZERO) for xs in zip(*vs))


def scale_vector(c, v) -> tuple:
    c = Q(c)
    return tuple(c * x for x in v)


def _default_names(dim: int) -> tuple:
    return tuple(f"e{i + 1}" for i in range(dim))


class _Algebra:
    """Bilinear product on a ``dim``-dimensional space, stored as a full table."""

    __slots__ = ("dim", "names", "table", "_terms", "_hash")

    def _setup(self, dim: int, table, names):
        self.dim = dim
        self.names = tuple(names) if names is not None else _default_names(dim)
        if len(self.names) != dim:
            raise DimensionError(f"{len(self.names)} basis names for dimension {dim}")
        self.table = tuple(tuple(tuple(table[i][j]) for j in range(dim)) for i in range(dim))
        # sparse view: _terms[i][j] = ((k, c), ...) with c != 0
        self._terms = tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.table[i][j]) if c) for j in range(dim))
            for i in range(dim)
        )
        self._hash = None

    @staticmethod
    def _table_from_quads(dim: int, quads) -> list:
        table = [[[_ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        seen = set()
        for quad in quads:
            if len(quad) != 4:
                raise ValueError(f"structure constant entry {quad!r} is not (i, j, k, c)")
            i, j, k, c = quad
            for idx in (i, j, k):
                if not (isinstance(idx, int) and 0 <= idx < dim):
                    raise IndexError(f"basis index {idx!r} out of range for dimension {dim}")
            if (i, j, k) in seen:
                raise ValueError(f"duplicate structure constant for ({i}, {j}, {k})")
            seen.add((i, j, k))
            table[i][j][k] = Q(c)
        return table

    def terms(self, i: int, j: int):
        """Nonzero ``(k, c)`` pairs of the product of basis vectors i and j."""
        return self._terms[i][j]

    def mul_basis(self, i: int, j: int) -> tuple:
        return self.table[i][j]

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        """The product (bracket) of two vectors, extended bilinearly."""
        out = [_ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in self._terms[i][j]:
                    out[k] += ab * c
        return tuple(out)

    def left(self, i: int) -> Matrix:
        """Matrix of ``x -> e_i * x``."""
        return Matrix.from_columns([self.table[i][j] for j in range(self.dim)], self.dim)

    def right(self, i: int) -> Matrix:
        """Matrix of ``x -> x * e_i``."""
        return Matrix.from_columns([self.table[j][i] for j in range(self.dim)], self.dim)

    def left_of(self, u: Sequence) -> Matrix:
        return Matrix.from_columns([self.mul(u, _unit(self.dim, j)) for j in range(self.dim)], self.dim)

    def quads(self) -> list:
        """Sparse ``(i, j, k, c)`` listing of every nonzero structure constant."""
        return [(i, j, k, c) for i in range(self.dim) for j in range(self.dim) for k, c in self._terms[i][j]]

    def is_zero(self) -> bool:
        return not any(self._terms[i][j] for i in range(self.dim) for j in range(self.dim))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.table))
        return self._hash


def _unit(n, i):
    return unit_vector(n, i)


class LieAlgebra(_Algebra):
    """Antisymmetric bracket ``[e_i, e_j] = sum_k c e_k``.

    Only pairs with ``i < j`` may be supplied; the rest of the table follows
    from antisymmetry, so antisymmetry cannot be violated by the data.
    """

    __slots__ = ()

    def __init__(self, dim: int, brackets: Iterable = (), names=None):
        quads = list(brackets)
        for i, j, _k, _c in quads:
            if not i < j:
                raise ValueError(f"Lie bracket entries need i < j, got ({i}, {j})")
        table = self._table_from_quads(dim, quads)
        for i in range(dim):
            for j in range(i + 1, dim):
                table[j][i] = [-c for c in table[i][j]]
        self._setup(dim, table, names)

    @classmethod
    def from_table(cls, table, names=None) -> "LieAlgebra":
        """Build from a full ``table[i][j]`` of vectors, which must be antisymmetric."""
        dim = len(table)
        quads = []
        for i in range(dim):
            for j in range(dim):
                vij = [Q(c) for c in table[i][j]]
                vji = [Q(c) for c in table[j][i]]
                if any(a + b for a, b in zip(vij, vji)):
                    raise ValueError(f"bracket table is not antisymmetric at ({i}, {j})")
                if i < j:
                    quads.extend((i, j, k, c) for k, c in enumerate(vij) if c)
        return cls(dim, quads, names)

    bracket = _Algebra.mul

    def ad(self, i: int) -> Matrix:
        return self.left(i)

    def upper_quads(self) -> list:
        return [(i, j, k, c) for (i, j, k, c) in self.quads() if i < j]

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={self.upper_quads()!r})"


class AssocAlgebra(_Algebra):
    """Bilinear product ``e_i e_j = sum_k m e_k``; associativity is checked separately."""

    __slots__ = ()

    def __init__(self, dim: int, products: Iterable = (), names=None):
        table = self._table_from_quads(dim, list(products))
        self._setup(dim, table, names)

    @classmethod
    def from_table(cls, table, names=None) -> "AssocAlgebra":
        dim = len(table)
        quads = [(i, j, k, Q(c)) for i in range(dim) for j in range(dim) for k, c in enumerate(table[i][j]) if Q(c)]
        return cls(dim, quads, names)

    product = _Algebra.mul

    def __repr__(self):
        return f"AssocAlgebra(dim={self.dim}, products={self.quads()!r})"


def _check_square_family(mats, count, size, what):
    if len(mats) != count:
        raise DimensionError(f"{what}: expected {count} matrices, got {len(mats)}")
    for m in mats:
        if m.shape != (size, size):
            raise DimensionError(f"{what}: matrix of shape {m.shape}, expected {(size, size)}")


class LieRep:
    """Action of a Lie algebra on a vector space: ``rho[i]`` is the action of ``e_i``."""

    __slots__ = ("algebra", "rho", "space_dim")

    def __init__(self, algebra: LieAlgebra, rho: Sequence[Matrix], space_dim: int | None = None):
        rho = tuple(rho)
        if space_dim is None:
            if not rho:
                raise DimensionError("space dimension needed when the algebra is 0-dimensional")
            space_dim = rho[0].nrows
        _check_square_family(rho, algebra.dim, space_dim, "representation")
        self.algebra = algebra
        self.rho = rho
        self.space_dim = space_dim

    @classmethod
    def adjoint(cls, algebra: LieAlgebra) -> "LieRep":
        return cls(algebra, [algebra.ad(i) for i in range(algebra.dim)], algebra.dim)

    @classmethod
    def zero(cls, algebra: LieAlgebra, space_dim: int) -> "LieRep":
        return cls(algebra, [Matrix.zeros(space_dim, space_dim)] * algebra.dim, space_dim)

    def act(self, x: Sequence) -> Matrix:
        """Action matrix of an arbitrary element ``x``."""
        out = Matrix.zeros(self.space_dim, self.space_dim)
        for c, m in zip(x, self.rho):
            if c:
                out = out + m * c
        return out

    def __eq__(self, other):
        if not isinstance(other, LieRep):
            return NotImplemented
        return (self.algebra, self.rho, self.space_dim) == (other.algebra, other.rho, other.space_dim)

    def __hash__(self):
        return hash((self.algebra, self.rho, self.space_dim))


class AssBimodule:
    """Bimodule data: ``left[i]`` is ``m -> e_i m`` and ``right[i]`` is ``m -> m e_i``."""

    __slots__ = ("algebra", "left", "right", "space_dim")

    def __init__(self, algebra: AssocAlgebra, left: Sequence[Matrix], right: Sequence[Matrix], space_dim: int | None = None):
        left, right = tuple(left), tuple(right)
        if space_dim is None:
            if not left:
                raise DimensionError("space dimension needed when the algebra is 0-dimensional")
            space_dim = left[0].nrows
        _check_square_family(left, algebra.dim, space_dim, "left action")
        _check_square_family(right, algebra.dim, space_dim, "right action")
        self.algebra = algebra
        self.left = left
        self.right = right
        self.space_dim = space_dim

    @classmethod
    def regular(cls, algebra: AssocAlgebra) -> "AssBimodule":
        """The algebra as a bimodule over itself."""
        n = algebra.dim
        return cls(algebra, [algebra.left(i) for i in range(n)], [algebra.right(i) for i in range(n)], n)

    @classmethod
    def zero(cls, algebra: AssocAlgebra, space_dim: int) -> "AssBimodule":
        z = Matrix.zeros(space_dim, space_dim)
        return cls(algebra, [z] * algebra.dim, [z] * algebra.dim, space_dim)

    def left_of(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.space_dim, self.space_dim)
        for c, m in zip(x, self.left):
            if c:
                out = out + m * c
        return out

    def right_of(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.space_dim, self.space_dim)
        for c, m in zip(x, self.right):
            if c:
                out = out + m * c
        return out

    def __eq__(self, other):
        if not isinstance(other, AssBimodule):
            return NotImplemented
        return (self.algebra, self.left, self.right) == (other.algebra, other.left, other.right)

    def __hash__(self):
        return hash((self.algebra, self.left, self.right))
