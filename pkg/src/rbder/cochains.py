"""Cochain spaces, cochain values and sparse operator assembly.

A degree-n cochain from a d-dimensional algebra to an m-dimensional space is
stored by its values on basis tuples.  Alternating (Lie) cochains keep only
strictly increasing tuples; Hochschild cochains keep every ordered tuple.
The coordinate vector of a cochain lists tuples in lexicographic order with
the target coordinate innermost, so ``(tuple k, coordinate a)`` sits at
position ``k*m + a``.

Operators are assembled as sparse matrices by visiting each output tuple
once and recording which input values (and with which coefficient or action
matrix) it depends on.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Sequence

from .linalg import DimensionError, Matrix, Q

__all__ = [
    "CochainSpace",
    "LieCochain",
    "AssCochain",
    "sort_sign",
    "perm_sign",
    "expand_args",
    "OperatorBuilder",
    "block_matrix",
    "combined_dim",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def sort_sign(seq: Sequence[int]) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple; sign 0 on repeats."""
    s = list(seq)
    sign = 1
    # insertion sort counting transpositions; tuples here are short
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(s, s[1:]):
        if a == b:
            return 0, tuple(s)
    return sign, tuple(s)


def perm_sign(p: Sequence[int]) -> int:
    return sort_sign(p)[0]


def expand_args(args: Sequence[Sequence[tuple[int, Fraction]]]):
    """Multilinear expansion of arguments given as sparse ``[(index, coef), ...]`` lists.

    Yields ``(index_tuple, coefficient)`` for every nonzero combination.
    """
    if not args:
        yield (), _ONE
        return
    for combo in product(*args):
        c = _ONE
        for _, x in combo:
            c *= x
        yield tuple(i for i, _ in combo), c


def _sparse(v: Sequence) -> list:
    return [(i, Q(x)) for i, x in enumerate(v) if x]


@lru_cache(maxsize=None)
def _tuples(d: int, n: int, alternating: bool) -> tuple:
    if alternating:
        return tuple(combinations(range(d), n))
    return tuple(product(range(d), repeat=n))


@lru_cache(maxsize=None)
def _tuple_index(d: int, n: int, alternating: bool) -> dict:
    return {t: k for k, t in enumerate(_tuples(d, n, alternating))}


class CochainSpace:
    """Degree-n cochains from a d-dimensional source into an m-dimensional target."""

    __slots__ = ("d", "m", "n", "alternating", "tuples", "index")

    def __init__(self, d: int, m: int, n: int, alternating: bool):
        if n < 0:
            raise DimensionError("negative cochain degree")
        self.d, self.m, self.n, self.alternating = d, m, n, alternating
        self.tuples = _tuples(d, n, alternating)
        self.index = _tuple_index(d, n, alternating)

    @property
    def dim(self) -> int:
        return len(self.tuples) * self.m

    def locate(self, raw: Sequence[int]) -> tuple[int, int]:
        """``(sign, tuple position)`` of an arbitrary index tuple; sign 0 if it vanishes."""
        if self.alternating:
            sign, t = sort_sign(raw)
            if not sign:
                return 0, -1
            return sign, self.index[t]
        return 1, self.index[tuple(raw)]

    def __eq__(self, other):
        return isinstance(other, CochainSpace) and (self.d, self.m, self.n, self.alternating) == (
            other.d,
            other.m,
            other.n,
            other.alternating,
        )

    def __hash__(self):
        return hash((self.d, self.m, self.n, self.alternating))

    def __repr__(self):
        kind = "alternating" if self.alternating else "tensor"
        return f"CochainSpace(d={self.d}, m={self.m}, n={self.n}, {kind})"


class OperatorBuilder:
    """Accumulates the sparse matrix of a linear map between two cochain spaces."""

    def __init__(self, source: CochainSpace, target: CochainSpace):
        if source.m != target.m:
            raise DimensionError("operators here keep the coefficient space fixed")
        self.source, self.target = source, target
        self.entries: dict = defaultdict(Fraction)

    def add(self, out_pos: int, raw_in: Sequence[int], coef, block: Matrix | None = None):
        """Add ``coef * block`` applied to ``f(raw_in)`` to the value at output tuple ``out_pos``.

        ``block=None`` means the identity on the target space.
        """
        sign, in_pos = self.source.locate(raw_in)
        if not sign or not coef:
            return
        c = coef * sign
        m = self.source.m
        r0, c0 = out_pos * m, in_pos * m
        e = self.entries
        if block is None:
            for a in range(m):
                e[(r0 + a, c0 + a)] += c
        else:
            for a in range(m):
                for b, v in block.row_items(a):
                    e[(r0 + a, c0 + b)] += c * v

    def matrix(self) -> Matrix:
        return Matrix.from_entries(self.target.dim, self.source.dim, {k: v for k, v in self.entries.items() if v})


def block_matrix(blocks: Sequence[Sequence[Matrix | None]], row_dims: Sequence[int], col_dims: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    rows = []
    for i, brow in enumerate(blocks):
        parts = [b if b is not None else Matrix.zeros(row_dims[i], col_dims[j]) for j, b in enumerate(brow)]
        rows.append(Matrix.hstack(parts))
    return Matrix.vstack(rows)


def combined_dim(d: int, m: int, n: int, alternating: bool) -> int:
    """Dimension of the combined cochain space: 0 at n=0, one part at n=1, three parts above."""
    def plain(k):
        return (comb(d, k) if alternating else d**k) * m

    if n <= 0:
        return 0
    if n == 1:
        return plain(1)
    return plain(n) + 2 * plain(n - 1)


class _Cochain:
    """Values of a multilinear map on basis tuples; only nonzero values are stored."""

    alternating: bool = True
    __slots__ = ("degree", "dim", "target_dim", "values")

    def __init__(self, degree: int, dim: int, target_dim: int, values: dict | None = None):
        if degree < 0:
            raise DimensionError("negative cochain degree")
        self.degree, self.dim, self.target_dim = degree, dim, target_dim
        space = self.space
        clean = {}
        for key, vec in (values or {}).items():
            key = tuple(key)
            if len(key) != degree or any(not (0 <= i < dim) for i in key):
                raise DimensionError(f"index tuple {key} does not fit degree {degree} over dimension {dim}")
            if len(vec) != target_dim:
                raise DimensionError(f"value of length {len(vec)} for target dimension {target_dim}")
            sign, pos = space.locate(key)
            if not sign:
                if any(vec):
                    raise ValueError(f"alternating cochain cannot be nonzero on repeated indices {key}")
                continue
            t = space.tuples[pos]
            vec = tuple(Q(x) * sign for x in vec)
            if t in clean:
                raise ValueError(f"value for {t} given twice")
            if any(vec):
                clean[t] = vec
        self.values = clean

    @property
    def space(self) -> CochainSpace:
        return CochainSpace(self.dim, self.target_dim, self.degree, self.alternating)

    @classmethod
    def zero(cls, degree: int, dim: int, target_dim: int):
        return cls(degree, dim, target_dim)

    @classmethod
    def from_vector(cls, degree: int, dim: int, target_dim: int, vec: Sequence):
        space = CochainSpace(dim, target_dim, degree, cls.alternating)
        if len(vec) != space.dim:
            raise DimensionError(f"vector of length {len(vec)} for a cochain space of dimension {space.dim}")
        m = target_dim
        vals = {}
        for k, t in enumerate(space.tuples):
            v = tuple(Q(x) for x in vec[k * m:(k + 1) * m])
            if any(v):
                vals[t] = v
        return cls(degree, dim, target_dim, vals)

    @classmethod
    def from_map(cls, f: Matrix):
        """Degree-1 cochain of a linear map (columns are images of basis vectors)."""
        return cls(1, f.ncols, f.nrows, {(j,): f.column(j) for j in range(f.ncols)})

    @classmethod
    def from_algebra(cls, alg):
        """Degree-2 cochain of a bracket or product table."""
        d = alg.dim
        return cls(2, d, d, {t: alg.table[t[0]][t[1]] for t in _tuples(d, 2, cls.alternating)})

    def to_vector(self) -> tuple:
        space = self.space
        m = self.target_dim
        out = [_ZERO] * space.dim
        for t, v in self.values.items():
            k = space.index[t]
            out[k * m:(k + 1) * m] = v
        return tuple(out)

    def as_map(self) -> Matrix:
        if self.degree != 1:
            raise DimensionError("only degree-1 cochains are linear maps")
        return Matrix.from_columns([self.at((j,)) for j in range(self.dim)], self.target_dim)

    def at(self, idx: Sequence[int]) -> tuple:
        """Value on an arbitrary basis tuple (re-sorted with sign when alternating)."""
        if len(idx) != self.degree:
            raise DimensionError(f"{len(idx)} arguments for a degree-{self.degree} cochain")
        if self.alternating:
            sign, t = sort_sign(idx)
            if not sign:
                return (_ZERO,) * self.target_dim
        else:
            sign, t = 1, tuple(idx)
        v = self.values.get(t)
        if v is None:
            return (_ZERO,) * self.target_dim
        return v if sign == 1 else tuple(-x for x in v)

    def __call__(self, *args: Sequence) -> tuple:
        """Evaluate on arbitrary vectors by multilinearity."""
        if len(args) != self.degree:
            raise DimensionError(f"{len(args)} arguments for a degree-{self.degree} cochain")
        out = [_ZERO] * self.target_dim
        for idx, c in expand_args([_sparse(a) for a in args]):
            for a, x in enumerate(self.at(idx)):
                if x:
                    out[a] += c * x
        return tuple(out)

    def _check_compatible(self, other):
        if type(other) is not type(self) or (self.degree, self.dim, self.target_dim) != (
            other.degree,
            other.dim,
            other.target_dim,
        ):
            raise DimensionError("cochains live in different spaces")

    def __add__(self, other):
        self._check_compatible(other)
        return type(self).from_vector(
            self.degree, self.dim, self.target_dim, [a + b for a, b in zip(self.to_vector(), other.to_vector())]
        )

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        c = Q(c)
        return type(self)(self.degree, self.dim, self.target_dim, {t: tuple(c * x for x in v) for t, v in self.values.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.degree, self.dim, self.target_dim, self.values) == (
            other.degree,
            other.dim,
            other.target_dim,
            other.values,
        )

    def __hash__(self):
        return hash((type(self).__name__, self.degree, self.dim, self.target_dim, tuple(sorted(self.values.items()))))

    def __repr__(self):
        return f"{type(self).__name__}(degree={self.degree}, dim={self.dim}, target_dim={self.target_dim}, nonzero={len(self.values)})"


class LieCochain(_Cochain):
    """Alternating cochain, stored on strictly increasing tuples."""

    __slots__ = ()
    alternating = True


class AssCochain(_Cochain):
    """Hochschild cochain, stored on every ordered tuple."""

    __slots__ = ()
    alternating = False


class _CombinedCochain:
    """Cochain of a combined complex: ``f`` alone in degree 1, ``(f, g, h)`` above."""

    part_cls = LieCochain
    __slots__ = ("degree", "f", "g", "h")

    def __init__(self, f, g=None, h=None):
        n = f.degree
        if n < 1:
            raise DimensionError("combined cochains start in degree 1")
        if not isinstance(f, self.part_cls):
            raise TypeError(f"parts must be {self.part_cls.__name__}")
        if n == 1:
            if g is not None or h is not None:
                raise DimensionError("degree-1 combined cochains carry only f")
        else:
            d, m = f.dim, f.target_dim
            g = g if g is not None else self.part_cls.zero(n - 1, d, m)
            h = h if h is not None else self.part_cls.zero(n - 1, d, m)
            for part in (g, h):
                if not isinstance(part, self.part_cls):
                    raise TypeError(f"parts must be {self.part_cls.__name__}")
                if (part.degree, part.dim, part.target_dim) != (n - 1, d, m):
                    raise DimensionError("g and h must be degree n-1 cochains on the same spaces as f")
        self.degree, self.f, self.g, self.h = n, f, g, h

    @property
    def dim(self) -> int:
        return self.f.dim

    @property
    def target_dim(self) -> int:
        return self.f.target_dim

    @property
    def parts(self) -> tuple:
        return (self.f,) if self.degree == 1 else (self.f, self.g, self.h)

    def to_vector(self) -> tuple:
        out = ()
        for p in self.parts:
            out += p.to_vector()
        return out

    @classmethod
    def from_vector(cls, degree: int, dim: int, target_dim: int, vec: Sequence):
        pc = cls.part_cls
        nf = CochainSpace(dim, target_dim, degree, pc.alternating).dim
        if degree == 1:
            if len(vec) != nf:
                raise DimensionError(f"vector of length {len(vec)}, expected {nf}")
            return cls(pc.from_vector(1, dim, target_dim, vec))
        ng = CochainSpace(dim, target_dim, degree - 1, pc.alternating).dim
        if len(vec) != nf + 2 * ng:
            raise DimensionError(f"vector of length {len(vec)}, expected {nf + 2 * ng}")
        return cls(
            pc.from_vector(degree, dim, target_dim, vec[:nf]),
            pc.from_vector(degree - 1, dim, target_dim, vec[nf:nf + ng]),
            pc.from_vector(degree - 1, dim, target_dim, vec[nf + ng:]),
        )

    @classmethod
    def zero(cls, degree: int, dim: int, target_dim: int):
        return cls.from_vector(degree, dim, target_dim, [0] * combined_dim(dim, target_dim, degree, cls.part_cls.alternating))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def __add__(self, other):
        if type(other) is not type(self) or other.degree != self.degree:
            raise DimensionError("combined cochains of different kind or degree")
        return type(self)(*(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return type(self)(*(p * c for p in self.parts))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash((type(self).__name__, self.parts))

    def __repr__(self):
        return f"{type(self).__name__}(degree={self.degree}, dim={self.dim}, target_dim={self.target_dim})"
