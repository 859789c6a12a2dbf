"""Exact linear algebra over the rationals.

Vectors are sparse ``dict[int, Fraction]`` maps with no stored zeros. Every
routine here is deterministic: echelon forms use the leftmost pivot of each row
and normalize it to 1, so identical inputs give identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence

Scalar = Fraction
Vec = Dict[int, Fraction]


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars; pass int, str or Fraction")
    return Fraction(value)


def vec(entries: Mapping[int, object] | Iterable[object]) -> Vec:
    """Build a sparse vector from a mapping or a dense sequence."""
    if isinstance(entries, Mapping):
        items = entries.items()
    else:
        items = enumerate(entries)
    out: Vec = {}
    for i, v in items:
        s = as_scalar(v)
        if s:
            out[int(i)] = s
    return out


def unit_vector(i: int) -> Vec:
    return {i: Fraction(1)}


def vec_add(a: Mapping[int, Fraction], b: Mapping[int, Fraction], scale=1) -> Vec:
    """Return a + scale*b."""
    out = dict(a)
    if not scale:
        return out
    for i, v in b.items():
        s = out.get(i, 0) + scale * v
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_iadd(a: Vec, b: Mapping[int, Fraction], scale=1) -> None:
    """In-place a += scale*b."""
    for i, v in b.items():
        s = a.get(i, 0) + scale * v
        if s:
            a[i] = s
        else:
            a.pop(i, None)


def vec_scale(a: Mapping[int, Fraction], c) -> Vec:
    if not c:
        return {}
    return {i: v * c for i, v in a.items()}


def vec_sub(a, b) -> Vec:
    return vec_add(a, b, -1)


def vec_dot(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Fraction:
    if len(a) > len(b):
        a, b = b, a
    return sum((v * b[i] for i, v in a.items() if i in b), Fraction(0))


def linear_combination(coeffs: Mapping[int, Fraction], vectors: Sequence[Mapping[int, Fraction]]) -> Vec:
    out: Vec = {}
    for k, c in coeffs.items():
        vec_iadd(out, vectors[k], c)
    return out


def to_dense(v: Mapping[int, Fraction], n: int) -> list[Fraction]:
    return [v.get(i, Fraction(0)) for i in range(n)]


# --------------------------------------------------------------------------
# Row reduction
# --------------------------------------------------------------------------


class _Echelon:
    """Incrementally maintained reduced row-echelon form.

    Every stored row has a leading 1 at its pivot and zeros in all other pivot
    columns, so reducing a vector needs one pass over the pivots it touches.
    """

    def __init__(self) -> None:
        self.rows: dict[int, Vec] = {}  # pivot column -> row

    def reduce(self, v: Mapping[int, Fraction]) -> Vec:
        r = dict(v)
        for p in [c for c in r if c in self.rows]:
            c = r.get(p)
            if c:
                vec_iadd(r, self.rows[p], -c)
        return r

    def add(self, v: Mapping[int, Fraction]) -> Optional[int]:
        """Insert v; return its new pivot column, or None if v was dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        lead = r[p]
        if lead != 1:
            r = {i: x / lead for i, x in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                vec_iadd(row, r, -c)
        self.rows[p] = r
        return p

    def sorted_rows(self) -> tuple[tuple[int, ...], tuple[Vec, ...]]:
        pivots = tuple(sorted(self.rows))
        return pivots, tuple(self.rows[p] for p in pivots)


def rref(rows: Iterable[Mapping[int, Fraction]]) -> tuple[tuple[int, ...], tuple[Vec, ...]]:
    """Reduced row-echelon form of the given rows: (pivots, rows)."""
    e = _Echelon()
    for r in rows:
        e.add(r)
    return e.sorted_rows()


# --------------------------------------------------------------------------
# Matrix
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Matrix:
    """Sparse rational matrix stored row-wise; zeros are never stored."""

    rows: int
    cols: int
    entries: Dict[int, Vec] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[int, Vec] = {}
        for r, row in self.entries.items():
            if not 0 <= r < self.rows:
                raise IndexError(f"row index {r} out of range for {self.rows} rows")
            kept = {}
            for c, v in row.items():
                if not 0 <= c < self.cols:
                    raise IndexError(f"column index {c} out of range for {self.cols} columns")
                v = as_scalar(v)
                if v:
                    kept[c] = v
            if kept:
                clean[r] = kept
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> Matrix:
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, {r: vec(row) for r, row in enumerate(data)})

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> Matrix:
        entries: Dict[int, Vec] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                entries.setdefault(r, {})[c] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def from_rows(cls, row_vectors: Sequence[Mapping[int, Fraction]], cols: int) -> Matrix:
        return cls(len(row_vectors), cols, {r: dict(v) for r, v in enumerate(row_vectors)})

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.entries.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> Vec:
        return dict(self.entries.get(r, {}))

    def column(self, c: int) -> Vec:
        return {r: row[c] for r, row in self.entries.items() if c in row}

    def columns(self) -> list[Vec]:
        cols: list[Vec] = [{} for _ in range(self.cols)]
        for r, row in self.entries.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, dict(enumerate(self.columns())))

    def apply(self, v: Mapping[int, Fraction]) -> Vec:
        """Matrix-vector product."""
        out: Vec = {}
        for r, row in self.entries.items():
            s = vec_dot(row, v)
            if s:
                out[r] = s
        return out

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        entries: Dict[int, Vec] = {}
        for r, row in self.entries.items():
            acc: Vec = {}
            for k, v in row.items():
                orow = other.entries.get(k)
                if orow:
                    vec_iadd(acc, orow, v)
            if acc:
                entries[r] = acc
        return Matrix(self.rows, other.cols, entries)

    def _combine(self, other: Matrix, scale) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        entries = {r: dict(row) for r, row in self.entries.items()}
        for r, row in other.entries.items():
            entries[r] = vec_add(entries.get(r, {}), row, scale)
        return Matrix(self.rows, self.cols, entries)

    def __add__(self, other: Matrix) -> Matrix:
        return self._combine(other, 1)

    def __sub__(self, other: Matrix) -> Matrix:
        return self._combine(other, -1)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        c = as_scalar(c)
        return Matrix(self.rows, self.cols, {r: vec_scale(row, c) for r, row in self.entries.items()})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return sum(len(row) for row in self.entries.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(sorted((r, tuple(sorted(row.items()))) for r, row in self.entries.items()))))

    def to_dense(self) -> list[list[Fraction]]:
        return [to_dense(self.entries.get(r, {}), self.cols) for r in range(self.rows)]

    def rank(self) -> int:
        return len(rref(self.entries.values())[0])

    def to_json(self) -> dict:
        """Shape plus sparse ``[row, col, "p/q"]`` triples."""
        entries = [[r, c, str(v)] for r in sorted(self.entries) for c, v in sorted(self.entries[r].items())]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


# --------------------------------------------------------------------------
# Subspace
# --------------------------------------------------------------------------


class Subspace:
    """A subspace of Q^n held as a reduced row-echelon basis.

    Two subspaces are equal exactly when their echelon bases coincide.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Mapping[int, Fraction]] = ()) -> None:
        self.ambient_dim = ambient_dim
        e = _Echelon()
        for v in vectors:
            if v and (min(v) < 0 or max(v) >= ambient_dim):
                raise IndexError(f"vector index outside ambient dimension {ambient_dim}")
            e.add(v)
        self.pivots, self.basis = e.sorted_rows()

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, (unit_vector(i) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def reduce(self, v: Mapping[int, Fraction]) -> Vec:
        """Canonical residue of v modulo the subspace (zero on every pivot)."""
        r = dict(v)
        for p, row in zip(self.pivots, self.basis):
            c = r.get(p)
            if c:
                vec_iadd(r, row, -c)
        return r

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def coordinates(self, v: Mapping[int, Fraction]) -> Vec:
        """Coordinates of v in the echelon basis; raises if v is not in the span."""
        coords = {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}
        if linear_combination(coords, self.basis) != {i: x for i, x in v.items() if x}:
            raise ValueError("vector is not in the subspace")
        return coords

    def element(self, coords: Mapping[int, Fraction]) -> Vec:
        return linear_combination(coords, self.basis)

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        _same_ambient(self, other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, tuple(tuple(sorted(b.items())) for b in self.basis)))

    def as_matrix(self) -> Matrix:
        """Matrix whose columns are the basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def to_json(self) -> dict:
        basis = [[[i, str(c)] for i, c in sorted(v.items())] for v in self.basis]
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": basis}

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def span(ambient_dim: int, vectors: Iterable[Mapping[int, Fraction]]) -> Subspace:
    return Subspace(ambient_dim, vectors)


def kernel_basis(m: Matrix) -> Subspace:
    """Null space of m."""
    pivots, rows = rref(m.entries.values())
    pivot_set = set(pivots)
    vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v: Vec = {f: Fraction(1)}
        for p, row in zip(pivots, rows):
            c = row.get(f)
            if c:
                v[p] = -c
        vectors.append(v)
    return Subspace(m.cols, vectors)


def image_basis(m: Matrix) -> Subspace:
    """Column space of m."""
    return Subspace(m.rows, m.columns())


def solve(m: Matrix, b: Mapping[int, Fraction]) -> Optional[Vec]:
    """Some x with m x = b, or None when the system is infeasible.

    The particular solution sets every free variable to zero, so the result
    depends linearly on b.
    """
    if b and (min(b) < 0 or max(b) >= m.rows):
        raise IndexError("right-hand side does not match the row count")
    aug = m.cols
    e = _Echelon()
    for r in range(m.rows):
        row = dict(m.entries.get(r, {}))
        if b.get(r):
            row[aug] = b[r]
        e.add(row)
    if aug in e.rows:
        return None
    x: Vec = {}
    for p, row in e.rows.items():
        c = row.get(aug)
        if c:
            x[p] = c
    return x


def quotient(ambient_dim: int, sub: Subspace) -> tuple[list[Vec], Matrix]:
    """Pivot-greedy complement of ``sub`` and the projection killing it.

    The complement is spanned by the unit vectors at the non-pivot columns of
    ``sub``; ``project`` sends v to its canonical residue, so it is idempotent
    with kernel exactly ``sub``.
    """
    if sub.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    pivot_set = set(sub.pivots)
    complement = [unit_vector(j) for j in range(ambient_dim) if j not in pivot_set]
    columns = [sub.reduce(unit_vector(j)) for j in range(ambient_dim)]
    return complement, Matrix.from_columns(columns, ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    if not a.dim or not b.dim:
        return Subspace.zero(a.ambient_dim)
    cols = list(a.basis) + [vec_scale(v, -1) for v in b.basis]
    k = kernel_basis(Matrix.from_columns(cols, a.ambient_dim))
    na = a.dim
    return Subspace(
        a.ambient_dim,
        (linear_combination({i: c for i, c in kv.items() if i < na}, a.basis) for kv in k.basis),
    )


def complement_in(big: Subspace | Sequence[Mapping[int, Fraction]], small: Subspace) -> list[Vec]:
    """Vectors from ``big`` (taken in order) that extend ``small`` to span ``big``."""
    basis = big.basis if isinstance(big, Subspace) else big
    e = _Echelon()
    for v in small.basis:
        e.add(v)
    chosen = []
    for v in basis:
        if e.add(v) is not None:
            chosen.append(dict(v))
    return chosen


def matrix_of(fn, in_dim: int, out_dim: int) -> Matrix:
    """Matrix of a linear map given as a function on sparse unit vectors."""
    return Matrix.from_columns([fn(j) for j in range(in_dim)], out_dim)
