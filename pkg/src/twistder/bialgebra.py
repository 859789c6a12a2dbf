"""Finite-dimensional bialgebras given by structure constants.

A :class:`Bialgebra` stores multiplication, unit, comultiplication and counit on
a fixed basis ``e_0..e_{dim-1}``. Elements of ``H`` are sparse vectors and
elements of ``H^{⊗n}`` are :class:`Tensor` values keyed by index tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence

from .linalg import (
    Matrix,
    Subspace,
    Vec,
    as_scalar,
    intersect,
    kernel_basis,
    matrix_of,
    unit_vector,
    vec_add,
    vec_iadd,
)
from .report import Report


class FormatError(ValueError):
    """Structure constants or tensor data are malformed."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold; ``witness`` says where."""

    def __init__(self, message: str, witness=None) -> None:
        super().__init__(message)
        self.witness = witness


Key = tuple


class Tensor:
    """Sparse element of ``H^{⊗degree}``; degree 0 elements are scalars."""

    __slots__ = ("degree", "coords")

    def __init__(self, degree: int, coords: Mapping[tuple, object] | None = None) -> None:
        if degree < 0:
            raise FormatError("tensor degree must be non-negative")
        self.degree = degree
        clean: Dict[tuple, Fraction] = {}
        for k, v in (coords or {}).items():
            k = tuple(k)
            if len(k) != degree:
                raise FormatError(f"key {k} does not have length {degree}")
            v = as_scalar(v)
            if v:
                clean[k] = clean.get(k, 0) + v
                if not clean[k]:
                    del clean[k]
        self.coords = clean

    @classmethod
    def _raw(cls, degree: int, coords: Dict[tuple, Fraction]) -> Tensor:
        t = object.__new__(cls)
        t.degree = degree
        t.coords = coords
        return t

    @classmethod
    def scalar(cls, c) -> Tensor:
        return cls(0, {(): c})

    @classmethod
    def basis(cls, *idx: int) -> Tensor:
        return cls._raw(len(idx), {tuple(idx): Fraction(1)})

    @classmethod
    def from_vec(cls, v: Mapping[int, Fraction]) -> Tensor:
        return cls._raw(1, {(i,): c for i, c in v.items() if c})

    @classmethod
    def from_flat(cls, v: Mapping[int, Fraction], dim: int, degree: int) -> Tensor:
        return cls._raw(degree, {unflat(i, dim, degree): c for i, c in v.items() if c})

    def flat(self, dim: int) -> Vec:
        return {flat(k, dim): c for k, c in self.coords.items()}

    def to_vec(self) -> Vec:
        if self.degree != 1:
            raise FormatError("only degree-1 tensors are vectors of H")
        return {k[0]: c for k, c in self.coords.items()}

    def items(self):
        return self.coords.items()

    def _check(self, other: Tensor) -> None:
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.degree != self.degree:
            raise FormatError(f"degree mismatch: {self.degree} vs {other.degree}")

    def add(self, other: Tensor, scale=1) -> Tensor:
        self._check(other)
        out = dict(self.coords)
        _iadd(out, other.coords, scale)
        return Tensor._raw(self.degree, out)

    def __add__(self, other: Tensor) -> Tensor:
        return self.add(other, 1)

    def __sub__(self, other: Tensor) -> Tensor:
        return self.add(other, -1)

    def __neg__(self) -> Tensor:
        return self * -1

    def __mul__(self, c) -> Tensor:
        if isinstance(c, Tensor):
            return NotImplemented
        c = as_scalar(c)
        if not c:
            return Tensor._raw(self.degree, {})
        return Tensor._raw(self.degree, {k: v * c for k, v in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.degree == other.degree and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.coords.items()))))

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self) -> bool:
        return bool(self.coords)

    def otimes(self, other: Tensor) -> Tensor:
        out: Dict[tuple, Fraction] = {}
        for k1, v1 in self.coords.items():
            for k2, v2 in other.coords.items():
                out[k1 + k2] = v1 * v2
        return Tensor._raw(self.degree + other.degree, out)

    def permute(self, perm: Sequence[int]) -> Tensor:
        """Slot k of the result is slot ``perm[k]`` of self."""
        if sorted(perm) != list(range(self.degree)):
            raise FormatError(f"{perm} is not a permutation of {self.degree} slots")
        return Tensor._raw(self.degree, {tuple(k[p] for p in perm): v for k, v in self.coords.items()})

    def flip(self) -> Tensor:
        """The transposition ``φ ↦ φ_21`` for degree-2 tensors."""
        if self.degree != 2:
            raise FormatError("flip needs a degree-2 tensor")
        return self.permute((1, 0))

    def support(self) -> list[tuple]:
        return sorted(self.coords)

    def to_json(self) -> list:
        return [[list(k), str(v)] for k, v in sorted(self.coords.items())]

    def pretty(self, names: Sequence[str]) -> str:
        if not self.coords:
            return "0"
        parts = []
        for k, v in sorted(self.coords.items()):
            word = "⊗".join(names[i] for i in k) if k else "1"
            parts.append(f"{v}*{word}" if v != 1 else word)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Tensor({self.degree}, {dict(sorted(self.coords.items()))})"


def _iadd(acc: Dict[tuple, Fraction], other: Mapping[tuple, Fraction], scale=1) -> None:
    for k, v in other.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def flat(key: Sequence[int], dim: int) -> int:
    idx = 0
    for i in key:
        idx = idx * dim + i
    return idx


def unflat(idx: int, dim: int, degree: int) -> tuple:
    out = [0] * degree
    for k in range(degree - 1, -1, -1):
        idx, out[k] = divmod(idx, dim)
    return tuple(out)


def tensor_basis(dim: int, degree: int) -> Iterable[tuple]:
    return itertools.product(range(dim), repeat=degree)


@dataclass(frozen=True, eq=False)
class Bialgebra:
    """Bialgebra by structure constants.

    ``mult[(i, j)]`` is the sparse vector of ``e_i e_j``; ``comult[i]`` maps
    ``(j, k)`` to the coefficient of ``e_j⊗e_k`` in ``Δ(e_i)``.
    """

    dim: int
    basis_names: tuple[str, ...]
    mult: Dict[tuple[int, int], Vec]
    unit: Vec
    comult: Dict[int, Dict[tuple[int, int], Fraction]]
    counit: tuple[Fraction, ...]
    antipode: Optional[Matrix] = None
    name: str = ""
    description: str = ""
    _delta_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.basis_names) != n:
            raise FormatError("basis_names length differs from dim")
        if len(self.counit) != n:
            raise FormatError("counit length differs from dim")

        def ok(i):
            return isinstance(i, int) and 0 <= i < n

        mult: Dict[tuple[int, int], Vec] = {}
        for (i, j), v in self.mult.items():
            if not (ok(i) and ok(j)) or not all(ok(k) for k in v):
                raise FormatError(f"multiplication index out of range at ({i}, {j})")
            v = {k: as_scalar(c) for k, c in v.items() if as_scalar(c)}
            if v:
                mult[(i, j)] = v
        comult: Dict[int, Dict[tuple[int, int], Fraction]] = {}
        for i, t in self.comult.items():
            if not ok(i) or not all(ok(j) and ok(k) for j, k in t):
                raise FormatError(f"comultiplication index out of range at {i}")
            t = {tuple(jk): as_scalar(c) for jk, c in t.items() if as_scalar(c)}
            if t:
                comult[i] = t
        if not all(ok(k) for k in self.unit):
            raise FormatError("unit index out of range")
        if self.antipode is not None and self.antipode.shape != (n, n):
            raise FormatError("antipode must be a dim x dim matrix")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "comult", comult)
        object.__setattr__(self, "unit", {k: as_scalar(c) for k, c in self.unit.items() if as_scalar(c)})
        object.__setattr__(self, "counit", tuple(as_scalar(c) for c in self.counit))

    # -- elements of H ------------------------------------------------------

    def e(self, name: str) -> Vec:
        return unit_vector(self.basis_names.index(name))

    def one(self) -> Vec:
        return dict(self.unit)

    def multiply(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                p = self.mult.get((i, j))
                if p:
                    vec_iadd(out, p, a * b)
        return out

    def commutator(self, u, v) -> Vec:
        return vec_add(self.multiply(u, v), self.multiply(v, u), -1)

    def eps(self, u: Mapping[int, Fraction]) -> Fraction:
        return sum((c * self.counit[i] for i, c in u.items()), Fraction(0))

    def delta(self, u: Mapping[int, Fraction]) -> Tensor:
        out: Dict[tuple, Fraction] = {}
        for i, c in u.items():
            _iadd(out, self.comult.get(i, {}), c)
        return Tensor._raw(2, out)

    def left_mult_matrix(self, u) -> Matrix:
        return matrix_of(lambda j: self.multiply(u, unit_vector(j)), self.dim, self.dim)

    # -- tensors --------------------------------------------------------------

    def unit_tensor(self, n: int) -> Tensor:
        """``1⊗...⊗1`` with n factors."""
        t = Tensor.scalar(1)
        one = Tensor.from_vec(self.unit)
        for _ in range(n):
            t = t.otimes(one)
        return t

    def as_tensor(self, v: Mapping[int, Fraction]) -> Tensor:
        return Tensor.from_vec(v)

    def tensor_mult(self, u: Tensor, v: Tensor) -> Tensor:
        """Componentwise product in the algebra ``H^{⊗n}``."""
        if u.degree != v.degree:
            raise FormatError(f"degree mismatch: {u.degree} vs {v.degree}")
        out: Dict[tuple, Fraction] = {}
        mult = self.mult
        for k1, a in u.coords.items():
            for k2, b in v.coords.items():
                slots = []
                for i, j in zip(k1, k2):
                    p = mult.get((i, j))
                    if not p:
                        break
                    slots.append(p.items())
                else:
                    c = a * b
                    for combo in itertools.product(*slots):
                        key = tuple(k for k, _ in combo)
                        val = c
                        for _, x in combo:
                            val *= x
                        s = out.get(key, 0) + val
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
        return Tensor._raw(u.degree, out)

    def tensor_commutator(self, u: Tensor, v: Tensor) -> Tensor:
        return self.tensor_mult(u, v) - self.tensor_mult(v, u)

    def apply_delta_at(self, u: Tensor, i: int) -> Tensor:
        """Apply Δ in slot i (1-based), identity elsewhere."""
        if not 1 <= i <= u.degree:
            raise IndexError(f"slot {i} out of range for degree {u.degree}")
        out: Dict[tuple, Fraction] = {}
        for k, c in u.coords.items():
            for (a, b), x in self.comult.get(k[i - 1], {}).items():
                key = k[: i - 1] + (a, b) + k[i:]
                s = out.get(key, 0) + c * x
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Tensor._raw(u.degree + 1, out)

    def apply_counit_at(self, u: Tensor, i: int) -> Tensor:
        if not 1 <= i <= u.degree:
            raise IndexError(f"slot {i} out of range for degree {u.degree}")
        out: Dict[tuple, Fraction] = {}
        for k, c in u.coords.items():
            e = self.counit[k[i - 1]]
            if e:
                _iadd(out, {k[: i - 1] + k[i:]: c * e})
        return Tensor._raw(u.degree - 1, out)

    def apply_linear_at(self, u: Tensor, m: Matrix, i: int) -> Tensor:
        """Apply the endomorphism m in slot i (1-based)."""
        if not 1 <= i <= u.degree:
            raise IndexError(f"slot {i} out of range for degree {u.degree}")
        cols = _columns_cached(m)
        out: Dict[tuple, Fraction] = {}
        for k, c in u.coords.items():
            for r, x in cols[k[i - 1]].items():
                _iadd(out, {k[: i - 1] + (r,) + k[i:]: c * x})
        return Tensor._raw(u.degree, out)

    def apply_tensor_power(self, u: Tensor, m: Matrix) -> Tensor:
        """``(f⊗...⊗f)(u)``."""
        for i in range(1, u.degree + 1):
            u = self.apply_linear_at(u, m, i)
        return u

    def derivation_extension(self, u: Tensor, m: Matrix) -> Tensor:
        """``Σ_i (I⊗..⊗d⊗..⊗I)(u)``, the action of a derivation on ``H^{⊗n}``."""
        out = Tensor(u.degree)
        for i in range(1, u.degree + 1):
            out = out + self.apply_linear_at(u, m, i)
        return out

    def iterated_delta(self, v: Mapping[int, Fraction], n: int) -> Tensor:
        """``Δ^{(n-1)}(v)`` in ``H^{⊗n}``, left-nested; n=0 gives ``ε(v)``."""
        if n == 0:
            return Tensor.scalar(self.eps(v))
        t = Tensor.from_vec(v)
        for _ in range(n - 1):
            t = self.apply_delta_at(t, 1)
        return t

    def iterated_delta_basis(self, i: int, n: int) -> Tensor:
        key = (i, n)
        hit = self._delta_cache.get(key)
        if hit is None:
            hit = self.iterated_delta(unit_vector(i), n)
            self._delta_cache[key] = hit
        return hit

    def pretty(self, v: Mapping[int, Fraction] | Tensor) -> str:
        t = v if isinstance(v, Tensor) else Tensor.from_vec(v)
        return t.pretty(self.basis_names)


_COLS: dict = {}


def _columns_cached(m: Matrix) -> list[Vec]:
    key = id(m)
    hit = _COLS.get(key)
    if hit is None or hit[0] is not m:
        hit = (m, m.columns())
        if len(_COLS) > 256:
            _COLS.clear()
        _COLS[key] = hit
    return hit[1]


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------


def verify_bialgebra(b: Bialgebra) -> Report:
    """Check every bialgebra axiom exactly; failures carry a basis witness."""
    n = b.dim
    names = b.basis_names
    rep = Report(f"bialgebra axioms for {b.name or 'H'}")
    E = [unit_vector(i) for i in range(n)]

    def first(pred, arity):
        for idx in itertools.product(range(n), repeat=arity):
            if not pred(*idx):
                return tuple(names[i] for i in idx)
        return None

    one = b.one()
    w = first(lambda i, j, k: b.multiply(b.multiply(E[i], E[j]), E[k]) == b.multiply(E[i], b.multiply(E[j], E[k])), 3)
    rep.add("multiplication associative", w is None, w)
    w = first(lambda i: b.multiply(one, E[i]) == E[i] and b.multiply(E[i], one) == E[i], 1)
    rep.add("unit axioms", w is None, w)

    def coassoc(i):
        t = Tensor.basis(i)
        d = b.apply_delta_at(t, 1)
        return b.apply_delta_at(d, 1) == b.apply_delta_at(d, 2)

    w = first(coassoc, 1)
    rep.add("comultiplication coassociative", w is None, w)

    def counit(i):
        d = b.delta(E[i])
        t = Tensor.basis(i)
        return b.apply_counit_at(d, 1) == t and b.apply_counit_at(d, 2) == t

    w = first(counit, 1)
    rep.add("counit axioms", w is None, w)
    w = first(lambda i, j: b.delta(b.multiply(E[i], E[j])) == b.tensor_mult(b.delta(E[i]), b.delta(E[j])), 2)
    rep.add("Δ multiplicative", w is None, w)
    rep.add("Δ unital", b.delta(one) == b.unit_tensor(2), "Δ(1)")
    w = first(lambda i, j: b.eps(b.multiply(E[i], E[j])) == b.eps(E[i]) * b.eps(E[j]), 2)
    rep.add("ε multiplicative", w is None, w)
    rep.add("ε unital", b.eps(one) == 1, "ε(1)")
    if b.antipode is not None:
        S = b.antipode

        def antipode(i):
            d = b.delta(E[i])
            left: Vec = {}
            right: Vec = {}
            for (p, q), c in d.items():
                vec_iadd(left, b.multiply(S.apply(unit_vector(p)), E[q]), c)
                vec_iadd(right, b.multiply(E[p], S.apply(unit_vector(q))), c)
            target = {k: v * b.counit[i] for k, v in one.items() if b.counit[i]}
            return left == target and right == target

        w = first(antipode, 1)
        rep.add("antipode axioms", w is None, w)
    return rep


def is_group_like(b: Bialgebra, g: Mapping[int, Fraction]) -> bool:
    t = Tensor.from_vec(g)
    return b.delta(g) == t.otimes(t) and b.eps(g) == 1


def require_group_like(b: Bialgebra, g: Mapping[int, Fraction]) -> None:
    if not is_group_like(b, g):
        t = Tensor.from_vec(g)
        raise PreconditionError(
            "element is not group-like",
            witness={"delta_residual": b.delta(g) - t.otimes(t), "counit": b.eps(g)},
        )


# ---------------------------------------------------------------------------
# Distinguished subspaces
# ---------------------------------------------------------------------------


def _solution_space(b: Bialgebra, residual, out_dim: int) -> Subspace:
    return kernel_basis(matrix_of(residual, b.dim, out_dim))


def g_primitives(b: Bialgebra, g: Mapping[int, Fraction]) -> Subspace:
    """Solutions of ``Δ(x) = 1⊗x + x⊗g``."""
    require_group_like(b, g)
    one = Tensor.from_vec(b.unit)
    gt = Tensor.from_vec(g)
    n = b.dim

    def residual(j):
        x = Tensor.basis(j)
        r = b.delta(unit_vector(j)) - one.otimes(x) - x.otimes(gt)
        return r.flat(n)

    return _solution_space(b, residual, n * n)


def primitives(b: Bialgebra) -> Subspace:
    """Solutions of ``Δ(x) = x⊗1 + 1⊗x``."""
    return g_primitives(b, b.unit)


def centre(b: Bialgebra) -> Subspace:
    n = b.dim

    def residual(j):
        out: Vec = {}
        for i in range(n):
            for k, c in b.commutator(unit_vector(j), unit_vector(i)).items():
                out[i * n + k] = c
        return out

    return _solution_space(b, residual, n * n)


def augmentation_ideal(b: Bialgebra) -> Subspace:
    """``H_ε = ker ε``."""
    return kernel_basis(Matrix(1, b.dim, {0: dict(enumerate(b.counit))}))


def central_primitives(b: Bialgebra) -> Subspace:
    return intersect(centre(b), primitives(b))


def adjoint_invariants(b: Bialgebra, n: int) -> Subspace:
    """``X ∈ H^{⊗n}`` commuting with ``Δ^{(n-1)}(e_i)`` for every basis e_i."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    dim = b.dim
    size = dim**n
    deltas = [b.iterated_delta_basis(i, n) for i in range(dim)]

    def residual(j):
        x = Tensor.from_flat({j: Fraction(1)}, dim, n)
        out: Vec = {}
        for i, D in enumerate(deltas):
            for f, c in b.tensor_commutator(x, D).flat(dim).items():
                out[i * size + f] = c
        return out

    return kernel_basis(matrix_of(residual, size, dim * size))


def dual_algebra(b: Bialgebra) -> Bialgebra:
    """The dual bialgebra on the dual basis: transposed structure constants."""
    mult: Dict[tuple[int, int], Vec] = {}
    for i, t in b.comult.items():
        for (j, k), c in t.items():
            mult.setdefault((j, k), {})[i] = c
    comult: Dict[int, Dict[tuple[int, int], Fraction]] = {}
    for (i, j), v in b.mult.items():
        for k, c in v.items():
            comult.setdefault(k, {})[(i, j)] = c
    antipode = b.antipode.transpose() if b.antipode is not None else None
    return Bialgebra(
        dim=b.dim,
        basis_names=tuple(f"{nm}*" for nm in b.basis_names),
        mult=mult,
        unit={i: c for i, c in enumerate(b.counit) if c},
        comult=comult,
        counit=tuple(b.unit.get(i, Fraction(0)) for i in range(b.dim)),
        antipode=antipode,
        name=f"{b.name}_dual" if b.name else "dual",
    )


def is_sub_bialgebra(b: Bialgebra, sub: Subspace) -> Report:
    rep = Report("sub-bialgebra")
    rep.add("contains unit", sub.contains(b.unit))
    bad = None
    for u in sub.basis:
        for v in sub.basis:
            if not sub.contains(b.multiply(u, v)):
                bad = (u, v)
                break
        if bad:
            break
    rep.add("closed under multiplication", bad is None, bad)
    K2 = Subspace(b.dim**2, (Tensor.from_vec(u).otimes(Tensor.from_vec(v)).flat(b.dim) for u in sub.basis for v in sub.basis))
    bad = next((u for u in sub.basis if not K2.contains(b.delta(u).flat(b.dim))), None)
    rep.add("Δ(K) ⊆ K⊗K", bad is None, bad)
    return rep
