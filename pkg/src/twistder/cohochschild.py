"""The co-Hochschild complex of a bialgebra and its operations.

An n-cochain is an element of ``H^{⊗n}`` (a :class:`Tensor` of degree n) and

    ∂X = 1⊗X + Σ_{i=1..n} (-1)^i Δ_i(X) + (-1)^{n+1} X⊗1,

where ``Δ_i`` applies the coproduct in slot i. On ``C^0 = k`` the differential
is zero, so ``H^0 = k``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bialgebra import Bialgebra, PreconditionError, Tensor, dual_algebra, flat, is_sub_bialgebra, require_group_like, unflat
from .linalg import (
    Matrix,
    Subspace,
    Vec,
    complement_in,
    image_basis,
    kernel_basis,
    matrix_of,
    solve,
    unit_vector,
    vec_iadd,
)
from .report import Report

Cochain = Tensor

DEFAULT_MAX_TENSOR_DIM = 5000


def max_tensor_dim() -> int:
    """Cap on ``dim(H)^n``; override with ``TWISTDER_MAX_TENSOR_DIM``."""
    raw = os.environ.get("TWISTDER_MAX_TENSOR_DIM")
    return int(raw) if raw else DEFAULT_MAX_TENSOR_DIM


class TensorTooLarge(ValueError):
    pass


def _check_cap(dim: int, n: int) -> None:
    cap = max_tensor_dim()
    if dim**n > cap:
        raise TensorTooLarge(f"dim(H)^{n} = {dim**n} exceeds the tensor cap {cap}")


# ---------------------------------------------------------------------------
# Differential and cohomology
# ---------------------------------------------------------------------------


def differential_apply(b: Bialgebra, X: Tensor) -> Tensor:
    n = X.degree
    if n == 0:
        return Tensor(1)
    one = Tensor.from_vec(b.unit)
    out = one.otimes(X)
    for i in range(1, n + 1):
        out = out.add(b.apply_delta_at(X, i), -1 if i % 2 else 1)
    return out.add(X.otimes(one), -1 if (n + 1) % 2 else 1)


def differential(b: Bialgebra, n: int) -> Matrix:
    """Matrix of ``∂: H^{⊗n} → H^{⊗n+1}`` in the lexicographic tensor basis."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    _check_cap(b.dim, n)
    dim = b.dim
    if n == 0:
        return Matrix.zeros(dim, 1)
    return matrix_of(lambda j: differential_apply(b, Tensor.from_flat({j: Fraction(1)}, dim, n)).flat(dim), dim**n, dim ** (n + 1))


@dataclass
class CohomologyResult:
    degree: int
    dim: int
    cocycle_dim: int
    coboundary_dim: int
    representatives: list  # Tensors (or flat vectors for graded pieces)
    cocycles: Subspace = field(repr=False, default=None)
    coboundaries: Subspace = field(repr=False, default=None)

    def is_coboundary(self, v: Vec) -> bool:
        return self.coboundaries.contains(v)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "cocycle_dim": self.cocycle_dim,
            "coboundary_dim": self.coboundary_dim,
            "representatives": self.representatives,
        }


def cohomology_from_matrices(d_prev: Matrix, d_next: Matrix, degree: int) -> CohomologyResult:
    """``ker d_next / im d_prev`` with echelon-complement representatives."""
    Z = kernel_basis(d_next)
    B = image_basis(d_prev)
    reps = complement_in(Z, B)
    return CohomologyResult(degree, Z.dim - B.dim, Z.dim, B.dim, reps, Z, B)


def cohomology(b: Bialgebra, n: int) -> CohomologyResult:
    if n < 1:
        raise ValueError("cohomology degree must be at least 1")
    res = cohomology_from_matrices(differential(b, n - 1), differential(b, n), n)
    res.representatives = [Tensor.from_flat(v, b.dim, n) for v in res.representatives]
    return res


def cohomology_class_zero(b: Bialgebra, X: Tensor) -> bool:
    """Whether the cocycle X is a coboundary."""
    if X.degree == 0:
        return X.is_zero()
    return solve(differential(b, X.degree - 1), X.flat(b.dim)) is not None


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def cup(X: Tensor, Y: Tensor) -> Tensor:
    return X.otimes(Y)


def circle_i(b: Bialgebra, X: Tensor, Y: Tensor, i: int) -> Tensor:
    """``(I^{i-1}⊗Δ^{(n-1)}⊗I^{m-i})(X) · (1^{i-1}⊗Y⊗1^{m-i})``."""
    m, n = X.degree, Y.degree
    if not 1 <= i <= m:
        raise IndexError(f"circle index {i} out of range 1..{m}")
    if n == 0:
        return b.apply_counit_at(X, i) * Y.coords.get((), 0)
    expanded: dict = {}
    for key, c in X.items():
        for k2, c2 in b.iterated_delta_basis(key[i - 1], n).items():
            nk = key[: i - 1] + k2 + key[i:]
            s = expanded.get(nk, 0) + c * c2
            if s:
                expanded[nk] = s
            else:
                expanded.pop(nk, None)
    left = b.unit_tensor(i - 1)
    right = b.unit_tensor(m - i)
    return b.tensor_mult(Tensor(m + n - 1, expanded), left.otimes(Y).otimes(right))


def circle(b: Bialgebra, X: Tensor, Y: Tensor, sign: str = "standard") -> Tensor:
    """Signed sum of the ``∘_i``.

    ``sign="standard"`` weights ``X∘_iY`` by ``(-1)^{(n-1)(i-1)}``, which is the
    choice that makes the cup-commutativity homotopy hold; ``sign="printed"``
    uses ``(-1)^{ni}``.
    """
    m, n = X.degree, Y.degree
    if sign == "standard":
        weight = lambda i: ((n - 1) * (i - 1)) % 2
    elif sign == "printed":
        weight = lambda i: (n * i) % 2
    else:
        raise ValueError(f"unknown circle sign convention {sign!r}")
    out = Tensor(max(m + n - 1, 0))
    for i in range(1, m + 1):
        out = out.add(circle_i(b, X, Y, i), -1 if weight(i) else 1)
    return out


def gerstenhaber(b: Bialgebra, X: Tensor, Y: Tensor, grading: str = "unshifted", sign: str = "standard") -> Tensor:
    """``[[X,Y]] = X∘Y - (-1)^{mn} Y∘X``.

    ``grading="shifted"`` uses ``(-1)^{(m-1)(n-1)}`` instead; only that choice
    reduces to the commutator on 1-cochains.
    """
    m, n = X.degree, Y.degree
    if grading == "unshifted":
        e = m * n
    elif grading == "shifted":
        e = (m - 1) * (n - 1)
    else:
        raise ValueError(f"unknown grading {grading!r}")
    return circle(b, X, Y, sign).add(circle(b, Y, X, sign), -1 if e % 2 == 0 else 1)


def leibniz_residual(b: Bialgebra, X: Tensor, Y: Tensor) -> Tensor:
    """``∂(X⊗Y) - ∂X⊗Y - (-1)^m X⊗∂Y``."""
    m = X.degree
    r = differential_apply(b, X.otimes(Y)) - differential_apply(b, X).otimes(Y)
    return r.add(X.otimes(differential_apply(b, Y)), -1 if m % 2 == 0 else 1)


def cup_homotopy_residual(b: Bialgebra, X: Tensor, Y: Tensor, sign: str = "standard") -> Tensor:
    """Residual of ``Y∪X - (-1)^{nm}X∪Y = ∂X∘Y + (-1)^{n-1}X∘∂Y - (-1)^{n-1}∂(X∘Y)``."""
    m, n = X.degree, Y.degree
    s = -1 if (n - 1) % 2 else 1
    lhs = cup(Y, X).add(cup(X, Y), -1 if (n * m) % 2 == 0 else 1)
    rhs = circle(b, differential_apply(b, X), Y, sign)
    rhs = rhs.add(circle(b, X, differential_apply(b, Y), sign), s)
    if m + n:  # X∘Y has degree -1 when both are scalars
        rhs = rhs.add(differential_apply(b, circle(b, X, Y, sign)), -s)
    return lhs - rhs


def pre_lie_residual(b: Bialgebra, X: Tensor, Y: Tensor, Z: Tensor, i: int, j: int) -> Tensor:
    """Residual of the pre-Lie system identity for ``(X∘_iY)∘_jZ``.

    With ``n = deg Y`` and ``p = deg Z`` the right-hand side is
    ``(X∘_jZ)∘_{i+p-1}Y`` for ``j < i``, ``X∘_i(Y∘_{j-i+1}Z)`` for
    ``i ≤ j < i+n``, and ``(X∘_{j-n+1}Z)∘_iY`` for ``j ≥ i+n``.
    """
    n, p = Y.degree, Z.degree
    lhs = circle_i(b, circle_i(b, X, Y, i), Z, j)
    if j < i:
        rhs = circle_i(b, circle_i(b, X, Z, j), Y, i + p - 1)
    elif j < i + n:
        rhs = circle_i(b, X, circle_i(b, Y, Z, j - i + 1), i)
    else:
        rhs = circle_i(b, circle_i(b, X, Z, j - n + 1), Y, i)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Alternation
# ---------------------------------------------------------------------------


def permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, set()
    for s in range(len(perm)):
        if s in seen:
            continue
        length, i = 0, s
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternate(X: Tensor) -> Tensor:
    """``Alt_n(X) = (1/n!) Σ_σ sgn(σ) σ(X)``."""
    n = X.degree
    out: dict = {}
    scale = Fraction(1, math.factorial(n))
    for perm in itertools.permutations(range(n)):
        s = permutation_sign(perm) * scale
        for k, c in X.items():
            nk = tuple(k[p] for p in perm)
            v = out.get(nk, 0) + s * c
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
    return Tensor(n, out)


def alternation(dim: int, n: int) -> Matrix:
    """Matrix of ``Alt_n`` on ``H^{⊗n}`` for ``dim H = dim``."""
    return matrix_of(lambda j: alternate(Tensor.from_flat({j: Fraction(1)}, dim, n)).flat(dim), dim**n, dim**n)


def solve_homotopy(d_lower: Matrix, d_upper: Matrix, target: Matrix) -> Optional[tuple[Matrix, Matrix]]:
    """Find ``(a, c)`` with ``target = d_lower·a + c·d_upper``.

    ``d_lower: C^{n-1} → C^n``, ``d_upper: C^n → C^{n+1}`` and ``target`` acts
    on ``C^n``; returns ``a: C^n → C^{n-1}`` and ``c: C^{n+1} → C^n``, or None.
    """
    cn = target.rows
    cl = d_lower.cols  # dim C^{n-1}
    cu = d_upper.rows  # dim C^{n+1}
    # unknowns: a[k, col] at k*cn + col, then c[row, k] at cl*cn + row*cu + k
    off = cl * cn
    upper_rows = d_upper.entries
    equations: list[Vec] = []
    rhs: Vec = {}
    for r in range(cn):
        for col in range(cn):
            eq: Vec = {}
            for k, v in d_lower.entries.get(r, {}).items():
                eq[k * cn + col] = v
            for k in range(cu):
                v = upper_rows.get(k, {}).get(col)
                if v:
                    eq[off + r * cu + k] = v
            e = len(equations)
            equations.append(eq)
            t = target[r, col]
            if t:
                rhs[e] = t
    x = solve(Matrix.from_rows(equations, off + cn * cu), rhs)
    if x is None:
        return None
    a_entries: dict = {}
    c_entries: dict = {}
    for idx, v in x.items():
        if idx < off:
            k, col = divmod(idx, cn)
            a_entries.setdefault(k, {})[col] = v
        else:
            r, k = divmod(idx - off, cu)
            c_entries.setdefault(r, {})[k] = v
    return Matrix(cl, cn, a_entries), Matrix(cn, cu, c_entries)


def alternation_homotopy(b: Bialgebra, n: int) -> Optional[tuple[Matrix, Matrix]]:
    """Solve ``I - Alt_n = ∂a_n + a_{n+1}∂`` on the full space ``H^{⊗n}``."""
    target = Matrix.identity(b.dim**n) - alternation(b.dim, n)
    return solve_homotopy(differential(b, n - 1), differential(b, n), target)


# ---------------------------------------------------------------------------
# Comparison with the Hochschild complex of the dual algebra
# ---------------------------------------------------------------------------


def hochschild_differential_dual(b: Bialgebra, n: int) -> Matrix:
    """Hochschild differential of ``A = H^∨`` with trivial coefficients.

    A cochain ``f: A^{⊗n} → k`` is stored by its values on dual basis tuples,
    which is the canonical identification with ``H^{⊗n}``.
    """
    A = dual_algebra(b)
    dim = A.dim
    aug = A.counit  # the algebra map A → k (evaluation at 1_H)
    rows: dict = {}
    for J in itertools.product(range(dim), repeat=n + 1):
        row: Vec = {}
        if aug[J[0]]:
            vec_iadd(row, {flat(J[1:], dim): aug[J[0]]})
        for i in range(1, n + 1):
            sign = -1 if i % 2 else 1
            for k, c in A.mult.get((J[i - 1], J[i]), {}).items():
                K = J[: i - 1] + (k,) + J[i + 1 :]
                vec_iadd(row, {flat(K, dim): sign * c})
        if aug[J[n]]:
            vec_iadd(row, {flat(J[:n], dim): (-1 if (n + 1) % 2 else 1) * aug[J[n]]})
        if row:
            rows[flat(J, dim)] = row
    return Matrix(dim ** (n + 1), dim**n, rows)


def dual_hochschild_compare(b: Bialgebra, n: int) -> Report:
    rep = Report(f"co-Hochschild vs Hochschild of the dual, degree {n}")
    mine = differential(b, n)
    theirs = hochschild_differential_dual(b, n)
    witness = None
    if mine != theirs:
        diff = mine - theirs
        r = min(diff.entries)
        c = min(diff.entries[r])
        witness = {"row": unflat(r, b.dim, n + 1), "col": unflat(c, b.dim, n)}
    rep.add("differentials agree", mine == theirs, witness)
    return rep


# ---------------------------------------------------------------------------
# g-primitive cocycles and the sub-bialgebra filtration
# ---------------------------------------------------------------------------


def gprimitive_cocycle(b: Bialgebra, gs: Sequence[Vec], xs: Sequence[Vec]) -> tuple[Tensor, Tensor]:
    """``F = x1⊗g1x2⊗g1g2x3⊗...`` and the residual of ``∂F = (-1)^m F⊗(g1⋯gm - 1)``."""
    if len(gs) != len(xs) or not gs:
        raise ValueError("need equally many (at least one) group-likes and g-primitives")
    one = Tensor.from_vec(b.unit)
    for k, (g, x) in enumerate(zip(gs, xs)):
        require_group_like(b, g)
        xt = Tensor.from_vec(x)
        r = b.delta(x) - one.otimes(xt) - xt.otimes(Tensor.from_vec(g))
        if r:
            raise PreconditionError(f"x_{k + 1} is not g_{k + 1}-primitive", witness=r)
    F = Tensor.scalar(1)
    prefix = dict(b.unit)
    for g, x in zip(gs, xs):
        F = F.otimes(Tensor.from_vec(b.multiply(prefix, x)))
        prefix = b.multiply(prefix, g)
    m = len(gs)
    tail = Tensor.from_vec(prefix) - one
    sign = -1 if m % 2 else 1
    residual = differential_apply(b, F).add(F.otimes(tail), -sign)
    return F, residual


def _tensor_span(b: Bialgebra, factors: Sequence[Sequence[Vec]]) -> Subspace:
    vectors = []
    for combo in itertools.product(*factors):
        t = Tensor.scalar(1)
        for v in combo:
            t = t.otimes(Tensor.from_vec(v))
        vectors.append(t.flat(b.dim))
    return Subspace(b.dim ** len(factors), vectors)


def filtration_piece(b: Bialgebra, K: Subspace, i: int, m: int) -> Subspace:
    """``C^i(H)_m``: ``K^{⊗i}`` for ``i ≤ m``, else ``K^{⊗m}⊗H^{⊗(i-m)}``."""
    H = [unit_vector(j) for j in range(b.dim)]
    k = min(i, m)
    return _tensor_span(b, [K.basis] * k + [H] * (i - k))


def filtration_subcomplex(b: Bialgebra, sub_basis: Sequence[Vec], m: int, max_degree: int = 2) -> Report:
    K = Subspace(b.dim, sub_basis)
    sub = is_sub_bialgebra(b, K)
    if not sub.ok:
        raise PreconditionError("sub_basis does not span a sub-bialgebra", witness=[c.name for c in sub.failures()])
    rep = Report(f"filtration C*(H)_{m} by K (dim {K.dim})")
    for i in range(1, max_degree + 1):
        src = filtration_piece(b, K, i, m)
        dst = filtration_piece(b, K, i + 1, m)
        bad = None
        for v in src.basis:
            img = differential_apply(b, Tensor.from_flat(v, b.dim, i)).flat(b.dim)
            if not dst.contains(img):
                bad = Tensor.from_flat(v, b.dim, i)
                break
        rep.add(f"∂(C^{i}_{m}) ⊆ C^{i + 1}_{m}", bad is None, bad)
        if m > 0:
            rep.add(f"C^{i}_{m} ⊆ C^{i}_{m - 1}", src.is_subspace_of(filtration_piece(b, K, i, m - 1)))
    rep.data["dims"] = {str(i): filtration_piece(b, K, i, m).dim for i in range(1, max_degree + 1)}
    return rep
