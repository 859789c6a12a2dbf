"""Twisted automorphisms ``(f, F)`` and their gauge transformations.

``f`` is an algebra automorphism and ``F ∈ H⊗H`` an invertible twist with

    F·Δ(f(x)) = (f⊗f)(Δx)·F,
    (F⊗1)(Δ⊗I)(F) = (1⊗F)(I⊗Δ)(F),
    ε∘f = ε,  (ε⊗I)F = (I⊗ε)F = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from ..bialgebra import Bialgebra, PreconditionError, Tensor
from ..linalg import Matrix, matrix_of, solve, unit_vector, vec_add
from ..report import Report


@dataclass(frozen=True)
class TwistedAutomorphism:
    f: Matrix
    F: Tensor

    def to_dict(self) -> dict:
        return {"f": self.f, "F": self.F}


def identity_automorphism(b: Bialgebra) -> TwistedAutomorphism:
    return TwistedAutomorphism(Matrix.identity(b.dim), b.unit_tensor(2))


def tensor_inverse(b: Bialgebra, T: Tensor) -> Optional[Tensor]:
    """Two-sided inverse in the algebra ``H^{⊗n}``, or None."""
    n, dim = T.degree, b.dim
    size = dim**n
    left = matrix_of(lambda j: b.tensor_mult(T, Tensor.from_flat({j: Fraction(1)}, dim, n)).flat(dim), size, size)
    x = solve(left, b.unit_tensor(n).flat(dim))
    if x is None:
        return None
    inv = Tensor.from_flat(x, dim, n)
    return inv if b.tensor_mult(inv, T) == b.unit_tensor(n) else None


def is_invertible_map(f: Matrix) -> bool:
    return f.rank() == f.rows == f.cols


def verify_twisted_automorphism(b: Bialgebra, ta: TwistedAutomorphism) -> Report:
    rep = Report("twisted automorphism")
    f, F = ta.f, ta.F
    one = Tensor.from_vec(b.unit)
    if not rep.add("f invertible", is_invertible_map(f)):
        raise PreconditionError("f is not invertible")
    if not rep.add("F invertible", tensor_inverse(b, F) is not None):
        raise PreconditionError("F is not invertible", witness=F)
    cols = f.columns()
    bad = next(
        ((i, j) for i in range(b.dim) for j in range(b.dim)
         if f.apply(b.multiply(unit_vector(i), unit_vector(j))) != b.multiply(cols[i], cols[j])),
        None,
    )
    rep.add("f multiplicative", bad is None, bad and tuple(b.basis_names[k] for k in bad))
    rep.add("f unital", f.apply(b.unit) == {k: v for k, v in b.unit.items() if v})
    bad = None
    for i in range(b.dim):
        lhs = b.tensor_mult(F, b.delta(cols[i]))
        rhs = b.tensor_mult(b.apply_tensor_power(b.delta(unit_vector(i)), f), F)
        if lhs != rhs:
            bad = b.basis_names[i]
            break
    rep.add("conjugation", bad is None, bad)
    lhs = b.tensor_mult(F.otimes(one), b.apply_delta_at(F, 1))
    rhs = b.tensor_mult(one.otimes(F), b.apply_delta_at(F, 2))
    rep.add("2-cocycle", lhs == rhs, lhs - rhs)
    eps_ok = all(b.eps(cols[i]) == b.counit[i] for i in range(b.dim))
    one_t = Tensor.from_vec(b.unit)
    rep.add("normalisation", eps_ok and b.apply_counit_at(F, 1) == one_t and b.apply_counit_at(F, 2) == one_t)
    return rep


def compose(b: Bialgebra, ta1: TwistedAutomorphism, ta2: TwistedAutomorphism) -> TwistedAutomorphism:
    """``(f,F)∘(f',F') = (ff', (f⊗f)(F')·F)``."""
    return TwistedAutomorphism(ta1.f @ ta2.f, b.tensor_mult(b.apply_tensor_power(ta2.F, ta1.f), ta1.F))


def gauge_auto(b: Bialgebra, ta1: TwistedAutomorphism, ta2: TwistedAutomorphism, a: Mapping[int, Fraction]) -> Report:
    """Check that ``a`` is a gauge transformation ``(f,F) → (f',F')``."""
    rep = Report("gauge transformation")
    rep.add("a invertible", tensor_inverse(b, Tensor.from_vec(a)) is not None)
    bad = None
    for i in range(b.dim):
        lhs = b.multiply(a, ta1.f.apply(unit_vector(i)))
        rhs = b.multiply(ta2.f.apply(unit_vector(i)), a)
        if vec_add(lhs, rhs, -1):
            bad = b.basis_names[i]
            break
    rep.add("a f(x) = f'(x) a", bad is None, bad)
    at = Tensor.from_vec(a)
    lhs = b.tensor_mult(ta2.F, b.delta(a))
    rhs = b.tensor_mult(at.otimes(at), ta1.F)
    rep.add("F'Δ(a) = (a⊗a)F", lhs == rhs, lhs - rhs)
    return rep


# ---------------------------------------------------------------------------
# The one-parameter families on Sweedler's algebra
# ---------------------------------------------------------------------------


def sweedler_scaling(c) -> Matrix:
    """``f_c``: g ↦ g, x ↦ cx on the basis (1, g, x, gx)."""
    c = Fraction(c)
    if not c:
        raise PreconditionError("f_c needs c ≠ 0")
    return Matrix(4, 4, {0: {0: 1}, 1: {1: 1}, 2: {2: c}, 3: {3: c}})


def sweedler_twist(a) -> Tensor:
    """``Φ_a = 1⊗1 + a·x⊗gx``."""
    return Tensor(2, {(0, 0): 1, (2, 3): Fraction(a)})
