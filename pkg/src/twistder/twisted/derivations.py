"""Twisted derivations ``(d, φ)`` of a finite-dimensional bialgebra.

A twisted derivation is a derivation ``d: H → H`` together with ``φ ∈ H⊗H``
such that

* ``(I⊗d + d⊗I)Δ(x) - Δ(d x) = [φ, Δ(x)]`` for all x,
* ``∂φ = 0`` in the co-Hochschild complex,
* ``ε∘d = 0`` and ``(ε⊗I)φ = (I⊗ε)φ = 0``.

All four conditions are linear in ``(d, φ)``, so the whole space is one kernel.
Unknowns are laid out as the endomorphism (``d(e_j)`` coefficient on ``e_i``
at ``j*dim + i``) followed by the flattened ``φ`` at ``dim² + flat(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from ..bialgebra import Bialgebra, PreconditionError, Tensor, augmentation_ideal, centre, primitives
from ..cohochschild import differential_apply
from ..lie.algebra import endo_to_vec, vec_to_endo
from ..linalg import Matrix, Subspace, Vec, kernel_basis, matrix_of, solve, unit_vector, vec_add
from ..report import Report


@dataclass(frozen=True)
class TwistedDerivation:
    d: Matrix
    phi: Tensor

    def to_vec(self, dim: int) -> Vec:
        v = endo_to_vec(self.d)
        for k, c in self.phi.flat(dim).items():
            v[dim * dim + k] = c
        return v

    @classmethod
    def from_vec(cls, v: Mapping[int, Fraction], dim: int) -> TwistedDerivation:
        n2 = dim * dim
        d = vec_to_endo({k: c for k, c in v.items() if k < n2}, dim)
        phi = Tensor.from_flat({k - n2: c for k, c in v.items() if k >= n2}, dim, 2)
        return cls(d, phi)

    @classmethod
    def zero(cls, dim: int) -> TwistedDerivation:
        return cls(Matrix.zeros(dim, dim), Tensor(2))

    def __add__(self, other: TwistedDerivation) -> TwistedDerivation:
        return TwistedDerivation(self.d + other.d, self.phi + other.phi)

    def __sub__(self, other: TwistedDerivation) -> TwistedDerivation:
        return TwistedDerivation(self.d - other.d, self.phi - other.phi)

    def scale(self, c) -> TwistedDerivation:
        return TwistedDerivation(self.d.scale(c), self.phi * c)

    def is_zero(self) -> bool:
        return self.d.is_zero() and self.phi.is_zero()

    def to_dict(self) -> dict:
        return {"d": self.d, "phi": self.phi}


def _unknowns(dim: int) -> int:
    return 2 * dim * dim


# ---------------------------------------------------------------------------
# Residuals of the defining equations
# ---------------------------------------------------------------------------


def leibniz_residual(b: Bialgebra, d: Matrix) -> dict:
    """``d(e_i e_j) - d(e_i)e_j - e_i d(e_j)`` keyed by ``(i, j)``; zero entries omitted."""
    cols = d.columns()
    out = {}
    for i in range(b.dim):
        for j in range(b.dim):
            r = d.apply(b.mult.get((i, j), {}))
            r = vec_add(r, b.multiply(cols[i], unit_vector(j)), -1)
            r = vec_add(r, b.multiply(unit_vector(i), cols[j]), -1)
            if r:
                out[(i, j)] = r
    return out


def conjugation_residual(b: Bialgebra, t: TwistedDerivation, x: Mapping[int, Fraction]) -> Tensor:
    """``(I⊗d + d⊗I)Δx - Δ(dx) - [φ, Δx]``."""
    dx = b.delta(x)
    return b.derivation_extension(dx, t.d) - b.delta(t.d.apply(x)) - b.tensor_commutator(t.phi, dx)


def normalisation_residual(b: Bialgebra, t: TwistedDerivation) -> tuple[Vec, Tensor, Tensor]:
    eps_d = {j: c for j, c in enumerate(b.eps(col) for col in t.d.columns()) if c}
    return eps_d, b.apply_counit_at(t.phi, 1), b.apply_counit_at(t.phi, 2)


def _residual_vector(b: Bialgebra, t: TwistedDerivation) -> Vec:
    """All defining residuals concatenated into one vector (linear in ``t``)."""
    n = b.dim
    out: Vec = {}
    off = 0
    for (i, j), r in leibniz_residual(b, t.d).items():
        for k, c in r.items():
            out[off + (i * n + j) * n + k] = c
    off += n**3
    for x in range(n):
        for k, c in conjugation_residual(b, t, unit_vector(x)).flat(n).items():
            out[off + x * n * n + k] = c
    off += n**3
    for k, c in differential_apply(b, t.phi).flat(n).items():
        out[off + k] = c
    off += n**3
    eps_d, left, right = normalisation_residual(b, t)
    for k, c in eps_d.items():
        out[off + k] = c
    off += n
    for k, c in left.flat(n).items():
        out[off + k] = c
    off += n
    for k, c in right.flat(n).items():
        out[off + k] = c
    return out


def _residual_dim(n: int) -> int:
    return 3 * n**3 + 3 * n


def verify_twisted_derivation(b: Bialgebra, t: TwistedDerivation) -> Report:
    rep = Report("twisted derivation")
    lb = leibniz_residual(b, t.d)
    rep.add("Leibniz", not lb, sorted(lb)[:1] and [b.basis_names[k] for k in sorted(lb)[0]])
    bad = next((j for j in range(b.dim) if conjugation_residual(b, t, unit_vector(j))), None)
    rep.add("conjugation", bad is None, None if bad is None else b.basis_names[bad])
    cocycle = differential_apply(b, t.phi)
    rep.add("cocycle", cocycle.is_zero(), cocycle)
    eps_d, left, right = normalisation_residual(b, t)
    rep.add("normalisation", not eps_d and not left and not right)
    return rep


# ---------------------------------------------------------------------------
# The space, bracket and boundary
# ---------------------------------------------------------------------------


def _system(b: Bialgebra, mask=None) -> Matrix:
    n = b.dim
    N = _unknowns(n)
    return matrix_of(lambda j: _residual_vector(b, TwistedDerivation.from_vec({j: Fraction(1)}, n)), N, _residual_dim(n))


def twisted_derivation_subspace(b: Bialgebra) -> Subspace:
    cache = b._delta_cache
    hit = cache.get("der_tw")
    if hit is None:
        hit = kernel_basis(_system(b))
        cache["der_tw"] = hit
    return hit


def twisted_derivation_space(b: Bialgebra) -> list[TwistedDerivation]:
    return [TwistedDerivation.from_vec(v, b.dim) for v in twisted_derivation_subspace(b).basis]


def bracket(b: Bialgebra, t1: TwistedDerivation, t2: TwistedDerivation) -> TwistedDerivation:
    """``([d,d'], (d⊗I+I⊗d)φ' - (d'⊗I+I⊗d')φ - [φ,φ'])``."""
    d = t1.d @ t2.d - t2.d @ t1.d
    phi = b.derivation_extension(t2.phi, t1.d) - b.derivation_extension(t1.phi, t2.d)
    return TwistedDerivation(d, phi - b.tensor_commutator(t1.phi, t2.phi))


def inner_derivation(b: Bialgebra, a: Mapping[int, Fraction]) -> Matrix:
    return Matrix.from_columns([b.commutator(a, unit_vector(j)) for j in range(b.dim)], b.dim)


def boundary(b: Bialgebra, a: Mapping[int, Fraction]) -> TwistedDerivation:
    """``∂a = ([a,-], a⊗1 + 1⊗a - Δa)`` for ``ε(a) = 0``."""
    if b.eps(a):
        raise PreconditionError("boundary needs ε(a) = 0", witness=b.eps(a))
    at = Tensor.from_vec(a)
    one = Tensor.from_vec(b.unit)
    return TwistedDerivation(inner_derivation(b, a), at.otimes(one) + one.otimes(at) - b.delta(a))


def boundary_matrix(b: Bialgebra, domain: Subspace) -> Matrix:
    """``∂`` from coordinates on ``domain`` to flattened twisted-derivation vectors."""
    return Matrix.from_columns([boundary(b, a).to_vec(b.dim) for a in domain.basis], _unknowns(b.dim))


def gauge_between(b: Bialgebra, t1: TwistedDerivation, t2: TwistedDerivation) -> Optional[Vec]:
    """Some ``a ∈ H_ε`` with ``t2 - t1 = ∂a``, or None."""
    aug = augmentation_ideal(b)
    coords = solve(boundary_matrix(b, aug), (t2 - t1).to_vec(b.dim))
    if coords is None:
        return None
    return aug.element(coords)


# ---------------------------------------------------------------------------
# Sub-crossed modules, quotients and separation
# ---------------------------------------------------------------------------


def invariant_twists(b: Bialgebra) -> Subspace:
    """``φ`` with ``(0, φ)`` a twisted derivation and ``[φ, Δ(H)] = 0``."""
    n = b.dim

    def residual(j: int) -> Vec:
        t = TwistedDerivation(Matrix.zeros(n, n), Tensor.from_flat({j: Fraction(1)}, n, 2))
        return _residual_vector(b, t)

    return kernel_basis(matrix_of(residual, n * n, _residual_dim(n)))


def bialgebra_derivations(b: Bialgebra) -> Subspace:
    """Derivations ``d`` with ``(I⊗d+d⊗I)Δ = Δd`` and ``ε∘d = 0``, as endomorphism vectors."""
    n = b.dim

    def residual(j: int) -> Vec:
        t = TwistedDerivation(vec_to_endo({j: Fraction(1)}, n), Tensor(2))
        return _residual_vector(b, t)

    return kernel_basis(matrix_of(residual, n * n, _residual_dim(n)))


def _bialgebra_derivation_residual(b: Bialgebra, d: Matrix) -> Vec:
    n = b.dim
    out: Vec = {}
    for x in range(n):
        r = b.derivation_extension(b.delta(unit_vector(x)), d) - b.delta(d.apply(unit_vector(x)))
        for k, c in r.flat(n).items():
            out[x * n * n + k] = c
    return out


def is_separated(b: Bialgebra, t: TwistedDerivation) -> bool:
    return not _bialgebra_derivation_residual(b, t.d)


def separate(b: Bialgebra, t: TwistedDerivation) -> Optional[tuple[Vec, TwistedDerivation]]:
    """Find ``a ∈ H_ε`` making ``t - ∂a`` separated; None if t is not separable."""
    aug = augmentation_ideal(b)
    n = b.dim
    M = Matrix.from_columns(
        [_bialgebra_derivation_residual(b, inner_derivation(b, a)) for a in aug.basis],
        n**3,
    )
    coords = solve(M, _bialgebra_derivation_residual(b, t.d))
    if coords is None:
        return None
    a = aug.element(coords)
    return a, t - boundary(b, a) if a else t


def outer_quotients(b: Bialgebra) -> Report:
    """Outer invariant twists, outer bialgebra derivations and the semidirect check."""
    from .crossed import crossed_module, sub_crossed_module

    n = b.dim
    rep = Report(f"outer quotients of {b.name or 'H'}")
    cm = crossed_module(b)
    z_eps = Subspace(n, [v for v in _intersect_aug(b, centre(b)).basis])
    inv = invariant_twists(b)
    inv_t = [TwistedDerivation(Matrix.zeros(n, n), Tensor.from_flat(v, n, 2)) for v in inv.basis]
    zero_part = sub_crossed_module(b, cm, inv_t, z_eps)
    der_b = bialgebra_derivations(b)
    bial_t = [TwistedDerivation(vec_to_endo(v, n), Tensor(2)) for v in der_b.basis]
    bial_part = sub_crossed_module(b, cm, bial_t, primitives(b))
    rep.data["invariant_twists_dim"] = inv.dim
    rep.data["outer_invariant_twists_dim"] = zero_part.pi0_dim
    rep.data["outer_invariant_twists_brackets"] = zero_part.pi0_structure_constants
    rep.data["bialgebra_derivations_dim"] = der_b.dim
    rep.data["outer_bialgebra_derivations_dim"] = bial_part.pi0_dim
    rep.data["outer_bialgebra_derivations_brackets"] = bial_part.pi0_structure_constants
    rep.data["outer_twisted_derivations_dim"] = cm.module.pi0_dim
    rep.data["outer_twisted_derivations_brackets"] = cm.module.pi0_structure_constants
    rep.extend(zero_part.verify_axioms(), prefix="invariant twists: ")
    rep.extend(bial_part.verify_axioms(), prefix="bialgebra derivations: ")

    separable = all(separate(b, t) is not None for t in cm.derivations)
    rep.data["separable"] = separable
    if separable:
        rep.extend(semidirect_check(b, cm, bial_t, inv_t))
    return rep


def _intersect_aug(b: Bialgebra, sub: Subspace) -> Subspace:
    from ..linalg import intersect

    return intersect(sub, augmentation_ideal(b))


def semidirect_check(b: Bialgebra, cm, bial: Sequence[TwistedDerivation], inv: Sequence[TwistedDerivation]) -> Report:
    """``π0 = (image of Der_bialg) ⋉ (image of Der⁰_tw)`` inside ``OutDer_tw``."""
    m = cm.module
    rep = Report("semidirect decomposition")
    A = Subspace(m.pi0_dim, [m.pi0_coords(cm.coords(t)) for t in bial])
    B = Subspace(m.pi0_dim, [m.pi0_coords(cm.coords(t)) for t in inv])
    rep.add("images span the outer twisted derivations", (A + B).dim == m.pi0_dim)
    rep.add("images meet trivially", A.dim + B.dim == m.pi0_dim)
    br = m.pi0_bracket
    rep.add("invariant-twist image is an ideal", all(B.contains(br(u, v)) for u in (A + B).basis for v in B.basis))
    rep.add("bialgebra-derivation image is a subalgebra", all(A.contains(br(u, v)) for u in A.basis for v in A.basis))
    rep.data["outer_bialgebra_image_dim"] = A.dim
    rep.data["outer_invariant_image_dim"] = B.dim
    return rep
