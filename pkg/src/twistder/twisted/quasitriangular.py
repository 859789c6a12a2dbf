"""Universal R-matrices, their tangent spaces and the twisted-derivation action.

An R-matrix here satisfies ``R·Δ^op(x) = Δ(x)·R``, i.e. the braiding is
``m⊗n ↦ R(n⊗m)``. The triangle equations come in two placements:

* ``"printed"``: ``(I⊗Δ)R = R23·R13`` and ``(Δ⊗I)R = R12·R13``;
* ``"hexagon"``: ``(Δ⊗I)R = R23·R13`` and ``(I⊗Δ)R = R12·R13``, the form the
  hexagon axioms for that braiding actually produce.

The tangent-space conditions follow the same placement.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..bialgebra import Bialgebra, PreconditionError, Tensor
from ..linalg import Matrix, Subspace, Vec, kernel_basis, matrix_of, unit_vector
from ..report import Report
from .automorphisms import tensor_inverse
from .derivations import TwistedDerivation, bracket, twisted_derivation_subspace

CONVENTIONS = ("printed", "hexagon")


def _legs(b: Bialgebra, t: Tensor, slots: tuple[int, int]) -> Tensor:
    """Embed a 2-tensor into ``H^{⊗3}`` at the given 0-based slots, unit elsewhere."""
    unit = sorted(b.unit.items())
    out: dict = {}
    for (i, j), c in t.items():
        for u, cu in unit:
            key = [u, u, u]
            key[slots[0]], key[slots[1]] = i, j
            k = tuple(key)
            out[k] = out.get(k, 0) + c * cu
    return Tensor(3, out)


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")


def _triangle_sides(b: Bialgebra, R: Tensor, convention: str) -> tuple[int, int]:
    """Slots (1-based) for Δ in the equations ``..= R23R13`` and ``..= R12R13``."""
    return (2, 1) if convention == "printed" else (1, 2)


def r_matrix_verify(b: Bialgebra, R: Tensor, convention: str = "printed") -> Report:
    _check_convention(convention)
    rep = Report(f"R-matrix ({convention} triangle equations)")
    if tensor_inverse(b, R) is None:
        raise PreconditionError("R is not invertible", witness=R)
    rep.add("R invertible", True)
    bad = None
    for i in range(b.dim):
        dx = b.delta(unit_vector(i))
        if b.tensor_mult(R, dx.flip()) != b.tensor_mult(dx, R):
            bad = b.basis_names[i]
            break
    rep.add("R Δ^op(x) = Δ(x) R", bad is None, bad)
    s23, s12 = _triangle_sides(b, R, convention)
    R12, R13, R23 = _legs(b, R, (0, 1)), _legs(b, R, (0, 2)), _legs(b, R, (1, 2))
    r1 = b.apply_delta_at(R, s23) - b.tensor_mult(R23, R13)
    r2 = b.apply_delta_at(R, s12) - b.tensor_mult(R12, R13)
    rep.add("triangle equation (R23 R13)", r1.is_zero(), r1)
    rep.add("triangle equation (R12 R13)", r2.is_zero(), r2)
    return rep


def tangent_r_space(b: Bialgebra, R: Tensor, convention: str = "printed") -> Subspace:
    """Solutions r of the linearised R-matrix equations at R (flattened ``H^{⊗2}``)."""
    _check_convention(convention)
    n = b.dim
    s23, s12 = _triangle_sides(b, R, convention)
    R12, R13, R23 = _legs(b, R, (0, 1)), _legs(b, R, (0, 2)), _legs(b, R, (1, 2))
    deltas = [b.delta(unit_vector(i)) for i in range(n)]

    def residual(j: int) -> Vec:
        r = Tensor.from_flat({j: Fraction(1)}, n, 2)
        r12, r13, r23 = _legs(b, r, (0, 1)), _legs(b, r, (0, 2)), _legs(b, r, (1, 2))
        m = b.tensor_mult
        t1 = b.apply_delta_at(r, s23) - m(r23, R13) - m(R23, r13)
        t2 = b.apply_delta_at(r, s12) - m(r12, R13) - m(R12, r13)
        out: Vec = {}
        for k, c in t1.flat(n).items():
            out[k] = c
        for k, c in t2.flat(n).items():
            out[n**3 + k] = c
        for x, dx in enumerate(deltas):
            for k, c in (m(dx, r) - m(r, dx.flip())).flat(n).items():
                out[2 * n**3 + x * n * n + k] = c
        return out

    return kernel_basis(matrix_of(residual, n * n, 2 * n**3 + n**3))


def inf_twist_action(b: Bialgebra, t: TwistedDerivation, r: Tensor) -> Tensor:
    """``(d,φ)(r) = (I⊗d + d⊗I)(r) - φr + rφ21``."""
    return b.derivation_extension(r, t.d) - b.tensor_mult(t.phi, r) + b.tensor_mult(r, t.phi.flip())


def stabilizer_residual(b: Bialgebra, t: TwistedDerivation, R: Tensor, convention: str = "printed") -> Tensor:
    """``(I⊗d+d⊗I)(R)`` minus ``φ21R - Rφ`` (printed) or ``φR - Rφ21`` (derived)."""
    lhs = b.derivation_extension(R, t.d)
    if convention == "printed":
        return lhs - (b.tensor_mult(t.phi.flip(), R) - b.tensor_mult(R, t.phi))
    if convention == "derived":
        return lhs - (b.tensor_mult(t.phi, R) - b.tensor_mult(R, t.phi.flip()))
    raise ValueError(f"unknown stabilizer convention {convention!r}")


def stabilizer_der(b: Bialgebra, R: Tensor, convention: str = "printed") -> Subspace:
    """Twisted derivations satisfying the stabilizer condition at R (flattened vectors)."""
    der = twisted_derivation_subspace(b)
    n = b.dim
    cols = [stabilizer_residual(b, TwistedDerivation.from_vec(v, n), R, convention).flat(n) for v in der.basis]
    k = kernel_basis(Matrix.from_columns(cols, n * n))
    return Subspace(der.ambient_dim, [der.element(c) for c in k.basis])


def module_check(
    b: Bialgebra,
    R: Tensor,
    derivations: Sequence[TwistedDerivation],
    triangle: str = "printed",
) -> Report:
    """Closure of the tangent space under the action, the bracket law, and inner triviality."""
    from ..bialgebra import augmentation_ideal
    from .derivations import boundary

    n = b.dim
    T = tangent_r_space(b, R, triangle)
    rs = [Tensor.from_flat(v, n, 2) for v in T.basis]
    rep = Report("action on tangent R-matrices")
    bad = next(((i, j) for i, t in enumerate(derivations) for j, r in enumerate(rs) if not T.contains(inf_twist_action(b, t, r).flat(n))), None)
    rep.add("action preserves the tangent space", bad is None, bad)
    bad = None
    for i, t1 in enumerate(derivations):
        for j, t2 in enumerate(derivations):
            br = bracket(b, t1, t2)
            for k, r in enumerate(rs):
                lhs = inf_twist_action(b, br, r)
                rhs = inf_twist_action(b, t1, inf_twist_action(b, t2, r)) - inf_twist_action(b, t2, inf_twist_action(b, t1, r))
                if lhs != rhs:
                    bad = (i, j, k)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("[t1,t2](r) = t1(t2 r) - t2(t1 r)", bad is None, bad)
    bad = None
    for a in augmentation_ideal(b).basis:
        inner = boundary(b, a)
        for k, r in enumerate(rs):
            if inf_twist_action(b, inner, r):
                bad = (b.pretty(a), k)
                break
        if bad:
            break
    rep.add("inner twisted derivations act trivially", bad is None, bad)
    rep.data["tangent_dim"] = T.dim
    return rep


def sweedler_r_matrix(alpha) -> Tensor:
    """The triangular family on Sweedler's algebra, in the ``R Δ^op = Δ R`` form.

    ``½(1⊗1 + 1⊗g + g⊗1 - g⊗g) + (α/2)(x⊗x + gx⊗x + gx⊗gx - x⊗gx)`` on the
    basis (1, g, x, gx).
    """
    h = Fraction(1, 2)
    a = Fraction(alpha) * h
    one, g, x, gx = range(4)
    return Tensor(2, {
        (one, one): h, (one, g): h, (g, one): h, (g, g): -h,
        (x, x): a, (gx, x): a, (gx, gx): a, (x, gx): -a,
    })
