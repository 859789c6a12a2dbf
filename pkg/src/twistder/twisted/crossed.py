"""Crossed modules of Lie algebras ``∂: N → P`` and their invariants.

The generic class works in coordinates: elements of N and P are sparse
vectors, the brackets and the action are callables. ``π1 = ker ∂`` and
``π0 = coker ∂``; a section ``σ`` of ``P → π0`` and a correction
``a(u, v) ∈ N`` with ``∂a(u,v) = [σu, σv] - σ[u, v]`` give the Jacobiator

    J(u,v,w) = σu·a(v,w) - σv·a(u,w) + σw·a(u,v) - a([u,v],w) + a([u,w],v) - a([v,w],u),

a Lie 3-cocycle of ``π0`` with values in ``π1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping, Sequence

from ..bialgebra import Bialgebra, augmentation_ideal
from ..linalg import Matrix, Subspace, Vec, image_basis, kernel_basis, solve, unit_vector, vec_add, vec_iadd
from ..report import Report
from .derivations import TwistedDerivation, boundary, bracket, twisted_derivation_subspace

Bracket = Callable[[Mapping[int, Fraction], Mapping[int, Fraction]], Vec]


@dataclass(eq=False)
class LieCrossedModule:
    n_dim: int
    p_dim: int
    n_bracket: Bracket
    p_bracket: Bracket
    boundary: Matrix  # p_dim × n_dim
    action: Bracket  # (p, n) -> n
    name: str = ""

    # -- π1 and π0 ---------------------------------------------------------

    @cached_property
    def pi1(self) -> Subspace:
        return kernel_basis(self.boundary)

    @cached_property
    def image(self) -> Subspace:
        return image_basis(self.boundary)

    @cached_property
    def _section_indices(self) -> list[int]:
        pivots = set(self.image.pivots)
        return [j for j in range(self.p_dim) if j not in pivots]

    @property
    def pi0_dim(self) -> int:
        return len(self._section_indices)

    def section(self, u: Mapping[int, Fraction]) -> Vec:
        """``σ``: π0 coordinates to P, onto the span of non-pivot unit vectors."""
        idx = self._section_indices
        return {idx[k]: c for k, c in u.items() if c}

    def pi0_coords(self, p: Mapping[int, Fraction]) -> Vec:
        r = self.image.reduce(p)
        return {k: r[j] for k, j in enumerate(self._section_indices) if r.get(j)}

    def pi0_bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        return self.pi0_coords(self.p_bracket(self.section(u), self.section(v)))

    @cached_property
    def pi0_structure_constants(self) -> dict:
        out = {}
        for k, l in itertools.combinations(range(self.pi0_dim), 2):
            c = self.pi0_bracket(unit_vector(k), unit_vector(l))
            if c:
                out[(k, l)] = c
        return out

    def pi0_action(self, u: Mapping[int, Fraction], m: Mapping[int, Fraction]) -> Vec:
        return self.action(self.section(u), m)

    # -- correction and Jacobiator ----------------------------------------

    @cached_property
    def correction_table(self) -> dict:
        table = {}
        for k, l in itertools.combinations(range(self.pi0_dim), 2):
            uk, ul = unit_vector(k), unit_vector(l)
            defect = vec_add(self.p_bracket(self.section(uk), self.section(ul)), self.section(self.pi0_bracket(uk, ul)), -1)
            a = solve(self.boundary, defect)
            if a is None:
                raise ArithmeticError(f"bracket defect of section on ({k}, {l}) is not a boundary")
            if a:
                table[(k, l)] = a
        return table

    def correction(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for (k, l), a in self.correction_table.items():
            c = u.get(k, 0) * v.get(l, 0) - u.get(l, 0) * v.get(k, 0)
            if c:
                vec_iadd(out, a, c)
        return out

    def _jacobiator_raw(self, u, v, w) -> Vec:
        a, act, br = self.correction, self.pi0_action, self.pi0_bracket
        out = act(u, a(v, w))
        vec_iadd(out, act(v, a(u, w)), -1)
        vec_iadd(out, act(w, a(u, v)))
        vec_iadd(out, a(br(u, v), w), -1)
        vec_iadd(out, a(br(u, w), v))
        vec_iadd(out, a(br(v, w), u), -1)
        return out

    @cached_property
    def jacobiator_table(self) -> dict:
        table = {}
        for k, l, m in itertools.combinations(range(self.pi0_dim), 3):
            j = self._jacobiator_raw(unit_vector(k), unit_vector(l), unit_vector(m))
            if j:
                table[(k, l, m)] = j
        return table

    def jacobiator(self, u, v, w) -> Vec:
        """Trilinear alternating extension of the basis table."""
        table = self.jacobiator_table
        out: Vec = {}
        for k, a in u.items():
            for l, b in v.items():
                for m, c in w.items():
                    if k == l or l == m or k == m:
                        continue
                    key, sign = _sort_with_sign((k, l, m))
                    j = table.get(key)
                    if j:
                        vec_iadd(out, j, sign * a * b * c)
        return out

    def jacobiator_is_zero(self) -> bool:
        return not self.jacobiator_table

    def coboundary_of_jacobiator(self, xs: Sequence[Mapping[int, Fraction]]) -> Vec:
        """Chevalley–Eilenberg differential of J evaluated on four π0 vectors."""
        out: Vec = {}
        for i in range(4):
            rest = [x for k, x in enumerate(xs) if k != i]
            vec_iadd(out, self.pi0_action(xs[i], self.jacobiator(*rest)), (-1) ** i)
        for i, j in itertools.combinations(range(4), 2):
            rest = [x for k, x in enumerate(xs) if k not in (i, j)]
            vec_iadd(out, self.jacobiator(self.pi0_bracket(xs[i], xs[j]), *rest), (-1) ** (i + j))
        return out

    # -- verification ------------------------------------------------------

    def verify_axioms(self) -> Report:
        rep = Report(f"crossed module {self.name}".strip())
        ns = [unit_vector(i) for i in range(self.n_dim)]
        ps = [unit_vector(i) for i in range(self.p_dim)]
        d = self.boundary.apply

        def first(pairs, pred):
            return next((w for w in pairs if not pred(*w)), None)

        pairs_nn = list(itertools.product(range(self.n_dim), repeat=2))
        w = first(pairs_nn, lambda i, j: d(self.n_bracket(ns[i], ns[j])) == self.p_bracket(d(ns[i]), d(ns[j])))
        rep.add("boundary is a Lie homomorphism", w is None, w)
        pairs_pn = list(itertools.product(range(self.p_dim), range(self.n_dim)))
        w = first(pairs_pn, lambda i, j: d(self.action(ps[i], ns[j])) == self.p_bracket(ps[i], d(ns[j])))
        rep.add("equivariance ∂(p·n) = [p, ∂n]", w is None, w)
        w = first(pairs_nn, lambda i, j: self.action(d(ns[i]), ns[j]) == self.n_bracket(ns[i], ns[j]))
        rep.add("Peiffer identity ∂(n)·m = [n, m]", w is None, w)
        w = first(pairs_pn, lambda i, j: self.image.contains(self.p_bracket(ps[i], d(ns[j]))))
        rep.add("image of ∂ is an ideal", w is None, w)
        w = next((m for m in self.pi1.basis if any(self.n_bracket(m, x) for x in ns)), None)
        rep.add("ker ∂ is central", w is None, w)

        # well-definedness of the induced bracket on π0
        bad = None
        for k, l in itertools.product(range(self.pi0_dim), repeat=2):
            base = self.pi0_bracket(unit_vector(k), unit_vector(l))
            for im in self.image.basis:
                shifted = vec_add(self.section(unit_vector(k)), im)
                if self.pi0_coords(self.p_bracket(shifted, self.section(unit_vector(l)))) != base:
                    bad = (k, l)
                    break
            if bad:
                break
        rep.add("π0 bracket independent of representatives", bad is None, bad)

        try:
            self.correction_table
            rep.add("section correction exists", True)
        except ArithmeticError as exc:
            rep.add("section correction exists", False, str(exc))
            return rep
        w = next((k for k, j in self.jacobiator_table.items() if not self.pi1.contains(j)), None)
        rep.add("Jacobiator lands in π1", w is None, w)
        w = None
        for idx in itertools.combinations(range(self.pi0_dim), 4):
            if self.coboundary_of_jacobiator([unit_vector(i) for i in idx]):
                w = idx
                break
        rep.add("Jacobiator is a 3-cocycle", w is None, w)
        rep.data["pi0_dim"] = self.pi0_dim
        rep.data["pi1_dim"] = self.pi1.dim
        return rep

    def to_dict(self) -> dict:
        return {
            "pi0_dim": self.pi0_dim,
            "pi1_dim": self.pi1.dim,
            "pi1_basis": list(self.pi1.basis),
            "pi0_structure_constants": self.pi0_structure_constants,
            "correction": self.correction_table,
            "jacobiator": self.jacobiator_table,
        }


def _sort_with_sign(idx: tuple) -> tuple[tuple, int]:
    items, sign = list(idx), 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return tuple(items), sign


def lie_from_table(constants: Mapping[tuple[int, int], Mapping[int, Fraction]]) -> Bracket:
    def br(u, v):
        out: Vec = {}
        for (i, j), c in constants.items():
            s = u.get(i, 0) * v.get(j, 0) - u.get(j, 0) * v.get(i, 0)
            if s:
                vec_iadd(out, c, s)
        return out

    return br


# ---------------------------------------------------------------------------
# Twisted-derivation crossed module of a bialgebra
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class TwistedCrossedModule:
    """``∂: N → P`` with ``P`` a Lie subalgebra of ``Der_tw(H)`` and ``N ⊆ H``."""

    bialgebra: Bialgebra
    p_space: Subspace
    n_space: Subspace
    module: LieCrossedModule

    @property
    def derivations(self) -> list[TwistedDerivation]:
        return [TwistedDerivation.from_vec(v, self.bialgebra.dim) for v in self.p_space.basis]

    def coords(self, t: TwistedDerivation) -> Vec:
        return self.p_space.coordinates(t.to_vec(self.bialgebra.dim))

    def derivation(self, coords: Mapping[int, Fraction]) -> TwistedDerivation:
        return TwistedDerivation.from_vec(self.p_space.element(coords), self.bialgebra.dim)

    def element(self, coords: Mapping[int, Fraction]) -> Vec:
        return self.n_space.element(coords)

    @property
    def pi1_elements(self) -> list[Vec]:
        return [self.element(v) for v in self.module.pi1.basis]

    @property
    def pi0_representatives(self) -> list[TwistedDerivation]:
        m = self.module
        return [self.derivation(m.section(unit_vector(k))) for k in range(m.pi0_dim)]

    def to_dict(self) -> dict:
        out = self.module.to_dict()
        out["der_dim"] = self.p_space.dim
        out["pi0_representatives"] = self.pi0_representatives
        out["pi1_basis"] = self.pi1_elements
        out["correction"] = {k: self.element(a) for k, a in self.module.correction_table.items()}
        out["jacobiator"] = {k: self.element(a) for k, a in self.module.jacobiator_table.items()}
        return out


def _build(b: Bialgebra, p_space: Subspace, n_space: Subspace, name: str) -> TwistedCrossedModule:
    dim = b.dim

    def T(u):
        return TwistedDerivation.from_vec(p_space.element(u), dim)

    def p_bracket(u, v):
        return p_space.coordinates(bracket(b, T(u), T(v)).to_vec(dim))

    def n_bracket(u, v):
        return n_space.coordinates(b.commutator(n_space.element(u), n_space.element(v)))

    def action(p, n):
        return n_space.coordinates(T(p).d.apply(n_space.element(n)))

    bd = Matrix.from_columns([p_space.coordinates(boundary(b, a).to_vec(dim)) for a in n_space.basis], p_space.dim)
    module = LieCrossedModule(n_space.dim, p_space.dim, n_bracket, p_bracket, bd, action, name=name)
    return TwistedCrossedModule(b, p_space, n_space, module)


def crossed_module(b: Bialgebra) -> TwistedCrossedModule:
    """``∂: H_ε → Der_tw(H)`` acting through ``(d, φ)·α = d(α)``."""
    return _build(b, twisted_derivation_subspace(b), augmentation_ideal(b), f"Der_tw({b.name})")


def sub_crossed_module(b: Bialgebra, cm: TwistedCrossedModule, derivations: Sequence[TwistedDerivation], n_space: Subspace) -> LieCrossedModule:
    p_space = Subspace(cm.p_space.ambient_dim, [t.to_vec(b.dim) for t in derivations])
    return _build(b, p_space, n_space, "").module


# ---------------------------------------------------------------------------
# Test doubles
# ---------------------------------------------------------------------------


def adjoint_crossed_module(g) -> LieCrossedModule:
    """``ad: g → Der(g)``; ``π1`` is the centre and ``π0`` the outer derivations."""
    from ..lie.algebra import endo_commutator_vec, endo_to_vec, lie_derivations, vec_to_endo

    n = g.dim
    ders = lie_derivations(g)

    def p_bracket(u, v):
        return ders.coordinates(endo_commutator_vec(ders.element(u), ders.element(v), n))

    def action(p, x):
        return vec_to_endo(ders.element(p), n).apply(x)

    bd = Matrix.from_columns([ders.coordinates(endo_to_vec(g.ad(unit_vector(i)))) for i in range(n)], ders.dim)
    return LieCrossedModule(n, ders.dim, g.bracket, p_bracket, bd, action, name=f"ad({g.name})")


def zero_action_double(n_dim: int, p_dim: int) -> LieCrossedModule:
    """Abelian N and P, zero boundary and zero action."""
    zero = lambda u, v: {}
    return LieCrossedModule(n_dim, p_dim, zero, zero, Matrix.zeros(p_dim, n_dim), zero, name="zero double")
