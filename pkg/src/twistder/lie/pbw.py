"""Bounded-degree arithmetic in ``U(g)`` and ``U(g)^{⊗n}`` through PBW normal forms.

A PBW element is a dict from non-decreasing index tuples (ordered monomials
``e_{i1}⋯e_{ik}``) to scalars. Words are normalised by the rewriting
``e_j e_i → e_i e_j + [e_j, e_i]`` for ``j > i``; each step lowers the number of
inversions or the length, so it terminates, and PBW makes the result unique.
Elements of ``U^{⊗n}`` are dicts keyed by n-tuples of monomials.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence

from ..linalg import Matrix, Vec, solve, unit_vector
from ..report import Report
from .algebra import LieAlgebra, wedge_to_tensor

Mono = tuple
PBW = Dict[Mono, Fraction]
PBW2 = Dict[tuple, Fraction]


def _acc(d: dict, k, v) -> None:
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


class PBWEngine:
    """Normal forms and products in ``U(g)``; results are memoised per word."""

    def __init__(self, g: LieAlgebra) -> None:
        self.g = g
        self._cache: Dict[tuple, PBW] = {}

    def normal_form(self, word: Sequence[int]) -> PBW:
        word = tuple(word)
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        for p in range(len(word) - 1):
            j, i = word[p], word[p + 1]
            if j > i:
                out: PBW = {}
                for k, c in self.normal_form(word[:p] + (i, j) + word[p + 2 :]).items():
                    _acc(out, k, c)
                for l, c in self.g.bracket(unit_vector(j), unit_vector(i)).items():
                    for k, c2 in self.normal_form(word[:p] + (l,) + word[p + 2 :]).items():
                        _acc(out, k, c * c2)
                break
        else:
            out = {word: Fraction(1)}
        self._cache[word] = out
        return out

    def normalize(self, u: Mapping[tuple, Fraction]) -> PBW:
        out: PBW = {}
        for w, c in u.items():
            for k, c2 in self.normal_form(w).items():
                _acc(out, k, c * c2)
        return out

    def mult(self, u: Mapping[Mono, Fraction], v: Mapping[Mono, Fraction]) -> PBW:
        out: PBW = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for k, c in self.normal_form(a + b).items():
                    _acc(out, k, ca * cb * c)
        return out

    def commutator(self, u, v) -> PBW:
        out = self.mult(u, v)
        for k, c in self.mult(v, u).items():
            _acc(out, k, -c)
        return out

    # -- tensor powers -----------------------------------------------------

    def tensor_mult(self, u: Mapping[tuple, Fraction], v: Mapping[tuple, Fraction]) -> PBW2:
        out: PBW2 = {}
        for ka, ca in u.items():
            for kb, cb in v.items():
                factors = [self.normal_form(a + b).items() for a, b in zip(ka, kb)]
                for combo in itertools.product(*factors):
                    c = ca * cb
                    for _, x in combo:
                        c *= x
                    _acc(out, tuple(m for m, _ in combo), c)
        return out

    def tensor_commutator(self, u, v) -> PBW2:
        out = self.tensor_mult(u, v)
        for k, c in self.tensor_mult(v, u).items():
            _acc(out, k, -c)
        return out

    def coproduct_mono(self, mono: Mono) -> PBW2:
        """``Δ(e_{i1}⋯e_{ik}) = Π_j (e_{ij}⊗1 + 1⊗e_{ij})``."""
        out: PBW2 = {((), ()): Fraction(1)}
        for i in mono:
            out = self.tensor_mult(out, {((i,), ()): Fraction(1), ((), (i,)): Fraction(1)})
        return out

    def coproduct(self, u: Mapping[Mono, Fraction]) -> PBW2:
        out: PBW2 = {}
        for m, c in u.items():
            for k, c2 in self.coproduct_mono(m).items():
                _acc(out, k, c * c2)
        return out

    def apply_coproduct_at(self, t: Mapping[tuple, Fraction], slot: int) -> dict:
        out: dict = {}
        for key, c in t.items():
            for (a, b), c2 in self.coproduct_mono(key[slot]).items():
                _acc(out, key[:slot] + (a, b) + key[slot + 1 :], c * c2)
        return out

    def derivation(self, D: Matrix, u: Mapping[Mono, Fraction]) -> PBW:
        """Extend a derivation of g to ``U(g)`` by the Leibniz rule."""
        out: PBW = {}
        for mono, c in u.items():
            for p, i in enumerate(mono):
                for k, a in D.column(i).items():
                    for m, c2 in self.normal_form(mono[:p] + (k,) + mono[p + 1 :]).items():
                        _acc(out, m, c * a * c2)
        return out

    def tensor_derivation(self, D: Matrix, t: Mapping[tuple, Fraction]) -> dict:
        out: dict = {}
        for key, c in t.items():
            for s, mono in enumerate(key):
                for m, c2 in self.derivation(D, {mono: Fraction(1)}).items():
                    _acc(out, key[:s] + (m,) + key[s + 1 :], c * c2)
        return out


def pbw_normal_form(g: LieAlgebra, word: Sequence[int]) -> PBW:
    return PBWEngine(g).normal_form(word)


def u_mult(g: LieAlgebra, u: Mapping[Mono, Fraction], v: Mapping[Mono, Fraction]) -> PBW:
    return PBWEngine(g).mult(u, v)


def pretty_pbw(g: LieAlgebra, u: Mapping[Mono, Fraction]) -> str:
    def mono(m: Mono) -> str:
        if not m:
            return "1"
        parts = []
        for i, grp in itertools.groupby(m):
            k = len(list(grp))
            parts.append(g.basis_names[i] + (f"^{k}" if k > 1 else ""))
        return "·".join(parts)

    terms = []
    for m, c in sorted(u.items(), key=lambda kv: (len(kv[0]), kv[0])):
        terms.append(mono(m) if c == 1 else f"{c}*{mono(m)}")
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# Invariant twists in U(g)⊗U(g)
# ---------------------------------------------------------------------------


def lie_tensor_to_u2(phi: Mapping[tuple, Fraction]) -> PBW2:
    """``Σ c e_i⊗e_j`` as an element of ``U⊗U``."""
    return {((i,), (j,)): c for (i, j), c in phi.items() if c}


def wedge_to_u2(X: Mapping[tuple, Fraction]) -> PBW2:
    """Antisymmetric embedding ``x∧y ↦ x⊗y - y⊗x``."""
    return lie_tensor_to_u2(wedge_to_tensor(X))


def _is_zero(t: Mapping) -> bool:
    return not any(t.values())


def u_cocycle_residual(engine: PBWEngine, phi: Mapping[tuple, Fraction]) -> dict:
    """``1⊗φ + (I⊗Δ)φ - φ⊗1 - (Δ⊗I)φ`` in ``U^{⊗3}``."""
    out: dict = {}
    for (a, b), c in phi.items():
        _acc(out, ((), a, b), c)
        _acc(out, (a, b, ()), -c)
    for k, c in engine.apply_coproduct_at(phi, 1).items():
        _acc(out, k, c)
    for k, c in engine.apply_coproduct_at(phi, 0).items():
        _acc(out, k, -c)
    return out


def ug_invariant_twist_check(g: LieAlgebra, phi: Mapping[tuple, Fraction]) -> Report:
    """Check that ``φ ∈ g⊗g`` (keyed by index pairs) is an invariant infinitesimal twist of ``U(g)``."""
    engine = PBWEngine(g)
    u2 = lie_tensor_to_u2(phi)
    rep = Report("invariant twist of U(g)")
    bad = None
    for x in range(g.dim):
        comm = engine.tensor_commutator(u2, engine.coproduct_mono((x,)))
        if not _is_zero(comm):
            bad = {"x": g.basis_names[x], "commutator": sorted(comm.items())}
            break
    rep.add("[φ, Δ(x)] = 0 for x in g", bad is None, bad)
    res = u_cocycle_residual(engine, u2)
    rep.add("cocycle", _is_zero(res), sorted(res.items()))
    left = {b: c for (a, b), c in u2.items() if a == ()}
    right = {a: c for (a, b), c in u2.items() if b == ()}
    rep.add("normalisation", not left and not right)
    return rep


# ---------------------------------------------------------------------------
# Splitting a 2-cocycle into its alternation plus a coboundary
# ---------------------------------------------------------------------------


def monomials(dim: int, max_degree: int) -> list[Mono]:
    out = []
    for k in range(max_degree + 1):
        out.extend(itertools.combinations_with_replacement(range(dim), k))
    return out


def u_boundary(engine: PBWEngine, a: Mapping[Mono, Fraction]) -> PBW2:
    """``a⊗1 + 1⊗a - Δ(a)``."""
    out: PBW2 = {}
    for m, c in a.items():
        _acc(out, (m, ()), c)
        _acc(out, ((), m), c)
    for k, c in engine.coproduct(a).items():
        _acc(out, k, -c)
    return out


def alternate2(t: Mapping[tuple, Fraction]) -> PBW2:
    out: PBW2 = {}
    for (a, b), c in t.items():
        _acc(out, (a, b), c / 2)
        _acc(out, (b, a), -c / 2)
    return out


def cob_decomposition(g: LieAlgebra, phi: Mapping[tuple, Fraction], max_degree: int) -> Optional[PBW]:
    """Find ``a`` of PBW degree ``≤ max_degree`` with ``φ = Alt_2(φ) + a⊗1 + 1⊗a - Δ(a)``.

    The answer is unique only up to primitive and central shifts; the solver
    returns the particular solution with free coordinates set to zero.
    """
    engine = PBWEngine(g)
    target = dict(phi)
    for k, c in alternate2(phi).items():
        _acc(target, k, -c)
    monos = monomials(g.dim, max_degree)
    columns = [u_boundary(engine, {m: Fraction(1)}) for m in monos]
    keys = sorted({k for col in columns for k in col} | set(target))
    index = {k: i for i, k in enumerate(keys)}
    if any(k not in index for k in target):
        return None
    M = Matrix.from_columns([{index[k]: c for k, c in col.items()} for col in columns], len(keys))
    x = solve(M, {index[k]: c for k, c in target.items()})
    if x is None:
        return None
    return {monos[i]: c for i, c in x.items()}


def is_central(engine: PBWEngine, a: Mapping[Mono, Fraction]) -> bool:
    return all(_is_zero(engine.commutator({(x,): Fraction(1)}, a)) for x in range(engine.g.dim))
