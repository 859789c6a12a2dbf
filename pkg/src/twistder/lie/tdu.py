"""Structural comparison of ``OutDer(g) ⋉ (Λ²g)^g`` with twisted derivations of ``U(g)``.

The Lie-side product is built from structure constants. The U-side bracket is
evaluated independently with PBW arithmetic on the pairs ``(D, 0)`` and
``(0, X)``, then mapped back by ``(d, φ) ↦ ([d], Alt_2 φ)`` after checking that
``φ - Alt_2 φ`` is a coboundary.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from ..linalg import Matrix, Vec, kernel_basis, solve
from ..report import Report
from .algebra import (
    LieAlgebra,
    SemidirectProduct,
    endo_to_vec,
    exterior_invariants,
    semidirect_outder_tw,
    vec_to_endo,
    verify_structure_constants,
    wedge_to_vec,
)
from .pbw import PBWEngine, _acc, alternate2, cob_decomposition, is_central, monomials, u_boundary, u_cocycle_residual, wedge_to_u2


def gl_semidirect_reference(n: int) -> Dict[tuple[int, int], Vec]:
    """``gl_n ⋉ k`` with ``[E_ij, E_kl] = δ_jk E_il - δ_li E_kj`` and ``E_ij·w = δ_ij w``.

    ``E_ij`` (row i, column j) has index ``j*n + i``; ``w`` is last.
    """
    idx = lambda i, j: j * n + i
    w = n * n
    consts: Dict[tuple[int, int], Vec] = {}
    for i, j, k, l in ((i, j, k, l) for i in range(n) for j in range(n) for k in range(n) for l in range(n)):
        v: Vec = {}
        if j == k:
            _acc(v, idx(i, l), Fraction(1))
        if l == i:
            _acc(v, idx(k, j), Fraction(-1))
        if v:
            consts[(idx(i, j), idx(k, l))] = v
    for i in range(n):
        consts[(idx(i, i), w)] = {w: Fraction(1)}
        consts[(w, idx(i, i))] = {w: Fraction(-1)}
    return consts


def _transport(sd: SemidirectProduct, change: Matrix) -> Dict[tuple[int, int], Vec]:
    """Structure constants of ``sd`` rewritten in the basis given by the columns of ``change``."""
    br = sd.bracket
    dim = sd.dim
    basis = change.columns()
    out: Dict[tuple[int, int], Vec] = {}
    for a in range(dim):
        for b in range(dim):
            v = solve(change, br(basis[a], basis[b]))
            if v:
                out[(a, b)] = v
    return out


def compare_with_gl2(g: LieAlgebra) -> Report:
    """For 2-dim abelian g: the computed product equals ``gl_2 ⋉ k`` under the obvious map."""
    rep = Report("semidirect product vs gl2 ⋉ k")
    sd = semidirect_outder_tw(g)
    if g.dim != 2 or not g.is_abelian() or sd.dim != 5:
        rep.add("applicable (2-dim abelian)", False, {"dim": sd.dim})
        return rep
    # columns: image in sd coordinates of E_ij and of w = x∧y
    sect = Matrix.from_columns(sd.outer.section, 4)
    cols = [solve(sect, {e: Fraction(1)}) for e in range(4)]
    w_scale = sd.invariants[0].get((0, 1))
    cols.append({4: 1 / w_scale})
    change = Matrix.from_columns(cols, 5)
    rep.add("structure constants match", _transport(sd, change) == gl_semidirect_reference(2))
    return rep


def _u2_to_wedge(phi: Dict[tuple, Fraction], basis) -> Vec | None:
    """Λ²g coordinates of an antisymmetric element of ``g⊗g ⊂ U⊗U``; None if not of that form."""
    X: Dict[tuple, Fraction] = {}
    for (a, b), c in phi.items():
        if len(a) != 1 or len(b) != 1:
            return None
        i, j = a[0], b[0]
        if i < j:
            _acc(X, (i, j), c)
    return wedge_to_vec(X, basis)


def tdu_structural_check(g: LieAlgebra, cob_degree: int = 3) -> Report:
    rep = Report(f"OutDer_tw(U({g.name or 'g'})) structure")
    sd = semidirect_outder_tw(g)
    rep.extend(verify_structure_constants(sd.dim, sd.bracket), prefix="semidirect: ")
    engine = PBWEngine(g)
    n = g.dim
    inv_space, wbasis = exterior_invariants(g, 2)
    no = sd.outer.dim
    elements = [(vec_to_endo(D, n), {}) for D in sd.outer.section]
    elements += [(Matrix.zeros(n, n), wedge_to_u2(X)) for X in sd.invariants]

    central_ok, cob_ok, cocycle_ok, bracket_ok = True, True, True, True
    witness = None
    for a, (d1, p1) in enumerate(elements):
        for b, (d2, p2) in enumerate(elements):
            if b <= a:
                continue
            d = d1 @ d2 - d2 @ d1
            phi: dict = {}
            for k, c in engine.tensor_derivation(d1, p2).items():
                _acc(phi, k, c)
            for k, c in engine.tensor_derivation(d2, p1).items():
                _acc(phi, k, -c)
            for k, c in engine.tensor_commutator(p1, p2).items():
                _acc(phi, k, -c)
            if any(u_cocycle_residual(engine, phi).values()):
                cocycle_ok = False
            bar = alternate2(phi)
            shift = cob_decomposition(g, phi, cob_degree)
            if shift is None:
                cob_ok = False
                witness = witness or (a, b)
                continue
            if a >= no and b >= no and not is_central(engine, shift):
                # invariant twists: the gauge element can be taken central
                central_ok = central_ok and _has_central_solution(g, engine, phi, cob_degree)
            outer = sd.outer.project(endo_to_vec(d))
            wedge = _u2_to_wedge(bar, wbasis)
            if wedge is None:
                bracket_ok = False
                witness = witness or (a, b)
                continue
            inv = inv_space.coordinates(wedge) if wedge else {}
            got = dict(outer)
            for k, c in inv.items():
                got[no + k] = c
            if got != sd.bracket({a: Fraction(1)}, {b: Fraction(1)}):
                bracket_ok = False
                witness = witness or (a, b)
    rep.add("U-side brackets are 2-cocycles", cocycle_ok)
    rep.add("φ - Alt_2 φ is a coboundary", cob_ok, witness)
    rep.add("gauge element central on invariant twists", central_ok)
    rep.add("class map is a Lie homomorphism", bracket_ok, witness)
    rep.data["outer_derivations_dim"] = no
    rep.data["invariant_wedges_dim"] = len(sd.invariants)
    rep.data["structure_constants"] = sd.structure_constants
    return rep


def _has_central_solution(g: LieAlgebra, engine: PBWEngine, phi, max_degree: int) -> bool:
    """Whether some coboundary preimage of ``φ - Alt_2 φ`` is central."""
    monos = monomials(g.dim, max_degree)
    # central elements of bounded degree
    comm_cols = []
    for m in monos:
        col: dict = {}
        for x in range(g.dim):
            for k, c in engine.commutator({(x,): Fraction(1)}, {m: Fraction(1)}).items():
                col[(x, k)] = c
        comm_cols.append(col)
    keys = sorted({k for col in comm_cols for k in col})
    index = {k: i for i, k in enumerate(keys)}
    central = kernel_basis(Matrix.from_columns([{index[k]: c for k, c in col.items()} for col in comm_cols], len(keys)))
    target = dict(phi)
    for k, c in alternate2(phi).items():
        _acc(target, k, -c)
    columns = [u_boundary(engine, {monos[i]: c for i, c in z.items()}) for z in central.basis]
    keys2 = sorted({k for col in columns for k in col} | set(target))
    idx2 = {k: i for i, k in enumerate(keys2)}
    M = Matrix.from_columns([{idx2[k]: c for k, c in col.items()} for col in columns], len(keys2))
    return solve(M, {idx2[k]: c for k, c in target.items()}) is not None
