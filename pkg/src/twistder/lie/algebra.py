"""Finite-dimensional Lie algebras by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Sequence

from ..bialgebra import FormatError
from ..linalg import (
    Matrix,
    Subspace,
    Vec,
    as_scalar,
    complement_in,
    kernel_basis,
    matrix_of,
    unit_vector,
    vec_add,
    vec_iadd,
    vec_scale,
)
from ..report import Report


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """``[e_i, e_j] = Σ_k c[(i, j)][k] e_k``.

    Only one of ``(i, j)`` / ``(j, i)`` needs to be given; the other is filled
    in by antisymmetry. Giving both with inconsistent values is a format error.
    """

    dim: int
    basis_names: tuple[str, ...]
    brackets: Dict[tuple[int, int], Vec]
    name: str = ""
    description: str = ""

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.basis_names) != n:
            raise FormatError("basis_names length differs from dim")
        full: Dict[tuple[int, int], Vec] = {}
        for (i, j), v in self.brackets.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in v):
                raise FormatError(f"bracket index out of range at ({i}, {j})")
            v = {k: as_scalar(c) for k, c in v.items() if as_scalar(c)}
            if not v:
                continue
            if i == j:
                raise FormatError(f"[e_{i}, e_{i}] must vanish")
            neg = vec_scale(v, -1)
            if (j, i) in full and full[(j, i)] != neg:
                raise FormatError(f"brackets ({i},{j}) and ({j},{i}) are not antisymmetric")
            full[(i, j)] = v
            full[(j, i)] = neg
        object.__setattr__(self, "brackets", full)

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                c = self.brackets.get((i, j))
                if c:
                    vec_iadd(out, c, a * b)
        return out

    def ad(self, x: Mapping[int, Fraction]) -> Matrix:
        return matrix_of(lambda j: self.bracket(x, unit_vector(j)), self.dim, self.dim)

    def e(self, name: str) -> Vec:
        return unit_vector(self.basis_names.index(name))

    def is_abelian(self) -> bool:
        return not self.brackets


def verify_lie(g: LieAlgebra) -> Report:
    rep = Report(f"Lie algebra axioms for {g.name or 'g'}")
    E = [unit_vector(i) for i in range(g.dim)]
    bad = next(
        ((i, j) for i in range(g.dim) for j in range(g.dim) if vec_add(g.bracket(E[i], E[j]), g.bracket(E[j], E[i])) != {}),
        None,
    )
    rep.add("antisymmetry", bad is None, bad)
    bad = None
    for i, j, k in itertools.combinations(range(g.dim), 3):
        s = g.bracket(E[i], g.bracket(E[j], E[k]))
        vec_iadd(s, g.bracket(E[j], g.bracket(E[k], E[i])))
        vec_iadd(s, g.bracket(E[k], g.bracket(E[i], E[j])))
        if s:
            bad = tuple(g.basis_names[t] for t in (i, j, k))
            break
    rep.add("Jacobi identity", bad is None, bad)
    return rep


def verify_structure_constants(dim: int, bracket) -> Report:
    """Antisymmetry and Jacobi for a bracket given as a function on unit vectors."""
    rep = Report("Lie structure constants")
    E = [unit_vector(i) for i in range(dim)]
    bad = next(
        ((i, j) for i in range(dim) for j in range(i, dim) if vec_add(bracket(E[i], E[j]), bracket(E[j], E[i])) != {}),
        None,
    )
    rep.add("antisymmetry", bad is None, bad)
    bad = None
    for i, j, k in itertools.combinations(range(dim), 3):
        s = bracket(E[i], bracket(E[j], E[k]))
        vec_iadd(s, bracket(E[j], bracket(E[k], E[i])))
        vec_iadd(s, bracket(E[k], bracket(E[i], E[j])))
        if s:
            bad = (i, j, k)
            break
    rep.add("Jacobi identity", bad is None, bad)
    return rep


def structure_bracket(constants: Mapping[tuple[int, int], Mapping[int, Fraction]]):
    """Bilinear bracket function from a sparse structure-constant table."""

    def br(u, v):
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                c = constants.get((i, j))
                if c:
                    vec_iadd(out, c, a * b)
        return out

    return br


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------
#
# An endomorphism D is stored as a vector in gl(g) with coordinate
# j*dim + i holding the e_i-coefficient of D(e_j).


def endo_to_vec(m: Matrix) -> Vec:
    n = m.rows
    return {c * n + r: v for r, row in m.entries.items() for c, v in row.items()}


def vec_to_endo(v: Mapping[int, Fraction], n: int) -> Matrix:
    entries: Dict[int, Vec] = {}
    for idx, c in v.items():
        col, row = divmod(idx, n)
        entries.setdefault(row, {})[col] = c
    return Matrix(n, n, entries)


def lie_derivations(g: LieAlgebra) -> Subspace:
    """``{D : D[x,y] = [Dx,y] + [x,Dy]}`` as a subspace of gl(g)."""
    n = g.dim
    E = [unit_vector(i) for i in range(n)]
    pairs = list(itertools.combinations(range(n), 2))

    def residual(idx):
        D = vec_to_endo({idx: Fraction(1)}, n)
        out: Vec = {}
        for p, (i, j) in enumerate(pairs):
            r = D.apply(g.bracket(E[i], E[j]))
            vec_iadd(r, g.bracket(D.apply(E[i]), E[j]), -1)
            vec_iadd(r, g.bracket(E[i], D.apply(E[j])), -1)
            for k, c in r.items():
                out[p * n + k] = c
        return out

    return kernel_basis(matrix_of(residual, n * n, max(1, len(pairs)) * n))


def inner_derivations(g: LieAlgebra) -> Subspace:
    return Subspace(g.dim**2, (endo_to_vec(g.ad(unit_vector(i))) for i in range(g.dim)))


def lie_centre(g: LieAlgebra) -> Subspace:
    """``Z(g) = ker ad``."""
    n = g.dim
    return kernel_basis(matrix_of(lambda j: endo_to_vec(g.ad(unit_vector(j))), n, n * n))


def endo_commutator_vec(u: Mapping[int, Fraction], v: Mapping[int, Fraction], n: int) -> Vec:
    a, b = vec_to_endo(u, n), vec_to_endo(v, n)
    return endo_to_vec(a @ b - b @ a)


@dataclass
class OuterDerivations:
    derivations: Subspace
    inner: Subspace
    section: list[Vec]  # representatives in gl(g) coordinates
    structure_constants: Dict[tuple[int, int], Vec]

    @property
    def dim(self) -> int:
        return len(self.section)

    def project(self, D: Mapping[int, Fraction]) -> Vec:
        """Class of a derivation in the section basis."""
        coords = _coords_in(list(self.inner.basis) + self.section, D, self.derivations.ambient_dim)
        ni = self.inner.dim
        return {k - ni: c for k, c in coords.items() if k >= ni}


def _coords_in(vectors: Sequence[Mapping[int, Fraction]], v: Mapping[int, Fraction], ambient: int) -> Vec:
    """Coordinates of v in a linearly independent list of vectors."""
    from ..linalg import solve

    x = solve(Matrix.from_columns(vectors, ambient), v)
    if x is None:
        raise ValueError("vector is outside the span")
    return x


def outer_derivations(g: LieAlgebra) -> OuterDerivations:
    n = g.dim
    der = lie_derivations(g)
    inn = inner_derivations(g)
    section = complement_in(der, inn)
    basis = list(inn.basis) + section
    ni = inn.dim
    consts: Dict[tuple[int, int], Vec] = {}
    for a, u in enumerate(section):
        for b, v in enumerate(section):
            if a == b:
                continue
            coords = _coords_in(basis, endo_commutator_vec(u, v, n), n * n)
            proj = {k - ni: c for k, c in coords.items() if k >= ni}
            if proj:
                consts[(a, b)] = proj
    return OuterDerivations(der, inn, section, consts)


# ---------------------------------------------------------------------------
# Exterior powers
# ---------------------------------------------------------------------------
#
# Elements of Λ^n g are dicts from strictly increasing index tuples to scalars.


def wedge_basis(dim: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(dim), n))


def wedge_monomial(indices: Sequence[int]) -> Dict[tuple, Fraction]:
    """``e_{i1}∧...∧e_{in}`` sorted with its sign; zero if an index repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return {}
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return {tuple(idx): Fraction(sign)}


def wedge_vectors(vectors: Sequence[Mapping[int, Fraction]]) -> Dict[tuple, Fraction]:
    """Exterior product of a list of vectors of g."""
    out: Dict[tuple, Fraction] = {}
    for combo in itertools.product(*(v.items() for v in vectors)):
        c = Fraction(1)
        for _, x in combo:
            c *= x
        for k, s in wedge_monomial([i for i, _ in combo]).items():
            _acc(out, k, c * s)
    return out


def wedge_product(X: Mapping[tuple, Fraction], Y: Mapping[tuple, Fraction]) -> Dict[tuple, Fraction]:
    out: Dict[tuple, Fraction] = {}
    for a, x in X.items():
        for b, y in Y.items():
            for k, s in wedge_monomial(a + b).items():
                _acc(out, k, x * y * s)
    return out


def _acc(d: dict, k, v) -> None:
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


def adjoint_on_wedge(g: LieAlgebra, x: Mapping[int, Fraction], X: Mapping[tuple, Fraction]) -> Dict[tuple, Fraction]:
    """Adjoint action of x on Λ^n g extended as a derivation."""
    out: Dict[tuple, Fraction] = {}
    for key, c in X.items():
        for pos, i in enumerate(key):
            bx = g.bracket(x, unit_vector(i))
            for k, a in bx.items():
                mono = key[:pos] + (k,) + key[pos + 1 :]
                for kk, s in wedge_monomial(mono).items():
                    _acc(out, kk, c * a * s)
    return out


def exterior_invariants(g: LieAlgebra, n: int) -> tuple[Subspace, list[tuple[int, ...]]]:
    """``(Λ^n g)^g`` as a subspace in the sorted wedge basis, with that basis."""
    if n > g.dim or n < 0:
        return Subspace.zero(0), []
    basis = wedge_basis(g.dim, n)
    index = {k: i for i, k in enumerate(basis)}
    size = len(basis)

    def residual(j):
        out: Vec = {}
        for x in range(g.dim):
            for k, c in adjoint_on_wedge(g, unit_vector(x), {basis[j]: Fraction(1)}).items():
                out[x * size + index[k]] = c
        return out

    return kernel_basis(matrix_of(residual, size, max(1, g.dim * size))), basis


def wedge_from_vec(v: Mapping[int, Fraction], basis: Sequence[tuple]) -> Dict[tuple, Fraction]:
    return {basis[i]: c for i, c in v.items()}


def wedge_to_vec(X: Mapping[tuple, Fraction], basis: Sequence[tuple]) -> Vec:
    index = {k: i for i, k in enumerate(basis)}
    return {index[k]: c for k, c in X.items() if c}


def wedge_to_tensor(X: Mapping[tuple, Fraction]) -> Dict[tuple, Fraction]:
    """Antisymmetric embedding ``x1∧...∧xn ↦ Σ sgn(σ) x_σ1⊗...⊗x_σn``."""
    out: Dict[tuple, Fraction] = {}
    for key, c in X.items():
        for perm in itertools.permutations(range(len(key))):
            _acc(out, tuple(key[p] for p in perm), c * _perm_sign(perm))
    return out


def _perm_sign(perm: Sequence[int]) -> int:
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


def schouten(g: LieAlgebra, X: Mapping[tuple, Fraction], Y: Mapping[tuple, Fraction]) -> Dict[tuple, Fraction]:
    """``Σ_{i,j} (-1)^{i+j} [x_i,y_j]∧x_1..x̂_i..x_m∧y_1..ŷ_j..y_n`` extended bilinearly."""
    out: Dict[tuple, Fraction] = {}
    for xs, a in X.items():
        for ys, b in Y.items():
            for i, xi in enumerate(xs, start=1):
                for j, yj in enumerate(ys, start=1):
                    br = g.bracket(unit_vector(xi), unit_vector(yj))
                    if not br:
                        continue
                    rest = xs[: i - 1] + xs[i:] + ys[: j - 1] + ys[j:]
                    sign = -1 if (i + j) % 2 else 1
                    for k, c in br.items():
                        for kk, s in wedge_monomial((k,) + rest).items():
                            _acc(out, kk, a * b * c * s * sign)
    return out


# ---------------------------------------------------------------------------
# OutDer(g) ⋉ (Λ²g)^g
# ---------------------------------------------------------------------------


@dataclass
class SemidirectProduct:
    """Lie algebra on ``outer.section + invariants`` (outer part first)."""

    outer: OuterDerivations
    invariants: list[Dict[tuple, Fraction]]
    structure_constants: Dict[tuple[int, int], Vec]

    @property
    def dim(self) -> int:
        return self.outer.dim + len(self.invariants)

    def bracket(self, u, v) -> Vec:
        return structure_bracket(self.structure_constants)(u, v)


def derivation_on_wedge(D: Matrix, X: Mapping[tuple, Fraction]) -> Dict[tuple, Fraction]:
    """``(D⊗1 + 1⊗D)`` on Λ^n g, i.e. D extended as a derivation."""
    out: Dict[tuple, Fraction] = {}
    for key, c in X.items():
        for pos, i in enumerate(key):
            for k, a in D.column(i).items():
                for kk, s in wedge_monomial(key[:pos] + (k,) + key[pos + 1 :]).items():
                    _acc(out, kk, c * a * s)
    return out


def semidirect_outder_tw(g: LieAlgebra) -> SemidirectProduct:
    n = g.dim
    out = outer_derivations(g)
    inv_space, wbasis = exterior_invariants(g, 2)
    invariants = [wedge_from_vec(v, wbasis) for v in inv_space.basis]
    no = out.dim
    consts: Dict[tuple[int, int], Vec] = {(a, b): dict(v) for (a, b), v in out.structure_constants.items()}
    for a, D in enumerate(out.section):
        Dm = vec_to_endo(D, n)
        for b, X in enumerate(invariants):
            img = wedge_to_vec(derivation_on_wedge(Dm, X), wbasis)
            coords = inv_space.coordinates(img)
            if coords:
                consts[(a, no + b)] = {no + k: c for k, c in coords.items()}
                consts[(no + b, a)] = {no + k: -c for k, c in coords.items()}
    return SemidirectProduct(out, invariants, consts)
