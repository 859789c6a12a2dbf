"""The symmetric coalgebra ``S(g)`` truncated by polynomial degree.

Monomials are exponent tuples ``α`` with ``Δ(x^α) = Σ_{β≤α} binom(α,β) x^β⊗x^{α-β}``.
The co-Hochschild differential preserves total polynomial degree, so
``C^n(S(g))`` splits into finite pieces ``C^n_m`` spanned by n-tuples of
monomials whose degrees add up to m. Each piece is handled exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional

from ..cohochschild import CohomologyResult, cohomology_from_matrices, permutation_sign, solve_homotopy
from ..linalg import Matrix, Subspace, Vec, complement_in, kernel_basis, unit_vector, vec_iadd
from ..report import Report
from .algebra import LieAlgebra, exterior_invariants, wedge_basis

Alpha = tuple  # exponent vector


@lru_cache(maxsize=None)
def monomials_of_degree(dim: int, m: int) -> tuple[Alpha, ...]:
    """Exponent vectors of total degree m, in lexicographically decreasing order."""
    if dim == 0:
        return ((),) if m == 0 else ()
    out = []
    for first in range(m, -1, -1):
        for rest in monomials_of_degree(dim - 1, m - first):
            out.append((first,) + rest)
    return tuple(out)


def _weak_compositions(m: int, n: int):
    if n == 0:
        if m == 0:
            yield ()
        return
    for first in range(m, -1, -1):
        for rest in _weak_compositions(m - first, n - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_coproduct(alpha: Alpha) -> tuple[tuple[Alpha, Alpha, int], ...]:
    terms = []
    for beta in itertools.product(*(range(a + 1) for a in alpha)):
        c = 1
        for a, b in zip(alpha, beta):
            c *= math.comb(a, b)
        terms.append((beta, tuple(a - b for a, b in zip(alpha, beta)), c))
    return tuple(terms)


@dataclass
class SymCoalgebra:
    dim: int
    max_degree: int
    _bases: Dict[tuple, list] = field(default_factory=dict, repr=False)
    _index: Dict[tuple, dict] = field(default_factory=dict, repr=False)

    @property
    def zero(self) -> Alpha:
        return (0,) * self.dim

    def piece_basis(self, n: int, m: int) -> list[tuple[Alpha, ...]]:
        """Basis of ``C^n_m``; ``C^0_0 = k`` is spanned by the empty tuple."""
        key = (n, m)
        if key not in self._bases:
            basis = []
            for comp in _weak_compositions(m, n):
                basis.extend(itertools.product(*(monomials_of_degree(self.dim, d) for d in comp)))
            self._bases[key] = basis
            self._index[key] = {b: i for i, b in enumerate(basis)}
        return self._bases[key]

    def index(self, n: int, m: int) -> dict:
        self.piece_basis(n, m)
        return self._index[(n, m)]

    def delta(self, alpha: Alpha) -> dict:
        return {(b, c): Fraction(k) for b, c, k in monomial_coproduct(alpha)}

    def eps(self, alpha: Alpha) -> int:
        return 1 if not any(alpha) else 0

    def apply_differential(self, X: Dict[tuple, Fraction]) -> Dict[tuple, Fraction]:
        """``∂`` on a homogeneous cochain keyed by tuples of exponent vectors."""
        out: Dict[tuple, Fraction] = {}
        if not X:
            return out
        n = len(next(iter(X)))
        if n == 0:
            return out
        z = self.zero
        for key, c in X.items():
            _acc(out, (z,) + key, c)
            for i in range(n):
                s = -c if (i + 1) % 2 else c
                for b, cc, k in monomial_coproduct(key[i]):
                    _acc(out, key[:i] + (b, cc) + key[i + 1 :], s * k)
            _acc(out, key + (z,), -c if (n + 1) % 2 else c)
        return out

    def differential(self, n: int, m: int) -> Matrix:
        src = self.piece_basis(n, m)
        dst_index = self.index(n + 1, m)
        rows = len(dst_index)
        if n == 0:
            return Matrix.zeros(rows, len(src))
        cols = []
        for key in src:
            img = self.apply_differential({key: Fraction(1)})
            cols.append({dst_index[k]: c for k, c in img.items()})
        return Matrix.from_columns(cols, rows)

    def to_vec(self, X: Dict[tuple, Fraction], n: int, m: int) -> Vec:
        idx = self.index(n, m)
        return {idx[k]: c for k, c in X.items() if c}

    def from_vec(self, v: Vec, n: int, m: int) -> Dict[tuple, Fraction]:
        basis = self.piece_basis(n, m)
        return {basis[i]: c for i, c in v.items()}


def _acc(d: dict, k, v) -> None:
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


def sym_coalgebra(g: LieAlgebra | int, N: int = 3) -> SymCoalgebra:
    dim = g if isinstance(g, int) else g.dim
    return SymCoalgebra(dim, N)


def verify_graded_coalgebra(S: SymCoalgebra) -> Report:
    rep = Report(f"S(g) truncated at degree {S.max_degree}")
    coassoc = counit = True
    for m in range(S.max_degree + 1):
        for alpha in monomials_of_degree(S.dim, m):
            left: dict = {}
            right: dict = {}
            for b, c, k in monomial_coproduct(alpha):
                for b1, b2, k2 in monomial_coproduct(b):
                    _acc(left, (b1, b2, c), k * k2)
                for c1, c2, k2 in monomial_coproduct(c):
                    _acc(right, (b, c1, c2), k * k2)
            coassoc &= left == right
            l = {c: k for b, c, k in monomial_coproduct(alpha) if S.eps(b)}
            r = {b: k for b, c, k in monomial_coproduct(alpha) if S.eps(c)}
            counit &= l == {alpha: 1} == r
    rep.add("coassociative", coassoc)
    rep.add("counit", counit)
    return rep


# ---------------------------------------------------------------------------
# Cohomology, full and g-invariant
# ---------------------------------------------------------------------------


@dataclass
class GradedCohomology:
    degree: int
    pieces: Dict[int, CohomologyResult]

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.pieces.values())

    def to_dict(self) -> dict:
        return {"degree": self.degree, "dim": self.dim, "pieces": {str(m): p.dim for m, p in self.pieces.items()}}


def _check_degrees(N: int, n: int) -> None:
    if n < 0:
        raise ValueError("cohomology degree must be non-negative")
    if n > N:
        raise ValueError(f"degree {n} exceeds the truncation N = {N}")


def graded_cohomology(g: LieAlgebra, N: int, n: int) -> GradedCohomology:
    _check_degrees(N, n)
    S = sym_coalgebra(g, N)
    pieces = {}
    for m in range(N + 1):
        lower = S.differential(n - 1, m) if n > 0 else Matrix.zeros(len(S.piece_basis(0, m)), 0)
        res = cohomology_from_matrices(lower, S.differential(n, m), n)
        res.representatives = [S.from_vec(v, n, m) for v in res.representatives]
        pieces[m] = res
    return GradedCohomology(n, pieces)


def adjoint_on_monomial(g: LieAlgebra, x: int, alpha: Alpha) -> dict:
    """``ad_x`` extended to ``S(g)`` as a derivation."""
    out: dict = {}
    for i, a in enumerate(alpha):
        if not a:
            continue
        for l, c in g.bracket(unit_vector(x), unit_vector(i)).items():
            beta = list(alpha)
            beta[i] -= 1
            beta[l] += 1
            _acc(out, tuple(beta), c * a)
    return out


def invariant_subspace(g: LieAlgebra, S: SymCoalgebra, n: int, m: int) -> Subspace:
    """g-invariant cochains in ``C^n_m`` under the diagonal adjoint action."""
    basis = S.piece_basis(n, m)
    idx = S.index(n, m)
    size = len(basis)
    cols = []
    for key in basis:
        col: Vec = {}
        for x in range(g.dim):
            for s, alpha in enumerate(key):
                for beta, c in adjoint_on_monomial(g, x, alpha).items():
                    k = idx[key[:s] + (beta,) + key[s + 1 :]]
                    vec_iadd(col, {x * size + k: c})
        cols.append(col)
    return kernel_basis(Matrix.from_columns(cols, g.dim * size))


def invariant_graded_cohomology(g: LieAlgebra, N: int, n: int) -> GradedCohomology:
    _check_degrees(N, n)
    S = sym_coalgebra(g, N)
    pieces = {}
    for m in range(N + 1):
        inv_n = invariant_subspace(g, S, n, m)
        d_n = S.differential(n, m)
        Z_coords = kernel_basis(Matrix.from_columns([d_n.apply(v) for v in inv_n.basis], d_n.rows))
        Z = Subspace(len(S.piece_basis(n, m)), [inv_n.element(z) for z in Z_coords.basis])
        if n > 0:
            inv_lower = invariant_subspace(g, S, n - 1, m)
            d_lower = S.differential(n - 1, m)
            B = Subspace(Z.ambient_dim, [d_lower.apply(v) for v in inv_lower.basis])
        else:
            B = Subspace.zero(Z.ambient_dim)
        reps = complement_in(Z, B)
        pieces[m] = CohomologyResult(n, Z.dim - B.dim, Z.dim, B.dim, [S.from_vec(v, n, m) for v in reps], Z, B)
    return GradedCohomology(n, pieces)


# ---------------------------------------------------------------------------
# Alternation onto Λ^n g and the homotopy
# ---------------------------------------------------------------------------


def alternate_piece(X: Dict[tuple, Fraction]) -> Dict[tuple, Fraction]:
    out: dict = {}
    if not X:
        return out
    n = len(next(iter(X)))
    scale = Fraction(1, math.factorial(n))
    for perm in itertools.permutations(range(n)):
        s = permutation_sign(perm) * scale
        for key, c in X.items():
            _acc(out, tuple(key[p] for p in perm), s * c)
    return out


def _linear_part_to_wedge(X: Dict[tuple, Fraction], dim: int) -> Dict[tuple, Fraction]:
    """Coefficients on ``e_{i1}∧...∧e_{in}`` (i1<...<in) of the all-degree-one part."""
    out: dict = {}
    for key, c in X.items():
        if all(sum(a) == 1 for a in key):
            idx = tuple(a.index(1) for a in key)
            if list(idx) == sorted(set(idx)) and len(set(idx)) == len(idx):
                _acc(out, idx, c)
    return out


def alternation_class_map(g: LieAlgebra, N: int, n: int) -> Report:
    """``[X] ↦`` degree-one part of ``Alt_n X`` is an isomorphism ``H^n → Λ^n g``."""
    rep = Report(f"Alt_{n}: H^{n}(S(g)) → Λ^{n} g")
    coh = graded_cohomology(g, N, n)
    basis = wedge_basis(g.dim, n)
    pos = {w: i for i, w in enumerate(basis)}
    images = []
    for X in coh.pieces.get(n, CohomologyResult(n, 0, 0, 0, [])).representatives:
        W = _linear_part_to_wedge(alternate_piece(X), g.dim)
        images.append({pos[k]: c for k, c in W.items()})
    span = Subspace(len(basis), images)
    rep.add("cohomology concentrated in polynomial degree n", all(p.dim == 0 for m, p in coh.pieces.items() if m != n))
    rep.add("dimension is binom(dim g, n)", coh.dim == math.comb(g.dim, n), coh.dim)
    rep.add("images form a basis of Λ^n g", span.dim == len(basis) == len(images))
    rep.data["dim"] = coh.dim
    return rep


def alternation_matrix_piece(S: SymCoalgebra, n: int, m: int) -> Matrix:
    basis = S.piece_basis(n, m)
    return Matrix.from_columns([S.to_vec(alternate_piece({k: Fraction(1)}), n, m) for k in basis], len(basis))


def homotopy_on_piece(g: LieAlgebra | int, n: int, m: int) -> Optional[tuple[Matrix, Matrix]]:
    """Solve ``I - Alt_n = ∂a_n + a_{n+1}∂`` on ``C^n_m``."""
    S = sym_coalgebra(g, max(m, n))
    size = len(S.piece_basis(n, m))
    target = Matrix.identity(size) - alternation_matrix_piece(S, n, m)
    lower = S.differential(n - 1, m) if n > 0 else Matrix.zeros(size, 0)
    return solve_homotopy(lower, S.differential(n, m), target)


def invariant_dims(g: LieAlgebra, n_max: int) -> list[int]:
    """``dim (Λ^n g)^g`` for n = 0..n_max."""
    return [1] + [exterior_invariants(g, n)[0].dim for n in range(1, n_max + 1)]
