"""The free differential algebra ``E(H)`` on a polynomial bialgebra, truncated by weight.

``H = k[x_1..x_k]`` with primitive generators. ``E(H)`` is generated by letters
``D^n(x_j)`` of weight ``n + 1`` subject to

    r_n(x_a, x_b) = Σ_i C(n,i) [D^i x_a, D^{n-i} x_b] = 0    (a < b, n ≥ 0),

which is what ``d^n(x_a x_b) = d^n(x_b x_a)`` becomes once ``d^n`` of a product
is expanded by the binomial rule. The relations are weight-homogeneous, so
each weight piece is the span of its words modulo the truncated two-sided
ideal, found by exact row reduction. Normal forms are the echelon residues.

A 2-cocycle ``φ`` of ``H`` gives the coproduct

    Δ(D^n x) = (d⊗I + I⊗d) Δ(D^{n-1} x) - [φ, Δ(D^{n-1} x)],

which raises weight. Everything of total weight above the cap ``W`` is
discarded; since ``d`` and ``Δ`` never lower weight this is a quotient by a
differential bialgebra ideal, so all identities are checked exactly there.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Mapping, Optional, Sequence

from .bialgebra import PreconditionError
from .linalg import Matrix, Subspace, solve
from .lie.symcoalg import monomial_coproduct
from .report import Report

Letter = tuple  # (order, generator)
Word = tuple  # tuple of letters
Elem = Dict[Word, Fraction]
TElem = Dict[tuple, Fraction]  # keyed by tuples of words
HTensor = Dict[tuple, Fraction]  # keyed by tuples of exponent vectors

DEFAULT_WEIGHT = 4


def _acc(d: dict, k, v) -> None:
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


def letter_weight(letter: Letter) -> int:
    return letter[0] + 1


def word_weight(word: Word) -> int:
    return sum(l[0] + 1 for l in word)


def _inversions(word: Word) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(word)), 2) if word[i] > word[j])


# ---------------------------------------------------------------------------
# Base: polynomial bialgebra data
# ---------------------------------------------------------------------------


def h_cocycle_residual(phi: HTensor) -> HTensor:
    """``1⊗φ + (I⊗Δ)φ - φ⊗1 - (Δ⊗I)φ`` for ``φ`` in ``k[x]⊗k[x]``."""
    out: HTensor = {}
    if not phi:
        return out
    zero = tuple(0 for _ in next(iter(phi))[0])
    for (a, b), c in phi.items():
        _acc(out, (zero, a, b), c)
        _acc(out, (a, b, zero), -c)
        for b1, b2, k in monomial_coproduct(b):
            _acc(out, (a, b1, b2), c * k)
        for a1, a2, k in monomial_coproduct(a):
            _acc(out, (a1, a2, b), -c * k)
    return out


def _check_phi(phi: HTensor, n_gens: int) -> None:
    for (a, b) in phi:
        if len(a) != n_gens or len(b) != n_gens:
            raise PreconditionError("φ has exponent vectors of the wrong length", witness=(a, b))
    if h_cocycle_residual(phi):
        raise PreconditionError("φ is not a 2-cocycle of H", witness=sorted(h_cocycle_residual(phi).items()))
    if any(not any(a) or not any(b) for (a, b), c in phi.items() if c):
        raise PreconditionError("φ is not normalised: (ε⊗I)φ and (I⊗ε)φ must vanish")


# ---------------------------------------------------------------------------
# The algebra
# ---------------------------------------------------------------------------


@dataclass
class FreeDiffAlgebra:
    names: tuple[str, ...]
    phi: HTensor
    weight_cap: int
    _nf: Dict[Word, Elem] = field(default_factory=dict, repr=False)
    _delta: Dict[Letter, TElem] = field(default_factory=dict, repr=False)

    @property
    def n_gens(self) -> int:
        return len(self.names)

    # -- words and relations -------------------------------------------------

    def letters(self, max_weight: Optional[int] = None) -> list[Letter]:
        w = self.weight_cap if max_weight is None else max_weight
        return [(k, j) for k in range(w) for j in range(self.n_gens)]

    def words(self, weight: int) -> list[Word]:
        """Words of exact weight, ordered so that unsorted words become pivots."""
        return self._words[weight]

    @cached_property
    def _words(self) -> Dict[int, list[Word]]:
        table: Dict[int, list[Word]] = {0: [()]}
        for w in range(1, self.weight_cap + 1):
            out = []
            for k in range(w):
                for j in range(self.n_gens):
                    out.extend(((k, j),) + rest for rest in table[w - k - 1])
            table[w] = sorted(out, key=lambda u: (-_inversions(u), u))
        return table

    def relation(self, a: int, b: int, n: int) -> Elem:
        out: Elem = {}
        for i in range(n + 1):
            c = Fraction(math.comb(n, i))
            _acc(out, ((i, a), (n - i, b)), c)
            _acc(out, ((n - i, b), (i, a)), -c)
        return out

    def relation_generators(self, max_weight: Optional[int] = None) -> list[tuple[tuple[int, int, int], Elem]]:
        w = self.weight_cap if max_weight is None else max_weight
        return [((a, b, n), self.relation(a, b, n))
                for n in range(w - 1) for a in range(self.n_gens) for b in range(a + 1, self.n_gens)]

    @cached_property
    def _index(self) -> Dict[int, Dict[Word, int]]:
        return {w: {u: i for i, u in enumerate(ws)} for w, ws in self._words.items()}

    @cached_property
    def ideal(self) -> Dict[int, Subspace]:
        """Weight pieces of the two-sided ideal, spanned by all ``u·r·v``."""
        out = {}
        for w in range(self.weight_cap + 1):
            idx = self._index[w]
            vectors = []
            for _, r in self.relation_generators(w):
                rw = word_weight(next(iter(r)))
                for lw in range(w - rw + 1):
                    for u in self._words[lw]:
                        for v in self._words[w - rw - lw]:
                            vectors.append({idx[u + m + v]: c for m, c in r.items()})
            out[w] = Subspace(len(idx), vectors)
        return out

    @cached_property
    def basis(self) -> Dict[int, list[Word]]:
        """Normal-form words (non-pivot words) in each weight."""
        out = {}
        for w in range(self.weight_cap + 1):
            piv = set(self.ideal[w].pivots)
            out[w] = [u for i, u in enumerate(self._words[w]) if i not in piv]
        return out

    def basis_words(self) -> list[Word]:
        return [u for w in range(self.weight_cap + 1) for u in self.basis[w]]

    def dims(self) -> list[int]:
        return [len(self.basis[w]) for w in range(self.weight_cap + 1)]

    # -- normal forms ----------------------------------------------------------

    def word_nf(self, word: Word) -> Elem:
        hit = self._nf.get(word)
        if hit is not None:
            return hit
        w = word_weight(word)
        if w > self.weight_cap:
            out: Elem = {}
        else:
            words = self._words[w]
            out = {words[i]: c for i, c in self.ideal[w].reduce({self._index[w][word]: Fraction(1)}).items()}
        self._nf[word] = out
        return out

    def reduce(self, u: Mapping[Word, Fraction]) -> Elem:
        out: Elem = {}
        for word, c in u.items():
            for k, c2 in self.word_nf(word).items():
                _acc(out, k, c * c2)
        return out

    def treduce(self, t: Mapping[tuple, Fraction]) -> TElem:
        """Normal form of a tensor, dropping terms above the total-weight cap."""
        out: TElem = {}
        for key, c in t.items():
            if sum(map(word_weight, key)) > self.weight_cap:
                continue
            for combo in itertools.product(*(self.word_nf(w).items() for w in key)):
                v = c
                for _, x in combo:
                    v *= x
                _acc(out, tuple(k for k, _ in combo), v)
        return out

    def mult(self, u: Mapping[Word, Fraction], v: Mapping[Word, Fraction]) -> Elem:
        out: Elem = {}
        for a, ca in u.items():
            for b, cb in v.items():
                if word_weight(a) + word_weight(b) <= self.weight_cap:
                    _acc(out, a + b, ca * cb)
        return self.reduce(out)

    def tmult(self, s: Mapping[tuple, Fraction], t: Mapping[tuple, Fraction]) -> TElem:
        cap = self.weight_cap
        out: TElem = {}
        for ka, ca in s.items():
            wa = sum(map(word_weight, ka))
            for kb, cb in t.items():
                if wa + sum(map(word_weight, kb)) <= cap:
                    _acc(out, tuple(x + y for x, y in zip(ka, kb)), ca * cb)
        return self.treduce(out)

    def tcommutator(self, s, t) -> TElem:
        out = self.tmult(s, t)
        for k, c in self.tmult(t, s).items():
            _acc(out, k, -c)
        return out

    # -- embedding of H ----------------------------------------------------------

    def embed_monomial(self, alpha: Sequence[int]) -> Elem:
        word = tuple((0, j) for j, a in enumerate(alpha) for _ in range(a))
        return self.word_nf(word) if word_weight(word) <= self.weight_cap else {}

    def embed_tensor(self, t: HTensor) -> TElem:
        out: TElem = {}
        for key, c in t.items():
            out[tuple(tuple((0, j) for j, a in enumerate(alpha) for _ in range(a)) for alpha in key)] = c
        return self.treduce(out)

    @cached_property
    def phi_e(self) -> TElem:
        return self.embed_tensor(self.phi)

    # -- derivation and coproduct ------------------------------------------------

    def derivation_word(self, word: Word) -> Elem:
        out: Elem = {}
        for p, (k, j) in enumerate(word):
            _acc(out, word[:p] + ((k + 1, j),) + word[p + 1 :], Fraction(1))
        return out

    def derivation(self, u: Mapping[Word, Fraction]) -> Elem:
        out: Elem = {}
        for word, c in u.items():
            for k, c2 in self.derivation_word(word).items():
                _acc(out, k, c * c2)
        return self.reduce(out)

    def tensor_derivation(self, t: Mapping[tuple, Fraction]) -> TElem:
        """``Σ_s I⊗..⊗d⊗..⊗I``."""
        out: TElem = {}
        for key, c in t.items():
            for s, word in enumerate(key):
                for k, c2 in self.derivation_word(word).items():
                    _acc(out, key[:s] + (k,) + key[s + 1 :], c * c2)
        return self.treduce(out)

    def delta_letter(self, letter: Letter) -> TElem:
        hit = self._delta.get(letter)
        if hit is not None:
            return hit
        k, j = letter
        if k == 0:
            out = self.treduce({(((0, j),), ()): Fraction(1), ((), ((0, j),)): Fraction(1)})
        else:
            prev = self.delta_letter((k - 1, j))
            out = self.tensor_derivation(prev)
            for key, c in self.tcommutator(self.phi_e, prev).items():
                _acc(out, key, -c)
        self._delta[letter] = out
        return out

    def delta_word(self, word: Word) -> TElem:
        out: TElem = {((), ()): Fraction(1)}
        for letter in word:
            out = self.tmult(out, self.delta_letter(letter))
        return out

    def delta(self, u: Mapping[Word, Fraction]) -> TElem:
        out: TElem = {}
        for word, c in u.items():
            for k, c2 in self.delta_word(word).items():
                _acc(out, k, c * c2)
        return out

    def delta_at(self, t: Mapping[tuple, Fraction], slot: int) -> TElem:
        out: TElem = {}
        for key, c in t.items():
            for (a, b), c2 in self.delta_word(key[slot]).items():
                _acc(out, key[:slot] + (a, b) + key[slot + 1 :], c * c2)
        return self.treduce(out)

    @staticmethod
    def eps_word(word: Word) -> int:
        return 0 if word else 1

    def boundary(self, a: Mapping[Word, Fraction]) -> TElem:
        """``a⊗1 + 1⊗a - Δ(a)``."""
        out: TElem = {}
        for w, c in a.items():
            _acc(out, (w, ()), c)
            _acc(out, ((), w), c)
        for k, c in self.delta(a).items():
            _acc(out, k, -c)
        return self.treduce(out)

    # -- rendering -------------------------------------------------------------

    def letter_name(self, letter: Letter) -> str:
        k, j = letter
        x = self.names[j]
        return x if k == 0 else f"d({x})" if k == 1 else f"d^{k}({x})"

    def word_name(self, word: Word) -> str:
        return "".join(self.letter_name(l) for l in word) if word else "1"

    def pretty(self, t: Mapping) -> str:
        """Deterministic text of an element of E or of a tensor power of E."""
        if not t:
            return "0"
        terms = []
        for key, c in sorted(t.items(), key=lambda kv: _render_key(kv[0])):
            if key and isinstance(key[0], tuple) and (not key[0] or isinstance(key[0][0], tuple)):
                body = "⊗".join(self.word_name(w) for w in key)
            else:
                body = self.word_name(key)
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            terms.append(f"{coef}{body}")
        return " + ".join(terms).replace("+ -", "- ")


def _render_key(key) -> tuple:
    if key and isinstance(key[0], tuple) and (not key[0] or isinstance(key[0][0], tuple)):
        return (sum(map(word_weight, key)), tuple((word_weight(w), w) for w in key))
    return (word_weight(key), key)


def build_e(names: Sequence[str] | int, phi: Mapping[tuple, object] | None = None, weight: int = DEFAULT_WEIGHT) -> FreeDiffAlgebra:
    """``E(k[x_1..x_k])`` truncated at total weight ``weight``.

    ``phi`` maps pairs of exponent vectors to scalars.
    """
    if isinstance(names, int):
        names = tuple(f"x{i}" for i in range(1, names + 1))
    names = tuple(names)
    if weight < 1:
        raise ValueError("the weight cap must be at least 1")
    phi = {(tuple(a), tuple(b)): Fraction(c) for (a, b), c in (phi or {}).items() if Fraction(c)}
    _check_phi(phi, len(names))
    return FreeDiffAlgebra(names, phi, weight)


def e_derivation(e: FreeDiffAlgebra, u: Mapping[Word, Fraction]) -> Elem:
    if any(word_weight(w) + 1 > e.weight_cap for w in u):
        raise ValueError("d(u) exceeds the weight cap")
    return e.derivation(u)


def e_coproduct(e: FreeDiffAlgebra, u: Mapping[Word, Fraction]) -> TElem:
    if any(word_weight(w) > e.weight_cap for w in u):
        raise ValueError("u exceeds the weight cap")
    return e.delta(e.reduce(u))


def letter(e: FreeDiffAlgebra, name: str, order: int = 0) -> Elem:
    return {((order, e.names.index(name)),): Fraction(1)}


def tensor(*parts: Mapping[Word, Fraction]) -> TElem:
    """Tensor product of elements of E."""
    out: TElem = {}
    for combo in itertools.product(*(p.items() for p in parts)):
        c = Fraction(1)
        for _, x in combo:
            c *= x
        _acc(out, tuple(w for w, _ in combo), c)
    return out


ONE: Elem = {(): Fraction(1)}


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_e_bialgebra(e: FreeDiffAlgebra) -> Report:
    rep = Report(f"E(H) truncated at weight {e.weight_cap}")
    words = e.basis_words()
    rep.data["dims"] = e.dims()

    bad = next((key for key, r in e.relation_generators(e.weight_cap - 1) if e.derivation(r)), None)
    rep.add("d preserves the ideal", bad is None, bad)
    bad = next((key for key, r in e.relation_generators() if e.treduce(e.delta(r))), None)
    rep.add("Δ vanishes on the ideal", bad is None, bad)

    bad = None
    for u in words:
        d = e.delta_word(u)
        if e.delta_at(d, 0) != e.delta_at(d, 1):
            bad = e.word_name(u)
            break
    rep.add("coassociative on basis words", bad is None, bad)

    bad = None
    for u in words:
        d = e.delta_word(u)
        left = {b: c for (a, b), c in d.items() if not a}
        right = {a: c for (a, b), c in d.items() if not b}
        if left != {u: 1} or right != {u: 1}:
            bad = e.word_name(u)
            break
    rep.add("counit on basis words", bad is None, bad)

    # H → E(H): injective, multiplicative, comultiplicative
    n, cap = e.n_gens, e.weight_cap
    from .lie.symcoalg import monomials_of_degree

    ok_inj = ok_mult = ok_delta = True
    for m in range(cap + 1):
        monos = monomials_of_degree(n, m)
        idx = {u: i for i, u in enumerate(e.words(m))}
        images = [e.embed_monomial(a) for a in monos]
        ok_inj &= Subspace(len(idx), [{idx[k]: c for k, c in v.items()} for v in images]).dim == len(monos)
        for a in monos:
            img = e.delta(e.embed_monomial(a))
            want = e.embed_tensor({(b, c): Fraction(k) for b, c, k in monomial_coproduct(a)})
            ok_delta &= img == want
            for m2 in range(cap - m + 1):
                for b in monomials_of_degree(n, m2):
                    ok_mult &= e.mult(e.embed_monomial(a), e.embed_monomial(b)) == e.embed_monomial(tuple(x + y for x, y in zip(a, b)))
    rep.add("H → E(H) injective", ok_inj)
    rep.add("H → E(H) multiplicative", ok_mult)
    rep.add("H → E(H) intertwines coproducts", ok_delta)
    return rep


def verify_twisted_derivation_of_e(e: FreeDiffAlgebra) -> Report:
    """Conjugation, cocycle and normalisation for ``(d, φ)`` on every basis word."""
    rep = Report("(d, φ) is a twisted derivation of E(H)")
    phi = e.phi_e
    bad = None
    witness = None
    for u in e.basis_words():
        du = {u: Fraction(1)}
        lhs = e.tensor_derivation(e.delta_word(u))
        for k, c in e.delta(e.derivation(du)).items():
            _acc(lhs, k, -c)
        if lhs != e.tcommutator(phi, e.delta_word(u)):
            bad = e.word_name(u)
            break
        if witness is None and lhs:
            witness = e.word_name(u)
    rep.add("conjugation on basis words", bad is None, bad)
    one = ((),)
    res = {}
    for k, c in itertools.chain(
        ((one + key, c) for key, c in phi.items()),
        e.delta_at(phi, 1).items(),
        ((key + one, -c) for key, c in phi.items()),
        ((k, -c) for k, c in e.delta_at(phi, 0).items()),
    ):
        _acc(res, k, c)
    rep.add("cocycle", not e.treduce(res), e.pretty(res) if res else None)
    left = {b: c for (a, b), c in phi.items() if not a}
    right = {a: c for (a, b), c in phi.items() if not b}
    rep.add("normalisation", not left and not right)
    rep.add("ε∘d = 0", all(e.derivation({u: Fraction(1)}).get((), 0) == 0 for u in e.basis_words()))
    rep.data["non_separated_witness"] = witness
    return rep


def separability(e: FreeDiffAlgebra) -> Report:
    """Look for ``a`` with ``(d - [a,-], φ - ∂a)`` a bialgebra derivation within the cap.

    The truncation is a quotient by a differential bialgebra ideal, so if no
    such ``a`` exists at this cap then none exists in ``E(H)`` at all. A
    solution at the cap does not settle the untruncated question.
    """
    rep = Report(f"separability of (d, φ) at weight {e.weight_cap}")
    cap = e.weight_cap
    letters = [l for l in e.letters(cap - 1) if letter_weight(l) <= cap - 1]
    deltas = [e.delta_letter(l) for l in letters]
    candidates = [u for w in range(1, cap) for u in e.basis[w]]

    def stacked(t: TElem) -> dict:
        out = {}
        for i, dl in enumerate(deltas):
            for k, c in e.tcommutator(t, dl).items():
                out[(i, k)] = c
        return out

    target = stacked(e.phi_e)
    columns = [stacked(e.boundary({u: Fraction(1)})) for u in candidates]
    keys = sorted({k for col in columns for k in col} | set(target), key=repr)
    index = {k: i for i, k in enumerate(keys)}
    M = Matrix.from_columns([{index[k]: c for k, c in col.items()} for col in columns], len(keys))
    x = solve(M, {index[k]: c for k, c in target.items()})
    rep.add("gauge to a bialgebra derivation feasible within the cap", x is not None)
    if x is None:
        rep.data["verdict"] = "not separable"
    else:
        a = {candidates[i]: c for i, c in x.items()}
        rep.data["verdict"] = "gauge found within the cap"
        rep.data["gauge_element"] = e.pretty(a)
    return rep


def golden_example(weight: int = DEFAULT_WEIGHT) -> dict:
    """``Δ(d²x)`` and ``Δ(d²y)`` on ``E(k[x,y])`` with ``φ = x⊗y``: computed and displayed forms."""
    e = build_e(("x", "y"), {((1, 0), (0, 1)): 1}, weight)
    x, y = letter(e, "x"), letter(e, "y")
    out = {}
    for name in ("x", "y"):
        d1, d2 = letter(e, name, 1), letter(e, name, 2)
        displayed = tensor(d2, ONE)
        _acc(displayed, ((), next(iter(d2))), Fraction(1))
        for k, c in e.tcommutator(tensor(x, y), _plus(tensor(d1, ONE), tensor(ONE, d1))).items():
            _acc(displayed, k, -c)
        out[name] = {"computed": e.pretty(e.delta(d2)), "displayed": e.pretty(e.treduce(displayed))}
    return out


def _plus(s: TElem, t: TElem) -> TElem:
    out = dict(s)
    for k, c in t.items():
        _acc(out, k, c)
    return out
