import itertools
import random
from fractions import Fraction

import pytest

from twistder import catalog
from twistder.bialgebra import FormatError
from twistder.lie.algebra import (
    LieAlgebra,
    exterior_invariants,
    inner_derivations,
    lie_centre,
    lie_derivations,
    outer_derivations,
    schouten,
    semidirect_outder_tw,
    verify_lie,
    verify_structure_constants,
    wedge_from_vec,
    wedge_vectors,
)
from twistder.lie.pbw import PBWEngine, cob_decomposition, pbw_normal_form, u_mult, ug_invariant_twist_check, wedge_to_u2
from twistder.lie.tdu import compare_with_gl2, tdu_structural_check
from twistder.linalg import unit_vector

E, H, F = range(3)


def lie(name):
    return catalog.get(name)


def test_catalog_lie_algebras_verify(any_lie):
    assert verify_lie(any_lie).ok


def test_inconsistent_brackets_are_rejected():
    with pytest.raises(FormatError):
        LieAlgebra(2, ("a", "b"), {(0, 1): {0: 1}, (1, 0): {0: 1}})


def test_jacobi_failure_is_reported():
    bad = LieAlgebra(3, ("a", "b", "c"), {(0, 1): {1: 1}, (1, 2): {0: 1}})
    assert not verify_lie(bad)["Jacobi identity"].passed


@pytest.mark.parametrize(
    "name,der,inner,outer",
    [("lie_sl2", 3, 3, 0), ("lie_ab2", 4, 0, 4), ("lie_heis3", 6, 2, 4)],
)
def test_derivation_dimensions(name, der, inner, outer):
    g = lie(name)
    assert lie_derivations(g).dim == der
    assert inner_derivations(g).dim == inner
    assert outer_derivations(g).dim == outer


def test_centre_is_kernel_of_ad():
    assert lie_centre(lie("lie_heis3")).contains(unit_vector(2))
    assert lie_centre(lie("lie_sl2")).dim == 0


@pytest.mark.parametrize("name,n,dim", [("lie_sl2", 2, 0), ("lie_sl2", 3, 1), ("lie_ab2", 2, 1)])
def test_exterior_invariants(name, n, dim):
    space, basis = exterior_invariants(lie(name), n)
    assert space.dim == dim
    if name == "lie_ab2":
        assert wedge_from_vec(space.basis[0], basis) == {(0, 1): 1}


def permuted(g: LieAlgebra, perm):
    """The same Lie algebra with basis element i renamed perm[i]."""
    brackets = {(perm[i], perm[j]): {perm[k]: c for k, c in v.items()} for (i, j), v in g.brackets.items()}
    names = [None] * g.dim
    for i, p in enumerate(perm):
        names[p] = g.basis_names[i]
    return LieAlgebra(g.dim, tuple(names), brackets)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exterior_invariants_do_not_depend_on_basis_order(any_lie, n):
    base = exterior_invariants(any_lie, n)[0].dim
    for perm in itertools.permutations(range(any_lie.dim)):
        assert exterior_invariants(permuted(any_lie, perm), n)[0].dim == base


def test_schouten_in_degree_one_is_the_bracket():
    g = lie("lie_sl2")
    for i, j in itertools.product(range(3), repeat=2):
        expected = {(k,): c for k, c in g.bracket(unit_vector(i), unit_vector(j)).items()}
        assert schouten(g, {(i,): 1}, {(j,): 1}) == expected


def test_schouten_on_abelian_is_zero():
    g = lie("lie_ab2")
    assert schouten(g, {(0,): 1}, {(0, 1): 1}) == {}


def brute_schouten(g, xs, ys):
    """Expand the alternating sum with generic vector wedges."""
    out = {}
    for i, x in enumerate(xs, start=1):
        for j, y in enumerate(ys, start=1):
            rest = [unit_vector(v) for v in xs[: i - 1] + xs[i:] + ys[: j - 1] + ys[j:]]
            term = wedge_vectors([g.bracket(unit_vector(x), unit_vector(y))] + rest)
            for k, c in term.items():
                out[k] = out.get(k, 0) + (-1) ** (i + j) * c
    return {k: c for k, c in out.items() if c}


def test_schouten_against_brute_force():
    g = lie("lie_sl2")
    got = schouten(g, {(E, H): 1}, {(H, F): 1})
    assert got == brute_schouten(g, (E, H), (H, F))
    assert got  # [e,f] = h survives


def test_schouten_vanishes_on_invariants(any_lie):
    space, basis = exterior_invariants(any_lie, 2)
    for u, v in itertools.product(space.basis, repeat=2):
        assert schouten(any_lie, wedge_from_vec(u, basis), wedge_from_vec(v, basis)) == {}


def test_semidirect_product_for_ab2():
    sd = semidirect_outder_tw(lie("lie_ab2"))
    assert sd.dim == 5
    assert verify_structure_constants(sd.dim, sd.bracket).ok
    assert compare_with_gl2(lie("lie_ab2")).ok


def test_semidirect_product_for_sl2_is_zero():
    assert semidirect_outder_tw(lie("lie_sl2")).dim == 0


def test_gl2_comparison_refuses_other_algebras():
    assert not compare_with_gl2(lie("lie_sl2")).ok


@pytest.mark.parametrize("name", ["lie_ab2", "lie_nonab2", "lie_sl2", "lie_heis3"])
def test_structural_check(name):
    rep = tdu_structural_check(lie(name))
    assert rep.ok, str(rep)


def test_pbw_rewrites():
    assert pbw_normal_form(lie("lie_sl2"), (F, E)) == {(E, F): 1, (H,): -1}
    assert pbw_normal_form(lie("lie_ab2"), (1, 0, 1, 0)) == {(0, 0, 1, 1): 1}
    assert pbw_normal_form(lie("lie_heis3"), (1, 0)) == {(0, 1): 1, (2,): -1}


def test_commutator_of_e_and_f_is_h():
    g = lie("lie_sl2")
    e, f = {(E,): Fraction(1)}, {(F,): Fraction(1)}
    assert PBWEngine(g).commutator(e, f) == {(H,): 1}


@pytest.mark.parametrize("name", ["lie_sl2", "lie_heis3", "lie_nonab2"])
def test_pbw_product_is_associative(name):
    g = lie(name)
    rng = random.Random(name)
    words = [(), *((i,) for i in range(g.dim))]
    words += [tuple(rng.randrange(g.dim) for _ in range(rng.randint(2, 3))) for _ in range(6)]
    for a, b, c in itertools.product(words[:6], repeat=3):
        u, v, w = ({x: Fraction(1)} for x in (a, b, c))
        assert u_mult(g, u_mult(g, u, v), w) == u_mult(g, u, u_mult(g, v, w))


def test_invariant_twists_of_ug():
    assert ug_invariant_twist_check(lie("lie_ab2"), {(0, 1): 1, (1, 0): -1}).ok
    rep = ug_invariant_twist_check(lie("lie_sl2"), {(E, F): 1, (F, E): -1})
    assert not rep["[φ, Δ(x)] = 0 for x in g"].passed
    assert rep["cocycle"].passed


def test_exterior_invariants_embed_as_invariant_twists(any_lie):
    space, basis = exterior_invariants(any_lie, 2)
    for v in space.basis:
        phi = {(a[0], b[0]): c for (a, b), c in wedge_to_u2(wedge_from_vec(v, basis)).items()}
        assert ug_invariant_twist_check(any_lie, phi).ok


def test_cob_decomposition_of_a_symmetric_tensor():
    # a⊗1 + 1⊗a - Δ(a) at a = x² is -2x⊗x, and Alt(x⊗x) = 0
    g = lie("lie_ab2")
    a = cob_decomposition(g, {((0,), (0,)): Fraction(1)}, 2)
    assert a is not None
    assert a.get((0, 0)) == Fraction(-1, 2)
