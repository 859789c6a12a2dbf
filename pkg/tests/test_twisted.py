import itertools
from fractions import Fraction

import pytest

from twistder import catalog
from twistder.bialgebra import PreconditionError, Tensor, adjoint_invariants, augmentation_ideal, centre, primitives
from twistder.linalg import Matrix, Subspace, intersect, unit_vector
from twistder.twisted.automorphisms import (
    TwistedAutomorphism,
    compose,
    gauge_auto,
    identity_automorphism,
    sweedler_scaling,
    sweedler_twist,
    verify_twisted_automorphism,
)
from twistder.twisted.crossed import adjoint_crossed_module, crossed_module, zero_action_double
from twistder.twisted.derivations import (
    TwistedDerivation,
    bialgebra_derivations,
    boundary,
    bracket,
    gauge_between,
    invariant_twists,
    is_separated,
    outer_quotients,
    separate,
    twisted_derivation_space,
    twisted_derivation_subspace,
    verify_twisted_derivation,
)

ONE, G, X, GX = range(4)
PSI = Tensor(2, {(X, GX): 1})
D = Matrix(4, 4, {X: {X: 1}, GX: {GX: 1}})  # g ↦ 0, x ↦ x


def scaling_derivation():
    return TwistedDerivation(D, Tensor(2))


def psi_derivation():
    return TwistedDerivation(Matrix.zeros(4, 4), PSI)


def test_h4_twisted_derivations_have_dimension_five(h4):
    basis = twisted_derivation_space(h4)
    assert len(basis) == 5
    for t in basis:
        assert verify_twisted_derivation(h4, t).ok


def test_every_basis_element_is_valid(any_bialgebra):
    for t in twisted_derivation_space(any_bialgebra):
        assert verify_twisted_derivation(any_bialgebra, t).ok


def test_zero_is_a_twisted_derivation(any_bialgebra):
    assert verify_twisted_derivation(any_bialgebra, TwistedDerivation.zero(any_bialgebra.dim)).ok


def test_z2_twisted_derivations_have_zero_derivation_part():
    z2 = catalog.get("group_Z2")
    for t in twisted_derivation_space(z2):
        assert t.d.is_zero()


def test_named_h4_elements_are_twisted_derivations(h4):
    space = twisted_derivation_subspace(h4)
    assert space.contains(scaling_derivation().to_vec(4))
    assert space.contains(psi_derivation().to_vec(4))


def test_bracket_of_scaling_with_psi(h4):
    got = bracket(h4, scaling_derivation(), psi_derivation())
    assert got.d.is_zero()
    assert got.phi == PSI * 2


def test_bracket_is_antisymmetric_and_satisfies_jacobi(any_bialgebra):
    b = any_bialgebra
    basis = twisted_derivation_space(b)
    space = twisted_derivation_subspace(b)
    for t in basis:
        assert bracket(b, t, t).is_zero()
    for t1, t2 in itertools.combinations(basis, 2):
        assert (bracket(b, t1, t2) + bracket(b, t2, t1)).is_zero()
        assert space.contains(bracket(b, t1, t2).to_vec(b.dim))
    for t1, t2, t3 in itertools.combinations(basis, 3):
        j = bracket(b, t1, bracket(b, t2, t3)) + bracket(b, t2, bracket(b, t3, t1)) + bracket(b, t3, bracket(b, t1, t2))
        assert j.is_zero()


def test_boundary_of_x(h4):
    t = boundary(h4, unit_vector(X))
    assert t.phi == Tensor(2, {(X, ONE): 1, (X, G): -1})
    assert t.d.apply(unit_vector(G)) == h4.commutator(unit_vector(X), unit_vector(G))
    assert verify_twisted_derivation(h4, t).ok


def test_boundary_of_g_minus_one(h4):
    a = {G: 1, ONE: -1}
    t = boundary(h4, a)
    expected = Tensor(2, {(G, ONE): 1, (ONE, G): 1, (G, G): -1, (ONE, ONE): -1})
    assert t.phi == expected
    assert verify_twisted_derivation(h4, t).ok


def test_boundary_needs_augmentation(h4):
    with pytest.raises(PreconditionError):
        boundary(h4, unit_vector(G))


def test_boundary_is_a_lie_homomorphism(any_bialgebra):
    b = any_bialgebra
    aug = augmentation_ideal(b).basis
    for u, v in itertools.product(aug, repeat=2):
        assert boundary(b, b.commutator(u, v)) == bracket(b, boundary(b, u), boundary(b, v))


def test_image_of_boundary_is_an_ideal(h4):
    space = twisted_derivation_space(h4)
    image = Subspace(32, [boundary(h4, a).to_vec(4) for a in augmentation_ideal(h4).basis])
    for t in space:
        for a in augmentation_ideal(h4).basis:
            assert image.contains(bracket(h4, t, boundary(h4, a)).to_vec(4))


def test_gauges(h4):
    t = scaling_derivation()
    assert gauge_between(h4, t, t) == {}
    shifted = t + boundary(h4, unit_vector(X))
    a = gauge_between(h4, t, shifted)
    assert boundary(h4, a) == boundary(h4, unit_vector(X))
    assert gauge_between(h4, scaling_derivation(), psi_derivation()) is None


def test_h4_crossed_module(h4):
    cm = crossed_module(h4)
    m = cm.module
    rep = m.verify_axioms()
    assert rep.ok, str(rep)
    assert m.pi0_dim == 2 and m.pi1.dim == 0
    assert len(m.pi0_structure_constants) == 1
    assert m.jacobiator_is_zero()


def test_z2_crossed_module_is_trivial():
    m = crossed_module(catalog.get("group_Z2")).module
    assert m.pi0_dim == 0 and m.pi1.dim == 0


def test_pi1_is_central_primitives(any_bialgebra):
    m = crossed_module(any_bialgebra).module
    assert m.pi1.dim == intersect(centre(any_bialgebra), primitives(any_bialgebra)).dim


def test_zero_action_double_has_zero_jacobiator():
    double = zero_action_double(2, 3)
    assert double.verify_axioms().ok
    assert double.jacobiator_is_zero()
    assert double.pi0_dim == 3 and double.pi1.dim == 2


@pytest.mark.parametrize("name,pi1,pi0", [("lie_ab2", 2, 4), ("lie_heis3", 1, 4), ("lie_sl2", 0, 0)])
def test_adjoint_crossed_modules(name, pi1, pi0):
    # ad: g → Der(g) has π1 = centre and π0 = outer derivations
    m = adjoint_crossed_module(catalog.get(name))
    rep = m.verify_axioms()
    assert rep.ok, str(rep)
    assert (m.pi1.dim, m.pi0_dim) == (pi1, pi0)


def test_h4_invariant_twists_and_bialgebra_derivations(h4):
    assert invariant_twists(h4) == Subspace(16, [PSI.flat(4)])
    ders = bialgebra_derivations(h4)
    assert ders.dim == 1
    assert ders.contains(scaling_derivation().to_vec(4))


def test_h4_outer_quotients(h4):
    rep = outer_quotients(h4)
    assert rep.ok, str(rep)
    assert rep.data["outer_twisted_derivations_dim"] == 2
    assert rep.data["outer_invariant_twists_dim"] == 1
    assert rep.data["outer_bialgebra_derivations_dim"] == 1
    assert rep.data["outer_twisted_derivations_brackets"]
    assert rep.data["separable"]


def test_z2_outer_quotients_vanish():
    rep = outer_quotients(catalog.get("group_Z2"))
    assert rep.data["outer_invariant_twists_dim"] == 0
    assert rep.data["outer_bialgebra_derivations_dim"] == 0


def test_invariant_twists_of_commutative_cocommutative_algebras():
    z3 = catalog.get("group_Z3")
    inv = invariant_twists(z3)
    space = twisted_derivation_subspace(z3)
    for v in inv.basis:
        assert space.contains(TwistedDerivation(Matrix.zeros(3, 3), Tensor.from_flat(v, 3, 2)).to_vec(3))


def test_every_h4_twisted_derivation_separates(h4):
    inv = adjoint_invariants(h4, 2)
    for t in twisted_derivation_space(h4):
        found = separate(h4, t)
        assert found is not None
        _, sep = found
        assert is_separated(h4, sep)
        assert inv.contains(sep.phi.flat(4))


def test_invariant_twist_is_already_separated(h4):
    a, sep = separate(h4, psi_derivation())
    assert a == {} and sep == psi_derivation()


def test_inner_derivation_separates_to_zero_class(h4):
    a, sep = separate(h4, boundary(h4, unit_vector(X)))
    m = crossed_module(h4)
    assert not m.module.pi0_coords(m.coords(sep))


# -- twisted automorphisms ----------------------------------------------------


def test_identity_automorphism(h4):
    ident = identity_automorphism(h4)
    assert verify_twisted_automorphism(h4, ident).ok
    t = TwistedAutomorphism(sweedler_scaling(2), sweedler_twist(5))
    assert compose(h4, ident, t) == t
    assert compose(h4, t, ident) == t


@pytest.mark.parametrize("a,a2", [(1, 5), (Fraction(1, 2), -3), (0, 7)])
def test_sweedler_twists_add(h4, a, a2):
    assert h4.tensor_mult(sweedler_twist(a), sweedler_twist(a2)) == sweedler_twist(a + a2)


@pytest.mark.parametrize("c,a", list(itertools.product((2, 3), (1, 5))))
def test_scaling_acts_on_twists_quadratically(h4, c, a):
    f = sweedler_scaling(c)
    assert h4.apply_tensor_power(sweedler_twist(a), f) == sweedler_twist(c * c * a)
    ta = TwistedAutomorphism(f, sweedler_twist(a))
    assert verify_twisted_automorphism(h4, ta).ok
    assert verify_twisted_automorphism(h4, compose(h4, ta, ta)).ok


def test_gauge_by_unit_is_trivial(h4):
    t = TwistedAutomorphism(sweedler_scaling(3), sweedler_twist(1))
    assert gauge_auto(h4, t, t, h4.unit).ok


def test_non_invertible_scaling_is_rejected():
    with pytest.raises(PreconditionError):
        sweedler_scaling(0)
