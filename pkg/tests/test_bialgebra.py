import dataclasses
from fractions import Fraction

import pytest

from twistder import catalog
from twistder.bialgebra import (
    PreconditionError,
    Tensor,
    adjoint_invariants,
    augmentation_ideal,
    centre,
    dual_algebra,
    g_primitives,
    primitives,
    verify_bialgebra,
)
from twistder.linalg import Matrix, Subspace, intersect, unit_vector

ONE, G, X, GX = range(4)


def test_catalog_bialgebras_pass_every_axiom(any_bialgebra):
    rep = verify_bialgebra(any_bialgebra)
    assert rep.ok, str(rep)


def test_flipping_counit_of_g_breaks_multiplicativity(h4):
    broken = dataclasses.replace(h4, counit=(1, 0, 0, 0), _delta_cache={})
    rep = verify_bialgebra(broken)
    check = rep["ε multiplicative"]
    assert not check.passed
    assert check.witness == ("g", "g")


def test_printed_antipode_of_x_fails(h4):
    # S(x) = -x is inconsistent with Δ(x) = 1⊗x + x⊗g; S(x) = gx works
    printed = Matrix(4, 4, {ONE: {ONE: 1}, G: {G: 1}, X: {X: -1}, GX: {GX: -1}})
    rep = verify_bialgebra(dataclasses.replace(h4, antipode=printed, _delta_cache={}))
    assert not rep["antipode axioms"].passed
    assert verify_bialgebra(h4)["antipode axioms"].passed


def test_tensor_products_in_h4(h4):
    psi = Tensor(2, {(X, GX): 1})
    assert h4.tensor_mult(psi, psi).is_zero()
    assert h4.tensor_mult(psi, h4.unit_tensor(2)) == psi
    dg, dx = h4.delta(unit_vector(G)), h4.delta(unit_vector(X))
    assert h4.tensor_mult(dg, dx) == Tensor(2, {(G, GX): 1, (GX, ONE): 1})


def test_tensor_mult_rejects_degree_mismatch(h4):
    with pytest.raises(ValueError):
        h4.tensor_mult(Tensor.basis(X), Tensor(2, {(X, X): 1}))


def test_apply_delta_at(h4):
    assert h4.apply_delta_at(Tensor.basis(X), 1) == Tensor(2, {(ONE, X): 1, (X, G): 1})
    assert h4.apply_delta_at(Tensor.basis(ONE), 1) == h4.unit_tensor(2)
    got = h4.apply_delta_at(Tensor(2, {(X, GX): 1}), 2)
    assert got == Tensor(3, {(X, G, GX): 1, (X, GX, ONE): 1})
    with pytest.raises(IndexError):
        h4.apply_delta_at(Tensor.basis(X), 2)


def test_primitives():
    assert primitives(catalog.get("h4_sweedler")).dim == 0
    assert primitives(catalog.get("group_Z2")).dim == 0


def test_primitives_lie_in_the_augmentation_ideal(any_bialgebra):
    p = primitives(any_bialgebra)
    assert p.is_subspace_of(augmentation_ideal(any_bialgebra))


def test_g_primitives_of_h4(h4):
    space = g_primitives(h4, unit_vector(G))
    assert space.dim == 2
    assert space == Subspace(4, [unit_vector(X), {ONE: 1, G: -1}])


def test_g_primitives_with_trivial_group_like(h4):
    assert g_primitives(h4, h4.unit) == primitives(h4)


def test_g_primitives_of_z2():
    z2 = catalog.get("group_Z2")
    assert g_primitives(z2, unit_vector(1)) == Subspace(2, [{0: 1, 1: -1}])


def test_g_primitives_need_a_group_like(h4):
    with pytest.raises(PreconditionError) as info:
        g_primitives(h4, unit_vector(X))
    assert info.value.witness is not None


def test_centres():
    h4 = catalog.get("h4_sweedler")
    assert centre(h4) == Subspace(4, [unit_vector(ONE)])
    assert intersect(centre(h4), augmentation_ideal(h4)).dim == 0
    z3 = catalog.get("group_Z3")
    assert centre(z3).dim == 3


def test_adjoint_invariants_in_degree_one_are_the_centre(any_bialgebra):
    assert adjoint_invariants(any_bialgebra, 1) == centre(any_bialgebra)


def test_adjoint_invariants_contain_psi(h4):
    inv = adjoint_invariants(h4, 2)
    assert inv.contains(Tensor(2, {(X, GX): 1}).flat(4))


def test_adjoint_invariants_of_commutative_cocommutative():
    z2 = catalog.get("group_Z2")
    assert adjoint_invariants(z2, 2).dim == 4


def test_dual_of_z2_is_functions_on_two_points():
    dual = dual_algebra(catalog.get("group_Z2"))
    assert verify_bialgebra(dual).ok
    p0, p1 = unit_vector(0), unit_vector(1)
    assert dual.multiply(p0, p0) == p0 and dual.multiply(p1, p1) == p1
    assert dual.multiply(p0, p1) == {}
    assert dual.one() == {0: 1, 1: 1}


def test_double_dual_recovers_structure_constants(any_bialgebra):
    back = dual_algebra(dual_algebra(any_bialgebra))
    assert back.mult == any_bialgebra.mult
    assert back.comult == any_bialgebra.comult
    assert back.unit == any_bialgebra.unit
    assert back.counit == any_bialgebra.counit


def test_dual_of_h4_is_a_bialgebra(h4):
    assert verify_bialgebra(dual_algebra(h4)).ok


def test_malformed_structure_constants_are_rejected():
    from twistder.bialgebra import Bialgebra, FormatError

    with pytest.raises(FormatError):
        Bialgebra(1, ("1",), {(0, 5): {0: 1}}, {0: 1}, {0: {(0, 0): 1}}, (Fraction(1),))
