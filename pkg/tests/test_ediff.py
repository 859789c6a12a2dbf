from fractions import Fraction

import pytest

from twistder.bialgebra import PreconditionError
from twistder.ediff import (
    ONE,
    build_e,
    e_coproduct,
    e_derivation,
    golden_example,
    letter,
    separability,
    tensor,
    verify_e_bialgebra,
    verify_twisted_derivation_of_e,
)

X, Y = (1, 0), (0, 1)
PHI = {(X, Y): 1}


@pytest.fixture(scope="module")
def e3():
    return build_e(("x", "y"), PHI, 3)


@pytest.fixture(scope="module")
def e4():
    return build_e(("x", "y"), PHI, 4)


def plus(*parts):
    out = {}
    for p in parts:
        for k, c in p.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def commutator(e, u, v):
    return plus(e.mult(u, v), {k: -c for k, c in e.mult(v, u).items()})


def test_first_order_relation_holds(e3):
    x, y = letter(e3, "x"), letter(e3, "y")
    dx, dy = letter(e3, "x", 1), letter(e3, "y", 1)
    assert plus(commutator(e3, x, dy), commutator(e3, dx, y)) == {}
    assert commutator(e3, x, y) == {}
    assert commutator(e3, x, dx) != {}


def test_relations_do_not_depend_on_phi():
    twisted, plain = build_e(2, PHI, 4), build_e(2, {}, 4)
    assert twisted.dims() == plain.dims() == [1, 2, 5, 13, 34]
    assert twisted.basis == plain.basis


def test_derivation_raises_order(e3):
    assert e_derivation(e3, letter(e3, "x")) == letter(e3, "x", 1)


def test_derivation_of_first_relation_lies_in_the_ideal(e4):
    x, y = letter(e4, "x"), letter(e4, "y")
    dx, dy = letter(e4, "x", 1), letter(e4, "y", 1)
    r1 = plus(commutator(e4, x, dy), commutator(e4, dx, y))
    assert e4.derivation(r1) == {}
    # the image is the second relation, so [d(x), d(y)] is tied to the order-two letters
    d2x, d2y = letter(e4, "x", 2), letter(e4, "y", 2)
    r2 = plus(commutator(e4, x, d2y), {k: 2 * c for k, c in commutator(e4, dx, dy).items()}, commutator(e4, d2x, y))
    assert r2 == {}
    assert commutator(e4, dx, dy) != {}


def test_derivation_of_a_product_is_leibniz(e3):
    x, y = letter(e3, "x"), letter(e3, "y")
    dx, dy = letter(e3, "x", 1), letter(e3, "y", 1)
    assert e3.derivation(e3.mult(x, y)) == e3.reduce(plus(e3.mult(dx, y), e3.mult(x, dy)))


def test_derivation_refuses_to_leave_the_window(e3):
    with pytest.raises(ValueError):
        e_derivation(e3, letter(e3, "x", 2))


def test_coproduct_of_generators(e4):
    x, dx = letter(e4, "x"), letter(e4, "x", 1)
    assert e_coproduct(e4, x) == plus(tensor(x, ONE), tensor(ONE, x))
    assert e_coproduct(e4, dx) == plus(tensor(dx, ONE), tensor(ONE, dx))


def test_displayed_second_order_coproducts(e4):
    for name, forms in golden_example(4).items():
        assert forms["computed"] == forms["displayed"], name


def test_second_order_coproduct_has_a_correction(e4):
    d2x = letter(e4, "x", 2)
    primitive = plus(tensor(d2x, ONE), tensor(ONE, d2x))
    assert e_coproduct(e4, d2x) != primitive


@pytest.mark.parametrize("weight", [3, 4])
def test_bialgebra_checks(weight):
    rep = verify_e_bialgebra(build_e(("x", "y"), PHI, weight))
    assert rep.ok, str(rep)


def test_twisted_derivation_and_witness(e4):
    rep = verify_twisted_derivation_of_e(e4)
    assert rep.ok, str(rep)
    assert rep.data["non_separated_witness"] == "d(x)"


def test_not_separable_at_the_cap(e4):
    rep = separability(e4)
    assert rep.data["verdict"] == "not separable"


def test_zero_twist_gives_a_bialgebra_derivation():
    e = build_e(("x", "y"), {}, 4)
    rep = verify_twisted_derivation_of_e(e)
    assert rep.ok
    assert rep.data["non_separated_witness"] is None
    assert separability(e)["gauge to a bialgebra derivation feasible within the cap"].passed


@pytest.mark.parametrize("phi", [{(X, X): 1}, {(X, Y): 1, (Y, X): 1}])
def test_coboundary_twists_can_be_gauged_away(phi):
    # x⊗x and x⊗y + y⊗x are the boundaries of -x²/2 and -xy
    e = build_e(("x", "y"), phi, 4)
    assert verify_twisted_derivation_of_e(e).ok
    rep = separability(e)
    assert rep.ok
    assert "gauge_element" in rep.data


def test_phi_must_be_a_cocycle():
    with pytest.raises(PreconditionError):
        build_e(("x", "y"), {(X, (0, 2)): 1}, 3)


def test_phi_must_be_normalised():
    with pytest.raises(PreconditionError):
        build_e(("x", "y"), {((0, 0), X): 1}, 3)


def test_generator_count_shorthand():
    e = build_e(1, {}, 3)
    assert e.names == ("x1",)
    assert e.dims() == [1, 1, 2, 4]
