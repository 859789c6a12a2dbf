import math

import pytest

from twistder import catalog
from twistder.lie.algebra import exterior_invariants
from twistder.lie.symcoalg import (
    alternation_class_map,
    graded_cohomology,
    homotopy_on_piece,
    invariant_dims,
    invariant_graded_cohomology,
    monomial_coproduct,
    sym_coalgebra,
    verify_graded_coalgebra,
)

LIE_NAMES = ("lie_ab2", "lie_heis3", "lie_sl2", "lie_nonab2")


def test_monomial_coproduct_uses_binomials():
    terms = {(b, c): k for b, c, k in monomial_coproduct((2, 1))}
    assert terms[((1, 0), (1, 1))] == 2
    assert terms[((2, 1), (0, 0))] == 1
    assert sum(terms.values()) == 2**3


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_truncated_symmetric_coalgebra_axioms(dim):
    assert verify_graded_coalgebra(sym_coalgebra(dim, 3)).ok


@pytest.mark.parametrize("n,m", [(1, 2), (2, 2), (2, 3)])
def test_differential_squares_to_zero_on_pieces(n, m):
    S = sym_coalgebra(2, 3)
    assert (S.differential(n + 1, m) @ S.differential(n, m)).is_zero()


@pytest.mark.parametrize("name", LIE_NAMES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_graded_cohomology_is_the_exterior_power(name, n):
    g = catalog.get(name)
    assert graded_cohomology(g, 3, n).dim == math.comb(g.dim, n)


@pytest.mark.parametrize("name", LIE_NAMES)
def test_cohomology_sits_in_matching_polynomial_degree(name):
    g = catalog.get(name)
    pieces = graded_cohomology(g, 3, 2).to_dict()["pieces"]
    assert pieces["2"] == math.comb(g.dim, 2)
    assert all(d == 0 for m, d in pieces.items() if m != "2")


def test_first_cohomology_is_g():
    g = catalog.get("lie_heis3")
    assert graded_cohomology(g, 3, 1).dim == g.dim


@pytest.mark.parametrize("name", LIE_NAMES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_invariant_cohomology_matches_invariant_wedges(name, n):
    g = catalog.get(name)
    assert invariant_graded_cohomology(g, 3, n).dim == exterior_invariants(g, n)[0].dim


def test_invariant_dimensions():
    assert invariant_dims(catalog.get("lie_sl2"), 3) == [1, 0, 0, 1]
    assert invariant_dims(catalog.get("lie_ab2"), 3) == [1, 2, 1, 0]


@pytest.mark.parametrize("name", LIE_NAMES)
def test_alternation_class_map(name):
    rep = alternation_class_map(catalog.get(name), 3, 2)
    assert rep.ok, str(rep)


def test_degree_above_truncation_is_rejected():
    with pytest.raises(ValueError):
        graded_cohomology(catalog.get("lie_ab2"), 2, 3)


@pytest.mark.parametrize("dim", [2, 3])
def test_alternation_homotopy_on_pieces(dim):
    assert homotopy_on_piece(dim, 2, 2) is not None
