from fractions import Fraction

import pytest

from twistder import catalog
from twistder.bialgebra import centre, primitives
from twistder.cohochschild import differential
from twistder.linalg import (
    Matrix,
    Subspace,
    image_basis,
    intersect,
    kernel_basis,
    quotient,
    rref,
    solve,
    unit_vector,
)


def test_kernel_of_identity_is_zero():
    assert kernel_basis(Matrix.identity(2)).dim == 0


def test_kernel_of_row_of_ones():
    k = kernel_basis(Matrix.from_dense([[1, 1]]))
    assert k.dim == 1
    assert k.contains({0: 1, 1: -1})


def test_h4_first_differential_kernel_is_zero():
    # Prim(H4) = 0 and ∂(1) = 1⊗1 - 1⊗1 + 1⊗1 = 1⊗1, so nothing survives
    h4 = catalog.get("h4_sweedler")
    d1 = differential(h4, 1)
    assert kernel_basis(d1).dim == 0
    assert d1.apply(unit_vector(0)) == {0: 1}


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 2, 3], [2, 4, 6], [0, 1, 1]],
        [[0, 0], [0, 0]],
        [[Fraction(1, 3), -1, 0, 2], [1, 0, 5, Fraction(-7, 2)]],
    ],
)
def test_rank_nullity_and_kernel_exactness(rows):
    m = Matrix.from_dense(rows)
    k = kernel_basis(m)
    assert all(not m.apply(v) for v in k.basis)
    assert k.dim + m.rank() == m.cols


def test_echelon_is_canonical():
    a = Subspace(3, [{0: 2, 1: 2}, {1: 1, 2: 1}])
    b = Subspace(3, [{0: 1, 2: -1}, {0: 3, 1: 3}])
    assert a == b
    assert a.basis == b.basis
    pivots, rows = rref([{0: 2, 1: 2}, {1: 1, 2: 1}])
    assert pivots == (0, 1)
    assert all(row[p] == 1 for p, row in zip(pivots, rows))


def test_solve_identity_and_infeasible():
    b = {0: Fraction(3), 2: Fraction(-1, 2)}
    assert solve(Matrix.identity(3), b) == b
    assert solve(Matrix.zeros(2, 2), {0: 1}) is None


def test_solve_returns_a_solution():
    m = Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    x = solve(m, {0: 2, 1: 3})
    assert m.apply(x) == {0: 2, 1: 3}


def test_quotient_of_coordinate_line():
    sub = Subspace(3, [unit_vector(0)])
    complement, project = quotient(3, sub)
    assert complement == [unit_vector(1), unit_vector(2)]
    assert project @ project == project
    assert not project.apply(unit_vector(0))


def test_quotient_by_everything():
    complement, project = quotient(2, Subspace.full(2))
    assert complement == []
    assert project.is_zero()


def test_projection_kernel_is_exactly_the_subspace():
    sub = Subspace(4, [{0: 1, 1: 1}, {2: 1, 3: -2}])
    _, project = quotient(4, sub)
    assert kernel_basis(project) == sub


def test_intersections():
    e1, e2 = Subspace(2, [unit_vector(0)]), Subspace(2, [unit_vector(1)])
    assert intersect(e1, e2).dim == 0
    a = Subspace(3, [{0: 1, 1: 1}, {2: 1}])
    assert intersect(a, a) == a
    b = Subspace(3, [{0: 1}, {1: 1}])
    assert a.dim + b.dim == (a + b).dim + intersect(a, b).dim


def test_centre_meets_primitives_trivially_in_h4():
    h4 = catalog.get("h4_sweedler")
    assert intersect(centre(h4), primitives(h4)).dim == 0


def test_image_and_kernel_dimensions_agree():
    m = Matrix.from_dense([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
    assert image_basis(m).dim == m.rank() == 2


def test_matrix_json_is_sparse():
    m = Matrix.from_dense([[0, Fraction(1, 2)], [0, 0]])
    assert m.to_json() == {"rows": 2, "cols": 2, "entries": [[0, 1, "1/2"]]}
