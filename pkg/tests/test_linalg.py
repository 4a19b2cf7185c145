# tests/test_linalg.py

from fractions import Fraction

import pytest

from linalg.complex import ChainComplex, induced_map_on_homology, homology_dims, verify_square_zero
from linalg.oracle import dense_homology_dims, dense_rank
from linalg.sparse import Echelon, SparseMatrix, invert, nullspace, rank, solve
from utils.exceptions import SquareZeroError

MATRICES = [
    [[1, 2, 3], [4, 5, 6], [7, 8, 10]],
    [[1, 2, 3], [2, 4, 6], [0, 0, 0]],
    [[Fraction(1, 2), 1], [1, 2]],
    [[0, 0], [0, 0]],
    [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [-1, 0, 0, 1]],
    [[3, 0, Fraction(-2, 3)], [0, 0, 0], [6, 1, 5]],
]


def _complex(d0, d1) -> ChainComplex:
    return ChainComplex(
        {0: ["a"], 1: ["b", "c"], 2: ["e"]},
        {0: SparseMatrix.from_dense(d0), 1: SparseMatrix.from_dense(d1)},
    )


# --- sparse matrices ---

@pytest.mark.parametrize("dense", MATRICES)
def test_rank_matches_dense_oracle(dense):
    """Sparse fraction-free rank agrees with sympy in both pivot orders."""
    m = SparseMatrix.from_dense(dense)
    expected = dense_rank(m)
    assert rank(m) == expected
    assert rank(m, pivot_order="reverse") == expected


def test_rank_known_values():
    assert rank(SparseMatrix.from_dense(MATRICES[0])) == 3
    assert rank(SparseMatrix.from_dense(MATRICES[1])) == 1
    assert rank(SparseMatrix.from_dense(MATRICES[4])) == 3
    assert rank(SparseMatrix.zeros(0, 5)) == 0


def test_rank_rejects_unknown_pivot_order():
    with pytest.raises(ValueError):
        rank(SparseMatrix.identity(2), pivot_order="sideways")


def test_matrix_product_and_transpose():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, 0], [3, 1]])
    assert (a @ b).to_dense() == [[7, 2], [3, 1]]
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
    assert (a - a).is_zero()


def test_nullspace_and_solve():
    m = SparseMatrix.from_dense([[1, 2]])
    kernel = nullspace(m)
    assert kernel == [{1: Fraction(1), 0: Fraction(-2)}]
    assert m.apply(kernel[0]) == {}

    coords = solve([{0: 1, 1: 1}, {1: 1}], {0: 2, 1: 5}, 2)
    assert coords == [Fraction(2), Fraction(3)]
    assert solve([{0: 1}], {1: 1}, 2) is None


def test_invert_exact_and_singular():
    assert invert([[2, 0], [0, Fraction(1, 3)]]) == [[Fraction(1, 2), 0], [0, 3]]
    with pytest.raises(ValueError):
        invert([[1, 2], [2, 4]])


@pytest.mark.parametrize("dense", [
    [[1, 2, 3], [0, 1, 4], [5, 6, 0]],
    [[Fraction(1, 2), 0, 1], [1, Fraction(-1, 3), 0], [0, 2, 7]],
])
def test_invert_round_trips(dense):
    inverse = SparseMatrix.from_dense(invert(dense))
    assert (SparseMatrix.from_dense(dense) @ inverse).to_dense() == SparseMatrix.identity(3).to_dense()
    assert all(isinstance(v, Fraction) for row in invert(dense) for v in row)


def test_kernel_dimension_matches_rank():
    m = SparseMatrix.from_dense([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, Fraction(1, 2)]])
    kernel = nullspace(m)
    assert len(kernel) == m.cols - dense_rank(m)
    assert all(m.apply(v) == {} for v in kernel)
    assert nullspace(SparseMatrix.zeros(0, 2)) == [{0: 1}, {1: 1}]


def test_echelon_tracks_span():
    echelon = Echelon()
    assert echelon.add({0: 1, 1: 1})
    assert not echelon.add({0: 2, 1: 2})
    assert echelon.contains({0: -1, 1: -1})
    assert len(echelon) == 1


# --- complexes ---

def test_square_zero_witness_points_at_first_failure():
    """A differential squaring to 2 is caught with the offending basis vector."""
    with pytest.raises(SquareZeroError) as e:
        _complex([[1], [1]], [[1, 1]])
    witness = e.value.witness
    assert (witness.degree, witness.basis_index, witness.label) == (0, 0, "a")
    assert witness.image == {0: Fraction(2)}


def test_homology_dims_and_oracle():
    c = _complex([[1], [0]], [[0, 0]])
    dims = homology_dims(c)
    assert dims.dims == {0: 0, 1: 1, 2: 1}
    assert dims.total == 2
    assert dense_homology_dims(c).dims == dims.dims
    assert verify_square_zero(c) is None


def test_acyclic_complex():
    c = _complex([[1], [1]], [[1, -1]])
    assert homology_dims(c).total == 0


def test_truncation_flags_follow_completeness():
    c = ChainComplex({-2: ["x"], -1: ["y"], 0: ["z"]}, complete_below=False)
    dims = homology_dims(c)
    assert dims.truncated == frozenset({-2})
    assert dims.exact() == {-1: 1, 0: 1}
    assert dims.negated().dims == {2: 1, 1: 1, 0: 1}


def test_permuting_a_basis_keeps_homology():
    c = ChainComplex(
        {0: ["a", "b"], 1: ["c", "d", "e"]},
        {0: SparseMatrix.from_dense([[1, 0], [1, 0], [0, 0]])},
    )
    permuted = c.permuted(1, [2, 0, 1])
    assert homology_dims(permuted).dims == homology_dims(c).dims
    assert permuted.basis(1) == ("d", "e", "c")


def test_shifted_moves_degrees():
    c = _complex([[1], [0]], [[0, 0]])
    assert list(c.shifted(3).degrees) == [3, 4, 5]


def test_contiguous_degrees_required():
    with pytest.raises(ValueError):
        ChainComplex({0: ["a"], 2: ["b"]})


def test_induced_map_detects_killed_class():
    """Identity induces rank one on H^1; projecting onto a boundary induces zero."""
    d0 = SparseMatrix.from_dense([[1], [0]])
    d1 = SparseMatrix.from_dense([[0, 0]])
    identity = induced_map_on_homology(SparseMatrix.identity(2), d1, d0, d1, d0)
    assert (identity.source_dim, identity.target_dim, identity.rank) == (1, 1, 1)

    projection = SparseMatrix.from_dense([[1, 0], [0, 0]])
    killed = induced_map_on_homology(projection, d1, d0, d1, d0)
    assert killed.rank == 0
