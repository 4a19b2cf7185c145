# tests/test_operad.py

from itertools import permutations
from math import factorial

import pytest

from linalg.complex import ChainComplex, verify_square_zero
from linalg.oracle import dense_homology_dims
from linalg.sparse import SparseMatrix
from operad.chains import TreeChain, insertion
from operad.l_complex import L_homology, action_matrix, build_L_complex, l_basis, shifted_component
from operad.strata import incidence, stratum_dim, strata
from trees.notation import parse_tree
from trees.operations import enumerate_trees
from trees.tree import Tree
from utils.exceptions import InputValidationError, InvalidTreeError


# --- L(s) ---

@pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
def test_L_complex_squares_to_zero(s):
    assert verify_square_zero(build_L_complex(s)) is None


def test_L_dims_for_four_leaves():
    c = build_L_complex(4)
    assert {d: c.dim(d) for d in c.degrees} == {-2: 1, -1: 10, 0: 15}


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_L_homology_concentrated_in_top_degree(s):
    """Sparse engine and dense oracle agree on a single class block of size (s-1)!."""
    dims = L_homology(s)
    assert dims.nonzero() == {0: factorial(s - 1)}
    assert dense_homology_dims(build_L_complex(s)).dims == dims.dims


def test_flipped_splitting_sign_is_caught():
    """Negating one entry of the differential breaks d^2 = 0 with a witness."""
    c = build_L_complex(4)
    d = c.differential(-1)
    key = min(d.entries)
    entries = dict(d.entries)
    entries[key] = -entries[key]
    broken = ChainComplex(
        {deg: c.basis(deg) for deg in c.degrees},
        {-2: c.differential(-2), -1: SparseMatrix(d.rows, d.cols, entries)},
        verify=False,
    )
    witness = verify_square_zero(broken)
    assert witness is not None
    assert witness.degree == -2


def test_arity_below_two_rejected():
    with pytest.raises(InputValidationError):
        build_L_complex(1)


# --- symmetric group action ---

def _action_cases():
    for s in (2, 3, 4):
        for permutation in permutations(range(1, s + 1)):
            yield s, list(permutation)
    for permutation in ([2, 1, 3, 4, 5], [1, 3, 2, 4, 5], [1, 2, 4, 3, 5], [1, 2, 3, 5, 4], [2, 3, 4, 5, 1], [5, 4, 3, 2, 1]):
        yield 5, permutation


@pytest.mark.parametrize("s, permutation", list(_action_cases()))
@pytest.mark.parametrize("twist", [0, 1])
def test_action_commutes_with_differential(s, permutation, twist):
    c = build_L_complex(s)
    for d in c.degrees:
        if d + 1 not in c.degrees:
            continue
        left = action_matrix(s, permutation, d + 1, twist) @ c.differential(d)
        right = c.differential(d) @ action_matrix(s, permutation, d, twist)
        assert left == right


def test_action_of_identity_and_involution():
    for d in l_basis(4):
        n = len(l_basis(4)[d])
        assert action_matrix(4, [1, 2, 3, 4], d) == SparseMatrix.identity(n)
        swap = action_matrix(4, [2, 1, 3, 4], d)
        assert swap @ swap == SparseMatrix.identity(n)


def test_action_twist_flips_odd_permutations():
    plain = action_matrix(3, [2, 1, 3], -1)
    twisted = action_matrix(3, [2, 1, 3], -1, twist_power=1)
    assert twisted == plain.scale(-1)


def test_action_rejects_non_permutation():
    with pytest.raises(InputValidationError):
        action_matrix(3, [1, 1, 2], 0)


# --- shifted components ---

def test_shift_conventions():
    section = shifted_component(3, 2)
    assert (section.shift, section.twist_power) == (-4, 2)
    assert list(section.complex.degrees) == [-5, -4]

    proposition = shifted_component(3, 2, convention="proposition")
    assert (proposition.shift, proposition.twist_power) == (3, 0)
    assert list(proposition.complex.degrees) == [2, 3]


def test_shifted_action_reads_shifted_degrees():
    component = shifted_component(3, 1)
    assert component.action_matrix([2, 1, 3], -1 + component.shift) == action_matrix(3, [2, 1, 3], -1, 1)


def test_shift_rejects_bad_input():
    with pytest.raises(InputValidationError):
        shifted_component(3, 2, convention="other")
    with pytest.raises(InputValidationError):
        shifted_component(3, 0)


# --- tree chains and insertion ---

@pytest.mark.parametrize("outer", ["(a b s)", "((a s) b)", "((a b) s)"])
@pytest.mark.parametrize("inner", ["(c d e)", "((c d) e)"])
def test_insertion_satisfies_leibniz_rule(outer, inner):
    """d(x o_s y) = dx o_s y + (-1)^k1 x o_s dy."""
    x = TreeChain.basis(parse_tree(outer))
    y = TreeChain.basis(parse_tree(inner))
    sign = -1 if x.edges % 2 else 1
    left = insertion(x, "s", y).differential()
    right = insertion(x.differential(), "s", y) + insertion(x, "s", y.differential()).scale(sign)
    assert left == right


def _all_trees(leaves):
    return [t for k in range(len(leaves) - 1) for t in enumerate_trees(leaves, k)]


@pytest.mark.parametrize("outer_size, inner_size", [(p, q) for p in (2, 3, 4) for q in (2, 3, 4) if p + q <= 6])
def test_insertion_leibniz_rule_on_all_small_trees(outer_size, inner_size):
    """Every basis pair whose composite has at most five leaves."""
    outer = ["s"] + list("abc")[: outer_size - 1]
    inner = list("defg")[:inner_size]
    for t1 in _all_trees(outer):
        x = TreeChain.basis(t1)
        sign = -1 if x.edges % 2 else 1
        for t2 in _all_trees(inner):
            y = TreeChain.basis(t2)
            left = insertion(x, "s", y).differential()
            right = insertion(x.differential(), "s", y) + insertion(x, "s", y.differential()).scale(sign)
            assert left == right


def test_insertion_counts_grafting_edge():
    x = TreeChain.basis(parse_tree("((a s) b)"))
    y = TreeChain.basis(parse_tree("(c d)"))
    product = insertion(x, "s", y)
    assert product.edges == 2
    assert len(product.terms) == 1


def test_chain_differential_squares_to_zero():
    chain = TreeChain.basis(Tree.star("abcde"))
    assert chain.differential().differential().is_zero()


def test_chains_reject_mixed_terms():
    with pytest.raises(InvalidTreeError):
        TreeChain(("a", "b", "c"), 0, {parse_tree("((a b) c)"): 1})


# --- Fulton-MacPherson strata ---

@pytest.mark.parametrize("n", [1, 2, 3])
def test_stratum_dimension_drops_by_codimension(n):
    for st in strata("abcd", n):
        assert st.codim == st.tree.internal_edges
        assert st.dim == 4 * n - n - 1 - st.codim


def test_strata_table_size():
    assert len(strata("abcd", 2)) == 1 + 10 + 15


def test_open_stratum_dimension():
    assert stratum_dim(Tree.star("abc"), 2) == 3


def test_degenerate_tree_has_no_stratum():
    with pytest.raises(InvalidTreeError):
        stratum_dim(Tree.degenerate("a"), 2)


@pytest.mark.parametrize("leaves", ["abc", "abcd", "abcde"])
def test_incidence_is_single_edge_splitting(leaves):
    """Strata are incident exactly when one tree adds one compatible cluster to the other."""
    trees = [t for k in range(len(leaves) - 1) for t in enumerate_trees(leaves, k)]
    for t in trees:
        for t2 in trees:
            expected = set(t.clusters) < set(t2.clusters) and t2.internal_edges == t.internal_edges + 1
            assert incidence(t, t2) == expected


def test_incidence_needs_same_leaves():
    with pytest.raises(InputValidationError):
        incidence(Tree.star("abc"), Tree.star("abd"))
