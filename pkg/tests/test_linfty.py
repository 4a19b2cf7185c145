# tests/test_linfty.py

from itertools import combinations
from math import comb

import pytest

from algebra.graded import GradedSpace
from linfty.ce import CEComplex, ce_complex, check_linfty, shifted_space
from linfty.structure import LInftyStructure, from_associative, from_dgla
from hochschild.associative import AssociativeAlgebra
from linalg.oracle import dense_rank
from linalg.sparse import SparseMatrix
from utils.exceptions import GuardRailError, JacobiError, SquareZeroError
from utils.permutations import permutation_sign

SL2 = GradedSpace.of([("e", 0), ("f", 0), ("h", 0)])


def _sl2_brackets(he=2):
    return {(0, 1): {2: 1}, (2, 0): {0: he}, (2, 1): {1: -2}}


@pytest.fixture
def sl2() -> LInftyStructure:
    return from_dgla(SL2, None, _sl2_brackets())


@pytest.fixture
def nonabelian() -> LInftyStructure:
    return from_dgla(GradedSpace.of([("x", 0), ("y", 0)]), None, {(0, 1): {1: 1}})


def _mutation_space() -> GradedSpace:
    return GradedSpace.of([("x", 0), ("y", 0), ("z", 0), ("w", -1), ("u", 0)])


# --- structures ---

def test_bracket_antisymmetry(sl2):
    assert sl2.bracket((1, 0)) == {2: -1}
    assert sl2.bracket((0, 0)) == {}
    assert sl2.max_arity == 2
    assert not sl2.is_abelian


def test_jacobi_failure_rejected_by_dgla_constructor():
    with pytest.raises(JacobiError) as e:
        from_dgla(SL2, None, _sl2_brackets(he=3))
    assert e.value.witness is not None


def test_perturbed_sl2_rejected():
    """[e,f] = h + e leaves 2e in the Jacobi sum of (e, f, h)."""
    with pytest.raises(JacobiError) as e:
        from_dgla(SL2, None, {(0, 1): {2: 1, 0: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}})
    assert e.value.witness is not None


def test_inconsistent_antisymmetry_rejected():
    with pytest.raises(JacobiError):
        LInftyStructure(SL2, None, {2: {(0, 1): {2: 1}, (1, 0): {2: 1}}})


def test_bracket_degree_checked():
    space = GradedSpace.of([("a", 0), ("b", 1)])
    with pytest.raises(JacobiError):
        LInftyStructure(space, None, {2: {(0, 0): {}, (0, 1): {0: 1}}})


def test_differential_must_square_to_zero():
    space = GradedSpace.of([("a", 0), ("b", 1), ("c", 2)])
    with pytest.raises(JacobiError):
        LInftyStructure(space, {0: {1: 1}, 1: {2: 1}})


def test_commutator_algebra_of_matrices(m2):
    g = from_associative(m2)
    assert g.bracket((1, 2)) == {0: 1, 3: -1}
    assert from_associative(AssociativeAlgebra.truncated_polynomial(3)).is_abelian


# --- Chevalley-Eilenberg complex ---

def test_shifted_letters_lower_degree(sl2):
    letters = shifted_space(sl2)
    assert [(g.name, g.degree) for g in letters.generators] == [("se", -1), ("sf", -1), ("sh", -1)]


def test_sl2_homology(sl2):
    """H of sl2: one class in word length 0 and one in word length 3."""
    ce = ce_complex(sl2, 3)
    dims = ce.homology()
    assert dims.dims == {0: 1, -1: 0, -2: 0, -3: 1}
    assert dims.truncated == frozenset()


def test_nonabelian_two_dimensional_homology(nonabelian):
    dims = ce_complex(nonabelian, 2).homology()
    assert dims.dims == {0: 1, -1: 1, -2: 0}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_abelian_homology_is_exterior_algebra(n):
    g = LInftyStructure(GradedSpace.of([(f"a{i}", 0) for i in range(n)]))
    dims = ce_complex(g, n).homology()
    assert dims.dims == {-k: comb(n, k) for k in range(n + 1)}


def test_truncation_flags_long_words():
    """With even letters every length exists, so lengths near the cutoff are flagged."""
    g = LInftyStructure(GradedSpace.of([("a", 1), ("b", 1)]))
    ce = CEComplex(g, 3)
    assert ce.truncated_degrees == frozenset({0})


def test_check_linfty_catches_broken_higher_relation():
    """dw = u with l_3(x, y, z) = w violates the arity-three relation."""
    space = _mutation_space()
    broken = LInftyStructure(space, {3: {4: 1}}, {3: {(0, 1, 2): {3: 1}}})
    witness = check_linfty(broken, 4)
    assert witness is not None
    with pytest.raises(SquareZeroError):
        CEComplex(broken, 4)

    repaired = LInftyStructure(space, None, {3: {(0, 1, 2): {3: 1}}})
    assert check_linfty(repaired, 4) is None


def test_check_linfty_catches_perturbed_jacobi():
    perturbed = LInftyStructure(SL2, None, {2: _sl2_brackets(he=3)})
    assert check_linfty(perturbed, 3) is not None


def test_image_by_arity(sl2):
    ce = CEComplex(sl2, 2)
    word = ce.basis[-2][0]
    assert ce.image(word, arity=1).is_zero()
    assert ce.image(word) == ce.image(word, arity=2)


def test_ce_guard_rail(sl2):
    with pytest.raises(GuardRailError):
        CEComplex(sl2, 3, max_basis=4)


def _classical_homology(g: LInftyStructure) -> dict:
    """Lie algebra homology of an ungraded g from the exterior-algebra boundary."""
    n = len(g.space)
    ranks = {0: 0, 1: 0}
    for k in range(2, n + 1):
        target = {w: i for i, w in enumerate(combinations(range(n), k - 1))}
        entries = {}
        for col, word in enumerate(combinations(range(n), k)):
            for i, j in combinations(range(k), 2):
                rest = [x for p, x in enumerate(word) if p not in (i, j)]
                for z, c in g.bracket((word[i], word[j])).items():
                    if z in rest:
                        continue
                    row = target[tuple(sorted([z] + rest))]
                    sign = (-1) ** (i + j) * permutation_sign([z] + rest)
                    entries[(row, col)] = entries.get((row, col), 0) + sign * c
        ranks[k] = dense_rank(SparseMatrix(len(target), comb(n, k), entries))
    return {-k: comb(n, k) - ranks[k] - ranks.get(k + 1, 0) for k in range(n + 1)}


def test_matrix_commutator_homology_matches_classical(m2):
    """gl2 = sl2 + center, so its homology is that of sl2 tensored with an exterior class."""
    g = from_associative(m2)
    dims = ce_complex(g, 4).homology().dims
    assert dims == _classical_homology(g)
    assert dims == {0: 1, -1: 1, -2: 0, -3: 1, -4: 1}


def test_sl2_matches_classical(sl2):
    assert ce_complex(sl2, 3).homology().dims == _classical_homology(sl2)


@pytest.mark.parametrize("cutoff", [3, 4, 5])
def test_short_words_stable_under_cutoff_growth(sl2, cutoff):
    """Words shorter than the cutoff keep their basis position and their image when the cutoff grows."""
    higher = LInftyStructure(_mutation_space(), None, {3: {(0, 1, 2): {3: 1}}})
    for g in (sl2, higher):
        small, large = CEComplex(g, cutoff), CEComplex(g, cutoff + 1)
        for degree, words in small.basis.items():
            short = [m for m in words if m.length <= cutoff - 1]
            assert short == [m for m in large.basis.get(degree, []) if m.length <= cutoff - 1]
            for m in short:
                assert small.image(m) == large.image(m)
