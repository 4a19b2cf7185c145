# tests/test_trace.py

from fractions import Fraction

import pytest

from hochschild.trace import TraceMaps, antisymmetrize, certify_chain_map, induced_homology_map
from utils.exceptions import CertificateError, GuardRailError, InputValidationError


def test_antisymmetrize_two_letters():
    assert antisymmetrize([{0: 1}, {1: 1}]) == {(0, 1): 1, (1, 0): -1}
    assert antisymmetrize([{0: 1}, {0: 1}]) == {}


def test_epsilon_shapes(m2):
    maps = TraceMaps(m2, 3, "standard")
    assert maps.epsilon(2).shape == (16, 6)
    assert maps.ce_differential(2).shape == (4, 6)
    assert maps.boundary(1).shape == (4, 16)


def test_matrix_algebra_standard_variant():
    """Degree two certifies with ratio 2; degree three fails with a witness."""
    from hochschild.associative import AssociativeAlgebra

    certificate = certify_chain_map(AssociativeAlgebra.from_matrices(2), 3, "standard", "M2")
    first, second = certificate.verdicts
    assert (first.k, first.status, first.ratio) == (2, "proportional", Fraction(2))
    assert (second.k, second.status) == (3, "failed")
    assert second.ratio is None
    assert second.witness is not None
    assert "^" in second.witness.element
    assert not certificate.success
    assert certificate.failing_degree == 3
    assert certificate.normalization == {}


def test_matrix_algebra_cyclic_variant(m2):
    certificate = certify_chain_map(m2, 3, "cyclic-quotient", "M2")
    assert certificate.success
    last = certificate.verdicts[-1]
    assert (last.k, last.status, last.ratio) == (3, "proportional", Fraction(3, 2))
    assert certificate.normalization[1] == 1
    assert certificate.normalization[3] == certificate.normalization[2] / Fraction(3, 2)


def test_certificate_is_deterministic(m2):
    first = certify_chain_map(m2, 3, "standard", "M2").render()
    second = certify_chain_map(m2, 3, "standard", "M2").render()
    assert first == second
    assert "k=2: proportional, ratio 2" in first
    assert "k=3: FAILED" in first
    assert first.splitlines()[-1] == "status: failed at degree 3"


def test_commutative_algebra_is_vacuous(dual_numbers):
    certificate = certify_chain_map(dual_numbers, 3)
    assert [v.status for v in certificate.verdicts] == ["vacuous", "vacuous"]
    assert certificate.normalization == {1: 1, 2: 1, 3: 1}


def test_certification_needs_degree_two(m2):
    with pytest.raises(InputValidationError):
        certify_chain_map(m2, 1)


def test_induced_map_on_homology(m2):
    """H_1(gl_2) is the trace line and maps isomorphically; H_2(gl_2) vanishes."""
    certificate = certify_chain_map(m2, 3, "cyclic-quotient")
    components = induced_homology_map(m2, 3, "cyclic-quotient", certificate)
    first, second = components
    assert (first.k, first.source_dim, first.target_dim, first.rank) == (1, 1, 1, 1)
    assert (second.k, second.source_dim, second.rank) == (2, 0, 0)


def test_induced_map_needs_successful_certificate(m2):
    certificate = certify_chain_map(m2, 3, "standard")
    with pytest.raises(CertificateError) as e:
        induced_homology_map(m2, 3, "standard", certificate)
    assert e.value.failing_degree == 3


def test_induced_map_needs_matching_certificate(m2):
    certificate = certify_chain_map(m2, 2, "cyclic-quotient")
    with pytest.raises(CertificateError):
        induced_homology_map(m2, 3, "cyclic-quotient", certificate)


@pytest.mark.parametrize("variant", ["standard", "cyclic-quotient"])
def test_certification_respects_basis_limit(m2, variant):
    """Degree 4 of the Hochschild complex of M2 has 4^5 chains."""
    with pytest.raises(GuardRailError):
        certify_chain_map(m2, 4, variant, max_basis=100)
    with pytest.raises(GuardRailError):
        TraceMaps(m2, 4, variant, max_basis=100)


def test_induced_map_respects_basis_limit(m2):
    certificate = certify_chain_map(m2, 3, "cyclic-quotient")
    with pytest.raises(GuardRailError):
        induced_homology_map(m2, 3, "cyclic-quotient", certificate, max_basis=100)


@pytest.mark.parametrize("variant", ["standard", "cyclic-quotient"])
@pytest.mark.parametrize("matrix", [
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [1, 0, 0, 1]],
])
def test_certificate_ignores_change_of_basis(m2, variant, matrix):
    """The verdicts depend on the algebra, not on the basis it is written in."""
    original = certify_chain_map(m2, 3, variant)
    changed = certify_chain_map(m2.change_basis(matrix), 3, variant)
    assert [(v.k, v.status, v.ratio) for v in changed.verdicts] == [(v.k, v.status, v.ratio) for v in original.verdicts]
    assert changed.normalization == original.normalization


def test_induced_map_for_dual_numbers(dual_numbers):
    """Both exterior classes of the abelian Lie algebra survive: 1 and x in degree 0, 1^x onto the class of 1(x)x."""
    certificate = certify_chain_map(dual_numbers, 3)
    first, second = induced_homology_map(dual_numbers, 3, "standard", certificate)
    assert (first.k, first.source_dim, first.target_dim, first.rank) == (1, 2, 2, 2)
    assert (second.k, second.source_dim, second.target_dim, second.rank) == (2, 1, 1, 1)


def test_induced_map_for_ground_field():
    from hochschild.associative import AssociativeAlgebra

    Q = AssociativeAlgebra.ground_field()
    certificate = certify_chain_map(Q, 3)
    assert [v.status for v in certificate.verdicts] == ["vacuous", "vacuous"]
    first, second = induced_homology_map(Q, 3, "standard", certificate)
    assert (first.k, first.source_dim, first.target_dim, first.rank) == (1, 1, 1, 1)
    assert (second.k, second.source_dim, second.target_dim, second.rank) == (2, 0, 0, 0)
