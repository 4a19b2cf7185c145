# operad/l_complex.py

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from linalg.complex import ChainComplex, HomologyDims, homology_dims
from linalg.sparse import SparseMatrix
from trees.notation import format_tree
from trees.operations import enumerate_trees, splittings
from trees.tree import DetOrientation, Tree
from utils.exceptions import InputValidationError
from utils.logger import get_logger
from utils.permutations import permutation_sign

logger = get_logger(__name__)

CONVENTIONS = ("section", "proposition")


def _check_arity(s: int):
    if s < 2:
        raise InputValidationError(f"Arity must be at least 2, got {s}")


def arity_labels(s: int) -> List[str]:
    return [str(i) for i in range(1, s + 1)]


def tree_degree(s: int, k: int) -> int:
    """Cohomological degree 2 - s + k of a tree with k internal edges."""
    return 2 - s + k


@lru_cache(maxsize=None)
def l_basis(s: int) -> Dict[int, Tuple[Tree, ...]]:
    """Basis trees of L(s) keyed by cohomological degree."""
    _check_arity(s)
    labels = arity_labels(s)
    return {tree_degree(s, k): tuple(enumerate_trees(labels, k)) for k in range(0, s - 1)}


def splitting_matrix(source: Sequence[Tree], target: Sequence[Tree]) -> SparseMatrix:
    index = {t: i for i, t in enumerate(target)}
    entries = {}
    for j, t in enumerate(source):
        for result, sign in splittings(t):
            key = (index[result], j)
            entries[key] = entries.get(key, 0) + sign
    return SparseMatrix(len(target), len(source), entries)


@lru_cache(maxsize=None)
def build_L_complex(s: int) -> ChainComplex:
    """
    The tree complex L(s): degree 2-s+k spanned by trees with k internal
    edges, differential the signed sum of all edge splittings.
    """
    basis = l_basis(s)
    spaces = {d: [format_tree(t) for t in trees] for d, trees in basis.items()}
    differentials = {d: splitting_matrix(basis[d], basis[d + 1]) for d in basis if d + 1 in basis}
    logger.info(f"Built L({s}) with dims {{{', '.join(f'{d}: {len(v)}' for d, v in sorted(spaces.items()))}}}")
    return ChainComplex(spaces, differentials)


def L_homology(s: int) -> HomologyDims:
    return homology_dims(build_L_complex(s))


def _relabeling(s: int, permutation: Sequence[int]) -> Dict[str, str]:
    if sorted(permutation) != list(range(1, s + 1)):
        raise InputValidationError(f"Not a permutation of 1..{s}", details=str(list(permutation)))
    return {str(i + 1): str(p) for i, p in enumerate(permutation)}


def action_matrix(s: int, permutation: Sequence[int], degree: int, twist_power: int = 0) -> SparseMatrix:
    """
    Matrix of the relabeling i -> permutation[i-1] on degree `degree` of L(s),
    with the orientation sign of the relabeled edges, times sgn^twist_power.
    """
    mapping = _relabeling(s, permutation)
    trees = l_basis(s).get(degree, ())
    index = {t: i for i, t in enumerate(trees)}
    twist = permutation_sign(permutation) ** (twist_power % 2)
    entries = {}
    for j, t in enumerate(trees):
        moved = DetOrientation.canonical(t).relabel(mapping)
        entries[(index[moved.tree], j)] = Fraction(moved.sign * twist)
    return SparseMatrix(len(trees), len(trees), entries)


@dataclass(frozen=True)
class ShiftedComponent:
    """L(s) regraded by `shift` with the symmetric group action twisted by sgn^twist_power."""
    arity: int
    n: int
    convention: str
    shift: int
    twist_power: int
    complex: ChainComplex

    def action_matrix(self, permutation: Sequence[int], degree: int) -> SparseMatrix:
        """Action on the shifted degree `degree`."""
        return action_matrix(self.arity, permutation, degree - self.shift, self.twist_power)


def shifted_component(s: int, n: int, convention: str = "section") -> ShiftedComponent:
    """
    "section": L(s)[n(s-1)] tensored with sgn^n, degrees move by -n(s-1).
    "proposition": L(s)[s(1-n)], degrees move by s(n-1), no sign twist.
    """
    _check_arity(s)
    if n < 1:
        raise InputValidationError(f"Dimension must be at least 1, got {n}")
    if convention == "section":
        shift, twist = -n * (s - 1), n
    elif convention == "proposition":
        shift, twist = s * (n - 1), 0
    else:
        raise InputValidationError(f"Unknown shift convention '{convention}'", details=f"expected one of {CONVENTIONS}")
    return ShiftedComponent(s, n, convention, shift, twist, build_L_complex(s).shifted(shift))
