# operad/chains.py

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

from trees.operations import compose, splittings
from trees.tree import Tree
from utils.exceptions import InvalidTreeError
from utils.permutations import permutation_sign


class TreeChain:
    """
    Rational combination of trees on one leaf set with one internal-edge count.

    Every tree carries its canonical orientation; orientation signs are folded
    into the coefficients.
    """

    def __init__(self, leaves: Tuple[str, ...], edges: int, terms: Mapping[Tree, Fraction] = None):
        self.leaves = tuple(sorted(leaves))
        self.edges = edges
        clean: Dict[Tree, Fraction] = {}
        for tree, coefficient in (terms or {}).items():
            if tree.leaves != self.leaves or tree.internal_edges != edges:
                raise InvalidTreeError(
                    "Chain terms must share leaves and internal-edge count",
                    details=f"{tree.leaves}/{tree.internal_edges} vs {self.leaves}/{edges}",
                )
            coefficient = Fraction(coefficient)
            if coefficient:
                clean[tree] = clean.get(tree, Fraction(0)) + coefficient
        self.terms = {t: c for t, c in clean.items() if c}

    @classmethod
    def basis(cls, tree: Tree, coefficient=1) -> "TreeChain":
        return cls(tree.leaves, tree.internal_edges, {tree: coefficient})

    def __iter__(self) -> Iterator[Tuple[Tree, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda item: item[0].clusters))

    def __add__(self, other: "TreeChain") -> "TreeChain":
        if (self.leaves, self.edges) != (other.leaves, other.edges):
            raise InvalidTreeError("Cannot add chains on different leaves or edge counts")
        terms = dict(self.terms)
        for tree, coefficient in other.terms.items():
            terms[tree] = terms.get(tree, Fraction(0)) + coefficient
        return TreeChain(self.leaves, self.edges, terms)

    def scale(self, factor) -> "TreeChain":
        factor = Fraction(factor)
        return TreeChain(self.leaves, self.edges, {t: c * factor for t, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeChain):
            return NotImplemented
        return (self.leaves, self.edges, self.terms) == (other.leaves, other.edges, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def differential(self) -> "TreeChain":
        terms: Dict[Tree, Fraction] = {}
        for tree, coefficient in self.terms.items():
            for result, sign in splittings(tree):
                terms[result] = terms.get(result, Fraction(0)) + coefficient * sign
        return TreeChain(self.leaves, self.edges + 1, terms)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{t}" for t, c in self)
        return f"TreeChain({body or '0'})"


def insert_trees(t1: Tree, s: str, t2: Tree) -> Tuple[Tree, int]:
    """
    Composite tree and orientation sign of (edges of t1, edges of t2, grafting
    edge) against the composite's canonical order.
    """
    result = compose(t1, s, t2)
    if t1.is_degenerate:
        return result, 1
    inner = t2.leaves
    presented = [tuple(sorted(tuple(x for x in c if x != s) + inner)) if s in c else c for c in t1.clusters]
    presented.extend(t2.clusters)
    if not t2.is_degenerate:
        presented.append(inner)
    return result, permutation_sign(presented)


def insertion(c1: TreeChain, s: str, c2: TreeChain) -> TreeChain:
    """Bilinear extension of tree composition with determinant signs."""
    if s not in c1.leaves:
        raise InvalidTreeError(f"Leaf '{s}' does not belong to the outer chain", details=str(c1.leaves))
    leaves = tuple(x for x in c1.leaves if x != s) + c2.leaves
    grafting = 1 if len(c1.leaves) > 1 and len(c2.leaves) > 1 else 0
    edges = c1.edges + c2.edges + grafting
    terms: Dict[Tree, Fraction] = {}
    for t1, a in c1.terms.items():
        for t2, b in c2.terms.items():
            tree, sign = insert_trees(t1, s, t2)
            terms[tree] = terms.get(tree, Fraction(0)) + a * b * sign
    if not terms:
        # compose the bare label sets so collisions surface even for zero chains
        compose(Tree(c1.leaves), s, Tree(c2.leaves))
    return TreeChain(leaves, edges, terms)
