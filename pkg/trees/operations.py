# trees/operations.py

from itertools import combinations
from typing import Iterable, List, Optional, Tuple

from trees.tree import Cluster, Tree, canonical_labels
from utils.exceptions import InputValidationError, InvalidTreeError, LabelCollisionError
from utils.logger import get_logger

logger = get_logger(__name__)


def _compatible(a: frozenset, b: frozenset) -> bool:
    return not (a & b) or a <= b or b <= a


def enumerate_trees(leaves: Iterable, k: int) -> List[Tree]:
    """
    All trees on the given leaves with exactly k internal edges.

    Order is deterministic: trees are sorted by their canonical cluster tuples.
    """
    labels = canonical_labels(leaves)
    n = len(labels)
    if n < 2:
        raise InvalidTreeError("Enumeration needs at least two leaves", details=str(labels))
    if not 0 <= k <= n - 2:
        return []

    candidates = [c for size in range(2, n) for c in combinations(labels, size)]
    sets = [frozenset(c) for c in candidates]
    found: List[Tree] = []

    def extend(start: int, chosen: List[int]):
        if len(chosen) == k:
            found.append(Tree(labels, tuple(sorted(candidates[i] for i in chosen))))
            return
        for i in range(start, len(candidates)):
            if all(_compatible(sets[i], sets[j]) for j in chosen):
                chosen.append(i)
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    found.sort(key=lambda t: t.clusters)
    logger.debug(f"Enumerated {len(found)} trees on {n} leaves with {k} internal edges")
    return found


def compose(t1: Tree, s: str, t2: Tree) -> Tree:
    """Grafts the root of t2 onto leaf s of t1."""
    if s not in t1.leaves:
        raise InvalidTreeError(f"Leaf '{s}' does not belong to the outer tree", details=str(t1.leaves))
    outer = set(t1.leaves) - {s}
    collisions = sorted(outer & set(t2.leaves))
    if collisions:
        raise LabelCollisionError(collisions[0])

    if t1.is_degenerate:
        return t2
    if t2.is_degenerate:
        (new,) = t2.leaves
        return t1.relabel({leaf: (new if leaf == s else leaf) for leaf in t1.leaves})

    inner = t2.leaves
    clusters = []
    for c in t1.clusters:
        clusters.append(tuple(x for x in c if x != s) + inner if s in c else c)
    clusters.extend(t2.clusters)
    clusters.append(inner)
    return Tree.build(sorted(outer) + list(inner), clusters)


def placeholder(cluster: Cluster) -> str:
    return "@{" + ",".join(cluster) + "}"


def star_decomposition(t: Tree) -> List[Tuple[Tree, Optional[str]]]:
    """
    Presents t as k+1 stars: the top star first (attachment None), then one
    star per cluster in decreasing size, attached at the placeholder leaf
    standing for that cluster.
    """
    if t.is_degenerate:
        raise InvalidTreeError("The degenerate tree has no star decomposition", details=str(t.leaves))

    def star_at(block: Cluster) -> Tree:
        kids = t.children(block)
        return Tree.star(kid[0] if len(kid) == 1 else placeholder(kid) for kid in kids)

    pieces: List[Tuple[Tree, Optional[str]]] = [(star_at(t.leaves), None)]
    for cluster in sorted(t.clusters, key=lambda c: (-len(c), c)):
        pieces.append((star_at(cluster), placeholder(cluster)))
    return pieces


def recompose(pieces: List[Tuple[Tree, Optional[str]]]) -> Tree:
    tree, _ = pieces[0]
    for star, attachment in pieces[1:]:
        tree = compose(tree, attachment, star)
    return tree


def splittings(t: Tree) -> List[Tuple[Tree, int]]:
    """
    Every tree obtained from t by splitting one vertex, with its orientation sign.

    The sign compares (new edge, old edges in t's canonical order) with the
    canonical order of the result, i.e. (-1)^(position of the new edge).
    """
    results = []
    for block in t.vertices():
        kids = t.children(block)
        arity = len(kids)
        for size in range(2, arity):
            for chosen in combinations(kids, size):
                new = tuple(sorted(x for kid in chosen for x in kid))
                clusters = tuple(sorted(t.clusters + (new,)))
                result = Tree(t.leaves, clusters)
                sign = -1 if clusters.index(new) % 2 else 1
                results.append((result, sign))
    return results


def incidence(t: Tree, t2: Tree) -> bool:
    """True when t2 is obtained from t by a single edge splitting."""
    if t.leaves != t2.leaves:
        raise InputValidationError("Incidence is only defined for trees on the same leaves", details=f"{t.leaves} vs {t2.leaves}")
    if t2.internal_edges != t.internal_edges + 1:
        return False
    return any(result == t2 for result, _ in splittings(t))
