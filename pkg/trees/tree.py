# trees/tree.py

from dataclasses import dataclass
from typing import Iterable, List, Mapping, Sequence, Tuple

from utils.exceptions import InvalidTreeError
from utils.permutations import permutation_sign

Cluster = Tuple[str, ...]


def canonical_labels(leaves: Iterable) -> Tuple[str, ...]:
    labels = [str(leaf) for leaf in leaves]
    if any(label == "" or any(ch.isspace() or ch in "()" for ch in label) for label in labels):
        raise InvalidTreeError("Leaf labels must be non-empty and contain no whitespace or parentheses", details=str(labels))
    if len(set(labels)) != len(labels):
        raise InvalidTreeError("Leaf labels must be distinct", details=str(sorted(labels)))
    return tuple(sorted(labels))


@dataclass(frozen=True)
class Tree:
    """
    Rooted tree with labeled leaves and internal vertices of arity >= 2.

    Stored canonically by its sorted leaves and the sorted family of proper
    clusters (leaf-descendant sets of the non-root internal vertices). The
    canonical internal-edge order is the order of `clusters`.
    """
    leaves: Tuple[str, ...]
    clusters: Tuple[Cluster, ...] = ()

    @classmethod
    def build(cls, leaves: Iterable, clusters: Iterable[Iterable] = ()) -> "Tree":
        labels = canonical_labels(leaves)
        leaf_set = set(labels)
        family = set()
        for cluster in clusters:
            block = tuple(sorted(str(x) for x in cluster))
            if not set(block) <= leaf_set:
                raise InvalidTreeError("Cluster uses unknown leaves", details=str(block))
            if not 2 <= len(block) <= len(labels) - 1 or len(set(block)) != len(block):
                raise InvalidTreeError("Cluster must have between 2 and |S|-1 distinct leaves", details=str(block))
            family.add(block)
        ordered = tuple(sorted(family))
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                sa, sb = set(a), set(b)
                if sa & sb and not (sa <= sb or sb <= sa):
                    raise InvalidTreeError("Clusters must be nested or disjoint", details=f"{a} and {b}")
        return cls(labels, ordered)

    @classmethod
    def star(cls, leaves: Iterable) -> "Tree":
        labels = canonical_labels(leaves)
        if len(labels) < 2:
            raise InvalidTreeError("A star needs at least two leaves", details=str(labels))
        return cls(labels, ())

    @classmethod
    def degenerate(cls, label) -> "Tree":
        return cls(canonical_labels([label]), ())

    @property
    def is_degenerate(self) -> bool:
        return len(self.leaves) == 1

    @property
    def internal_edges(self) -> int:
        return len(self.clusters)

    def vertices(self) -> List[Cluster]:
        """Internal vertices as leaf blocks: the root first, then clusters in canonical order."""
        if self.is_degenerate:
            return []
        return [self.leaves, *self.clusters]

    def children(self, block: Sequence[str]) -> List[Cluster]:
        """Incoming edges of a vertex: maximal sub-blocks, single leaves as 1-tuples."""
        block_set = set(block)
        inner = [c for c in self.clusters if set(c) < block_set]
        maximal = [c for c in inner if not any(set(c) < set(o) for o in inner)]
        covered = set().union(*map(set, maximal)) if maximal else set()
        kids = maximal + [(leaf,) for leaf in block if leaf not in covered]
        return sorted(kids)

    def arity(self, block: Sequence[str]) -> int:
        return len(self.children(block))

    def relabel(self, mapping: Mapping[str, str]) -> "Tree":
        """Applies a bijection of leaf labels."""
        missing = [leaf for leaf in self.leaves if leaf not in mapping]
        if missing:
            raise InvalidTreeError("Relabeling does not cover every leaf", details=str(missing))
        return Tree.build(
            (mapping[leaf] for leaf in self.leaves),
            ((mapping[x] for x in c) for c in self.clusters),
        )

    def __str__(self) -> str:
        from trees.notation import format_tree
        return format_tree(self)


@dataclass(frozen=True)
class DetOrientation:
    """An ordering of a tree's internal edges, i.e. a generator of Det(tree) up to sign."""
    tree: Tree
    edges: Tuple[Cluster, ...]

    def __post_init__(self):
        if sorted(self.edges) != list(self.tree.clusters):
            raise InvalidTreeError("Orientation must list every internal edge exactly once", details=str(self.edges))

    @classmethod
    def canonical(cls, tree: Tree) -> "DetOrientation":
        return cls(tree, tree.clusters)

    @property
    def sign(self) -> int:
        """+1 when the presented order is an even permutation of the canonical order."""
        return permutation_sign(self.edges)

    def relabel(self, mapping: Mapping[str, str]) -> "DetOrientation":
        tree = self.tree.relabel(mapping)
        edges = tuple(tuple(sorted(mapping[x] for x in c)) for c in self.edges)
        return DetOrientation(tree, edges)
