# operad/strata.py

from dataclasses import dataclass
from typing import Iterable, List

from trees.operations import enumerate_trees, incidence
from trees.tree import Tree
from utils.exceptions import InputValidationError, InvalidTreeError

__all__ = ["Stratum", "stratum_dim", "stratum_codim", "strata", "incidence"]


@dataclass(frozen=True)
class Stratum:
    """Boundary stratum of the compactified configuration space indexed by a tree."""
    tree: Tree
    n: int
    dim: int
    codim: int


def _check(t: Tree, n: int):
    if t.is_degenerate:
        raise InvalidTreeError("The degenerate tree indexes no stratum", details=str(t.leaves))
    if n < 1:
        raise InputValidationError(f"Ambient dimension must be at least 1, got {n}")


def stratum_dim(t: Tree, n: int) -> int:
    """Sum over internal vertices of n*arity - n - 1 (points modulo translation and scaling)."""
    _check(t, n)
    return sum(n * t.arity(v) - n - 1 for v in t.vertices())


def stratum_codim(t: Tree) -> int:
    if t.is_degenerate:
        raise InvalidTreeError("The degenerate tree indexes no stratum", details=str(t.leaves))
    return t.internal_edges


def strata(leaves: Iterable, n: int) -> List[Stratum]:
    """All strata over the given points, by increasing codimension."""
    labels = list(leaves)
    table = []
    for k in range(0, len(labels) - 1):
        for t in enumerate_trees(labels, k):
            table.append(Stratum(t, n, stratum_dim(t, n), stratum_codim(t)))
    return table
