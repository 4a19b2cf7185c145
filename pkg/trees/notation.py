# trees/notation.py

import re
from typing import List, Sequence, Tuple

from trees.tree import Tree
from utils.exceptions import InvalidTreeError

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def format_tree(t: Tree) -> str:
    """Nested-parentheses notation, e.g. ((a b) c d); children sorted by their leaves."""
    if t.is_degenerate:
        return t.leaves[0]

    def render(block: Sequence[str]) -> str:
        parts = [kid[0] if len(kid) == 1 else render(kid) for kid in t.children(block)]
        return "(" + " ".join(parts) + ")"

    return render(t.leaves)


def parse_tree(text: str) -> Tree:
    """Parses the nested-parentheses notation; a bare label is the degenerate tree."""
    tokens = _TOKEN.findall(text or "")
    if not tokens:
        raise InvalidTreeError("Empty tree notation")
    if len(tokens) == 1 and tokens[0] not in "()":
        return Tree.degenerate(tokens[0])

    clusters: List[Tuple[str, ...]] = []
    position = 0

    def group() -> List[str]:
        nonlocal position
        if tokens[position] != "(":
            raise InvalidTreeError("Expected '('", details=f"token {position} in {text!r}")
        position += 1
        leaves, children = [], 0
        while position < len(tokens) and tokens[position] != ")":
            if tokens[position] == "(":
                sub = group()
                clusters.append(tuple(sub))
                leaves.extend(sub)
            else:
                leaves.append(tokens[position])
                position += 1
            children += 1
        if position >= len(tokens):
            raise InvalidTreeError("Unbalanced parentheses", details=repr(text))
        position += 1
        if children < 2:
            raise InvalidTreeError("Every vertex needs at least two children", details=repr(text))
        return leaves

    leaves = group()
    if position != len(tokens):
        raise InvalidTreeError("Trailing input after tree", details=repr(text))
    return Tree.build(leaves, clusters)
