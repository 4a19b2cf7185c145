# tests/test_trees.py

import pytest

from trees.notation import format_tree, parse_tree
from trees.operations import compose, enumerate_trees, recompose, splittings, star_decomposition
from trees.tree import DetOrientation, Tree
from utils.exceptions import InvalidTreeError, LabelCollisionError


def _all_trees(leaves):
    return [t for k in range(len(leaves) - 1) for t in enumerate_trees(leaves, k)]


# --- enumeration ---

@pytest.mark.parametrize("s, expected", [(3, 3), (4, 15), (5, 105)])
def test_binary_tree_count_is_double_factorial(s, expected):
    """Maximal trees on s leaves number (2s-3)!!."""
    leaves = [str(i) for i in range(1, s + 1)]
    assert len(enumerate_trees(leaves, s - 2)) == expected


def test_enumeration_by_edge_count():
    leaves = ["1", "2", "3", "4"]
    assert [len(enumerate_trees(leaves, k)) for k in range(3)] == [1, 10, 15]
    assert enumerate_trees(leaves, 3) == []
    assert enumerate_trees(leaves, -1) == []


def test_enumeration_is_deterministic_and_sorted():
    first = enumerate_trees(["c", "a", "b", "d"], 1)
    second = enumerate_trees(["d", "b", "a", "c"], 1)
    assert first == second
    assert [t.clusters for t in first] == sorted(t.clusters for t in first)


def test_enumeration_needs_two_leaves():
    with pytest.raises(InvalidTreeError):
        enumerate_trees(["a"], 0)


def test_duplicate_and_malformed_labels_rejected():
    with pytest.raises(InvalidTreeError):
        Tree.build(["a", "a", "b"])
    with pytest.raises(InvalidTreeError):
        Tree.build(["a b", "c"])


def test_crossing_clusters_rejected():
    with pytest.raises(InvalidTreeError):
        Tree.build("abcd", [("a", "b"), ("b", "c")])


# --- notation ---

@pytest.mark.parametrize("text", ["(a b)", "((a b) c d)", "((a (b c)) (d e))", "x"])
def test_notation_round_trip(text):
    assert format_tree(parse_tree(text)) == text


def test_parse_reorders_children_canonically():
    assert format_tree(parse_tree("(d (c b) a)")) == "(a (b c) d)"


@pytest.mark.parametrize("text", ["", "(a)", "((a b)", "(a b) c", "(a a)", "(a (b))"])
def test_parse_rejects_invalid_notation(text):
    with pytest.raises(InvalidTreeError):
        parse_tree(text)


# --- composition ---

def test_compose_grafts_root_onto_leaf():
    result = compose(parse_tree("(a s)"), "s", parse_tree("(b c)"))
    assert format_tree(result) == "(a (b c))"
    assert result.internal_edges == 1


def test_compose_label_collision():
    with pytest.raises(LabelCollisionError) as e:
        compose(parse_tree("(a s)"), "s", parse_tree("(a c)"))
    assert e.value.label == "a"


def test_compose_unknown_leaf():
    with pytest.raises(InvalidTreeError):
        compose(parse_tree("(a b)"), "s", parse_tree("(c d)"))


def test_degenerate_tree_is_a_unit():
    t = parse_tree("((a b) c)")
    assert compose(Tree.degenerate("s"), "s", t) == t
    assert compose(t, "c", Tree.degenerate("z")) == parse_tree("((a b) z)")


def test_sequential_associativity_exhaustive():
    """(t1 o_s t2) o_u t3 == t1 o_s (t2 o_u t3) for every tree on these leaf sets."""
    for t1 in _all_trees(["a", "b", "s"]):
        for t2 in _all_trees(["c", "f", "u"]):
            for t3 in _all_trees(["d", "e"]):
                left = compose(compose(t1, "s", t2), "u", t3)
                right = compose(t1, "s", compose(t2, "u", t3))
                assert left == right


def test_parallel_associativity_exhaustive():
    for t1 in _all_trees(["a", "s", "r"]):
        for t2 in _all_trees(["b", "c", "f"]):
            for t3 in _all_trees(["d", "e"]):
                left = compose(compose(t1, "s", t2), "r", t3)
                right = compose(compose(t1, "r", t3), "s", t2)
                assert left == right


def test_star_decomposition_recomposes_every_tree():
    for t in _all_trees(["1", "2", "3", "4", "5"]):
        pieces = star_decomposition(t)
        assert len(pieces) == t.internal_edges + 1
        assert all(star.internal_edges == 0 for star, _ in pieces)
        assert recompose(pieces) == t


# --- splittings and orientations ---

def test_splittings_of_a_star():
    results = splittings(Tree.star("abc"))
    assert sorted(format_tree(t) for t, _ in results) == ["((a b) c)", "((a c) b)", "(a (b c))"]
    assert all(sign == 1 for _, sign in results)


def test_splitting_sign_follows_new_edge_position():
    results = splittings(parse_tree("((a b) c d)"))
    assert len(results) == 3
    assert all(sign == -1 for _, sign in results)


def test_det_orientation_sign_and_relabel():
    t = parse_tree("(((a b) c) d)")
    canonical = DetOrientation.canonical(t)
    assert canonical.sign == 1
    swapped = DetOrientation(t, tuple(reversed(t.clusters)))
    assert swapped.sign == -1

    relabeled = canonical.relabel({"a": "d", "b": "c", "c": "b", "d": "a"})
    assert relabeled.tree == parse_tree("(((c d) b) a)")
    assert relabeled.sign == -1


def test_vertex_arities():
    t = parse_tree("((a b c) d)")
    assert [t.arity(v) for v in t.vertices()] == [2, 3]
