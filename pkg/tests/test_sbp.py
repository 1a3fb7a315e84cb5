import numpy as np
import pytest

from coda_ratios import format_sbp, parse_sbp, validate_tree
from coda_ratios.errors import DuplicateLeafError, LabelMismatchError, SbpSyntaxError

from conftest import random_tree_text


def test_two_part_tree():
    tree = parse_sbp("(A|B)")
    assert tree.leaf_labels == ("A", "B")
    assert tree.dimension == 2
    assert tree.coordinate_names == ("y1",)
    assert len(tree.nodes) == 1
    assert tree.nodes[0].numerator_leaves() == ("A",)
    assert tree.nodes[0].denominator_leaves() == ("B",)


def test_three_part_tree_preorder():
    tree = parse_sbp("(TA|(NCL|CL))")
    assert tree.leaf_labels == ("TA", "NCL", "CL")
    assert tree.coordinate_names == ("y1", "y2")
    # root balance first, nested balance second
    assert tree.nodes[0].numerator_leaves() == ("TA",)
    assert tree.nodes[0].denominator_leaves() == ("NCL", "CL")
    assert tree.nodes[1].numerator_leaves() == ("NCL",)
    assert tree.nodes[1].denominator_leaves() == ("CL",)


def test_preorder_on_deeper_tree():
    tree = parse_sbp("(((A|B)|C)|(D|E))")
    splits = [
        (node.numerator_leaves(), node.denominator_leaves()) for node in tree.nodes
    ]
    assert splits == [
        (("A", "B", "C"), ("D", "E")),
        (("A", "B"), ("C",)),
        (("A",), ("B",)),
        (("D",), ("E",)),
    ]
    assert len(tree.nodes) == len(tree.leaf_labels) - 1


def test_whitespace_insignificant():
    tree = parse_sbp("  ( A | ( NCL\t| CL ) )\n")
    assert format_sbp(tree) == "(A|(NCL|CL))"


def test_format_is_canonical():
    text = "(TA|(NCL|CL))"
    tree = parse_sbp(text)
    assert format_sbp(tree) == text
    assert parse_sbp(format_sbp(tree)) == tree


def test_labels_allow_identifier_characters():
    tree = parse_sbp("(_a1|(B_2|c))")
    assert tree.leaf_labels == ("_a1", "B_2", "c")


def test_duplicate_leaf_rejected():
    with pytest.raises(DuplicateLeafError) as err:
        parse_sbp("(A|(B|A))")
    assert err.value.label == "A"


@pytest.mark.parametrize(
    "text,offset,expected",
    [
        ("(A|B", 4, "')'"),
        ("", 0, "'('"),
        ("A|B", 0, "'('"),
        ("(A B)", 3, "'|'"),
        ("(A|)", 3, "label or '('"),
        ("(|B)", 1, "label or '('"),
        ("(A|B))", 5, "end of input"),
        ("(A|B)x", 5, "end of input"),
        ("(9|B)", 1, "label or '('"),
    ],
)
def test_syntax_errors_cite_byte_offsets(text, offset, expected):
    with pytest.raises(SbpSyntaxError) as err:
        parse_sbp(text)
    assert err.value.position == offset
    assert err.value.expected == expected
    assert f"byte offset {offset}" in str(err.value)


def test_syntax_error_offset_counts_bytes_not_chars():
    # a two-byte UTF-8 character inside leading whitespace shifts byte offsets
    text = " (A|B"
    with pytest.raises(SbpSyntaxError) as err:
        parse_sbp(text)
    assert err.value.position == len(text.encode("utf-8"))


def test_validate_tree_accepts_matching_labels():
    tree = parse_sbp("(TA|(NCL|CL))")
    validate_tree(tree, {"TA", "NCL", "CL"})


def test_validate_tree_reports_missing_and_extra():
    tree = parse_sbp("(TA|(NCL|CL))")
    with pytest.raises(LabelMismatchError) as err:
        validate_tree(tree, {"TA", "NCL"})
    assert err.value.missing == frozenset()
    assert err.value.extra == {"CL"}

    with pytest.raises(LabelMismatchError) as err:
        validate_tree(tree, {"TA", "NCL", "CL", "INV"})
    assert err.value.missing == {"INV"}
    assert err.value.extra == frozenset()


def test_fingerprint_distinguishes_trees():
    a = parse_sbp("(TA|(NCL|CL))")
    b = parse_sbp("((TA|NCL)|CL)")
    c = parse_sbp("(TA|(CL|NCL))")
    assert a.fingerprint != b.fingerprint
    assert a.fingerprint != c.fingerprint
    assert parse_sbp("(TA|(NCL|CL))").fingerprint == a.fingerprint


def test_random_trees_round_trip():
    labels = [f"p{i}" for i in range(9)]
    for seed in range(100):
        rng = np.random.default_rng(seed)
        size = int(rng.integers(2, len(labels) + 1))
        text = random_tree_text(rng, labels[:size])
        tree = parse_sbp(text)
        assert format_sbp(tree) == text
        again = parse_sbp(format_sbp(tree))
        assert again == tree
        assert again.fingerprint == tree.fingerprint
        assert len(tree.nodes) == size - 1
        assert sorted(tree.leaf_labels) == sorted(labels[:size])
