"""Shorthand names for pattern trees: ``vertex``, ``edge``, ``path:k``, ``star:k``, ``file:<path>``."""

from __future__ import annotations

from pathlib import Path

from .trees import LabeledTree, path_tree, star_tree


class PatternError(ValueError):
    pass


def parse_pattern(text: str) -> LabeledTree:
    """``path:k`` has k vertices; ``star:k`` is ``K_{1,k}`` (k leaves)."""
    text = text.strip()
    if text == "vertex":
        return LabeledTree.single()
    if text == "edge":
        return path_tree(2)
    kind, sep, arg = text.partition(":")
    if not sep:
        raise PatternError(f"unknown pattern {text!r}")
    if kind == "file":
        try:
            return LabeledTree.from_edgelist(Path(arg).read_text())
        except OSError as exc:
            raise PatternError(f"cannot read pattern file {arg!r}: {exc}") from None
    try:
        k = int(arg)
    except ValueError:
        raise PatternError(f"pattern size must be an integer: {text!r}") from None
    if kind == "path":
        if k < 1:
            raise PatternError("path:k needs k >= 1")
        return path_tree(k)
    if kind == "star":
        if k < 0:
            raise PatternError("star:k needs k >= 0")
        return star_tree(k)
    raise PatternError(f"unknown pattern {text!r}")
