"""Counting F-matchings in trees and the nullifying trees that force them to 0 mod m."""

from .canonical import CanonCode, canon, edge_subtree_codes, has_R_leaf, rooted_iso
from .construct import (build_W, build_Y, build_Yr, build_Z, compute_d, find_r0, g_sequence,
                        spine, starting_vertices)
from .counting import (Variant, count, count_forest, count_mod, enumerate_copies, fragments_of,
                       oracle_count)
from .patterns import parse_pattern
from .trees import (Forest, FunctionTable, LabeledTree, MarkedTree, RootedTree, from_pruefer,
                    graft, joyal_inverse, joyal_tree, split_edge, to_pruefer)

__version__ = "0.1.0"
