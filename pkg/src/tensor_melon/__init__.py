"""Exact combinatorics of the large-N expansion of random tensor models."""
from .bubbles import Bubble, CouplingMap, enumerate_bubbles
from .graph import ColoredGraph, build, canonical_form, are_isomorphic
from .jackets import degree, jackets
from .melons import is_melonic, melon_to_tree, tree_to_melon
from .trees import ColoredTree, TreeSum, bracket, join, jacobi_defect

__all__ = [
    "Bubble", "CouplingMap", "enumerate_bubbles",
    "ColoredGraph", "build", "canonical_form", "are_isomorphic",
    "degree", "jackets",
    "is_melonic", "melon_to_tree", "tree_to_melon",
    "ColoredTree", "TreeSum", "bracket", "join", "jacobi_defect",
]
