"""Exact census of connected induced 3-, 4- and 5-vertex subgraphs in directed networks."""

from importlib import resources

from .canonical import (
    AdjacencyCode,
    ClassTable,
    canonical_code,
    class_table,
    correction_divisor,
    enumerate_classes,
)
from .census import CountingError, MotifHistogram
from .counting import census
from .graph import DirectedGraph, GraphParseError, UndirectedSkeleton, load_edge_list
from .nullmodel import EnsembleStats, SwitchConfig, randomize, significance
from .oracle import audit_divisor, oracle_histogram

__version__ = "0.1.0"


def ecoli_path() -> str:
    """Path of the bundled E.coli-scale regulatory network edge list."""
    return str(resources.files(__name__) / "data" / "ecoli_like.txt")
