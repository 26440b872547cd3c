"""Loose Hamilton cycles in dense and random 3-uniform hypergraphs."""

from .hgraph import Hypergraph3, LooseCycle, LoosePath

__version__ = "0.1.0"

__all__ = ["Hypergraph3", "LooseCycle", "LoosePath", "__version__"]
