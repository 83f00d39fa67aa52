"""Weyl-group combinatorics of B x B and B⁻ x B⁻ orbit strata in group embeddings."""

from .weyl import (
    RootSystem, WeylElement, WeylError, build_root_system, bruhat_leq, length,
    parabolic_decompose, triple_decompose,
)
from .richardson import ParabolicPair, RichardsonIndex, kls_fiber, project_rep
from .orbits import (
    CellIndex, EmbeddingModel, ModelError, OrbitDescriptor, StratumIndex, builtin_model,
    canonicalize_cell, enumerate_strata, make_descriptor, minimal_toroidal_cover,
)

__version__ = "0.1.0"

__all__ = [
    "RootSystem", "WeylElement", "WeylError", "build_root_system", "bruhat_leq", "length",
    "parabolic_decompose", "triple_decompose", "ParabolicPair", "RichardsonIndex",
    "kls_fiber", "project_rep", "CellIndex", "EmbeddingModel", "ModelError",
    "OrbitDescriptor", "StratumIndex", "builtin_model", "canonicalize_cell",
    "enumerate_strata", "make_descriptor", "minimal_toroidal_cover",
]
