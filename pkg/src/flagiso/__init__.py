"""Exact classification of isotropy representations of real flag manifolds
of split real forms: sign-character (M-)equivalence classes of roots,
Levi-irreducible components of the tangent space, compact-isotropy
irreducibility and equivalence, all cross-checked by an exact rational
linear-algebra oracle.
"""

from .rootsys import DynkinType, RootSystem, build_root_system, root_system

__all__ = ["DynkinType", "RootSystem", "build_root_system", "root_system"]
__version__ = "0.1.0"
