"""Exact computer algebra for quadratic algebras of Dunkl type.

Modules: :mod:`scalars` (coefficient rings), :mod:`freealg` (free algebra),
:mod:`catalog` (presentations), :mod:`engine` (completion, normal forms,
dimensions), :mod:`elements` (distinguished elements and identity checks),
:mod:`hecke`, :mod:`braid`, :mod:`qops` and the :mod:`cli` front end.
"""

from .catalog import build, parse_presentation
from .engine import complete, filtered_dims, subalgebra_dims
from .freealg import NCPoly, parse_element

__all__ = ["build", "parse_presentation", "complete", "filtered_dims", "subalgebra_dims", "NCPoly", "parse_element"]
__version__ = "0.1.0"
