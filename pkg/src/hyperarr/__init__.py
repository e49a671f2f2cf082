"""Jacobian ideals of hypersurface arrangements over prime fields.

The engine (``ring``, ``groebner``) computes Groebner bases of homogeneous
ideals and modules; ``idealops`` and ``invariants`` build the usual ideal
operations and numerical invariants on top of it; ``arrangement`` studies
Jacobian ideals of products of forms; ``scenarios`` and ``cli`` run named,
seeded examples.
"""

from .arrangement import ArrangementSpec, PencilArrangement, jacobian_ideal, top_part
from .idealops import Ideal
from .invariants import hilbert_data, is_acm, minimal_betti, rao_module
from .ring import Poly, Ring, parse_poly

__all__ = ["ArrangementSpec", "Ideal", "PencilArrangement", "Poly", "Ring", "hilbert_data", "is_acm",
           "jacobian_ideal", "minimal_betti", "parse_poly", "rao_module", "top_part"]
