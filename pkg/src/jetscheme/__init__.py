"""Exact computations for jet schemes, derived jets and arc fibers.

The pieces most people want are re-exported here; everything else lives in
the submodules (``fields``, ``polynomials``, ``jets``, ``groebner``,
``koszul``, ``series``, ``arcs``, ``support``, ``invariants``).
"""

from .arcs import Arc, FiberProfile, fiber_profile, fiber_profile_auto, jet_fiber_dims, lci_cotangent_presentation
from .errors import ExhaustionError, InputError, JetSchemeError
from .fields import GF, QQ, field_from_spec
from .groebner import Budget, buchberger, krull_dim
from .invariants import (
    ArcSite,
    embdim_arc_direct,
    embdim_formula,
    embdim_jet_direct,
    generic_projection,
    jet_codim_partial,
    morphism_jacobian,
)
from .jets import JetContext, hasse_schmidt, jet_ideal
from .kernels import BACKEND
from .koszul import classicality_test, koszul_complex
from .parser import parse_polynomial, parse_series
from .polynomials import GREVLEX, LEX, MonomialOrder, PolyMatrix, PolyRing, Polynomial
from .series import TruncSeries, Valuation, smith_normal_form

__version__ = "0.1.0"
