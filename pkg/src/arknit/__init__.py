"""Exact quiver representation toolkit.

Layers, bottom up: fields and dense exact linear algebra, quiver windows
and paths, representations with Hom/Ext oracles, translate machinery and
almost split sequences, knitting of translation-quiver components with the
formal inverse-translate objects, and the periodic one-parameter families.
"""

__version__ = "0.1.0"

from .fields import QQ, Field, field_from_name
from .quiver import QuiverSpec, TruncatedQuiver, truncate, is_star
from .replin import (Representation, simple_rep, projective_rep,
                     injective_rep, hom_dim, ext1_dim, decompose,
                     rep_from_json, realize_family_object)
from .artheory import tau, tau_inv, almost_split_sequence
from .knit import (knit_preprojective, knit_preinjective, tilt_join,
                   mark_simples, hammock_hom_dim, component_membership,
                   FormalObject, formal_hom_dim, formal_classify,
                   canonicalize, zq)
from .tube import TubeCategory, tau_tube, tau_tube_inv, ass_tube, \
    hom_dim_tube, realize_tube_object, classify_finite_length

__all__ = [
    "QQ", "Field", "field_from_name",
    "QuiverSpec", "TruncatedQuiver", "truncate", "is_star",
    "Representation", "simple_rep", "projective_rep", "injective_rep",
    "hom_dim", "ext1_dim", "decompose", "rep_from_json",
    "realize_family_object",
    "tau", "tau_inv", "almost_split_sequence",
    "knit_preprojective", "knit_preinjective", "tilt_join", "mark_simples",
    "hammock_hom_dim", "component_membership", "FormalObject",
    "formal_hom_dim", "formal_classify", "canonicalize", "zq",
    "TubeCategory", "tau_tube", "tau_tube_inv", "ass_tube", "hom_dim_tube",
    "realize_tube_object", "classify_finite_length",
    "__version__",
]
