"""Exact intersection theory on projective bundles over P^n.

Characteristic-class calculus (:mod:`chowkit.chow_core`), the Chow ring of
P(E) (:mod:`chowkit.proj_bundle`), cohomology dimension counts
(:mod:`chowkit.cohomology`) and exact linear algebra on the determinantal and
Pfaffian incidence varieties (:mod:`chowkit.rank_loci`).
"""

from .chow_core import (
    BundleClass,
    TruncatedClass,
    direct_sum,
    exterior_power,
    form_bundle,
    hom_bundle,
    line_bundle,
    segre,
    symmetric_power,
    tangent_twist,
    twist,
    wedge2_bundle,
)
from .proj_bundle import MixedClass, divisor_top_intersection, integral, reduce, segre_pushforward, taut_degree

__version__ = "0.1.0"
