"""Periodic mapping classes of non-orientable surfaces.

Modules:

* :mod:`.nec` - NEC signatures, epimorphisms onto ``Z_n``, conjugacy invariants
* :mod:`.involutions` - the involution taxonomy and surgery models
* :mod:`.polygon` - fundamental domains, curves and standard pairs
* :mod:`.homology` - actions on ``H_1(N_g; Z_2)`` and determinants
* :mod:`.closure` - normal closure decisions
* :mod:`.cli` - command line
"""

from .closure import (
    ClosureVerdict,
    decide_involution,
    decide_order_gt2,
    involution_verdict,
    is_normal_generator,
    normal_generator_witness,
)
from .errors import MCGError
from .homology import (
    IntersectionForm,
    Layout,
    Z2Matrix,
    determinant_hom,
    f4_variant_real_action,
    induced_z2_action,
    rotation_generator_action,
    triviality_profile,
    vg_plus_basis,
)
from .involutions import InvolutionClass, enumerate_classes
from .nec import Epimorphism, NecSignature, hurwitz_riemann_genus, signatures_for_genus
from .polygon import assemble_fundamental_domain, classify, is_standard_pair

__all__ = [
    "ClosureVerdict",
    "Epimorphism",
    "IntersectionForm",
    "InvolutionClass",
    "Layout",
    "MCGError",
    "NecSignature",
    "Z2Matrix",
    "assemble_fundamental_domain",
    "classify",
    "decide_involution",
    "decide_order_gt2",
    "determinant_hom",
    "enumerate_classes",
    "f4_variant_real_action",
    "hurwitz_riemann_genus",
    "induced_z2_action",
    "involution_verdict",
    "is_normal_generator",
    "is_standard_pair",
    "normal_generator_witness",
    "rotation_generator_action",
    "signatures_for_genus",
    "triviality_profile",
    "vg_plus_basis",
]

__version__ = "0.1.0"
