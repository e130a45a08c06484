"""Exact fusion combinatorics of the Verlinde category Ver_p, of Ver_p(SL_i),
and of the irreducible labels of GL(X) for X in Ver_p, with a brute-force
oracle built from unipotent matrices over F_p."""

from .alcove import (
    AlcoveWeight,
    DominantWeightMultiset,
    classical_tensor,
    enumerate_simples,
    is_plus_weight,
    kac_walton_fuse,
    principal_restriction,
)
from .catalog import (
    GLIrrepLabel,
    GradedVerClass,
    LabelFactor,
    ObjectShape,
    count_labels,
    enumerate_labels,
    gl_class,
    nilradical_class,
    sl_class,
    symmetric_algebra_class,
    underlying_group,
    verma_character,
)
from .errors import DomainError
from .oracle import (
    FpMatrix,
    JordanType,
    ext_power_jordan,
    jordan_type_of_unipotent,
    semisimplify,
    sym_power_jordan,
    tensor_jordan,
)
from .ring import VerClass, cat_dim, dual, fuse_simples, hom_dim, is_plus, simple, tensor

__version__ = "0.1.0"
