"""Exact direct-sum completions of pointed braided categories.

Builds the completion of a skeletal pointed base, algebra objects and
local modules inside it, and derives the module category of the rank-one
lattice algebra ``sqrt(2N) Z`` by induction, checking every identity
exactly over cyclotomic numbers.
"""

from .errors import SumCompError
from .exact import ONE, ZERO, CycNum, Phase, cyc_add, cyc_inv_monomial, cyc_is_zero, cyc_mul, phase_make
from .pointed import (
    PointedData,
    check_base_coherence,
    cochain_scalar,
    cocycle_k,
    cyclic_data,
    heisenberg_data,
    lattice_reference_data,
)
from .completion import (
    Affine,
    Explicit,
    Finite,
    Lattice,
    SumObject,
    add_scale,
    compose,
    eq_morphism,
    identity_of,
    include,
    normalize,
    zero_of,
)
from .monoidal import associator, braiding, check_completion_coherence, tensor_morphisms, tensor_objects, twist
from .algebra import induce, is_local, lattice_algebra, monodromy_scalar
from .lattice_voa import Rep0Tables, associator_via_chain, compare_with_reference, rep0_tables

__version__ = "0.1.0"
