"""Exact SL-invariant evaluation, signed Latin-type counting, Kronecker
coefficients, and orbit-closure diagnostics for the classical forms and
tensors of algebraic complexity (determinant, permanent, product of
variables, power sums, unit tensor, matrix multiplication tensor).

All arithmetic is exact: rationals everywhere, arbitrary-precision
integers for signed counts.
"""

from .budget import BudgetExhausted, Deadline
from .exact import ExactScalar, Partition, Permutation, centralizer_order, multinomial, partitions_of, perm_sign
from .kron import (
    MonoidReport,
    character_value,
    exponent_monoid,
    k_rect,
    kronecker,
    kronecker_class_sum,
    pleth_upper_bound,
    sl_invariant_bound,
)
from .latin import (
    signed_admissible_tables,
    signed_latin_annuli,
    signed_latin_cubes,
    signed_latin_squares,
)
from .spaces import (
    NamedObject,
    SparseForm,
    SparseTensor,
    apply_action,
    form_to_tensor,
    named_form,
    named_tensor,
    parse_form,
    parse_tensor,
    serialize_form,
    serialize_tensor,
)
from .tableaux import (
    Tableau,
    cyclic_tableau,
    eval_cyclic_invariant,
    eval_generic_invariant,
    eval_tableau_invariant,
    generic_tableau,
    power_sum_tableau,
    tableau_positions,
)
from .tensorinv import (
    eval_tensor_invariant,
    eval_tensor_invariant_format,
    eval_tensor_invariant_matmul,
)
from .theory import (
    MinimalDegreeReport,
    NormalityReport,
    PeriodReport,
    SemigroupReport,
    SupportCertificate,
    minimal_degree_report,
    nonnormality_flag,
    periods,
    polystable_form_support,
    polystable_tensor_support,
    semigroup_report,
)

__version__ = "0.1.0"
