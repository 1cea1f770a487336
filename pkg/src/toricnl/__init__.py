"""Exact graded algebra over Cox rings of simplicial toric varieties:
class groups, Jacobian rings, Cox-Gorenstein ideals, Cayley trick and the
arithmetic of the asymptotic Noether-Lefschetz bound."""
from .asymptotics import (
    codim_bound,
    delta_upper,
    nl_hypothesis_report,
    step1_coefficient,
    step3_socle_bounds,
)
from .cox import (
    CoxRing,
    Poly,
    euler_derivative,
    irrelevant_generators,
    monomial_basis,
    multiplication_surjective,
    multiply,
    parse_poly,
    partial_derivative,
    random_poly,
)
from .errors import ToricError
from .fan import Fan, fan_from_json, load_fan, poincare_polynomial, validate_fan
from .grading import (
    ClassGroup,
    DivisorClass,
    anticanonical,
    compute_class_group,
    degree_of,
    effective_predecessors,
    is_ample,
    is_effective,
    is_nef,
    m_beta,
)
from .hodge import (
    cayley,
    hypersurface_prim_hodge,
    intersection_prim_hodge,
    jacobian_ideal,
    nondegeneracy_certificate,
    quasi_smooth_certificate,
    toric_jacobian_ideal,
)
from .ideals import (
    GradedIdeal,
    contains,
    emptiness_certificate,
    pairing_report,
    piece_dimension,
    point_witness,
    quotient_dimension,
    socle_functional,
    verify_cox_gorenstein,
)

__version__ = "0.1.0"
