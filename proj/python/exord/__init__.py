"""Exact order finding, derandomized primality testing and primitive-element
finding in finite fields, simulated on a sparse statevector engine."""

from ._core import (
    Group,
    GroupError,
    InternalError,
    LayoutError,
    ParameterError,
    amplify_demo,
    brute_order,
    chi_j,
    combine_elements,
    coprime_split,
    exact_p_success_probability,
    exact_success_probability,
    find_order,
    find_primitive,
    gamma_distribution,
    iterate_amplitudes,
    primality_test,
    primitive_roots,
    rep,
    trial_division_is_prime,
    uj_success_probability,
    update_divisor,
)

__all__ = [
    "Group",
    "GroupError",
    "InternalError",
    "LayoutError",
    "ParameterError",
    "amplify_demo",
    "brute_order",
    "chi_j",
    "combine_elements",
    "coprime_split",
    "exact_p_success_probability",
    "exact_success_probability",
    "find_order",
    "find_primitive",
    "gamma_distribution",
    "iterate_amplitudes",
    "primality_test",
    "primitive_roots",
    "rep",
    "trial_division_is_prime",
    "uj_success_probability",
    "update_divisor",
]

__version__ = "0.1.0"
