"""Numerically stable closed-form eigenvalues of 3x3 matrices."""
from .eigensolver import (
    EigenTriple,
    NonRealSpectrum,
    NotSymmetric,
    eigvals,
    eigvals_naive,
    eigvalss,
    triple_angle,
)
from .invariants import (
    AlgorithmVariant,
    InvariantSet,
    disc_naive,
    disc_stable,
    i1,
    invariant_set,
    j2_naive,
    j2_stable,
    j2_tensor,
    j3_naive,
    j3_stable,
    j3_tensor,
    jacobian_disc,
    jacobian_j2,
    jacobian_j3,
)
from .mat3 import EPS, SingularMatrix, mat3

__all__ = [
    "EPS",
    "AlgorithmVariant",
    "EigenTriple",
    "InvariantSet",
    "NonRealSpectrum",
    "NotSymmetric",
    "SingularMatrix",
    "disc_naive",
    "disc_stable",
    "eigvals",
    "eigvals_naive",
    "eigvalss",
    "i1",
    "invariant_set",
    "j2_naive",
    "j2_stable",
    "j2_tensor",
    "j3_naive",
    "j3_stable",
    "j3_tensor",
    "jacobian_disc",
    "jacobian_j2",
    "jacobian_j3",
    "mat3",
    "triple_angle",
]
