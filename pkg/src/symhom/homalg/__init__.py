from .core import (
    AbelianGroup,
    IntMatrix,
    SnfResult,
    bareiss_determinant,
    cokernel,
    coordinates_of_cycle,
    homology,
    homology_mod_p,
    matmul,
    matvec,
    rank_mod_p,
    read_matrix,
    smith_normal_form,
    unimodular_inverse,
    write_matrix,
)
from ._kernels import available_backends, default_backend

__all__ = [
    "AbelianGroup",
    "IntMatrix",
    "SnfResult",
    "available_backends",
    "bareiss_determinant",
    "cokernel",
    "coordinates_of_cycle",
    "default_backend",
    "homology",
    "homology_mod_p",
    "matmul",
    "matvec",
    "rank_mod_p",
    "read_matrix",
    "smith_normal_form",
    "unimodular_inverse",
    "write_matrix",
]
