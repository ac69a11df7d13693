"""Optimal q-ary codes correcting ``t`` symmetric errors and detecting all unidirectional errors.

A code is ``t``-EC-AUED exactly when every pair of words ``x, y`` has
``min(N(x, y), N(y, x)) >= t + 1``, where ``N(x, y)`` counts the positions
with ``x_i > y_i``.
"""

from .bounds import BoundReport, bvt_binary, gbt, gbt_plateau, gbt_value
from .core import (
    Code,
    ParameterError,
    VerificationError,
    Word,
    asymmetric_distance,
    count_above,
    hamming_distance,
    is_t_ec_aued,
    min_asymmetric_distance,
    min_hamming_distance,
    parse_code,
    read_code,
    write_code,
)
from .construct import (
    debruijn_code,
    extended_rs_code,
    juxtapose,
    mds_mirror_code,
    mirror_concatenate,
    near_factorization_code,
    shifted_near_factorization_code,
    trivial_code,
)
from .fields import field_make
from .search import certify, max_code_size, min_length, shrink

__all__ = [
    "BoundReport", "bvt_binary", "gbt", "gbt_plateau", "gbt_value",
    "Code", "ParameterError", "VerificationError", "Word", "asymmetric_distance", "count_above",
    "hamming_distance", "is_t_ec_aued", "min_asymmetric_distance", "min_hamming_distance",
    "parse_code", "read_code", "write_code",
    "debruijn_code", "extended_rs_code", "juxtapose", "mds_mirror_code", "mirror_concatenate",
    "near_factorization_code", "shifted_near_factorization_code", "trivial_code",
    "field_make", "certify", "max_code_size", "min_length", "shrink",
]
__version__ = "0.1.0"
