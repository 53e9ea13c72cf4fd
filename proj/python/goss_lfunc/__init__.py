"""Special polynomials, Goss L-values and twisted harmonic sums for the
Carlitz module over F_q[t] (ring "A0") and the Hayes module over
F_3[t, e] with e^2 = t^3 - t - 1 (ring "A1").

Series values are returned as dicts with the valuation in v-units, the
coefficient list as strings in the constant field, and a text rendering.
"""

from ._core import (
    GossError,
    l_value,
    lambda_value,
    period,
    rank_set,
    special_poly,
    verify_example,
    verify_prime,
)

__all__ = [
    "GossError",
    "l_value",
    "lambda_value",
    "period",
    "rank_set",
    "special_poly",
    "verify_example",
    "verify_prime",
]
