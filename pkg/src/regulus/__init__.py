"""regulus: exact q-series arithmetic and mechanical verification of
congruence families for k-tuple l-regular partition counts."""

from .series import RingSpec, TruncatedSeries, ZZ, from_coeffs, make_constant
from .etaq import (
    FQuotient,
    borwein_a_series,
    expand_f,
    expand_fquotient,
    jacobi_cube_series,
    tuple_regular_fq,
    verify_identity,
)
from .congruence import (
    CongruenceClaim,
    ProgressionRef,
    SeriesCache,
    density_scan,
    discover,
    verify_instance,
)

__version__ = "0.1.0"

__all__ = [
    "RingSpec",
    "TruncatedSeries",
    "ZZ",
    "from_coeffs",
    "make_constant",
    "FQuotient",
    "expand_f",
    "expand_fquotient",
    "jacobi_cube_series",
    "borwein_a_series",
    "tuple_regular_fq",
    "verify_identity",
    "CongruenceClaim",
    "ProgressionRef",
    "SeriesCache",
    "density_scan",
    "discover",
    "verify_instance",
    "__version__",
]
