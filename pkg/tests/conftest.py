import pytest

from regulus.congruence import SeriesCache
from regulus.etaq import FQuotient, expand_fquotient
from regulus.series import ZZ


@pytest.fixture(scope="session")
def cache():
    """Shared expansion cache so the 2e6-coefficient series are built once."""
    return SeriesCache()


@pytest.fixture(scope="session")
def a3_series():
    """Exact expansion of f3^6/f1, long enough for the p=7 recurrence check."""
    return expand_fquotient(FQuotient.make({3: 6, 1: -1}), 7600, ZZ)


@pytest.fixture(scope="session")
def eta4_6_series():
    """Exact Fourier coefficients of eta(4z)^6 = q * f4^6, indexed from 0."""
    return expand_fquotient(FQuotient.make({4: 6}), 1999, ZZ).shift(1)
