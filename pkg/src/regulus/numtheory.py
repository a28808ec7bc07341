"""Quadratic symbols, Ramanujan tau, Hecke action, and the two-prime
eta-power recurrence used for the parity analysis of f3^6/f1.

Everything here is exact integer arithmetic; parity corollaries are taken
mod 2 only after the exact values are computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CostLimit, DomainError, TruncationTooSmall
from .reports import VerificationReport
from .series import RingSpec, TruncatedSeries, ZZ, from_coeffs, from_sparse

__all__ = [
    "is_prime",
    "legendre",
    "kronecker",
    "tau_exact",
    "tau_mod2",
    "CharacterSpec",
    "hecke_Tp",
    "NewmanParams",
    "omega",
    "newman_verify",
]

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond 64-bit inputs)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol via Euler's criterion; requires odd prime p."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"legendre symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extending the Jacobi symbol to all n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# Ramanujan tau
# ---------------------------------------------------------------------------

_TAU_COST_CAP = 5000


def tau_exact(nmax: int) -> list[int]:
    """tau(1..nmax) as exact integers; tau[0] is 0 by convention.

    Computes q * f1^24 as eight sparse triple-product multiplications.
    """
    if nmax > _TAU_COST_CAP:
        raise CostLimit(f"tau table capped at {_TAU_COST_CAP}, asked for {nmax}")
    if nmax < 1:
        raise DomainError("tau table needs nmax >= 1")
    trunc = nmax - 1

    def cube_terms():
        n = 0
        while True:
            e = n * (n + 1) // 2
            if e > trunc:
                return
            yield e, (2 * n + 1) * (-1 if n % 2 else 1)
            n += 1

    acc = from_sparse(ZZ, cube_terms(), trunc)
    for _ in range(7):
        acc = acc * from_sparse(ZZ, cube_terms(), trunc)
    return [0] + acc.coeffs()


def tau_mod2(n: int) -> int:
    """Parity of tau(n): odd exactly when n is an odd perfect square."""
    if n < 1:
        raise DomainError(f"tau is defined for n >= 1, got {n}")
    if n % 2 == 0:
        return 0
    s = math.isqrt(n)
    return 1 if s * s == n else 0


# ---------------------------------------------------------------------------
# Hecke action
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterSpec:
    """Real character d -> kronecker(discriminant, d); None = trivial."""

    discriminant: int | None = None

    @property
    def is_trivial(self) -> bool:
        return self.discriminant is None or self.discriminant == 1

    def __call__(self, d: int) -> int:
        if self.is_trivial:
            return 1
        return kronecker(self.discriminant, d)


def hecke_Tp(
    series: TruncatedSeries,
    p: int,
    weight: int,
    chi: CharacterSpec = CharacterSpec(),
) -> TruncatedSeries:
    """Prime-index Hecke action on a q-expansion indexed from exponent 0.

    result(n) = a(p*n) + chi(p) * p^(weight-1) * a(n/p), with a() read as 0
    at negative or non-integral indices.
    """
    if not is_prime(p):
        raise DomainError(f"Hecke operator index must be prime, got {p}")
    scale = chi(p) * p ** (weight - 1)
    out = []
    for n in range(series.trunc // p + 1):
        v = series.at(p * n)
        if n % p == 0:
            v += scale * series.at(n // p)
        out.append(v)
    return from_coeffs(series.ring, out)


# ---------------------------------------------------------------------------
# Newman recurrence for phi = prod (1-x^n)^r (1-x^{nq})^s
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewmanParams:
    """Parameters of the two-prime eta-power product and its recurrence."""

    r: int
    s: int
    qprime: int
    p: int

    def __post_init__(self):
        if self.r == 0 or self.s == 0:
            raise DomainError("r and s must be nonzero")
        if (self.r - self.s) % 2 == 0:
            raise DomainError("r and s must differ in parity")
        if not is_prime(self.qprime) or not is_prime(self.p):
            raise DomainError("qprime and p must be prime")
        if self.qprime == self.p:
            raise DomainError("qprime and p must be distinct")

    @property
    def epsilon(self) -> Fraction:
        return Fraction(self.r + self.s, 2)

    @property
    def t(self) -> Fraction:
        return Fraction(self.r + self.s * self.qprime, 24)

    def delta(self) -> int:
        d = self.t * (self.p**2 - 1)
        if d.denominator != 1:
            raise DomainError(
                f"t*(p^2-1) = {d} is not an integer for p={self.p}"
            )
        return int(d)

    def theta_symbol(self) -> int:
        """Legendre symbol (theta | p) with theta = +-2*qprime^s.

        Only the even-s case is supported: there qprime^s is a perfect
        square and the ambiguous sign prefactor is inert, so the symbol
        collapses to (2 | p).
        """
        if self.s % 2:
            raise DomainError("theta symbol is only defined here for even s")
        return legendre(2, self.p)


def omega(p: int, aseries: TruncatedSeries) -> int:
    """Parity-determining constant for the f3^6/f1 coefficient recurrence.

    omega(p) = a(17(p^2-1)/24) + p * (2|p) * (-17(p^2-1)/24 | p), where a()
    are the exact coefficients supplied in `aseries`.
    """
    if p < 5 or not is_prime(p):
        raise DomainError(f"omega needs a prime p >= 5, got {p}")
    if not aseries.ring.is_exact:
        raise DomainError("omega needs the exact-integer expansion")
    idx = 17 * (p * p - 1) // 24
    if aseries.trunc < idx:
        raise TruncationTooSmall(
            f"omega({p}) needs coefficient {idx}, trunc is {aseries.trunc}"
        )
    return aseries.at(idx) + p * legendre(2, p) * legendre(-idx, p)


def newman_verify(
    params: NewmanParams, phiseries: TruncatedSeries, nmax: int
) -> VerificationReport:
    """Exact check of the three-term coefficient recurrence of phi.

    Verifies, for 0 <= n <= nmax,

        a(p^2 n + D) = (w - theta_sym * p^(eps-3/2) * ((n-D)|p)) * a(n)
                       - p^(2eps-2) * a((n-D)/p^2)

    where D = t(p^2-1), w = a(D) + theta_sym * p^(eps-3/2) * ((-D)|p), and
    coefficients at negative or non-integral indices are 0.
    """
    if not phiseries.ring.is_exact:
        raise DomainError("newman_verify needs the exact-integer expansion")
    p = params.p
    delta = params.delta()
    need = p * p * nmax + delta
    if phiseries.trunc < need:
        raise TruncationTooSmall(
            f"need trunc >= {need}, have {phiseries.trunc}"
        )
    e1 = params.r + params.s - 2  # 2*epsilon - 2
    e2 = (params.r + params.s - 3) // 2  # epsilon - 3/2
    theta_sym = params.theta_symbol()
    w = phiseries.at(delta) + theta_sym * p**e2 * legendre(-delta, p)
    counterexample = None
    for n in range(nmax + 1):
        lhs = phiseries.at(p * p * n + delta)
        gamma_n = w - theta_sym * p**e2 * legendre(n - delta, p)
        corr = 0
        diff = n - delta
        if diff >= 0 and diff % (p * p) == 0:
            corr = phiseries.at(diff // (p * p))
        rhs = gamma_n * phiseries.at(n) - p**e1 * corr
        if lhs != rhs:
            counterexample = (n, lhs - rhs)
            break
    return VerificationReport(
        claim_id=f"newman(r={params.r},s={params.s},q={params.qprime},p={p})",
        n_max=nmax,
        passed=counterexample is None,
        counterexample=counterexample,
        trunc_used=phiseries.trunc,
    )
