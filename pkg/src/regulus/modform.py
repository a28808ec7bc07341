"""Eta-quotient modularity arithmetic: weight, transformation conditions,
Nebentypus character, cusp orders, and the tuple-regular B-series family.

All order computations are exact rationals; nothing here touches floats.
An eta quotient prod eta(d z)^{r_d} corresponds to the f-quotient
prod f_d^{r_d} with a q-power prefactor sum(d*r_d)/24, which is tracked
separately as an exact Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConditionsNotMet, HypothesisViolated, NotADivisor
from .etaq import FQuotient, expand_fquotient, tuple_regular_fq
from .numtheory import CharacterSpec, is_prime
from .reports import VerificationReport
from .series import RingSpec

__all__ = [
    "EtaQuotientSpec",
    "weight",
    "check_ono_conditions",
    "character_of",
    "cusp_order",
    "HolomorphyVerdict",
    "is_holomorphic",
    "b_series_spec",
    "b_series_min_level",
    "cusp_bound_value",
    "BSeriesReport",
    "b_series_check",
]


def divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Level N together with exponents r_d for each divisor d of N."""

    level: int
    exps: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, level: int, exps: dict[int, int]) -> "EtaQuotientSpec":
        if level < 1:
            raise ValueError(f"level must be >= 1, got {level}")
        items = []
        for d, r in sorted(exps.items()):
            if level % d != 0:
                raise NotADivisor(f"eta index {d} does not divide level {level}")
            if r != 0:
                items.append((int(d), int(r)))
        if not items:
            raise ValueError("eta quotient needs at least one nonzero exponent")
        return cls(level, tuple(items))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def fquotient(self) -> FQuotient:
        return FQuotient.make(self.as_dict())

    def q_prefactor(self) -> Fraction:
        """Exponent of the q-power prefactor, sum(d*r_d)/24."""
        return Fraction(sum(d * r for d, r in self.exps), 24)

    def label(self) -> str:
        parts = [f"eta({d})^{r}" if r != 1 else f"eta({d})" for d, r in self.exps]
        return f"N={self.level}; " + " ".join(parts)


def weight(spec: EtaQuotientSpec) -> Fraction:
    return Fraction(sum(r for _, r in spec.exps), 2)


def check_ono_conditions(spec: EtaQuotientSpec) -> str | None:
    """None when the quotient transforms with character on Gamma_0(level);
    otherwise the first failing condition, as text."""
    w = weight(spec)
    if w.denominator != 1:
        return f"weight {w} is not an integer"
    s1 = sum(d * r for d, r in spec.exps)
    if s1 % 24 != 0:
        return f"sum(d * r_d) = {s1} is not 0 mod 24"
    s2 = sum((spec.level // d) * r for d, r in spec.exps)
    if s2 % 24 != 0:
        return f"sum((N/d) * r_d) = {s2} is not 0 mod 24"
    return None


def _squarefree_kernel(n: int) -> int:
    """Product of the primes dividing n to an odd power, with sign."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    kernel = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                kernel *= p
        p += 1 if p == 2 else 2
    kernel *= n  # leftover prime
    return sign * kernel


def character_of(spec: EtaQuotientSpec) -> CharacterSpec:
    """Nebentypus character d -> ((-1)^weight * prod delta^r_delta | d).

    The defining integer is reduced to the fundamental discriminant of its
    square class, which evaluates identically on arguments coprime to the
    level.
    """
    reason = check_ono_conditions(spec)
    if reason is not None:
        raise ConditionsNotMet(reason)
    w = int(weight(spec))
    # track only parities of exponents; the full product can be astronomically large
    value = _squarefree_kernel(-1 if w % 2 else 1)
    for d, r in spec.exps:
        if r % 2:
            value *= _squarefree_kernel(d)
    m = _squarefree_kernel(value)
    if m == 1:
        return CharacterSpec(None)
    fundamental = m if m % 4 == 1 else 4 * m
    return CharacterSpec(fundamental)


def cusp_order(spec: EtaQuotientSpec, d: int) -> Fraction:
    """Order of vanishing at any cusp with denominator d (c-independent)."""
    n = spec.level
    if d < 1 or n % d != 0:
        raise NotADivisor(f"{d} does not divide level {n}")
    total = Fraction(0)
    for delta, r in spec.exps:
        g = math.gcd(d, delta)
        total += Fraction(g * g * r, math.gcd(d, n // d) * d * delta)
    return Fraction(n, 24) * total


@dataclass(frozen=True)
class HolomorphyVerdict:
    status: str  # "cusp" | "holomorphic" | "fail"
    orders: tuple[tuple[int, Fraction], ...]
    failing: tuple[int, Fraction] | None = None


def is_holomorphic(spec: EtaQuotientSpec) -> HolomorphyVerdict:
    """Evaluate the order at every cusp class; negative order is a failure,
    all positive makes a cusp form, all nonnegative a holomorphic form."""
    reason = check_ono_conditions(spec)
    if reason is not None:
        raise ConditionsNotMet(reason)
    orders = tuple((d, cusp_order(spec, d)) for d in divisors(spec.level))
    for d, o in orders:
        if o < 0:
            return HolomorphyVerdict("fail", orders, (d, o))
    status = "cusp" if all(o > 0 for _, o in orders) else "holomorphic"
    return HolomorphyVerdict(status, orders)


# ---------------------------------------------------------------------------
# the B-series family  eta(24*l z)^k eta(24 z)^{p^{a+m}-k} / eta(24 p^a z)^{p^m}
# ---------------------------------------------------------------------------


def _b_series_hypotheses(ell: int, p: int, a: int, m: int, k: int) -> None:
    if not is_prime(p):
        raise HypothesisViolated(f"p = {p} is not prime")
    if ell < 2:
        raise HypothesisViolated(f"l = {ell} must be >= 2")
    if k < 1:
        raise HypothesisViolated(f"k = {k} must be >= 1")
    if a < 1 or ell % p**a != 0 or ell % p ** (a + 1) == 0:
        raise HypothesisViolated(f"p^a = {p}^{a} must exactly divide l = {ell}")
    if m <= a:
        raise HypothesisViolated(f"m = {m} must exceed a = {a}")


def b_series_spec(ell: int, p: int, a: int, m: int, k: int) -> EtaQuotientSpec:
    """Eta-quotient data of the B-series at the stated level 576*l."""
    _b_series_hypotheses(ell, p, a, m, k)
    exps: dict[int, int] = {}
    for d, r in ((24 * ell, k), (24, p ** (a + m) - k), (24 * p**a, -(p**m))):
        exps[d] = exps.get(d, 0) + r
    return EtaQuotientSpec.make(576 * ell, exps)


def b_series_min_level(ell: int, p: int, a: int, m: int, k: int) -> int:
    """Smallest level 24*l*u whose second transformation condition holds,
    found by scanning u from 1; every eta index must also divide it."""
    _b_series_hypotheses(ell, p, a, m, k)
    value = k * (1 - ell) + ell * p ** (m - a) * (p ** (2 * a) - 1)
    u = 1
    while True:
        if (u * value) % 24 == 0:
            level = 24 * ell * u
            if level % (24 * p**a) == 0 and level % (24 * ell) == 0:
                return level
        u += 1


def cusp_bound_value(
    ell: int, p: int, a: int, m: int, k: int, t: int, s: int
) -> Fraction:
    """Cusp-order numerator (l/t^2)((p^{m+a}-k)/p^{2s} - p^{m-a}) + k for the
    divisor class 2^r1 3^r2 t p^s."""
    return (
        Fraction(ell, t * t)
        * (Fraction(p ** (m + a) - k, p ** (2 * s)) - p ** (m - a))
        + k
    )


def _k_bound(p: int, a: int, m: int) -> int:
    """Largest admissible k: p^{m+a}(1 - p^{2s-2a}) minimized over 0 <= s < a."""
    return p ** (m + a) - p ** (m + a - 2)


@dataclass(frozen=True)
class BSeriesReport:
    params: tuple[int, int, int, int, int]  # (l, p, a, m, k)
    congruence: VerificationReport
    stated_level: int
    min_level: int
    level_consistent: bool
    cusp_ok: bool
    min_cusp_order: Fraction
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.congruence.passed and self.level_consistent and self.cusp_ok


def b_series_check(
    ell: int, p: int, a: int, m: int, k: int, trunc: int
) -> BSeriesReport:
    """Check the three B-series facts at desk scale.

    (i) the expansion of the eta quotient is congruent mod p^m to
        sum T_{l,k}(n) q^{24n + k(l-1)};
    (ii) the stated level 576*l is consistent: a multiple of the minimal
        scanned level, with the transformation conditions holding there;
    (iii) all cusp orders are nonnegative, under p^{2a} >= l and
        k <= p^{m+a}(1 - p^{2s-2a}) for every s in [0, a).
    """
    _b_series_hypotheses(ell, p, a, m, k)
    if p ** (2 * a) < ell:
        raise HypothesisViolated(f"p^2a = {p**(2*a)} must be >= l = {ell}")
    kmax = _k_bound(p, a, m)
    if k > kmax:
        raise HypothesisViolated(f"k = {k} exceeds the bound {kmax}")

    spec = b_series_spec(ell, p, a, m, k)
    modulus = p**m
    offset = k * (ell - 1)
    assert spec.q_prefactor() == offset

    # (i) expansion congruence against the tuple-regular series
    ring = RingSpec.mod(modulus)
    lhs = expand_fquotient(spec.fquotient(), trunc, ring).shift(offset).prefix(trunc)
    tmax = (trunc - offset) // 24
    tuples = expand_fquotient(tuple_regular_fq(ell, k), tmax, ring)
    rhs = tuples.magnify(24).shift(offset)
    counterexample = None
    n = min(lhs.trunc, rhs.trunc)
    la, ra = lhs.array(), rhs.array()
    for i in range(n + 1):
        if la[i] != ra[i]:
            counterexample = (i, int(la[i]) - int(ra[i]))
            break
    congruence = VerificationReport(
        claim_id=f"bseries(l={ell},p={p},a={a},m={m},k={k})",
        n_max=n,
        passed=counterexample is None,
        counterexample=counterexample,
        trunc_used=trunc,
    )

    # (ii) level bookkeeping
    stated = 576 * ell
    minimal = b_series_min_level(ell, p, a, m, k)
    level_consistent = (
        stated % minimal == 0 and check_ono_conditions(spec) is None
    )

    # (iii) cusp orders at every divisor of the stated level
    verdict = is_holomorphic(spec)
    min_order = min(o for _, o in verdict.orders)
    cusp_ok = verdict.status != "fail"

    notes = ""
    if minimal != stated:
        notes = f"minimal scanned level is {minimal}; stated level {stated} is a multiple"
    return BSeriesReport(
        params=(ell, p, a, m, k),
        congruence=congruence,
        stated_level=stated,
        min_level=minimal,
        level_consistent=level_consistent,
        cusp_ok=cusp_ok,
        min_cusp_order=min_order,
        notes=notes,
    )
