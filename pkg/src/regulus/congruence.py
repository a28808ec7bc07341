"""Claim verification engine: exact congruence checks over arithmetic
progressions of series coefficients, density measurement, and empirical
congruence discovery.

Claims are declarative data (see `claims` for the catalog); this module
expands the referenced f-quotients once per (series, modulus) through a
thread-safe cache and runs vectorized residue checks against the numpy
coefficient arrays.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from math import gcd, lcm

import numpy as np

from .errors import BudgetExceeded, DomainError, TruncationTooSmall
from .etaq import FQuotient, expand_fquotient
from .oracles import is_triangular
from .reports import DensityCheckpoint, DensityReport, VerificationReport
from .series import RingSpec, TruncatedSeries, ZZ

__all__ = [
    "DEFAULT_BUDGET",
    "CongruenceClaim",
    "ProgressionRef",
    "RelationClaim",
    "ConditionalClaim",
    "SeriesCache",
    "verify_instance",
    "verify_relation",
    "verify_conditional",
    "verify_any",
    "density_scan",
    "discover",
]

DEFAULT_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# index filters: conjunctions of residue-avoidance atoms
# ---------------------------------------------------------------------------


def _filter_mask(atoms: tuple, count: int) -> np.ndarray:
    """Boolean mask over n = 0..count-1 of indices the claim quantifies over."""
    mask = np.ones(count, dtype=bool)
    n = np.arange(count)
    for atom in atoms:
        kind = atom[0]
        if kind == "not_div":
            mask &= n % atom[1] != 0
        elif kind == "not_cong":
            _, c, p = atom
            mask &= n % p != c % p
        else:
            raise DomainError(f"unknown filter atom {atom!r}")
    return mask


def _filter_json(atoms: tuple) -> list:
    return [list(a) for a in atoms]


def _filter_from_json(data) -> tuple:
    return tuple(tuple(a) for a in (data or ()))


# ---------------------------------------------------------------------------
# claim types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceClaim:
    """coefficient(a*n + b) == expected_residue (mod modulus) for filtered n."""

    claim_id: str
    series: FQuotient
    a: int
    b: int
    modulus: int
    expected_residue: int = 0
    index_filter: tuple = ()
    provenance: str = ""
    tag: str = "THEOREM"

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise DomainError(f"progression ({self.a}, {self.b}) is invalid")
        if self.modulus < 2:
            raise DomainError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 <= self.expected_residue < self.modulus:
            raise DomainError("expected residue must lie in [0, modulus)")

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "series": self.series.as_json(),
            "a": self.a,
            "b": self.b,
            "modulus": self.modulus,
            "expected_residue": self.expected_residue,
            "filter": _filter_json(self.index_filter),
            "provenance": self.provenance,
            "tag": self.tag,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CongruenceClaim":
        return cls(
            claim_id=data["claim_id"],
            series=FQuotient.from_json(data["series"]),
            a=int(data["a"]),
            b=int(data["b"]),
            modulus=int(data["modulus"]),
            expected_residue=int(data.get("expected_residue", 0)),
            index_filter=_filter_from_json(data.get("filter")),
            provenance=data.get("provenance", ""),
            tag=data.get("tag", "THEOREM"),
        )


@dataclass(frozen=True)
class ProgressionRef:
    """scalar * coefficient(a*n + b) of a named f-quotient series."""

    series: FQuotient
    a: int = 1
    b: int = 0
    scalar: int = 1


@dataclass(frozen=True)
class RelationClaim:
    """Coefficientwise congruence of two extracted progressions."""

    claim_id: str
    lhs: ProgressionRef
    rhs: ProgressionRef
    modulus: int
    index_filter: tuple = ()
    provenance: str = ""
    tag: str = "THEOREM"


def _triangular_residue_array(count: int, value: int) -> np.ndarray:
    expected = np.zeros(count, dtype=np.int64)
    m = 0
    while m * (m + 1) // 2 < count:
        expected[m * (m + 1) // 2] = value
        m += 1
    return expected


RESIDUE_RULES = {
    # residue `value` exactly at triangular indices, 0 elsewhere
    "triangular:3": lambda count: _triangular_residue_array(count, 3),
}


@dataclass(frozen=True)
class ConditionalClaim:
    """Index-dependent expected residue, driven by a named oracle rule."""

    claim_id: str
    series: FQuotient
    a: int
    b: int
    modulus: int
    residue_rule: str
    provenance: str = ""
    tag: str = "THEOREM"

    def __post_init__(self):
        if self.residue_rule not in RESIDUE_RULES:
            raise DomainError(f"unknown residue rule {self.residue_rule!r}")


Claim = CongruenceClaim | RelationClaim | ConditionalClaim


# ---------------------------------------------------------------------------
# expansion cache
# ---------------------------------------------------------------------------


class SeriesCache:
    """At-most-once expansion of f-quotients, shared by concurrent readers.

    A cached entry at modulus M' and truncation N' serves any request with
    M | M' and N <= N' by reduction and prefixing.  Non-covering requests
    re-expand at the joint modulus lcm and max truncation and replace the
    entry.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._mod_entries: dict[tuple, TruncatedSeries] = {}
        self._exact_entries: dict[tuple, TruncatedSeries] = {}

    @staticmethod
    def _key(fq: FQuotient) -> tuple:
        return (fq.scalar, fq.factors)

    def get(self, fq: FQuotient, modulus: int | None, trunc: int) -> TruncatedSeries:
        key = self._key(fq)
        if modulus is None:
            with self._lock:
                entry = self._exact_entries.get(key)
                if entry is None or entry.trunc < trunc:
                    entry = expand_fquotient(fq, trunc, ZZ)
                    self._exact_entries[key] = entry
                return entry.prefix(trunc)
        with self._lock:
            entry = self._mod_entries.get(key)
            if (
                entry is None
                or entry.trunc < trunc
                or entry.ring.modulus % modulus != 0
            ):
                joint = modulus
                target = trunc
                if entry is not None:
                    joint = lcm(joint, entry.ring.modulus)
                    target = max(target, entry.trunc)
                entry = expand_fquotient(fq, target, RingSpec.mod(joint))
                self._mod_entries[key] = entry
            out = entry.prefix(trunc)
        if out.ring.modulus != modulus:
            out = out.reduce_mod(modulus)
        return out


_shared_cache = SeriesCache()


def _progression_values(
    ref: ProgressionRef,
    modulus: int,
    n_max: int,
    cache: SeriesCache,
    budget: int,
) -> np.ndarray:
    trunc = ref.a * n_max + ref.b
    if trunc > budget:
        raise BudgetExceeded(
            f"progression {ref.a}n+{ref.b} at n_max={n_max} needs "
            f"truncation {trunc} > budget {budget}"
        )
    series = cache.get(ref.series, modulus, trunc)
    vals = series.array()[ref.b :: ref.a][: n_max + 1]
    if ref.scalar != 1:
        vals = (vals * (ref.scalar % modulus)) % modulus
    return vals


def _derive_n_max(a: int, b: int, n_max: int | None, budget: int) -> int:
    cap = (budget - b) // a
    if n_max is None:
        n_max = cap
    if n_max > cap:
        n_max = cap
    if n_max < 0:
        raise BudgetExceeded(
            f"progression {a}n+{b} does not fit in budget {budget}"
        )
    return n_max


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_instance(
    claim: CongruenceClaim,
    n_max: int | None = None,
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Exact check of coefficient(a*n+b) == expected (mod M) for n <= n_max.

    n_max defaults to, and is clamped at, the largest index fitting the
    truncation budget; the report's n_max field records what was checked.
    """
    cache = cache or _shared_cache
    n_max = _derive_n_max(claim.a, claim.b, n_max, budget)
    ref = ProgressionRef(claim.series, claim.a, claim.b)
    vals = _progression_values(ref, claim.modulus, n_max, cache, budget)
    mask = _filter_mask(claim.index_filter, len(vals))
    bad = np.nonzero((vals != claim.expected_residue) & mask)[0]
    counterexample = None
    if len(bad):
        n = int(bad[0])
        counterexample = (n, int(vals[n]))
    return VerificationReport(
        claim_id=claim.claim_id,
        n_max=n_max,
        passed=counterexample is None,
        counterexample=counterexample,
        trunc_used=claim.a * n_max + claim.b,
        tag=claim.tag,
        notes=claim.provenance,
    )


def verify_relation(
    claim: RelationClaim,
    n_max: int | None = None,
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Exact congruence of two progressions, index by index."""
    cache = cache or _shared_cache
    n_lhs = _derive_n_max(claim.lhs.a, claim.lhs.b, n_max, budget)
    n_rhs = _derive_n_max(claim.rhs.a, claim.rhs.b, n_max, budget)
    n_max = min(n_lhs, n_rhs)
    lvals = _progression_values(claim.lhs, claim.modulus, n_max, cache, budget)
    rvals = _progression_values(claim.rhs, claim.modulus, n_max, cache, budget)
    mask = _filter_mask(claim.index_filter, n_max + 1)
    bad = np.nonzero((lvals != rvals) & mask)[0]
    counterexample = None
    if len(bad):
        n = int(bad[0])
        counterexample = (n, int(lvals[n]) - int(rvals[n]))
    return VerificationReport(
        claim_id=claim.claim_id,
        n_max=n_max,
        passed=counterexample is None,
        counterexample=counterexample,
        trunc_used=max(
            claim.lhs.a * n_max + claim.lhs.b, claim.rhs.a * n_max + claim.rhs.b
        ),
        tag=claim.tag,
        notes=claim.provenance,
    )


def verify_conditional(
    claim: ConditionalClaim,
    n_max: int | None = None,
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """Check against an index-dependent expected residue."""
    cache = cache or _shared_cache
    n_max = _derive_n_max(claim.a, claim.b, n_max, budget)
    ref = ProgressionRef(claim.series, claim.a, claim.b)
    vals = _progression_values(ref, claim.modulus, n_max, cache, budget)
    expected = RESIDUE_RULES[claim.residue_rule](len(vals)) % claim.modulus
    bad = np.nonzero(vals != expected)[0]
    counterexample = None
    if len(bad):
        n = int(bad[0])
        counterexample = (n, int(vals[n]))
    return VerificationReport(
        claim_id=claim.claim_id,
        n_max=n_max,
        passed=counterexample is None,
        counterexample=counterexample,
        trunc_used=claim.a * n_max + claim.b,
        tag=claim.tag,
        notes=claim.provenance,
    )


def verify_any(
    claim: Claim,
    n_max: int | None = None,
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    if isinstance(claim, CongruenceClaim):
        return verify_instance(claim, n_max, cache, budget)
    if isinstance(claim, RelationClaim):
        return verify_relation(claim, n_max, cache, budget)
    if isinstance(claim, ConditionalClaim):
        return verify_conditional(claim, n_max, cache, budget)
    raise DomainError(f"not a claim: {claim!r}")


def warm_cache(
    claims,
    n_max: int | None = None,
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> None:
    """Expand each referenced series once, at the joint modulus and the
    largest truncation any selected claim will request."""
    cache = cache or _shared_cache
    plan: dict[tuple, tuple[int, int]] = {}

    def note(series: FQuotient, a: int, b: int, modulus: int):
        try:
            n = _derive_n_max(a, b, n_max, budget)
        except BudgetExceeded:
            return
        key = SeriesCache._key(series)
        mod_acc, trunc_acc = plan.get(key, (1, 0))
        plan[key] = (lcm(mod_acc, modulus), max(trunc_acc, a * n + b))
        plan_series[key] = series

    plan_series: dict[tuple, FQuotient] = {}
    for claim in claims:
        if isinstance(claim, RelationClaim):
            for ref in (claim.lhs, claim.rhs):
                note(ref.series, ref.a, ref.b, claim.modulus)
        else:
            note(claim.series, claim.a, claim.b, claim.modulus)
    for key, (modulus, trunc) in plan.items():
        cache.get(plan_series[key], modulus, trunc)


# ---------------------------------------------------------------------------
# density and discovery
# ---------------------------------------------------------------------------


def density_scan(
    ref: ProgressionRef,
    modulus: int,
    residue: int,
    checkpoints: list[int],
    series_id: str = "",
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> DensityReport:
    """Exact counts of n in [0, X) with coefficient(a*n+b) == residue mod M."""
    cache = cache or _shared_cache
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if not checkpoints or min(checkpoints) < 1:
        raise DomainError("checkpoints must be positive")
    xs = sorted(set(int(x) for x in checkpoints))
    vals = _progression_values(ref, modulus, xs[-1] - 1, cache, budget)
    hits = vals == residue % modulus
    cum = np.cumsum(hits)
    points = tuple(DensityCheckpoint(x, int(cum[x - 1])) for x in xs)
    if not series_id:
        series_id = ref.series.label()
        if (ref.a, ref.b) != (1, 0):
            series_id += f" @ {ref.a}n+{ref.b}"
    return DensityReport(series_id, modulus, residue % modulus, points)


def discover(
    series: FQuotient,
    modulus: int,
    a_max: int,
    n_max: int,
    min_support: int = 16,
    cache: SeriesCache | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[tuple[int, int, int]]:
    """All (a <= a_max, b < a) whose progression is identically 0 mod M.

    Candidates found at n_max are re-verified on a doubled range (clamped
    to the available truncation); each must rest on at least `min_support`
    checked indices.  Results are empirical observations, not theorems.
    Returns (a, b, indices_checked) triples.
    """
    cache = cache or _shared_cache
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if a_max < 1 or n_max < 0:
        raise DomainError("a_max must be >= 1 and n_max >= 0")
    trunc = min(budget, 2 * a_max * n_max + a_max)
    arr = cache.get(series, modulus, trunc).array()
    zero = arr == 0
    out = []
    for a in range(1, a_max + 1):
        for b in range(a):
            sl = zero[b::a]
            first = sl[: n_max + 1]
            if len(first) < min_support or not first.all():
                continue
            confirm = sl[: 2 * n_max + 1]
            if not confirm.all():
                continue
            out.append((a, b, len(confirm)))
    return out
