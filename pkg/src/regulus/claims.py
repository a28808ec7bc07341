"""Declarative claim catalog: every congruence family gets a generator that
expands theorem parameters into concrete claims, enforcing the stated side
conditions (quadratic-residue filters, divisibility constraints) as it goes.

Claim ids are stable strings of the form ``<anchor>(<params>):<a>n+<b>%<M>``
and the default catalog drives both the CLI's ``verify --theorem all`` and
the regression suite.
"""

from __future__ import annotations

import re
from math import gcd

from .congruence import (
    CongruenceClaim,
    ConditionalClaim,
    ProgressionRef,
    RelationClaim,
)
from .errors import SideConditionViolated, UnknownSelection
from .etaq import FQuotient, expand_fquotient, tuple_regular_fq
from .numtheory import is_prime, legendre, omega, tau_mod2
from .series import ZZ

__all__ = [
    "T2",
    "T4",
    "PARTITION",
    "PED",
    "A3",
    "series_by_name",
    "generate_family",
    "theorem_ids",
    "fixed_claims",
    "default_claims",
    "KNOWN_FALSE_IDS",
]

T2 = tuple_regular_fq(2, 3)
T4 = tuple_regular_fq(4, 3)
PARTITION = FQuotient.make({1: -1})
PED = FQuotient.make({4: 1, 1: -1})
A3 = FQuotient.make({3: 6, 1: -1})

_SERIES_REGISTRY = {
    "T2": T2,
    "T4": T4,
    "partition": PARTITION,
    "ped": PED,
    "a3": A3,
}


def series_by_name(name: str) -> FQuotient:
    """Resolve a series name ("T2", "T3,5", "ped", ...) or f-quotient literal."""
    if name in _SERIES_REGISTRY:
        return _SERIES_REGISTRY[name]
    m = re.fullmatch(r"T(\d+)(?:,(\d+))?", name)
    if m:
        ell = int(m.group(1))
        k = int(m.group(2)) if m.group(2) else 3
        return tuple_regular_fq(ell, k)
    return FQuotient.parse(name)


def _cid(base: str, a: int, b: int, m: int) -> str:
    return f"{base}:{a}n+{b}%{m}"


def _claim(base, series, a, b, m, res=0, flt=(), prov="", tag="THEOREM"):
    return CongruenceClaim(
        claim_id=_cid(base, a, b, m),
        series=series,
        a=a,
        b=b,
        modulus=m,
        expected_residue=res,
        index_filter=flt,
        provenance=prov,
        tag=tag,
    )


# ---------------------------------------------------------------------------
# family generators
# ---------------------------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise SideConditionViolated(message)


def family_prime_tuple(p: int, ell: int) -> list:
    """T_{l,p}(pn+r) == 0 (mod p) for r = 1..p-1."""
    _require(is_prime(p), f"p = {p} must be prime")
    _require(ell >= 2, f"l = {ell} must be >= 2")
    series = tuple_regular_fq(ell, p)
    base = f"prime-tuple(l={ell},p={p})"
    return [_claim(base, series, p, r, p) for r in range(1, p)]


def family_t0_1() -> list:
    """T2(9n+1) mod 6 is 3 at triangular n and 0 elsewhere."""
    return [
        ConditionalClaim(
            claim_id="t0.1:9n+1%6",
            series=T2,
            a=9,
            b=1,
            modulus=6,
            residue_rule="triangular:3",
            provenance="residue 3 exactly at triangular indices",
        )
    ]


def _geom9(j: int) -> int:
    # 1 + 9 + ... + 9^j
    return (9 ** (j + 1) - 1) // 8


def family_c1_4(alpha: int) -> list:
    """Four mod-24 progressions of T2 at powers of 3."""
    _require(alpha >= 0, "alpha must be >= 0")
    a1 = 3 ** (4 * alpha + 2)
    a2 = 3 ** (4 * alpha + 4)
    s1 = _geom9(2 * alpha)
    s2 = _geom9(2 * alpha + 1)
    tag = f"(alpha={alpha})"
    return [
        _claim("c0.1.4" + tag, T2, a1, s1 + 3 ** (4 * alpha + 1), 24),
        _claim("c1.1.4" + tag, T2, a1, s1 + 2 * 3 ** (4 * alpha + 1), 24),
        _claim("c2.1.4" + tag, T2, a2, s2 + 3 ** (4 * alpha + 3), 24),
        _claim("c3.1.4" + tag, T2, a2, s2 + 2 * 3 ** (4 * alpha + 3), 24),
    ]


def family_c1_4_1(alpha: int) -> list:
    """Three mod-3 progressions of T4 (as printed; the first is false at
    alpha = 0, see KNOWN_FALSE_IDS)."""
    _require(alpha >= 0, "alpha must be >= 0")
    tag = f"(alpha={alpha})"
    return [
        _claim(
            "e3.0" + tag,
            T4,
            3 ** (2 * alpha + 2),
            (17 * 3 ** (2 * alpha + 1) - 3) // 8,
            3,
        ),
        _claim(
            "e3.1" + tag,
            T4,
            3 ** (2 * alpha + 3),
            (19 * 3 ** (2 * alpha + 2) - 3) // 8,
            3,
        ),
        _claim(
            "e2.9" + tag,
            T4,
            27 * 5 ** (2 * alpha),
            (171 * 5 ** (2 * alpha) - 3) // 8,
            3,
        ),
    ]


def family_ped(alpha: int) -> list:
    """Mod-6 progressions of the even-parts-distinct count (first family as
    printed; false at alpha = 0, see KNOWN_FALSE_IDS)."""
    _require(alpha >= 0, "alpha must be >= 0")
    tag = f"(alpha={alpha})"
    return [
        _claim(
            "e2.7" + tag, PED, 3 ** (2 * alpha + 1), (17 * 9**alpha - 1) // 8, 6
        ),
        _claim(
            "e2.8" + tag,
            PED,
            3 ** (2 * alpha + 2),
            (19 * 3 ** (2 * alpha + 1) - 1) // 8,
            6,
        ),
    ]


def family_t0_1_0_0(p: int) -> list:
    """T2(9(pn+r)+1) == 0 (mod 6) for the quadratic-nonresidue offsets r."""
    _require(p >= 3 and p % 2 == 1 and is_prime(p), f"p = {p} must be an odd prime")
    out = []
    base = f"t0.1.0.0(p={p})"
    for r in range(1, p):
        if legendre(8 * r + 1, p) == -1:
            out.append(
                _claim(base, T2, 9 * p, 9 * r + 1, 6, prov=f"r={r}, (8r+1|{p})=-1")
            )
    return out


def family_t0_0_1(p: int, alpha: int) -> list:
    """T2(9 p^(2a+1) n + (9 p^(2a+2) - 1)/8) == 0 (mod 6) away from p | n."""
    _require(p >= 5 and is_prime(p), f"p = {p} must be a prime >= 5")
    _require(legendre(-2, p) == -1, f"(-2|{p}) must be -1")
    _require(alpha >= 0, "alpha must be >= 0")
    a = 9 * p ** (2 * alpha + 1)
    b = (9 * p ** (2 * alpha + 2) - 1) // 8
    return [
        _claim(
            f"t0.0.1(p={p},alpha={alpha})",
            T2,
            a,
            b,
            6,
            flt=(("not_div", p),),
            prov=f"quantified over n with {p} not dividing n",
        )
    ]


def omega_parity(p: int) -> tuple[int, int]:
    """(omega(p), parity) from the exact f3^6/f1 expansion."""
    idx = 17 * (p * p - 1) // 24
    aser = expand_fquotient(A3, idx, ZZ)
    w = omega(p, aser)
    return w, w % 2


def family_t2(p: int, k: int = 0) -> list:
    """Mod-12 families of T2 driven by the parity of omega(p).

    Even parity gives the p^(4k+4) family (plus, at p = 17, the fixed-point
    relation on T2(3n+2)); odd parity gives the p^(6k+6) family and the
    p^(6k+2) vanishing progression.  The two printed hypotheses of the
    relation ("17 does not divide 24n+17" and "n != 0 mod 17") coincide, so
    a single filter atom encodes both.
    """
    _require(p >= 5 and is_prime(p), f"p = {p} must be a prime >= 5")
    _require(k >= 0, "k must be >= 0")
    w, parity = omega_parity(p)
    prov = f"omega({p}) = {w} ({'even' if parity == 0 else 'odd'})"
    out = []
    if parity == 0:
        a = 3 * p ** (4 * k + 4)
        base = f"t2-i(p={p},k={k})"
        for j in range(1, p):
            b = 3 * p ** (4 * k + 3) * j + (17 * p ** (4 * k + 4) - 1) // 8
            out.append(_claim(base, T2, a, b, 12, prov=prov))
        if p == 17:
            out.append(
                RelationClaim(
                    claim_id=f"t3.3.1(k={k})",
                    lhs=ProgressionRef(T2, 3, 2),
                    rhs=ProgressionRef(
                        T2, 3 * 17 ** (4 * k + 2), (17 ** (4 * k + 3) - 1) // 8
                    ),
                    modulus=12,
                    index_filter=(("not_div", 17),),
                    provenance=prov + "; both printed hypotheses reduce to 17 not dividing n",
                )
            )
    else:
        a = 3 * p ** (6 * k + 6)
        base = f"t2-ii(p={p},k={k})"
        for j in range(1, p):
            b = 3 * p ** (6 * k + 5) * j + (17 * p ** (6 * k + 6) - 1) // 8
            out.append(_claim(base, T2, a, b, 12, prov=prov))
        c = (-17 * pow(24, -1, p)) % p
        out.append(
            _claim(
                f"t3.3(p={p},k={k})",
                T2,
                3 * p ** (6 * k + 2),
                (17 * p ** (6 * k + 2) - 1) // 8,
                12,
                flt=(("not_cong", c, p),),
                prov=prov,
            )
        )
    return out


def family_t4(p: int, k: int = 1) -> list:
    """Mod-2 progressions of T2 from the odd-square support of tau.

    Part (i) needs s = 1 mod 8 with (s|p) = -1; the k-indexed parts need
    tau(p) even, which holds for every prime since no prime is an odd
    square (checked anyway).
    """
    _require(p >= 3 and p % 2 == 1 and is_prime(p), f"p = {p} must be an odd prime")
    _require(k >= 1, "k must be >= 1")
    _require(tau_mod2(p) == 0, f"tau({p}) must be even")
    out = []
    for s in range(1, 8 * p + 1, 8):
        if legendre(s, p) != -1:
            continue
        out.append(
            _claim(f"e12.0.1(p={p},s={s})", T2, p, (s - 1) // 8, 2)
        )
        out.append(
            _claim(
                f"e12.0.2(p={p},s={s},k={k})",
                T2,
                p ** (2 * k + 1),
                (s * p ** (2 * k) - 1) // 8,
                2,
            )
        )
    for r in range(1, 8 * p + 1):
        if (r * p) % 8 != 1 or gcd(r, p) != 1:
            continue
        out.append(
            _claim(
                f"e12.0.3(p={p},r={r},k={k})",
                T2,
                p ** (2 * k + 2),
                (r * p ** (2 * k + 1) - 1) // 8,
                2,
            )
        )
    return out


def family_thm1_00(p: int, k: int = 0) -> list:
    """Same-prime corollary: T2(9 p^(2k+2) n + 9 p^(2k+1) j + (9 p^(2k+2)-1)/8)
    == 0 (mod 6) for j = 1..p-1."""
    _require(p >= 5 and is_prime(p), f"p = {p} must be a prime >= 5")
    _require(p % 8 != 1, f"p = {p} must not be 1 mod 8")
    _require(k >= 0, "k must be >= 0")
    a = 9 * p ** (2 * k + 2)
    base = f"thm1.00(p={p},k={k})"
    out = []
    for j in range(1, p):
        b = 9 * p ** (2 * k + 1) * j + (9 * p ** (2 * k + 2) - 1) // 8
        out.append(_claim(base, T2, a, b, 6))
    return out


def family_thm1_00_general(primes: tuple[int, ...]) -> list:
    """Distinct-prime form over p_1..p_{k+1}, j running mod the last prime."""
    _require(len(primes) >= 1, "need at least one prime")
    for p in primes:
        _require(p >= 5 and is_prime(p), f"p = {p} must be a prime >= 5")
        _require(p % 8 != 1, f"p = {p} must not be 1 mod 8")
    plast = primes[-1]
    lead = 1
    for p in primes[:-1]:
        lead *= p * p
    a = 9 * lead * plast * plast
    base = f"thm1.00-general(primes={','.join(map(str, primes))})"
    out = []
    for j in range(1, plast):
        num = 9 * lead * plast * (8 * j + plast) - 1
        assert num % 8 == 0
        out.append(_claim(base, T2, a, num // 8, 6))
    return out


def family_conjp(p: int, t: int) -> list:
    """Conjectured mod-6 family at composite leading coefficient 9 t^2."""
    _require(p >= 5 and is_prime(p), f"p = {p} must be a prime >= 5")
    _require(legendre(-2, p) == -1, f"(-2|{p}) must be -1")
    _require(t >= 1 and gcd(t, 6) == 1, f"t = {t} must be coprime to 6")
    _require(t % p == 0, f"p = {p} must divide t = {t}")
    a = 9 * t * t
    base = f"conjp(p={p},t={t})"
    out = []
    for j in range(1, p):
        b = 9 * t * t // p * j + (57 * t * t - 1) // 8
        out.append(_claim(base, T2, a, b, 6, tag="CONJECTURE"))
    return out


def family_t2_chain(alpha: int) -> list:
    """Mod-24 self-relations of T2(3n+1) under the 3-adic index maps."""
    _require(alpha >= 0, "alpha must be >= 0")
    sum_even = sum(9**i for i in range(0, 2 * alpha + 1))
    sum_odd = sum(9**i for i in range(0, 2 * alpha + 2))
    return [
        RelationClaim(
            claim_id=f"e1.7(alpha={alpha})",
            lhs=ProgressionRef(T2, 3, 1, scalar=3),
            rhs=ProgressionRef(T2, 3 ** (4 * alpha + 3), sum_odd),
            modulus=24,
        ),
        RelationClaim(
            claim_id=f"e1.8(alpha={alpha})",
            lhs=ProgressionRef(T2, 3, 1),
            rhs=ProgressionRef(T2, 3 ** (4 * alpha + 1), sum_even),
            modulus=24,
        ),
    ]


def family_ped_relation(alpha: int) -> list:
    """ped(9n+7) matches its 5-adic magnifications mod 24."""
    _require(alpha >= 0, "alpha must be >= 0")
    return [
        RelationClaim(
            claim_id=f"e3.2(alpha={alpha})",
            lhs=ProgressionRef(PED, 9, 7),
            rhs=ProgressionRef(
                PED, 9 * 25**alpha, (57 * 25**alpha - 1) // 8
            ),
            modulus=24,
        )
    ]


_THEOREMS = {
    "prime-tuple": family_prime_tuple,
    "t0.1": family_t0_1,
    "c1.4": family_c1_4,
    "c1.4.1": family_c1_4_1,
    "ped": family_ped,
    "t0.1.0.0": family_t0_1_0_0,
    "t0.0.1": family_t0_0_1,
    "t2": family_t2,
    "t4": family_t4,
    "thm1.00": family_thm1_00,
    "thm1.00-general": family_thm1_00_general,
    "conjp": family_conjp,
    "t2-chain": family_t2_chain,
    "e3.2": family_ped_relation,
}


_DEFAULT_GRID = {
    "prime-tuple": [
        {"p": p, "ell": ell} for p in (2, 3, 5, 7) for ell in (2, 3, 4)
    ],
    "t0.1": [{}],
    "c1.4": [{"alpha": a} for a in (0, 1)],
    "c1.4.1": [{"alpha": a} for a in (0, 1, 2)],
    "ped": [{"alpha": a} for a in (0, 1)],
    "t0.1.0.0": [{"p": 7}],
    "t0.0.1": [{"p": 5, "alpha": a} for a in (0, 1)],
    "t2": [{"p": 5, "k": 0}, {"p": 17, "k": 0}],
    "t4": [{"p": 3, "k": 1}, {"p": 7, "k": 1}],
    "thm1.00": [{"p": 5, "k": 0}],
    "thm1.00-general": [{"primes": (5, 7)}],
    "conjp": [{"p": 5, "t": 5}],
    "t2-chain": [{"alpha": a} for a in (0, 1)],
    "e3.2": [{"alpha": a} for a in (0, 1)],
}


def theorem_ids() -> list[str]:
    return sorted(_THEOREMS)


def theorem_params(theorem_id: str) -> list[dict]:
    """Default parameter grid for a theorem family."""
    if theorem_id not in _DEFAULT_GRID:
        raise UnknownSelection(f"unknown theorem {theorem_id!r}")
    return [dict(d) for d in _DEFAULT_GRID[theorem_id]]


def generate_family(theorem_id: str, **params) -> list:
    try:
        generator = _THEOREMS[theorem_id]
    except KeyError:
        raise UnknownSelection(f"unknown theorem {theorem_id!r}") from None
    return generator(**params)


# ---------------------------------------------------------------------------
# fixed claims and the default catalog
# ---------------------------------------------------------------------------


def fixed_claims() -> list:
    return [
        _claim("ramanujan-5", PARTITION, 5, 4, 5),
        _claim("ramanujan-7", PARTITION, 7, 5, 7),
        _claim("ramanujan-11", PARTITION, 11, 6, 11),
        _claim("e0.5", T2, 9, 4, 24),
        _claim("e0.6", T2, 9, 7, 24),
        _claim("e1.2", T2, 81, 37, 24),
        _claim("e1.3", T2, 81, 64, 24),
        _claim("e2.6", PED, 9, 7, 12),
        _claim("t4-concluding", T4, 81, 57, 12),
        RelationClaim(
            claim_id="e1.5",
            lhs=ProgressionRef(T2, 3, 1, scalar=3),
            rhs=ProgressionRef(T2, 27, 10),
            modulus=24,
        ),
        RelationClaim(
            claim_id="e1.6",
            lhs=ProgressionRef(T2, 3, 1),
            rhs=ProgressionRef(T2, 243, 91),
            modulus=24,
        ),
    ]


# Family instances that are numerically false as printed (first-family
# alpha misindexing: ped(2) = 2 and T4(6) = 194 break the alpha = 0 case).
# Generators still emit them; the default catalog leaves them out so a
# full verification run is expected to be all green.
KNOWN_FALSE_IDS = frozenset(
    {
        "e3.0(alpha=0):9n+6%3",
        "e2.7(alpha=0):3n+2%6",
    }
)


def default_claims() -> list:
    """The standard desk-scale selection exercised by `verify --theorem all`."""
    claims = fixed_claims()
    for theorem_id in theorem_ids():
        for params in theorem_params(theorem_id):
            claims += generate_family(theorem_id, **params)
    claims = [c for c in claims if c.claim_id not in KNOWN_FALSE_IDS]
    return sorted(claims, key=lambda c: c.claim_id)
