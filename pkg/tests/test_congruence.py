import json
import threading

import pytest

from regulus.claims import (
    KNOWN_FALSE_IDS,
    PARTITION,
    T2,
    T4,
    default_claims,
    fixed_claims,
    generate_family,
    series_by_name,
    theorem_ids,
    theorem_params,
)
from regulus.congruence import (
    CongruenceClaim,
    ConditionalClaim,
    ProgressionRef,
    RelationClaim,
    SeriesCache,
    density_scan,
    discover,
    verify_any,
    verify_conditional,
    verify_instance,
    verify_relation,
    warm_cache,
)
from regulus.errors import BudgetExceeded, DomainError, SideConditionViolated
from regulus.etaq import FQuotient, expand_fquotient, tuple_regular_fq
from regulus.oracles import count_tuple
from regulus.series import RingSpec, ZZ


# ---------------------------------------------------------------------------
# engine basics
# ---------------------------------------------------------------------------


def test_ramanujan_instances(cache):
    for claim in fixed_claims():
        if claim.claim_id.startswith("ramanujan-5"):
            rep = verify_instance(claim, 2000, cache)
            assert rep.passed and rep.n_max == 2000


def test_e05_instance(cache):
    claim = CongruenceClaim("e0.5", T2, 9, 4, 24)
    rep = verify_instance(claim, 10_000, cache)
    assert rep.passed


def test_corrupted_claim_fails_with_witness(cache):
    bogus = CongruenceClaim("bogus:9n+5%24", T2, 9, 5, 24)
    rep = verify_instance(bogus, 400, cache)
    assert not rep.passed
    n, value = rep.counterexample
    table = count_tuple(2, 3, 9 * n + 5)
    assert table[9 * n + 5] % 24 == value != 0


def test_conditional_t0_1(cache):
    claim = generate_family("t0.1")[0]
    rep = verify_conditional(claim, 500, cache)
    assert rep.passed
    series = cache.get(T2, 6, 9 * 50 + 1)
    assert series.at(9 * 0 + 1) == 3  # n = 0 is triangular
    assert series.at(9 * 2 + 1) == 0  # n = 2 is not


def test_relations(cache):
    e15 = RelationClaim(
        "e1.5",
        ProgressionRef(T2, 3, 1, scalar=3),
        ProgressionRef(T2, 27, 10),
        24,
    )
    assert verify_relation(e15, 3000, cache).passed
    e16 = RelationClaim(
        "e1.6", ProgressionRef(T2, 3, 1), ProgressionRef(T2, 243, 91), 24
    )
    assert verify_relation(e16, 400, cache).passed
    same = RelationClaim(
        "self", ProgressionRef(T2, 3, 1), ProgressionRef(T2, 3, 1), 24
    )
    assert verify_relation(same, 100, cache).passed


def test_engine_agrees_with_oracle_scan(cache):
    # every T-series claim small enough is re-checked against the DP tables
    tables = {}
    for claim in default_claims():
        if not isinstance(claim, CongruenceClaim):
            continue
        items = sorted(claim.series.as_dict().items())
        if len(items) != 2 or items[0][0] != 1 or items[0][1] >= 0:
            continue
        ell, k = items[1][0], items[1][1]
        n_max = (2000 - claim.b) // claim.a
        if n_max < 3:
            continue
        if (ell, k) not in tables:
            tables[ell, k] = count_tuple(ell, k, 2000)
        table = tables[ell, k]
        rep = verify_instance(claim, n_max, cache)
        direct = all(
            table[claim.a * n + claim.b] % claim.modulus == claim.expected_residue
            for n in range(n_max + 1)
            if _passes(claim.index_filter, n)
        )
        assert rep.passed == direct


def _passes(atoms, n):
    for atom in atoms:
        if atom[0] == "not_div" and n % atom[1] == 0:
            return False
        if atom[0] == "not_cong" and n % atom[2] == atom[1] % atom[2]:
            return False
    return True


def test_filter_is_not_vacuous(cache):
    # for t0.0.1 at p=5, some multiple of 5 must genuinely break the congruence
    series = cache.get(T2, 6, 45 * 500 + 28)
    violations = [
        n
        for n in range(0, 501, 5)
        if series.at(45 * n + 28) != 0
    ]
    assert violations, "filter would be vacuous"


def test_budget_handling(cache):
    # requested ranges clamp to the budget; the report records what ran
    claim = CongruenceClaim("big", T2, 1000, 0, 24)
    rep = verify_instance(claim, 10_000, cache, budget=100_000)
    assert rep.n_max == 100
    rep = verify_instance(claim, None, cache, budget=100_000)
    assert rep.n_max == 100
    hopeless = CongruenceClaim("hopeless", T2, 7, 500_000, 24)
    with pytest.raises(BudgetExceeded):
        verify_instance(hopeless, None, cache, budget=100_000)


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------


def test_cache_reuse_and_upgrade():
    cache = SeriesCache()
    s2 = cache.get(T2, 2, 100)
    s3 = cache.get(T2, 3, 150)
    s6 = cache.get(T2, 6, 120)
    direct = expand_fquotient(T2, 150, RingSpec.mod(6))
    assert s6.coeffs() == direct.prefix(120).coeffs()
    assert s2.coeffs() == [c % 2 for c in direct.prefix(100).coeffs()]
    assert s3.coeffs() == [c % 3 for c in direct.coeffs()]
    exact = cache.get(T2, None, 50)
    assert exact.ring.is_exact
    assert exact.coeffs() == [t for t in count_tuple(2, 3, 50).values]


def test_cache_concurrent_readers():
    cache = SeriesCache()
    results = []

    def worker(m):
        results.append(cache.get(T2, m, 2000).coeffs())

    threads = [threading.Thread(target=worker, args=(m,)) for m in (2, 3, 2, 6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(results) == 4


# ---------------------------------------------------------------------------
# density and discovery
# ---------------------------------------------------------------------------


def test_density_basics(cache):
    rep = density_scan(
        ProgressionRef(T2, 9, 1), 6, 0, [100, 1000], cache=cache
    )
    counts = [c.count for c in rep.checkpoints]
    assert counts == sorted(counts)
    assert all(0 <= c.proportion <= 1 for c in rep.checkpoints)
    with pytest.raises(DomainError):
        density_scan(ProgressionRef(T2, 9, 1), 6, 0, [0], cache=cache)
    with pytest.raises(DomainError):
        density_scan(ProgressionRef(T2, 9, 1), 1, 0, [10], cache=cache)


def test_density_constant_zero_series(cache):
    zero = FQuotient.make({}, scalar=24)
    rep = density_scan(ProgressionRef(zero), 24, 0, [10, 100], cache=cache)
    assert [c.proportion for c in rep.checkpoints] == [1.0, 1.0]


def test_density_pentagonal_support(cache):
    rep = density_scan(
        ProgressionRef(series_by_name("f1")), 2, 0, [1000, 10_000], cache=cache
    )
    assert rep.checkpoints[0].proportion < rep.checkpoints[1].proportion
    assert rep.checkpoints[1].proportion > 0.98


def test_discover(cache):
    found = discover(T2, 24, 9, 400, cache=cache)
    pairs = {(a, b) for a, b, _ in found}
    assert pairs == {(9, 4), (9, 7)}
    with pytest.raises(DomainError):
        discover(T2, 1, 9, 50, cache=cache)


def test_discover_matches_reverification(cache):
    found = discover(T4, 12, 81, 300, cache=cache)
    assert (81, 57) in {(a, b) for a, b, _ in found}
    for a, b, _ in found:
        claim = CongruenceClaim(f"re:{a}n+{b}%12", T4, a, b, 12)
        assert verify_instance(claim, 600, cache).passed


# ---------------------------------------------------------------------------
# claim catalog
# ---------------------------------------------------------------------------


def test_known_false_instances_fail(cache):
    emitted = {c.claim_id: c for c in generate_family("c1.4.1", alpha=0)}
    emitted.update({c.claim_id: c for c in generate_family("ped", alpha=0)})
    for cid in KNOWN_FALSE_IDS:
        assert cid in emitted
        rep = verify_any(emitted[cid], 100, cache)
        assert not rep.passed
        assert rep.counterexample is not None
    assert not KNOWN_FALSE_IDS & {c.claim_id for c in default_claims()}


def test_side_conditions():
    with pytest.raises(SideConditionViolated):
        generate_family("prime-tuple", p=4, ell=2)
    with pytest.raises(SideConditionViolated):
        generate_family("t0.0.1", p=11, alpha=0)  # (-2|11) = +1
    with pytest.raises(SideConditionViolated):
        generate_family("thm1.00", p=17, k=0)  # 17 = 1 mod 8
    with pytest.raises(SideConditionViolated):
        generate_family("conjp", p=5, t=10)  # gcd(10, 6) != 1
    with pytest.raises(SideConditionViolated):
        generate_family("conjp", p=5, t=7)  # p does not divide t
    with pytest.raises(SideConditionViolated):
        generate_family("t4", p=2, k=1)


def test_family_shapes():
    c14 = generate_family("c1.4", alpha=0)
    assert [(c.a, c.b) for c in c14] == [(9, 4), (9, 7), (81, 37), (81, 64)]
    t001 = generate_family("t0.0.1", p=5, alpha=0)
    assert [(c.a, c.b, c.modulus) for c in t001] == [(45, 28, 6)]
    assert t001[0].index_filter == (("not_div", 5),)
    t2c = generate_family("t2", p=5, k=0)
    assert {(c.a, c.b) for c in t2c} >= {(1875, 1703)}
    assert all("omega(5) = 6" in c.provenance for c in t2c)
    conj = generate_family("conjp", p=5, t=5)
    assert all(c.tag == "CONJECTURE" for c in conj)
    assert [(c.a, c.b) for c in conj] == [
        (225, 45 * j + 178) for j in range(1, 5)
    ]
    thm = generate_family("thm1.00", p=5, k=0)
    assert [(c.a, c.b) for c in thm] == [(225, 45 * j + 28) for j in range(1, 5)]


def test_t2_case_ii_construction(monkeypatch):
    # force odd parity to exercise the second branch deterministically
    import regulus.claims as claims_mod

    monkeypatch.setattr(claims_mod, "omega_parity", lambda p: (7, 1))
    family = claims_mod.family_t2(5, 0)
    pairs = {(c.a, c.b) for c in family if isinstance(c, CongruenceClaim)}
    a_expected = 3 * 5**6
    offset = (17 * 5**6 - 1) // 8
    assert {(a_expected, 3 * 5**5 * j + offset) for j in range(1, 5)} <= pairs
    furthermore = [
        c
        for c in family
        if isinstance(c, CongruenceClaim) and c.a == 3 * 5**2
    ]
    assert len(furthermore) == 1
    assert furthermore[0].index_filter == (
        ("not_cong", (-17 * pow(24, -1, 5)) % 5, 5),
    )


def test_t2_17_relation_present():
    family = generate_family("t2", p=17, k=0)
    relations = [c for c in family if isinstance(c, RelationClaim)]
    assert len(relations) == 1
    rel = relations[0]
    assert rel.rhs.a == 3 * 17**2 and rel.rhs.b == (17**3 - 1) // 8
    assert rel.index_filter == (("not_div", 17),)


def test_claim_json_roundtrip():
    claim = generate_family("t0.0.1", p=5, alpha=1)[0]
    data = json.loads(json.dumps(claim.to_json()))
    assert CongruenceClaim.from_json(data) == claim


def test_default_catalog_sound(cache):
    claims = default_claims()
    assert len(claims) > 100
    assert len({c.claim_id for c in claims}) == len(claims)
    warm_cache(claims, 300, cache)
    for claim in claims:
        rep = verify_any(claim, 300, cache)
        assert rep.passed, (rep.claim_id, rep.counterexample)


def test_theorem_param_grid():
    for tid in theorem_ids():
        grid = theorem_params(tid)
        assert grid
        for params in grid:
            assert generate_family(tid, **params)
