"""Expansion of f-quotients and theta-type series, plus the identity catalog.

`f_d` denotes the infinite product prod_{i>=1} (1 - q^{d*i}).  Every
generating function handled by the package is a scalar multiple of a
finite product prod f_d^{r_d}, captured by `FQuotient`.

Expansion strategy: each f_d is expanded sparsely through the pentagonal
number theorem, cubes f_d^3 through the triple-product series
sum (-1)^n (2n+1) q^{d*n(n+1)/2}, and negative exponents are cleared by a
single series division at the end.

The identity catalog is declarative data: each entry states two
expressions in a tiny AST (sums of scalar * q^j * f-quotient terms,
optionally carrying a cubic theta factor, optionally sifted along an
arithmetic progression) and is checked by expanding both sides.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import ParseError, UnknownIdentity
from .reports import VerificationReport
from .series import RingSpec, TruncatedSeries, ZZ, from_sparse, make_constant

__all__ = [
    "FQuotient",
    "expand_f",
    "expand_f_product",
    "expand_fquotient",
    "jacobi_cube_series",
    "borwein_a_series",
    "Term",
    "TermSum",
    "Sift",
    "IdentityEntry",
    "identity",
    "identity_ids",
    "verify_identity",
    "catalog_json",
    "tuple_regular_fq",
]


# ---------------------------------------------------------------------------
# f-quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FQuotient:
    """scalar * prod over (delta, r) of f_delta^r, with nonzero r only."""

    scalar: int = 1
    factors: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, exps: dict[int, int], scalar: int = 1) -> "FQuotient":
        items = []
        for delta, r in sorted(exps.items()):
            if delta < 1:
                raise ValueError(f"factor index must be >= 1, got f_{delta}")
            if r != 0:
                items.append((int(delta), int(r)))
        return cls(int(scalar), tuple(items))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: "FQuotient") -> "FQuotient":
        exps = self.as_dict()
        for delta, r in other.factors:
            exps[delta] = exps.get(delta, 0) + r
        return FQuotient.make(exps, self.scalar * other.scalar)

    def label(self) -> str:
        num = [
            f"f{d}" + (f"^{r}" if r > 1 else "")
            for d, r in self.factors
            if r > 0
        ]
        den = [
            f"f{d}" + (f"^{-r}" if r < -1 else "")
            for d, r in self.factors
            if r < 0
        ]
        text = " ".join(num) if num else "1"
        if den:
            inner = " ".join(den)
            text += f" / ({inner})" if len(den) > 1 else f" / {inner}"
        if self.scalar != 1:
            text = f"{self.scalar} * {text}"
        return text

    def as_json(self) -> dict:
        return {
            "scalar": self.scalar,
            "factors": {str(d): r for d, r in self.factors},
        }

    @classmethod
    def from_json(cls, data: dict) -> "FQuotient":
        return cls.make(
            {int(d): int(r) for d, r in data.get("factors", {}).items()},
            data.get("scalar", 1),
        )

    @classmethod
    def parse(cls, text: str) -> "FQuotient":
        """Parse literals like ``3 * f2^4 f3^5 / (f1^8 f6)``."""
        scalar = 1
        exps: dict[int, int] = {}
        sign = 1
        pos = 0
        in_denominator = False
        token = re.compile(
            r"\s*(?:(?P<num>\d+)|(?P<f>f(?P<delta>\d+)(?:\^(?P<exp>-?\d+))?)"
            r"|(?P<op>[*/()\-]))"
        )
        seen_factor = False
        while pos < len(text):
            m = token.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            if m.group("num"):
                if seen_factor:
                    raise ParseError("scalar must precede f-factors", pos)
                scalar *= int(m.group("num"))
            elif m.group("f"):
                delta = int(m.group("delta"))
                if delta < 1:
                    raise ParseError(f"invalid factor f{delta}", pos)
                exp = int(m.group("exp") or 1)
                if in_denominator:
                    exp = -exp
                exps[delta] = exps.get(delta, 0) + exp
                seen_factor = True
            else:
                op = m.group("op")
                if op == "/":
                    if in_denominator:
                        raise ParseError("nested division not supported", pos)
                    in_denominator = True
                elif op == "-":
                    if seen_factor or scalar != 1:
                        raise ParseError("misplaced minus sign", pos)
                    sign = -sign
                # "*", "(", ")" are separators
            pos = m.end()
        if not seen_factor and not exps:
            raise ParseError("no f-factors found", len(text))
        return cls.make(exps, sign * scalar)


FQ_ONE = FQuotient()


def tuple_regular_fq(ell: int, k: int) -> FQuotient:
    """Generating quotient f_ell^k / f_1^k of k-tuple ell-regular counts."""
    if ell == 1:
        return FQ_ONE
    return FQuotient.make({ell: k, 1: -k})


# ---------------------------------------------------------------------------
# sparse theta supports
# ---------------------------------------------------------------------------


def _pentagonal_terms(delta: int, trunc: int):
    """(exponent, +-1) pairs of f_delta = sum (-1)^n q^{delta n(3n-1)/2}."""
    yield 0, 1
    k = 1
    while True:
        e1 = delta * k * (3 * k - 1) // 2
        e2 = delta * k * (3 * k + 1) // 2
        if e1 > trunc and e2 > trunc:
            return
        sign = -1 if k % 2 else 1
        if e1 <= trunc:
            yield e1, sign
        if e2 <= trunc:
            yield e2, sign
        k += 1


def _triple_product_terms(delta: int, trunc: int):
    """(exponent, coeff) of f_delta^3 = sum (-1)^n (2n+1) q^{delta n(n+1)/2}."""
    n = 0
    while True:
        e = delta * n * (n + 1) // 2
        if e > trunc:
            return
        c = (2 * n + 1) * (-1 if n % 2 else 1)
        yield e, c
        n += 1


def expand_f(delta: int, trunc: int, ring: RingSpec = ZZ) -> TruncatedSeries:
    """Pentagonal-theorem expansion of f_delta."""
    if delta < 1:
        raise ValueError(f"factor index must be >= 1, got {delta}")
    return from_sparse(ring, _pentagonal_terms(delta, trunc), trunc)


def expand_f_product(delta: int, trunc: int, ring: RingSpec = ZZ) -> TruncatedSeries:
    """Dense oracle for f_delta: literal product of (1 - q^{delta*i})."""
    out = make_constant(ring, 1, trunc)
    i = 1
    while delta * i <= trunc:
        out = out * from_sparse(ring, [(0, 1), (delta * i, -1)], trunc)
        i += 1
    return out


def jacobi_cube_series(trunc: int, ring: RingSpec = ZZ) -> TruncatedSeries:
    """Triple-product expansion of f_1^3."""
    return from_sparse(ring, _triple_product_terms(1, trunc), trunc)


def borwein_a_series(scale: int, trunc: int, ring: RingSpec = ZZ) -> TruncatedSeries:
    """Cubic theta a(q^scale): lattice count of j^2 + jk + k^2 = m at q^{scale*m}."""
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    nmax = trunc // scale
    bound = math.isqrt(4 * nmax // 3 if nmax else 0) + 2
    counts = [0] * (nmax + 1)
    for j in range(-bound, bound + 1):
        for k in range(-bound, bound + 1):
            m = j * j + j * k + k * k
            if m <= nmax:
                counts[m] += 1
    return from_sparse(
        ring, ((scale * m, c) for m, c in enumerate(counts) if c), trunc
    )


def expand_fquotient(
    fq: FQuotient, trunc: int, ring: RingSpec = ZZ
) -> TruncatedSeries:
    """Expansion of scalar * prod f_delta^{r_delta} to the given truncation.

    Positive powers are multiplied sparse-first (triple-product cubes, then
    pentagonal singles); the combined negative-power product is cleared by
    one series division.
    """
    num = None
    den = None

    def times(acc, terms):
        factor = from_sparse(ring, terms, trunc)
        return factor if acc is None else acc * factor

    for delta, r in fq.factors:
        e = abs(r)
        cubes, rest = divmod(e, 3)
        target = "num" if r > 0 else "den"
        acc = num if target == "num" else den
        for _ in range(cubes):
            acc = times(acc, _triple_product_terms(delta, trunc))
        for _ in range(rest):
            acc = times(acc, _pentagonal_terms(delta, trunc))
        if target == "num":
            num = acc
        else:
            den = acc

    if num is None:
        num = make_constant(ring, 1, trunc)
    out = num if den is None else num / den
    if fq.scalar != 1:
        out = out.scale(fq.scalar)
    return out


# ---------------------------------------------------------------------------
# identity expression AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """scalar * q^qpow * fq [* a(q^b_scale)^b_power] [theta variants]."""

    scalar: int = 1
    qpow: int = 0
    fq: FQuotient = FQ_ONE
    borwein: tuple[int, int] | None = None
    jacobi: bool = False
    dense_product: bool = False

    def expand(self, trunc: int, ring: RingSpec) -> TruncatedSeries:
        if self.dense_product:
            out = make_constant(ring, 1, trunc)
            for delta, r in self.fq.factors:
                if r < 0:
                    raise ValueError("dense product oracle needs positive powers")
                for _ in range(r):
                    out = out * expand_f_product(delta, trunc, ring)
        else:
            out = expand_fquotient(self.fq, trunc, ring)
        if self.jacobi:
            out = out * jacobi_cube_series(trunc, ring)
        if self.borwein is not None:
            scale, power = self.borwein
            b = borwein_a_series(scale, trunc, ring)
            out = out * (b**power)
        if self.qpow:
            out = out.shift(self.qpow).prefix(trunc)
        if self.scalar != 1:
            out = out.scale(self.scalar)
        return out

    def as_json(self) -> dict:
        d: dict = {"scalar": self.scalar, "qpow": self.qpow, "fq": self.fq.as_json()}
        if self.borwein:
            d["borwein"] = {"scale": self.borwein[0], "power": self.borwein[1]}
        if self.jacobi:
            d["jacobi_cube"] = True
        if self.dense_product:
            d["dense_product"] = True
        return d


@dataclass(frozen=True)
class TermSum:
    terms: tuple[Term, ...]

    def expand(self, trunc: int, ring: RingSpec) -> TruncatedSeries:
        out = None
        for t in self.terms:
            s = t.expand(trunc, ring)
            out = s if out is None else out + s
        return out if out is not None else make_constant(ring, 0, trunc)

    def as_json(self) -> dict:
        return {"sum": [t.as_json() for t in self.terms]}


@dataclass(frozen=True)
class Sift:
    """Arithmetic-progression slice of a base expression."""

    base: "TermSum | Sift | Term"
    step: int
    residue: int

    def expand(self, trunc: int, ring: RingSpec) -> TruncatedSeries:
        inner = self.base.expand(self.step * trunc + self.residue, ring)
        return inner.extract_ap(self.step, self.residue)

    def as_json(self) -> dict:
        return {
            "sift": {
                "step": self.step,
                "residue": self.residue,
                "base": self.base.as_json(),
            }
        }


Expr = TermSum | Sift | Term


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    lhs: Expr
    rhs: Expr
    modulus: int | None  # None = exact identity
    anchor: str
    notes: str = ""

    def as_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "modulus": self.modulus,
            "lhs": self.lhs.as_json(),
            "rhs": self.rhs.as_json(),
            **({"notes": self.notes} if self.notes else {}),
        }


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------


def _fq(text: str) -> FQuotient:
    return FQuotient.parse(text)


def _t(scalar=1, qpow=0, fq=FQ_ONE, **kw) -> Term:
    return Term(scalar=scalar, qpow=qpow, fq=fq, **kw)


def _sum(*terms: Term) -> TermSum:
    return TermSum(tuple(terms))


_T2 = tuple_regular_fq(2, 3)
_T4 = tuple_regular_fq(4, 3)


def _build_catalog() -> dict[str, IdentityEntry]:
    entries = [
        IdentityEntry(
            "e2.0.3.4",
            _sum(_t(fq=_fq("f1"), dense_product=True)),
            _sum(_t(fq=_fq("f1"))),
            None,
            "f1 as the alternating pentagonal theta sum",
        ),
        IdentityEntry(
            "e2.0.3.3",
            _sum(_t(fq=_fq("f1^3"))),
            _sum(_t(jacobi=True)),
            None,
            "f1^3 as the (-1)^n (2n+1) triangular theta sum",
        ),
        IdentityEntry(
            "e0.7",
            _sum(_t(fq=_fq("f1^2 / f2"))),
            _sum(
                _t(fq=_fq("f9^2 / f18")),
                _t(-2, 1, _fq("f3 f18^2 / (f6 f9)")),
            ),
            None,
            "3-dissection of f1^2/f2",
        ),
        IdentityEntry(
            "e0.8",
            _sum(_t(fq=_fq("f1^3"))),
            _sum(
                _t(fq=_fq("f6 f9^6 / (f3 f18^3)")),
                _t(-3, 1, _fq("f9^3")),
                _t(4, 3, _fq("f3^2 f18^6 / (f6^2 f9^3)")),
            ),
            None,
            "3-dissection of f1^3",
            notes="denominator printed as f_{18^3} is read as f18^3",
        ),
        IdentityEntry(
            "e0.8.0",
            _sum(_t(fq=_fq("f1^-3"))),
            _sum(
                _t(fq=_fq("f9^3 / f3^10"), borwein=(3, 2)),
                _t(3, 1, _fq("f9^6 / f3^11"), borwein=(3, 1)),
                _t(9, 2, _fq("f9^9 / f3^12")),
            ),
            None,
            "3-dissection of 1/f1^3 via the cubic theta",
        ),
        IdentityEntry(
            "e0.7.0",
            _sum(_t(borwein=(1, 1))),
            _sum(_t(borwein=(3, 1)), _t(6, 1, _fq("f9^3 / f3"))),
            None,
            "cubic theta 3-dissection a(q) = a(q^3) + 6q f9^3/f3",
        ),
        IdentityEntry(
            "e0.2",
            Sift(_sum(_t(fq=_T2)), 3, 1),
            _sum(_t(3, 0, _fq("f2^4 f3^5 / (f1^8 f6)"))),
            None,
            "generating function of T2(3n+1)",
        ),
        IdentityEntry(
            "e0.2.1",
            Sift(_sum(_t(fq=_T2)), 3, 2),
            _sum(_t(6, 0, _fq("f2^3 f3^2 f6^2 / f1^7"))),
            None,
            "generating function of T2(3n+2)",
        ),
        IdentityEntry(
            "e0.3",
            Sift(_sum(_t(fq=_T2)), 3, 1),
            _sum(_t(3, 0, _fq("f3^5 / f6"))),
            24,
            "T2(3n+1) reduced mod 24",
        ),
        IdentityEntry(
            "e0.4",
            Sift(_sum(_t(fq=_T2)), 9, 1),
            _sum(_t(3, 0, _fq("f1^5 / f2"))),
            24,
            "T2(9n+1) reduced mod 24",
        ),
        IdentityEntry(
            "e1.0",
            Sift(_sum(_t(fq=_T2)), 27, 10),
            _sum(_t(9, 0, _fq("f3^5 / f6"))),
            24,
            "T2(27n+10) reduced mod 24",
        ),
        IdentityEntry(
            "e1.1",
            Sift(_sum(_t(fq=_T2)), 81, 10),
            _sum(_t(9, 0, _fq("f1^5 / f2"))),
            24,
            "T2(81n+10) reduced mod 24",
        ),
        IdentityEntry(
            "e1.4",
            Sift(_sum(_t(fq=_T2)), 243, 91),
            _sum(_t(3, 0, _fq("f3^5 / f6"))),
            24,
            "T2(243n+91) reduced mod 24",
        ),
        IdentityEntry(
            "e50.1",
            Sift(_sum(_t(fq=_T2)), 9, 1),
            _sum(_t(3, 0, _fq("f1 f2"))),
            6,
            "T2(9n+1) reduced mod 6",
        ),
        IdentityEntry(
            "e10",
            Sift(_sum(_t(fq=_T2)), 3, 2),
            _sum(_t(6, 0, _fq("f3^6 / f1"))),
            12,
            "T2(3n+2) reduced mod 12",
        ),
        IdentityEntry(
            "e2.0",
            _sum(_t(fq=_T4)),
            _sum(_t(fq=_fq("f12 / f3"))),
            3,
            "T4 generating function mod 3",
        ),
        IdentityEntry(
            "e2.5",
            Sift(_sum(_t(fq=_T4)), 3, 0),
            _sum(_t(fq=_fq("f4 / f1"))),
            3,
            "T4(3n) matches the even-parts-distinct count mod 3",
        ),
        IdentityEntry(
            "e4",
            _sum(_t(1, 1, _fq("f16^3 / f8^3"))),
            _sum(_t(1, 1, _fq("f1^24"))),
            2,
            "T2 on the 8n+1 grid matches the discriminant form mod 2",
        ),
    ]
    return {e.id: e for e in entries}


_CATALOG = _build_catalog()


def identity(entry_id: str) -> IdentityEntry:
    try:
        return _CATALOG[entry_id]
    except KeyError:
        raise UnknownIdentity(entry_id) from None


def identity_ids() -> list[str]:
    return list(_CATALOG)


def catalog_json() -> list[dict]:
    return [e.as_json() for e in _CATALOG.values()]


def verify_identity(entry: IdentityEntry | str, trunc: int) -> VerificationReport:
    """Expand both sides (mod the entry modulus when present) and compare."""
    if isinstance(entry, str):
        entry = identity(entry)
    if trunc < 16:
        raise ValueError(f"truncation must be >= 16, got {trunc}")
    ring = ZZ if entry.modulus is None else RingSpec.mod(entry.modulus)
    lhs = entry.lhs.expand(trunc, ring)
    rhs = entry.rhs.expand(trunc, ring)
    n = min(lhs.trunc, rhs.trunc)
    counterexample = None
    for i in range(n + 1):
        a, b = lhs.at(i), rhs.at(i)
        if a != b:
            counterexample = (i, a - b)
            break
    return VerificationReport(
        claim_id=entry.id,
        n_max=n,
        passed=counterexample is None,
        counterexample=counterexample,
        trunc_used=trunc,
    )
