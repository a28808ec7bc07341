"""Exact truncated power-series arithmetic over Z and Z/MZ.

A series is a finite coefficient vector c(0..N) together with a ring tag.
Exact-integer series keep Python integers (arbitrary precision); modular
series keep machine-word residues in a read-only numpy array.  All values
are immutable after construction and all operations are pure, so series
can be shared freely across threads.

Multiplication dispatches between a sparse-times-dense accumulation (fast
when one factor is a theta-type series with O(sqrt N) support) and exact
Kronecker-substitution multiplication through gmpy2 big integers (fast for
dense operands at large truncation).  Inversion over Z/MZ uses Newton
doubling on top of the same multiplier; over Z it uses the standard
quadratic recurrence, which is only ever exercised at oracle scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from .errors import (
    IncompatibleModulus,
    NonUnitConstantTerm,
    RingMismatch,
    TruncationTooSmall,
)

__all__ = ["RingSpec", "ZZ", "TruncatedSeries", "make_constant", "from_coeffs"]

# Largest nonzero count for which the strided numpy path beats Kronecker
# substitution (measured on int64 arrays around N = 1e6).
_SPARSE_NNZ_CUTOFF = 512


@dataclass(frozen=True)
class RingSpec:
    """Coefficient ring: exact integers (modulus None) or integers mod M."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @classmethod
    def exact(cls) -> "RingSpec":
        return cls(None)

    @classmethod
    def mod(cls, m: int) -> "RingSpec":
        return cls(int(m))

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def __repr__(self):
        return "ZZ" if self.is_exact else f"ZZ/{self.modulus}"


ZZ = RingSpec.exact()


# ---------------------------------------------------------------------------
# modular coefficient kernels (numpy int64, values in [0, M))
# ---------------------------------------------------------------------------


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _mod_array(values: Iterable[int], m: int, length: int) -> np.ndarray:
    arr = np.zeros(length, dtype=np.int64)
    for i, v in enumerate(values):
        if i >= length:
            break
        arr[i] = v % m
    return arr


def _kron_mul(a: np.ndarray, b: np.ndarray, m: int, n_out: int) -> np.ndarray:
    """Exact polynomial product mod m via big-integer packing.

    Coefficients are packed into fixed-width little-endian fields; the field
    width is chosen from the a-priori bound min(len) * (m-1)^2 on any
    convolution coefficient, so the product is exact.
    """
    bound = min(len(a), len(b)) * (m - 1) * (m - 1)
    if bound < 2**32:
        dt = "<u4"
        width = 4
    elif bound < 2**64:
        dt = "<u8"
        width = 8
    else:
        # absurdly large modulus: fall back to exact object arithmetic
        prod = np.convolve(a.astype(object), b.astype(object))[: n_out + 1]
        return np.array([int(x) % m for x in prod], dtype=object)
    ai = gmpy2.mpz(int.from_bytes(a.astype(dt).tobytes(), "little"))
    bi = gmpy2.mpz(int.from_bytes(b.astype(dt).tobytes(), "little"))
    total = len(a) + len(b)
    raw = int(ai * bi).to_bytes(total * width, "little")
    out = np.frombuffer(raw, dtype=dt)[: n_out + 1].astype(np.int64)
    if len(out) < n_out + 1:
        out = np.concatenate(
            [out, np.zeros(n_out + 1 - len(out), dtype=np.int64)]
        )
    out %= m
    return out


def _sparse_mul(
    dense: np.ndarray,
    idx: np.ndarray,
    vals: np.ndarray,
    m: int,
    n_out: int,
) -> np.ndarray:
    """Accumulate sum of shifted scalings of `dense`, reducing mod m.

    Reduction happens every `chunk` terms so int64 never overflows:
    chunk * (m-1)^2 stays below 2^62.
    """
    out = np.zeros(n_out + 1, dtype=np.int64)
    chunk = max(1, (2**62) // max(1, (m - 1) * (m - 1)))
    pending = 0
    for e, c in zip(idx.tolist(), vals.tolist()):
        if e > n_out:
            break
        seg = dense[: n_out + 1 - e]
        out[e : e + len(seg)] += c * seg
        pending += 1
        if pending >= chunk:
            out %= m
            pending = 0
    out %= m
    return out


def _mod_mul(a: np.ndarray, b: np.ndarray, m: int, n_out: int) -> np.ndarray:
    nnz_a = int(np.count_nonzero(a))
    nnz_b = int(np.count_nonzero(b))
    if min(nnz_a, nnz_b) <= _SPARSE_NNZ_CUTOFF:
        if nnz_a <= nnz_b:
            sparse, dense = a, b
        else:
            sparse, dense = b, a
        idx = np.nonzero(sparse)[0]
        return _sparse_mul(dense, idx, sparse[idx], m, n_out)
    return _kron_mul(a, b, m, n_out)


def _mod_inv(d: np.ndarray, m: int, n_out: int) -> np.ndarray:
    """Newton doubling: v <- v*(2 - d*v), gaining one binary digit of
    q-adic precision per step."""
    c0 = int(d[0])
    if math.gcd(c0, m) != 1:
        raise NonUnitConstantTerm(f"constant term {c0} is not a unit mod {m}")
    v = np.array([pow(c0, -1, m)], dtype=np.int64)
    k = 1
    while k <= n_out:
        k2 = min(2 * k, n_out + 1)
        t = _mod_mul(d[:k2], v, m, k2 - 1)
        e = (-t) % m
        e[0] = (e[0] + 2) % m
        v = _mod_mul(v, e, m, k2 - 1)
        k = k2
    return v[: n_out + 1]


# ---------------------------------------------------------------------------
# exact coefficient kernels (Python ints; oracle-scale truncations)
# ---------------------------------------------------------------------------


def _zz_mul(a: Sequence[int], b: Sequence[int], n_out: int) -> list[int]:
    nnz_a = sum(1 for x in a if x)
    nnz_b = sum(1 for x in b if x)
    if nnz_b < nnz_a:
        a, b = b, a
    out = [0] * (n_out + 1)
    for e, c in enumerate(a):
        if c == 0 or e > n_out:
            continue
        stop = n_out + 1 - e
        for j, bc in enumerate(b[:stop]):
            if bc:
                out[e + j] += c * bc
    return out


def _zz_div(num: Sequence[int], den: Sequence[int], n_out: int) -> list[int]:
    """Solve R*den = num coefficientwise; den[0] must be +-1."""
    c0 = den[0]
    if c0 not in (1, -1):
        raise NonUnitConstantTerm(f"constant term {c0} is not a unit in Z")
    support = [(j, dj) for j, dj in enumerate(den) if dj and j > 0]
    out = [0] * (n_out + 1)
    for n in range(n_out + 1):
        acc = num[n] if n < len(num) else 0
        for j, dj in support:
            if j > n:
                break
            acc -= dj * out[n - j]
        out[n] = acc * c0
    return out


# ---------------------------------------------------------------------------
# public series type
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Coefficients c(0..trunc) of a formal power series over `ring`."""

    __slots__ = ("ring", "trunc", "_coeffs")

    def __init__(self, ring: RingSpec, coeffs, *, _normalized: bool = False):
        self.ring = ring
        if ring.is_exact:
            if _normalized and isinstance(coeffs, tuple):
                self._coeffs = coeffs
            else:
                self._coeffs = tuple(int(c) for c in coeffs)
        else:
            m = ring.modulus
            if _normalized and isinstance(coeffs, np.ndarray):
                self._coeffs = _freeze(coeffs)
            else:
                arr = np.asarray(
                    [int(c) % m for c in coeffs],
                    dtype=object if m >= 2**62 else np.int64,
                )
                self._coeffs = _freeze(arr)
        self.trunc = len(self._coeffs) - 1
        if self.trunc < 0:
            raise ValueError("series needs at least the constant coefficient")

    # -- access ------------------------------------------------------------

    def at(self, n: int) -> int:
        """Coefficient of q^n; negative indices read as 0."""
        if n < 0:
            return 0
        if n > self.trunc:
            raise TruncationTooSmall(
                f"coefficient {n} beyond truncation {self.trunc}"
            )
        return int(self._coeffs[n])

    def coeffs(self) -> list[int]:
        return [int(c) for c in self._coeffs]

    def array(self) -> np.ndarray:
        """Read-only numpy view (modular ring only)."""
        if self.ring.is_exact:
            raise RingMismatch("array() is only available for modular series")
        return self._coeffs

    def support(self) -> list[int]:
        return [n for n, c in enumerate(self._coeffs) if c]

    def __len__(self):
        return self.trunc + 1

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.ring != other.ring or self.trunc != other.trunc:
            return False
        if self.ring.is_exact:
            return self._coeffs == other._coeffs
        return bool(np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self):
        return hash((self.ring, self.trunc, tuple(self.coeffs()[:32])))

    def __repr__(self):
        head = []
        for n, c in enumerate(self._coeffs[:7]):
            if c:
                head.append(f"{int(c)}*q^{n}" if n else str(int(c)))
        body = " + ".join(head) if head else "0"
        if self.trunc >= 7:
            body += " + ..."
        return f"<{self.ring} series, trunc={self.trunc}: {body}>"

    # -- ring helpers --------------------------------------------------------

    def _check_ring(self, other: "TruncatedSeries"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def prefix(self, n: int) -> "TruncatedSeries":
        """Restriction to coefficients 0..n."""
        if n > self.trunc:
            raise TruncationTooSmall(f"prefix {n} beyond truncation {self.trunc}")
        if n == self.trunc:
            return self
        return TruncatedSeries(self.ring, self._coeffs[: n + 1], _normalized=True)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        n = min(self.trunc, other.trunc)
        if self.ring.is_exact:
            out = tuple(
                a + b for a, b in zip(self._coeffs[: n + 1], other._coeffs[: n + 1])
            )
            return TruncatedSeries(self.ring, out, _normalized=True)
        out = (self._coeffs[: n + 1] + other._coeffs[: n + 1]) % self.ring.modulus
        return TruncatedSeries(self.ring, out, _normalized=True)

    def __neg__(self) -> "TruncatedSeries":
        if self.ring.is_exact:
            return TruncatedSeries(
                self.ring, tuple(-c for c in self._coeffs), _normalized=True
            )
        return TruncatedSeries(
            self.ring, (-self._coeffs) % self.ring.modulus, _normalized=True
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, k: int) -> "TruncatedSeries":
        """Multiply every coefficient by the integer k."""
        if self.ring.is_exact:
            return TruncatedSeries(
                self.ring, tuple(k * c for c in self._coeffs), _normalized=True
            )
        m = self.ring.modulus
        return TruncatedSeries(
            self.ring, (self._coeffs * (k % m)) % m, _normalized=True
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        n = min(self.trunc, other.trunc)
        if self.ring.is_exact:
            out = _zz_mul(self._coeffs, other._coeffs, n)
            return TruncatedSeries(self.ring, out)
        out = _mod_mul(self._coeffs, other._coeffs, self.ring.modulus, n)
        return TruncatedSeries(self.ring, out, _normalized=True)

    def invert(self) -> "TruncatedSeries":
        if self.ring.is_exact:
            c0 = int(self._coeffs[0])
            if c0 not in (1, -1):
                raise NonUnitConstantTerm(f"constant term {c0} is not a unit in Z")
            out = _zz_div([1], self._coeffs, self.trunc)
            return TruncatedSeries(self.ring, out)
        out = _mod_inv(self._coeffs, self.ring.modulus, self.trunc)
        return TruncatedSeries(self.ring, out, _normalized=True)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_ring(other)
        n = min(self.trunc, other.trunc)
        if self.ring.is_exact:
            out = _zz_div(self._coeffs, other._coeffs, n)
            return TruncatedSeries(self.ring, out)
        inv = _mod_inv(other._coeffs, self.ring.modulus, n)
        out = _mod_mul(self._coeffs[: n + 1], inv, self.ring.modulus, n)
        return TruncatedSeries(self.ring, out, _normalized=True)

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e == 0:
            return make_constant(self.ring, 1, self.trunc)
        base = self if e > 0 else self.invert()
        e = abs(e)
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- index surgery ---------------------------------------------------

    def magnify(self, t: int) -> "TruncatedSeries":
        """q -> q^t substitution; result trunc = trunc * t."""
        if t < 1:
            raise ValueError(f"magnification factor must be >= 1, got {t}")
        if t == 1:
            return self
        n_out = self.trunc * t
        if self.ring.is_exact:
            out = [0] * (n_out + 1)
            out[::t] = self._coeffs
            return TruncatedSeries(self.ring, out)
        out = np.zeros(n_out + 1, dtype=self._coeffs.dtype)
        out[::t] = self._coeffs
        return TruncatedSeries(self.ring, out, _normalized=True)

    def shift(self, d: int) -> "TruncatedSeries":
        """Multiply by q^d; result trunc = trunc + d."""
        if d < 0:
            raise ValueError(f"shift must be >= 0, got {d}")
        if d == 0:
            return self
        if self.ring.is_exact:
            return TruncatedSeries(self.ring, (0,) * d + self._coeffs)
        out = np.concatenate(
            [np.zeros(d, dtype=self._coeffs.dtype), self._coeffs]
        )
        return TruncatedSeries(self.ring, out, _normalized=True)

    def extract_ap(self, m: int, r: int) -> "TruncatedSeries":
        """Arithmetic-progression slice: result(n) = self(m*n + r)."""
        if m < 1:
            raise ValueError(f"progression step must be >= 1, got {m}")
        if not 0 <= r < m:
            raise ValueError(f"residue must satisfy 0 <= r < m, got {r}")
        if r > self.trunc:
            raise TruncationTooSmall(
                f"no coefficients on progression {m}n+{r} below trunc {self.trunc}"
            )
        if m == 1:
            return self
        return TruncatedSeries(self.ring, self._coeffs[r::m], _normalized=True)

    def reduce_mod(self, m: int) -> "TruncatedSeries":
        """Reduce coefficients into Z/mZ (m must divide an existing modulus)."""
        if m < 2:
            raise IncompatibleModulus(f"modulus must be >= 2, got {m}")
        if not self.ring.is_exact:
            if self.ring.modulus % m != 0:
                raise IncompatibleModulus(
                    f"{m} does not divide modulus {self.ring.modulus}"
                )
            if m == self.ring.modulus:
                return self
            return TruncatedSeries(
                RingSpec.mod(m), self._coeffs % m, _normalized=True
            )
        arr = _mod_array(self._coeffs, m, self.trunc + 1)
        return TruncatedSeries(RingSpec.mod(m), arr, _normalized=True)


def make_constant(ring: RingSpec, value: int, trunc: int) -> TruncatedSeries:
    """Series value + 0*q + ... + 0*q^trunc."""
    if trunc < 0:
        raise ValueError(f"truncation must be >= 0, got {trunc}")
    if ring.is_exact:
        return TruncatedSeries(ring, (int(value),) + (0,) * trunc, _normalized=True)
    arr = np.zeros(trunc + 1, dtype=np.int64)
    arr[0] = value % ring.modulus
    return TruncatedSeries(ring, arr, _normalized=True)


def from_coeffs(ring: RingSpec, coeffs: Iterable[int]) -> TruncatedSeries:
    """Series from an explicit coefficient list (reduced into the ring)."""
    return TruncatedSeries(ring, list(coeffs))


def from_sparse(
    ring: RingSpec, terms: Iterable[tuple[int, int]], trunc: int
) -> TruncatedSeries:
    """Series from (exponent, coefficient) pairs; exponents beyond trunc drop."""
    if ring.is_exact:
        out = [0] * (trunc + 1)
        for e, c in terms:
            if 0 <= e <= trunc:
                out[e] += c
        return TruncatedSeries(ring, out)
    arr = np.zeros(trunc + 1, dtype=np.int64)
    m = ring.modulus
    for e, c in terms:
        if 0 <= e <= trunc:
            arr[e] = (arr[e] + c) % m
    return TruncatedSeries(ring, arr, _normalized=True)
