"""Prime generation, exact prime counting and Chebyshev's theta function.

Primes come from an odd-only segmented sieve of Eratosthenes.  Prime
counts are exact integers end to end: below ``SIEVE_PI_LIMIT`` they are
read off the sieve, above it they come from the Lucy/Legendre recursion
``S(v, p) = S(v, p-1) - (S(v/p, p-1) - S(p-1, p-1))`` over the values
``v = x // k``, which runs in O(x^(3/4)) time and O(sqrt x) memory.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import CoverageError, DomainError, ResourceLimitError

SEGMENT_SIZE = 1 << 20
SIEVE_PI_LIMIT = 10**7
PI_MAX = 10**13
DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes

_EPS = np.finfo(float).eps


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class PrimeTable:
    """Immutable sorted table of every prime ``<= limit``."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.primes, dtype=np.int64)
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        object.__setattr__(self, "primes", arr)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes.tolist())

    def __contains__(self, n) -> bool:
        if n > self.limit or n < 2:
            return False
        i = np.searchsorted(self.primes, n)
        return i < len(self.primes) and self.primes[i] == n

    def count_upto(self, x) -> int:
        """Number of table primes ``<= x``; ``x`` must not exceed ``limit``."""
        if x > self.limit:
            raise CoverageError(f"x={x} beyond table limit {self.limit}")
        return int(np.searchsorted(self.primes, math.floor(x), side="right"))

    def upto(self, x) -> np.ndarray:
        return self.primes[: self.count_upto(x)]


@dataclass(frozen=True)
class PiCheckpoint:
    x: int
    pi: int
    method: str  # "sieve" | "sublinear"


@dataclass(frozen=True)
class ThetaValue:
    x: float
    theta: float
    err: float


# ---------------------------------------------------------------------------
# sieving


def _small_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_prime_segments(limit: int, segment_size: int = SEGMENT_SIZE) -> Iterator[np.ndarray]:
    """Yield the primes ``<= limit`` in increasing order, one array per segment.

    Each segment covers ``segment_size`` consecutive integers and is sieved
    with a bitmap over its odd members only, so peak memory is
    O(segment_size + sqrt(limit)) regardless of ``limit``.
    """
    if limit < 0:
        raise DomainError("limit must be >= 0")
    if limit < 2:
        return
    yield np.array([2], dtype=np.int64)
    base = _small_sieve(math.isqrt(limit))[1:].tolist()  # odd base primes
    span = max(2, segment_size - segment_size % 2)
    lo = 3
    while lo <= limit:
        hi = min(lo + span, limit + 1)  # exclusive
        mask = np.ones((hi - lo + 1) // 2, dtype=bool)  # mask[i] <-> lo + 2i
        for p in base:
            p2 = p * p
            if p2 >= hi:
                break
            start = max(p2, -(-lo // p) * p)
            if start % 2 == 0:
                start += p
            if start < hi:
                mask[(start - lo) // 2 :: p] = False
        yield lo + 2 * np.flatnonzero(mask).astype(np.int64)
        lo = hi if hi % 2 else hi + 1


def _table_bytes(limit: int) -> int:
    if limit < 17:
        return 64
    # pi(x) < 1.26 x / log x for x >= 17
    return int(8 * 1.26 * limit / math.log(limit)) + SEGMENT_SIZE


def sieve_primes(limit: int, memory_budget: int | None = None) -> PrimeTable:
    """Every prime ``<= limit`` as a :class:`PrimeTable`.

    Raises ResourceLimitError when the finished table would not fit in
    ``memory_budget`` bytes (default ``DEFAULT_MEMORY_BUDGET``).
    """
    limit = int(limit)
    if limit < 0:
        raise DomainError("limit must be >= 0")
    budget = DEFAULT_MEMORY_BUDGET if memory_budget is None else memory_budget
    need = _table_bytes(limit)
    if need > budget:
        raise ResourceLimitError(
            f"prime table up to {limit} needs ~{need} bytes, over the memory budget of {budget} bytes"
        )
    chunks = list(iter_prime_segments(limit))
    primes = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    return PrimeTable(limit, primes)


_cache: dict[str, PrimeTable] = {}


def cached_primes(limit: int) -> np.ndarray:
    """Read-only array of the primes ``<= limit``, served from a shared table.

    The largest table built so far is kept and sliced for smaller requests.
    """
    limit = int(limit)
    table = _cache.get("table")
    if table is None or table.limit < limit:
        table = sieve_primes(max(limit, 1000))
        _cache["table"] = table
    return table.upto(limit)


def count_primes_sieve(x: int) -> int:
    """pi(x) by streaming the segmented sieve; nothing is retained."""
    return sum(len(seg) for seg in iter_prime_segments(int(x)))


# ---------------------------------------------------------------------------
# exact prime counting


def lucy_prime_pi(x: int) -> int:
    """pi(x) by the Lucy/Legendre recursion over the values ``x // k``."""
    n = int(x)
    if n < 2:
        return 0
    r = math.isqrt(n)
    # small[v] = S(v) for v <= r ; large[k] = S(n // k) for k <= r
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    ks = np.arange(1, r + 1, dtype=np.int64)
    large = np.zeros(r + 1, dtype=np.int64)
    large[1:] = n // ks - 1
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        kmax = min(r, n // p2)
        kb = min(kmax, r // p)
        # right-hand sides are evaluated before assignment, so every read
        # below sees the counts from before this prime was removed
        if kb >= 1:
            large[1 : kb + 1] -= large[p : kb * p + 1 : p] - sp
        if kmax > kb:
            large[kb + 1 : kmax + 1] -= small[n // (ks[kb:kmax] * p)] - sp
        if p2 <= r:
            small[p2 : r + 1] -= small[np.arange(p2, r + 1) // p] - sp
    return int(large[1])


def prime_pi(x: int) -> PiCheckpoint:
    """Exact pi(x).  Sieve count up to ``SIEVE_PI_LIMIT``, sublinear beyond."""
    x = int(x)
    if x < 0:
        raise DomainError("x must be >= 0")
    if x > PI_MAX:
        raise ResourceLimitError(f"prime_pi supports x <= {PI_MAX}")
    if x <= SIEVE_PI_LIMIT:
        table = _cache.get("table")
        if table is not None and table.limit >= x:
            return PiCheckpoint(x, table.count_upto(x), "sieve")
        return PiCheckpoint(x, count_primes_sieve(x), "sieve")
    return PiCheckpoint(x, lucy_prime_pi(x), "sublinear")


def prime_pi_many(xs: Iterable[int]) -> list[int]:
    """pi at many points; points inside the cached sieve range share one table."""
    xs = [int(v) for v in xs]
    out = []
    small_max = max([v for v in xs if v <= 10**8], default=0)
    primes = cached_primes(small_max) if small_max else None
    for v in xs:
        if v <= small_max:
            out.append(int(np.searchsorted(primes, v, side="right")))
        else:
            out.append(prime_pi(v).pi)
    return out


NTH_PRIME_MAX_LIMIT = 4 * 10**9


def nth_prime_upper_bound(n: int) -> int:
    """A limit certain to contain the n-th prime."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 3


def nth_prime(n: int, memory_budget: int | None = None) -> int:
    """The n-th prime (``nth_prime(1) == 2``)."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    bound = nth_prime_upper_bound(n)
    if bound > NTH_PRIME_MAX_LIMIT:
        raise ResourceLimitError(f"n={n} needs a sieve to {bound}, beyond table capacity {NTH_PRIME_MAX_LIMIT}")
    budget = DEFAULT_MEMORY_BUDGET if memory_budget is None else memory_budget
    if _table_bytes(bound) > budget:
        raise ResourceLimitError(f"n={n} needs a table over the memory budget of {budget} bytes")
    primes = cached_primes(bound)
    return int(primes[n - 1])


def nth_primes(ns) -> np.ndarray:
    ns = np.asarray(ns, dtype=np.int64)
    primes = cached_primes(nth_prime_upper_bound(int(ns.max())))
    return primes[ns - 1]


# ---------------------------------------------------------------------------
# Chebyshev theta


def compensated_cumsum(values: np.ndarray, block: int = 4096) -> np.ndarray:
    """Prefix sums with exactly rounded block offsets.

    Inside a block the plain cumulative sum is used; block totals are
    combined with ``math.fsum`` so the error does not grow with the length.
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    out = np.empty(n)
    offset_terms: list[float] = []
    for lo in range(0, n, block):
        chunk = values[lo : lo + block]
        base = math.fsum(offset_terms)
        out[lo : lo + block] = base + np.cumsum(chunk)
        offset_terms.append(math.fsum(chunk))
    return out


class ThetaTable:
    """theta at the primes up to ``limit``; supports vectorized lookups."""

    def __init__(self, limit: int):
        self.limit = int(limit)
        self.primes = cached_primes(self.limit)
        self.cumulative = compensated_cumsum(np.log(self.primes.astype(float)))
        self.cumulative.flags.writeable = False
        self._padded = np.concatenate(([0.0], self.cumulative))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x > self.limit):
            raise CoverageError(f"theta table only covers x <= {self.limit}")
        idx = np.searchsorted(self.primes, np.floor(x), side="right")
        return self._padded[idx]


_theta_cache: dict[str, ThetaTable] = {}


def theta_table(limit: int) -> ThetaTable:
    table = _theta_cache.get("table")
    if table is None or table.limit < limit:
        table = ThetaTable(max(int(limit), 1000))
        _theta_cache["table"] = table
    return table


def chebyshev_theta(x: float) -> ThetaValue:
    """theta(x) = sum of log p over p <= x, with a rounding error bound.

    Summation is exact-rounded per sieve segment (``math.fsum``) and over the
    segment partials, so ``err`` only accounts for rounding of the logs
    themselves (at most one ulp each) and the final rounding.
    """
    if x < 0:
        raise DomainError("x must be >= 0")
    n = math.floor(x)
    if n < 2:
        return ThetaValue(float(x), 0.0, 0.0)
    table = _cache.get("table")
    if table is not None and table.limit >= n:
        segments = [table.upto(n)]
    else:
        segments = iter_prime_segments(n)
    partials = []
    count = 0
    for seg in segments:
        partials.append(math.fsum(np.log(seg.astype(float))))
        count += len(seg)
    theta = math.fsum(partials)
    err = float(_EPS * (count * math.log(n) + theta))
    return ThetaValue(float(x), theta, err)


def theta_at_integers(n_max: int) -> np.ndarray:
    """Array ``a`` with ``a[n] = theta(n)`` for ``0 <= n <= n_max``."""
    steps = np.zeros(n_max + 1)
    primes = cached_primes(n_max)
    steps[primes] = np.log(primes.astype(float))
    return compensated_cumsum(steps)


def theta_doubling_gap(n: int) -> float:
    """theta(2n) - theta(n); bounded above by 2n log 2."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    primes = cached_primes(2 * n)
    window = primes[np.searchsorted(primes, n, side="right") :]
    return math.fsum(np.log(window.astype(float)))


def prime_reciprocal_sum(limit: int) -> float:
    """Sum of 1/p over p <= limit (streamed, exact-rounded per segment)."""
    return math.fsum(math.fsum(1.0 / seg.astype(float)) for seg in iter_prime_segments(int(limit)))


# ---------------------------------------------------------------------------
# checkpoint persistence

CHECKPOINT_ENV = "PNTLAB_CHECKPOINTS"
CHECKPOINT_FILE = "pi_checkpoints.tsv"


def format_checkpoint(cp: PiCheckpoint) -> str:
    return f"{cp.x}\t{cp.pi}\t{cp.method}"


def parse_checkpoint(line: str) -> PiCheckpoint:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 3 or parts[2] not in ("sieve", "sublinear"):
        raise ValueError(f"malformed checkpoint line: {line!r}")
    return PiCheckpoint(int(parts[0]), int(parts[1]), parts[2])


def read_checkpoints(path) -> dict[int, PiCheckpoint]:
    path = Path(path)
    if not path.exists():
        return {}
    out = {}
    for line in path.read_text().splitlines():
        if line.strip():
            cp = parse_checkpoint(line)
            out[cp.x] = cp
    return out


def append_checkpoint(path, cp: PiCheckpoint) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as fh:
        fh.write(format_checkpoint(cp) + "\n")


def checkpoint_path(directory=None) -> Path | None:
    directory = directory or os.environ.get(CHECKPOINT_ENV)
    return Path(directory) / CHECKPOINT_FILE if directory else None


def prime_pi_checkpointed(x: int, directory=None) -> PiCheckpoint:
    """prime_pi with resume support through the checkpoint file."""
    path = checkpoint_path(directory)
    if path is None:
        return prime_pi(x)
    known = read_checkpoints(path)
    if int(x) in known:
        return known[int(x)]
    cp = prime_pi(x)
    append_checkpoint(path, cp)
    return cp
