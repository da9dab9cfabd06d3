"""Brute-force ground truth from pairs of permutations.

A connected bicolored map with d edges is the same thing as a pair of
permutations (sigma, tau) on d symbols whose generated group acts
transitively: sigma's cycles are the white vertices, tau's cycles the
black vertices, and the cycle type of sigma*tau is the profile at
infinity.  Counting labelled transitive pairs and dividing by d! gives
the automorphism-weighted counts directly, with no generating-function
machinery involved - which is exactly what makes this an independent
check of the evolution engine.

Full enumeration scans all d!^2 pairs, vectorized over tau for batches
of sigma; the class-reduced scan runs sigma over one representative per
cycle type, weighted by the conjugacy class size, which is exact because
every binned statistic is invariant under simultaneous conjugation.
A tiny pure-Python scan (method "naive") cross-checks the vectorized
kernel at small d.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as iter_permutations
from math import factorial
import os

import numpy as np

from .evolution import ConnectedSeries
from .series import (
    Multiplicities,
    RawKey,
    from_parts,
    genus_of,
    partitions,
)

FULL_LIMIT = 7      # d!^2 pairs; 7 keeps the scan around 2.5e7 pairs
CLASSES_LIMIT = 9   # p(d) * d! pairs
NAIVE_LIMIT = 5


def cycle_type(p) -> Multiplicities:
    """Multiplicity vector of the cycle lengths of a permutation."""
    images = tuple(p)
    d = len(images)
    if sorted(images) != list(range(d)):
        raise ValueError(f"not a permutation of 0..{d - 1}: {images!r}")
    seen = [False] * d
    lengths = []
    for start in range(d):
        if not seen[start]:
            n, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = images[x]
                n += 1
            lengths.append(n)
    return from_parts(lengths)


def cycle_count(p) -> int:
    return sum(cycle_type(p))


def is_transitive(sigma, tau) -> bool:
    """Does the group generated by the two permutations act transitively?

    Forward closure under both maps equals the orbit of 0 (inverses are
    powers), so a plain reachability walk suffices.
    """
    s, t = tuple(sigma), tuple(tau)
    d = len(s)
    if len(t) != d:
        raise ValueError("permutations act on different sets")
    if d == 0:
        raise ValueError("empty permutation")
    seen = [False] * d
    seen[0] = True
    stack = [0]
    reached = 1
    while stack:
        x = stack.pop()
        for y in (s[x], t[x]):
            if not seen[y]:
                seen[y] = True
                reached += 1
                stack.append(y)
    return reached == d


# ---------------------------------------------------------------------------
# vectorized scan
# ---------------------------------------------------------------------------

def _moebius(n: int) -> int:
    primes = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            primes += 1
        p += 1
    if m > 1:
        primes += 1
    return -1 if primes % 2 else 1


@lru_cache(maxsize=None)
def _tau_tables(d: int):
    """Shared per-degree tables: all of S_d plus flat gather indices."""
    T = np.array(list(iter_permutations(range(d))), dtype=np.int8)
    TINV = np.argsort(T, axis=1).astype(np.int8)
    N = T.shape[0]
    # flat indices into a raveled (N, d) array: entry (r, x) points at
    # (r, T[r, x]) resp. (r, TINV[r, x]); reused by every sigma scan
    rowbase = (np.arange(N, dtype=np.intp) * d)[:, None]
    flat_t = (rowbase + T).ravel()
    flat_tinv = (rowbase + TINV).ravel()
    # Moebius inversion matrix: (fix @ W)[:, i-1] = i * m_i, where
    # fix[:, j-1] counts fixed points of the j-th power.
    W = np.zeros((d, d), dtype=np.int16)
    for i in range(1, d + 1):
        for j in range(1, i + 1):
            if i % j == 0:
                W[j - 1, i - 1] = _moebius(i // j)
    base = [(d + 1) ** i for i in range(d)]
    code_to_type = {}
    for m in partitions(d):
        code = sum(m[i] * base[i] for i in range(len(m)))
        code_to_type[code] = m
    codes_sorted = np.array(sorted(code_to_type), dtype=np.int64)
    types_sorted = [code_to_type[int(c)] for c in codes_sorted]
    lcounts = _row_cycle_data(T, rowbase, W, base)[0]
    return (T, rowbase, flat_t, flat_tinv, W, base,
            codes_sorted, types_sorted, lcounts)


def _row_cycle_data(P: np.ndarray, rowbase: np.ndarray, W: np.ndarray,
                    base) -> tuple:
    """(cycle counts, partition codes) for every permutation row of P."""
    n, d = P.shape
    idx = np.arange(d, dtype=P.dtype)
    flat_p = (rowbase + P).ravel()
    fix = np.empty((n, d), dtype=np.int16)
    Q = P
    fix[:, 0] = (Q == idx).sum(axis=1, dtype=np.int16)
    for j in range(2, d + 1):
        Q = Q.ravel()[flat_p].reshape(n, d)  # next power of each row
        fix[:, j - 1] = (Q == idx).sum(axis=1, dtype=np.int16)
    scaled = fix @ W  # column i-1 holds i * m_i
    counts = np.zeros(n, dtype=np.int16)
    codes = np.zeros(n, dtype=np.int64)
    for i in range(1, d + 1):
        mi = scaled[:, i - 1] // i
        counts += mi
        codes += mi.astype(np.int64) * base[i - 1]
    return counts, codes


def _block_labels(sigma) -> np.ndarray:
    """Label every element with the least element of its sigma-cycle."""
    d = len(sigma)
    labels = [-1] * d
    for start in range(d):
        if labels[start] == -1:
            x = start
            while labels[x] == -1:
                labels[x] = start
                x = sigma[x]
    return np.array(labels, dtype=np.int8)


def _invert(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _scan_sigma(sigma, weight: int, tables, counts: dict) -> None:
    """Bin the pairs (sigma, tau) over every tau; exact integer counts."""
    (T, rowbase, flat_t, flat_tinv, W, base,
     codes_sorted, types_sorted, lcounts) = tables
    N, d = T.shape
    sig = np.asarray(sigma, dtype=np.int8)
    k_sigma = cycle_count(sigma)

    if k_sigma == 1:
        trans = np.ones(N, dtype=bool)
    else:
        # min-label propagation on the union graph: labels start at the
        # least element of each sigma-cycle and flow along tau edges
        # (both ways) and within sigma-cycles until stable; the pair is
        # transitive iff everything reaches label 0.
        siginv = np.array(_invert(sigma), dtype=np.int8)
        comp = np.broadcast_to(_block_labels(sigma), (N, d)).copy()
        while True:
            flat = comp.ravel()
            nxt = flat[flat_t]
            np.minimum(nxt, flat[flat_tinv], out=nxt)
            nxt = nxt.reshape(N, d)
            np.minimum(nxt, comp[:, sig], out=nxt)
            np.minimum(nxt, comp[:, siginv], out=nxt)
            np.minimum(nxt, comp, out=nxt)
            if np.array_equal(nxt, comp):
                break
            comp = nxt
        trans = comp.max(axis=1) == 0

    prod = sig[T]  # row r holds sigma composed after tau_r
    _, codes = _row_cycle_data(prod, rowbase, W, base)
    type_idx = np.searchsorted(codes_sorted, codes)

    combined = type_idx * (d + 1) + lcounts
    binned = np.bincount(combined[trans], minlength=len(types_sorted) * (d + 1))
    for flat in np.flatnonzero(binned):
        t_idx, l = divmod(int(flat), d + 1)
        key = (k_sigma, l, types_sorted[t_idx])
        counts[key] = counts.get(key, 0) + int(binned[flat]) * weight


def _scan_sigmas(sigmas, tables, counts: dict) -> None:
    for sigma, weight in sigmas:
        _scan_sigma(sigma, weight, tables, counts)


# ---------------------------------------------------------------------------
# public enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairCounts:
    """Labelled transitive-pair counts of one degree, binned by type."""

    d: int
    counts: dict[RawKey, int]
    method: str = "full"

    def __post_init__(self):
        for key in self.counts:
            genus_of(key)  # every occurring type must have integer genus >= 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def weighted(self) -> dict[RawKey, Fraction]:
        """Automorphism-weighted counts: labelled counts over d!."""
        fd = factorial(self.d)
        return {key: Fraction(c, fd) for key, c in sorted(self.counts.items())}


def _representative(m: Multiplicities) -> tuple[int, ...]:
    """A permutation with cycle type m: consecutive cycles."""
    images = []
    start = 0
    for i, mult in enumerate(m):
        size = i + 1
        for _ in range(mult):
            images.extend(list(range(start + 1, start + size)) + [start])
            start += size
    return tuple(images)


def _class_size(m: Multiplicities, d: int) -> int:
    z = 1
    for i, mult in enumerate(m):
        z *= (i + 1) ** mult * factorial(mult)
    return factorial(d) // z


def _naive_counts(d: int) -> dict[RawKey, int]:
    counts: dict[RawKey, int] = {}
    perms = list(iter_permutations(range(d)))
    ks = [cycle_count(p) for p in perms]
    for s, k in zip(perms, ks):
        for t, l in zip(perms, ks):
            if is_transitive(s, t):
                st = tuple(s[x] for x in t)
                key = (k, l, cycle_type(st))
                counts[key] = counts.get(key, 0) + 1
    return counts


def transitive_pair_counts(d: int, method: str = "auto",
                           threads: int = 1) -> PairCounts:
    """Count transitive pairs binned by (cycles of sigma, cycles of tau,
    cycle type of sigma*tau).

    method "full" scans all d!^2 pairs (d <= 7), "classes" scans one
    sigma per cycle type with conjugacy-class weights (d <= 9), "naive"
    is the no-numpy reference scan (d <= 5), and "auto" picks full or
    classes by degree.  Refuses degrees beyond the supported bound.
    threads > 1 (or 0 for auto) splits the sigma list across worker
    threads; counts merge by exact integer addition, so the result never
    depends on the schedule.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if method == "auto":
        method = "full" if d <= FULL_LIMIT else "classes"
    if method == "naive":
        if d > NAIVE_LIMIT:
            raise ValueError(f"naive enumeration supports d <= {NAIVE_LIMIT}")
        return PairCounts(d, _naive_counts(d), "naive")
    if method == "full":
        if d > FULL_LIMIT:
            raise ValueError(f"full enumeration supports d <= {FULL_LIMIT}, "
                             f"use method='classes' up to {CLASSES_LIMIT}")
        sigmas = [(s, 1) for s in iter_permutations(range(d))]
    elif method == "classes":
        if d > CLASSES_LIMIT:
            raise ValueError(f"class-reduced enumeration supports "
                             f"d <= {CLASSES_LIMIT}")
        sigmas = [(_representative(m), _class_size(m, d)) for m in partitions(d)]
    else:
        raise ValueError(f"unknown method {method!r}")

    tables = _tau_tables(d)
    if threads == 0:
        threads = min(8, os.cpu_count() or 1)
    counts: dict[RawKey, int] = {}
    if threads > 1 and len(sigmas) > threads:
        chunks = [sigmas[i::threads] for i in range(threads)]

        def scan_chunk(chunk):
            part: dict[RawKey, int] = {}
            _scan_sigmas(chunk, tables, part)
            return part

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(scan_chunk, chunks):
                for key, c in part.items():
                    counts[key] = counts.get(key, 0) + c
    else:
        _scan_sigmas(sigmas, tables, counts)
    return PairCounts(d, counts, method)


@dataclass(frozen=True)
class Discrepancy:
    key: RawKey
    oracle: Fraction
    engine: Fraction


def compare_with_series(series: ConnectedSeries, d: int, method: str = "auto",
                        threads: int = 1) -> tuple[PairCounts, list[Discrepancy]]:
    """Exact per-type comparison of the engine against the brute force.

    Returns the oracle table and the list of disagreeing keys (empty iff
    the two agree on every type of degree d).
    """
    table = transitive_pair_counts(d, method, threads)
    weighted = table.weighted()
    keys = set(weighted) | set(series.piece(d).terms)
    diffs = []
    for key in sorted(keys):
        got = series.coefficient(*key)
        want = weighted.get(key, Fraction(0))
        if got != want:
            diffs.append(Discrepancy(key, want, got))
    return table, diffs
