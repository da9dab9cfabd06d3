"""Degree-by-degree construction of the connected generating series.

The series F collects the weighted counts of connected bicolored maps:
the coefficient of u^k v^l t1^m1 t2^m2 ... in the piece of t-weight d is
the count (each map weighted by 1/|Aut|) of maps with d edges, k white
vertices, l black vertices and cycle profile m at infinity.  F starts
with the single one-edge map, u*v*t1.

Each piece is produced from the lower ones by summing over the ways of
inserting one edge, which acts on a monomial through three moves:

* grow_cycle          - one cycle gets longer by one; a new vertex of
                        either color appears (the u/v shift is applied
                        by the caller).
* split_or_join_cycles- within one component, an inserted edge either
                        splits a cycle in two or joins two cycles.
* join_components     - an inserted edge joins one cycle of each of two
                        previously disconnected components.

All three raise the t-weight by exactly one, so the piece of weight d
follows from weights < d and the seed alone.  Coefficient arithmetic is
exact throughout; internally each piece is manipulated as its "marked"
integer form (d times the weighted counts), which keeps the hot
convolution loops in plain big-integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterator, Mapping, Sequence

from .series import (
    GradedSeries,
    Multiplicities,
    RawKey,
    TruncationError,
    canonical_multiplicities,
    multiplicities_decr,
    multiplicities_incr,
    partition_weight,
)

SEED_KEY: RawKey = (1, 1, (1,))


# ---------------------------------------------------------------------------
# raw kernels on plain {key: coefficient} dicts
#
# Coefficients may be int or Fraction; the kernels only ever multiply by
# integers, so integer inputs stay integer.  Truncation is not applied
# here (callers either filter afterwards or control the loop depth).
# ---------------------------------------------------------------------------

def _grow_raw(terms: Mapping[RawKey, object]) -> dict:
    out: dict = {}
    for (k, l, m), c in terms.items():
        for idx, mult in enumerate(m):
            if mult:
                key = (k, l, m[:idx] + (mult - 1,) + ((m[idx + 1] + 1,) + m[idx + 2:]
                       if idx + 1 < len(m) else (1,)))
                out[key] = out.get(key, 0) + (idx + 1) * mult * c
    return out


def _splitjoin_raw(terms: Mapping[RawKey, object]) -> dict:
    out: dict = {}
    for (k, l, m), c in terms.items():
        sizes = [i + 1 for i, x in enumerate(m) if x]
        # split one cycle of size r into j and r + 1 - j (ordered)
        for r in sizes:
            base = multiplicities_decr(m, r)
            f = r * m[r - 1] * c
            for j in range(1, r + 1):
                key = (k, l, multiplicities_incr(multiplicities_incr(base, j),
                                                 r + 1 - j))
                out[key] = out.get(key, 0) + f
        # join two cycles j, j2 of one component into j + j2 + 1 (ordered)
        for j in sizes:
            for j2 in sizes:
                if j == j2:
                    ways = m[j - 1] * (m[j - 1] - 1)
                    if not ways:
                        continue
                else:
                    ways = m[j - 1] * m[j2 - 1]
                base = multiplicities_decr(multiplicities_decr(m, j), j2)
                key = (k, l, multiplicities_incr(base, j + j2 + 1))
                out[key] = out.get(key, 0) + j * j2 * ways * c
    return out


def _diff_lists(terms: Mapping[RawKey, object]) -> list:
    """Partial derivatives bucketed by variable index.

    Returns a sorted list of (j, [(key, m_j * coeff), ...]).
    """
    buckets: dict[int, list] = {}
    for (k, l, m), c in terms.items():
        for idx, mult in enumerate(m):
            if mult:
                j = idx + 1
                buckets.setdefault(j, []).append(
                    ((k, l, multiplicities_decr(m, j)), mult * c))
    return sorted(buckets.items())


def _sum_incr(m1: Multiplicities, m2: Multiplicities, i: int) -> Multiplicities:
    """m1 + m2 + e_i."""
    n = max(len(m1), len(m2), i)
    out = [0] * n
    for idx, x in enumerate(m1):
        out[idx] = x
    for idx, x in enumerate(m2):
        out[idx] += x
    out[i - 1] += 1
    return tuple(out)


def _pairjoin_accumulate(a: Mapping, b: Mapping, factor, out: dict) -> None:
    """Add factor * sum_{j,j2} j*j2*t_{j+j2+1} (d a/d t_j)(d b/d t_j2) to out."""
    da = _diff_lists(a)
    db = _diff_lists(b)
    for j, ta in da:
        for j2, tb in db:
            w = factor * j * j2
            tgt = j + j2 + 1
            for (k1, l1, m1), c1 in ta:
                wc1 = w * c1
                for (k2, l2, m2), c2 in tb:
                    key = (k1 + k2, l1 + l2, _sum_incr(m1, m2, tgt))
                    v = out.get(key, 0) + wc1 * c2
                    if v:
                        out[key] = v
                    elif key in out:
                        del out[key]


def _linear_accumulate(terms: Mapping, factor, out: dict) -> None:
    """Add factor * ((u + v) * grow + split_or_join)(terms) to out."""
    for (k, l, m), c in _grow_raw(terms).items():
        fc = factor * c
        for key in ((k + 1, l, m), (k, l + 1, m)):
            v = out.get(key, 0) + fc
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    for key, c in _splitjoin_raw(terms).items():
        v = out.get(key, 0) + factor * c
        if v:
            out[key] = v
        elif key in out:
            del out[key]


# ---------------------------------------------------------------------------
# public operator wrappers
# ---------------------------------------------------------------------------

def _wrap(raw: dict, truncation: int) -> GradedSeries:
    out = {key: c for key, c in raw.items()
           if c and partition_weight(key[2]) <= truncation}
    return GradedSeries(out, truncation, _raw=True)


def _check_weight_shift(inp: GradedSeries, res: GradedSeries, shift: int, op: str):
    win, wout = inp.homogeneous_weight(), res.homogeneous_weight()
    if win is not None and not res.is_zero() and wout != win + shift:
        raise AssertionError(f"{op} must raise the weight by {shift}")


def grow_cycle(series: GradedSeries) -> GradedSeries:
    """Lengthen one cycle by one: sum_r r * t_{r+1} * d/dt_r."""
    res = _wrap(_grow_raw(series._terms), series.truncation)
    _check_weight_shift(series, res, 1, "grow_cycle")
    return res


def split_or_join_cycles(series: GradedSeries) -> GradedSeries:
    """One-component cycle surgery.

    Splits one cycle of size r into an ordered pair (j, r + 1 - j), or
    joins an ordered pair of cycles (j, j2) into one of size j + j2 + 1;
    the combined move raises the weight by exactly one.
    """
    res = _wrap(_splitjoin_raw(series._terms), series.truncation)
    _check_weight_shift(series, res, 1, "split_or_join_cycles")
    return res


def join_components(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    """Join one cycle of a with one cycle of b into a single cycle.

    Bilinear: sum over ordered pairs (j, j2) of j*j2*t_{j+j2+1} times the
    two partial derivatives.  The result weight is weight(a) + weight(b)
    + 1 on homogeneous inputs.
    """
    out: dict = {}
    trunc = min(a.truncation, b.truncation)
    _pairjoin_accumulate(a._terms, b._terms, 1, out)
    res = _wrap(out, trunc)
    wa, wb = a.homogeneous_weight(), b.homogeneous_weight()
    if wa is not None and wb is not None and not res.is_zero():
        if res.homogeneous_weight() != wa + wb + 1:
            raise AssertionError("join_components must raise total weight by 1")
    return res


# ---------------------------------------------------------------------------
# the degree recursion
# ---------------------------------------------------------------------------

def _marked_terms(terms: Mapping[RawKey, object], d: int) -> dict[RawKey, int]:
    """d times the coefficients, as exact integers (the marked counts)."""
    out: dict[RawKey, int] = {}
    for key, c in terms.items():
        v = c * d
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ArithmeticError(f"marked count at {key!r} is not integral")
            v = v.numerator
        out[key] = v
    return out


def _next_marked(marked: Sequence[dict], d: int) -> dict[RawKey, int]:
    """Marked piece of weight d from the marked pieces 1 .. d-1.

    d*F_d = ((u+v)*grow + split_or_join) F_{d-1}
            + sum_{n=1}^{d-2} join_components(F_n, F_{d-1-n});
    with F_n = (marked_n)/n every contribution is integral only as a
    whole, so everything is accumulated over the common denominator C.

    Hot path: inside this call multiplicity vectors are packed into one
    integer (bit fields wide enough that componentwise sums cannot
    carry), so combining two profiles in the pair convolution is a
    single addition.
    """
    if d < 2:
        raise ValueError("the seed piece is fixed, recursion starts at d = 2")
    bits = max(6, d.bit_length() + 1)  # multiplicities stay < d, sums < 2^bits
    mask = (1 << bits) - 1

    def encode(m: Multiplicities) -> int:
        code = 0
        for i, x in enumerate(m):
            code |= x << (bits * i)
        return code

    def decode(code: int) -> Multiplicities:
        out = []
        while code:
            out.append(code & mask)
            code >>= bits
        return tuple(out)

    diff_cache: dict[int, list] = {}

    def diff_encoded(n: int) -> list:
        """Derivative buckets of marked piece n with packed profiles."""
        if n not in diff_cache:
            buckets: dict[int, list] = {}
            for (k, l, m), c in marked[n - 1].items():
                code = encode(m)
                for idx, mult in enumerate(m):
                    if mult:
                        buckets.setdefault(idx + 1, []).append(
                            ((k, l, code - (1 << (bits * idx))), mult * c))
            diff_cache[n] = sorted(buckets.items())
        return diff_cache[n]

    denoms = [d - 1] + [n * (d - 1 - n) for n in range(1, d - 1)]
    C = lcm(*denoms)
    lin: dict = {}
    _linear_accumulate(marked[d - 2], C // (d - 1), lin)
    acc: dict = {(k, l, encode(m)): v for (k, l, m), v in lin.items()}
    for n in range(1, d - 1):
        factor = C // (n * (d - 1 - n))
        for j, ta in diff_encoded(n):
            for j2, tb in diff_encoded(d - 1 - n):
                w = factor * j * j2
                inc = 1 << (bits * (j + j2))  # multiply by t_{j+j2+1}
                for (k1, l1, c1), v1 in ta:
                    wv1 = w * v1
                    kc = c1 + inc
                    for (k2, l2, c2), v2 in tb:
                        key = (k1 + k2, l1 + l2, kc + c2)
                        acc[key] = acc.get(key, 0) + wv1 * v2
    out: dict[RawKey, int] = {}
    for (k, l, code), v in acc.items():
        if v:
            q, r = divmod(v, C)
            if r:
                raise ArithmeticError(
                    f"marked count at {(k, l, decode(code))!r} is not integral")
            out[(k, l, decode(code))] = q
    return out


def next_piece(pieces: Sequence[GradedSeries],
               truncation: int | None = None) -> GradedSeries:
    """Piece of weight d = len(pieces) + 1 from the pieces 1 .. d - 1."""
    d = len(pieces) + 1
    marked = [_marked_terms(p._terms, n) for n, p in enumerate(pieces, 1)]
    raw = _next_marked(marked, d)
    trunc = d if truncation is None else truncation
    return GradedSeries({key: Fraction(v, d) for key, v in raw.items()},
                        trunc, _raw=True)


class ConnectedSeries:
    """Homogeneous pieces of the connected series for degrees 1 .. dmax.

    Construction validates the seed, per-piece homogeneity, the genus
    relation on every key, and integrality of the marked counts.
    """

    __slots__ = ("_pieces", "_marked")

    def __init__(self, pieces: Sequence[GradedSeries], *, validate: bool = True):
        dmax = len(pieces)
        if dmax < 1:
            raise ValueError("need at least the degree-1 piece")
        self._pieces = tuple(
            GradedSeries(p._terms, dmax, _raw=True) for p in pieces)
        self._marked: list[dict[RawKey, int]] | None = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        if self._pieces[0]._terms != {SEED_KEY: 1}:
            raise ValueError("degree-1 piece must be exactly u*v*t1")
        for d, piece in enumerate(self._pieces, 1):
            if piece.homogeneous_weight() != d:
                raise ValueError(f"piece {d} is not homogeneous of weight {d}")
            piece.validate_connected()
            _marked_terms(piece._terms, d)

    # -- construction ----------------------------------------------------------

    @classmethod
    def compute(cls, dmax: int) -> "ConnectedSeries":
        """Build the series up to degree dmax from the one-edge seed."""
        if dmax < 1:
            raise ValueError("dmax must be >= 1")
        seed = GradedSeries({SEED_KEY: Fraction(1)}, 1, _raw=True)
        return cls((seed,), validate=False).extended_to(dmax)

    def extended_to(self, dmax: int) -> "ConnectedSeries":
        """Same series computed (or cut back) to another degree bound."""
        if dmax < 1:
            raise ValueError("dmax must be >= 1")
        if dmax <= self.dmax:
            return ConnectedSeries(self._pieces[:dmax], validate=False) \
                if dmax < self.dmax else self
        marked = list(self._marked_list())
        fractions = [p._terms for p in self._pieces]
        for d in range(self.dmax + 1, dmax + 1):
            raw = _next_marked(marked, d)
            marked.append(raw)
            fractions.append({key: Fraction(v, d) for key, v in raw.items()})
        pieces = [GradedSeries(t, dmax, _raw=True) for t in fractions]
        out = ConnectedSeries(pieces, validate=True)
        out._marked = marked
        return out

    # -- access ------------------------------------------------------------------

    @property
    def dmax(self) -> int:
        return len(self._pieces)

    @property
    def pieces(self) -> tuple[GradedSeries, ...]:
        return self._pieces

    def piece(self, d: int) -> GradedSeries:
        if not 1 <= d <= self.dmax:
            raise TruncationError(f"degree {d} outside 1..{self.dmax}")
        return self._pieces[d - 1]

    def coefficient(self, k: int, l: int, m: Sequence[int]) -> Fraction:
        """Weighted count for the type (k, l, m); exact, 0 when absent."""
        mm = canonical_multiplicities(m)
        d = partition_weight(mm)
        if d > self.dmax:
            raise TruncationError(f"weight {d} beyond computed degree {self.dmax}")
        if d == 0 or k < 1 or l < 1:
            return Fraction(0)
        return Fraction(self._pieces[d - 1]._terms.get((k, l, mm), 0))

    def combined(self) -> GradedSeries:
        """All pieces merged into one series truncated at dmax."""
        out: dict = {}
        for piece in self._pieces:
            out.update(piece._terms)
        return GradedSeries(out, self.dmax, _raw=True)

    def _marked_list(self) -> list[dict[RawKey, int]]:
        if self._marked is None:
            self._marked = [_marked_terms(p._terms, d)
                            for d, p in enumerate(self._pieces, 1)]
        return self._marked

    def marked_piece(self, d: int) -> dict[RawKey, int]:
        """d times the degree-d piece, with integer coefficients."""
        if not 1 <= d <= self.dmax:
            raise TruncationError(f"degree {d} outside 1..{self.dmax}")
        return dict(self._marked_list()[d - 1])

    def __repr__(self) -> str:
        return f"ConnectedSeries(dmax={self.dmax})"


# ---------------------------------------------------------------------------
# partition function (disconnected series)
# ---------------------------------------------------------------------------

def partition_function(dmax: int) -> GradedSeries:
    """Exponential-form disconnected series, truncated at weight dmax.

    The weight-n piece is A^n(1)/n! where A applies (u+v)*grow,
    split_or_join, and multiplication by the seed monomial u*v*t1.
    Term-by-term this equals exp() of the connected series.
    """
    if dmax < 0:
        raise ValueError("dmax must be >= 0")
    z: dict[RawKey, Fraction] = {(0, 0, ()): Fraction(1)}
    x: dict = {(0, 0, ()): 1}
    fact = 1
    for n in range(1, dmax + 1):
        nxt: dict = {}
        _linear_accumulate(x, 1, nxt)
        for (k, l, m), c in x.items():
            key = (k + 1, l + 1, multiplicities_incr(m, 1))
            nxt[key] = nxt.get(key, 0) + c
        x = {key: c for key, c in nxt.items() if c}
        fact *= n
        for key, c in x.items():
            z[key] = Fraction(c, fact)
    out = GradedSeries(z, dmax, _raw=True)
    out.validate_disconnected()
    return out


# ---------------------------------------------------------------------------
# coefficient-level recursion (diagnostic identity, never a solver)
# ---------------------------------------------------------------------------

def _lookup(cs: ConnectedSeries, k: int, l: int, m: Multiplicities) -> Fraction:
    if k < 1 or l < 1:
        return Fraction(0)
    return cs.coefficient(k, l, m)


def _splits(m: Multiplicities) -> Iterator[tuple[Multiplicities, Multiplicities]]:
    for choice in product(*(range(x + 1) for x in m)):
        yield (canonical_multiplicities(choice),
               canonical_multiplicities(tuple(t - c for t, c in zip(m, choice))))


def recursion_rhs(cs: ConnectedSeries, k: int, l: int,
                  m: Sequence[int]) -> Fraction:
    """Evaluate the coefficient recursion right-hand side at (k, l, m).

    Sums, over the four one-edge-insertion moves, the lower-degree
    weighted counts times their insertion multiplicities, divided by the
    degree d; the one-edge seed enters as a Kronecker term at d = 1.
    Evaluated purely from the already computed table, this must agree
    with coefficient() on every key (exercised by the test suite); it is
    never used to build the table.
    """
    mm = canonical_multiplicities(m)
    d = partition_weight(mm)
    if d > cs.dmax:
        raise TruncationError(f"weight {d} beyond computed degree {cs.dmax}")
    if d == 0:
        return Fraction(0)
    total = Fraction(0)
    if (k, l, mm) == SEED_KEY:
        total += 1
    sizes = [i + 1 for i, x in enumerate(mm) if x]

    # double-edge insertion: a cycle i-1 grew to i, a vertex was added
    for i in sizes:
        if i >= 2:
            ref = multiplicities_incr(multiplicities_decr(mm, i), i - 1)
            f = (i - 1) * (mm[i - 2] + 1)
            total += f * (_lookup(cs, k - 1, l, ref) + _lookup(cs, k, l - 1, ref))

    # one cycle i-1 was split into j + j2 (ordered pairs)
    for j in sizes:
        for j2 in sizes:
            if j == j2 and mm[j - 1] < 2:
                continue
            i = j + j2
            prev = mm[i - 2] if i - 1 <= len(mm) else 0
            f = (i - 1) * (prev + 1 - (j == 1) - (j2 == 1))
            if f:
                base = multiplicities_decr(multiplicities_decr(mm, j), j2)
                ref = multiplicities_incr(base, i - 1)
                total += f * _lookup(cs, k, l, ref)

    # two cycles j, j2 of one component were joined into j + j2 + 1
    for c in sizes:
        if c < 3:
            continue
        i = c - 1
        base = multiplicities_decr(mm, c)
        for j in range(1, i):
            j2 = i - j
            mj = mm[j - 1] if j <= len(mm) else 0
            mj2 = mm[j2 - 1] if j2 <= len(mm) else 0
            f = j * j2 * (mj + 1) * (mj2 + 1 + (j == j2))
            ref = multiplicities_incr(multiplicities_incr(base, j), j2)
            total += f * _lookup(cs, k, l, ref)

    # cycles of two separate components were joined into j + j2 + 1
    for c in sizes:
        if c < 3:
            continue
        i = c - 1
        rest = multiplicities_decr(mm, c)
        for j in range(1, i):
            j2 = i - j
            jf = j * j2
            for m1, m2 in _splits(rest):
                f1 = (m1[j - 1] if j <= len(m1) else 0) + 1
                f2 = (m2[j2 - 1] if j2 <= len(m2) else 0) + 1
                r1 = multiplicities_incr(m1, j)
                r2 = multiplicities_incr(m2, j2)
                for k1 in range(1, k):
                    for l1 in range(1, l):
                        a = _lookup(cs, k1, l1, r1)
                        if a:
                            b = _lookup(cs, k - k1, l - l1, r2)
                            if b:
                                total += jf * f1 * f2 * a * b
    return total / d
