"""Hierarchy consistency checks on the connected series.

The connected series, viewed as a formal power series in t1, t2, ... with
the remaining variables as parameters, satisfies the KP (Kadomtsev -
Petviashvili) hierarchy.  This module encodes the first four equations in
residual form and verifies, coefficient by coefficient, that each
residual is the identically zero polynomial in u, v, t at every s-degree
up to the computed bound.  This is the strongest desk-scale consistency
check available: a single corrupted coefficient generically lights up
several residuals.

Equations are data, not code: an equation is a list of (coefficient,
factors) pairs, each factor a multi-index of t-derivatives, and the whole
equation moved to one side.  Further hierarchy equations can be added to
KP_EQUATIONS without touching the evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .evolution import ConnectedSeries
from .series import GradedSeries, RawKey, TruncationError, multiplicities_decr

MultiIndex = tuple[int, ...]
Term = tuple[Fraction, tuple[MultiIndex, ...]]


@dataclass(frozen=True)
class KpEquation:
    """One hierarchy equation in residual form (all terms on one side)."""

    id: int
    terms: tuple[Term, ...]

    def weight(self) -> int:
        """Common derivative weight of all terms; raises if inhomogeneous."""
        weights = {sum(sum(multi) for multi in factors)
                   for _, factors in self.terms}
        if len(weights) != 1:
            raise ValueError(f"equation {self.id} is not weight-homogeneous")
        return weights.pop()


def _eq(eq_id: int, *terms) -> KpEquation:
    packed = tuple((Fraction(c), tuple(tuple(sorted(f)) for f in factors))
                   for c, factors in terms)
    return KpEquation(eq_id, packed)


#: First four equations of the hierarchy, residual form.  A factor like
#: (1, 1, 1) means the third t1-derivative of the series; several factors
#: multiply.  Weights: 4, 5, 6, 6.
KP_EQUATIONS: tuple[KpEquation, ...] = (
    _eq(1,
        (1, [(2, 2)]),
        (Fraction(1, 2), [(1, 1), (1, 1)]),
        (-1, [(1, 3)]),
        (Fraction(1, 12), [(1, 1, 1, 1)])),
    _eq(2,
        (1, [(2, 3)]),
        (1, [(1, 1), (1, 2)]),
        (-1, [(1, 4)]),
        (Fraction(1, 6), [(1, 1, 1, 2)])),
    _eq(3,
        (1, [(2, 4)]),
        (Fraction(1, 2), [(1, 2), (1, 2)]),
        (1, [(1, 1), (1, 3)]),
        (-1, [(1, 5)]),
        (Fraction(-1, 8), [(1, 1, 1), (1, 1, 1)]),
        (Fraction(-1, 12), [(1, 1), (1, 1, 1, 1)]),
        (Fraction(1, 4), [(1, 1, 1, 3)]),
        (Fraction(-1, 120), [(1, 1, 1, 1, 1, 1)])),
    _eq(4,
        (1, [(3, 3)]),
        (Fraction(-1, 3), [(1, 1), (1, 1), (1, 1)]),
        (1, [(1, 2), (1, 2)]),
        (1, [(1, 1), (1, 3)]),
        (-1, [(1, 5)]),
        (Fraction(-1, 4), [(1, 1, 1), (1, 1, 1)]),
        (Fraction(-1, 3), [(1, 1), (1, 1, 1, 1)]),
        (Fraction(1, 3), [(1, 1, 1, 3)]),
        (Fraction(-1, 45), [(1, 1, 1, 1, 1, 1)])),
)


def equation_by_id(eq_id: int) -> KpEquation:
    for eq in KP_EQUATIONS:
        if eq.id == eq_id:
            return eq
    raise ValueError(f"no hierarchy equation with id {eq_id}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _diff_raw(terms: Mapping[RawKey, int], i: int) -> dict[RawKey, int]:
    out: dict[RawKey, int] = {}
    for (k, l, m), c in terms.items():
        if len(m) >= i and m[i - 1]:
            out[(k, l, multiplicities_decr(m, i))] = m[i - 1] * c
    return out


def _multi_diff(terms: Mapping[RawKey, int], multi: MultiIndex) -> dict:
    out = dict(terms)
    for i in multi:
        if not out:
            break
        out = _diff_raw(out, i)
    return out


def _mul_raw(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    items_b = list(b.items())
    for (k1, l1, m1), c1 in a.items():
        for (k2, l2, m2), c2 in items_b:
            if len(m1) < len(m2):
                mm = tuple(x + y for x, y in zip(m1, m2)) + m2[len(m1):]
            else:
                mm = tuple(x + y for x, y in zip(m1, m2)) + m1[len(m2):]
            key = (k1 + k2, l1 + l2, mm)
            v = out.get(key, 0) + c1 * c2
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def _add_scaled(acc: dict, terms: Mapping, scale: Fraction) -> None:
    if not scale:
        return
    for key, v in terms.items():
        w = acc.get(key, 0) + scale * v
        if w:
            acc[key] = w
        elif key in acc:
            del acc[key]


class KpEvaluator:
    """Shared derivative/product tables for residuals up to one s-bound."""

    def __init__(self, series: ConnectedSeries, nmax: int):
        if nmax > series.dmax:
            raise TruncationError(
                f"s-degree {nmax} beyond computed degree {series.dmax}")
        self.nmax = nmax
        # marked pieces: index d holds d * (weight-d piece), integer coefficients
        self._marked = [None] + [series.marked_piece(d)
                                 for d in range(1, nmax + 1)]
        self._derivs: dict[MultiIndex, list] = {}
        self._products: dict[tuple[MultiIndex, ...], list] = {}

    def _deriv(self, multi: MultiIndex) -> list:
        if multi not in self._derivs:
            self._derivs[multi] = [None] + [
                _multi_diff(self._marked[d], multi)
                for d in range(1, self.nmax + 1)]
        return self._derivs[multi]

    def _product(self, factors: tuple[MultiIndex, ...]) -> list:
        """s-indexed values of a product of derivative factors.

        Entry n is a {key: Fraction} dict; the marked normalization 1/d
        per factor is folded in here.
        """
        if factors in self._products:
            return self._products[factors]
        n_factors = len(factors)
        out: list = [None] * (self.nmax + 1)
        if n_factors == 1:
            U = self._deriv(factors[0])
            for n in range(1, self.nmax + 1):
                acc: dict = {}
                _add_scaled(acc, U[n], Fraction(1, n))
                out[n] = acc
        else:
            head = self._product(factors[:-1])
            U = self._deriv(factors[-1])
            for n in range(n_factors, self.nmax + 1):
                acc = {}
                for a in range(n_factors - 1, n):
                    b = n - a
                    if head[a] and U[b]:
                        _add_scaled(acc, _mul_raw(head[a], U[b]), Fraction(1, b))
                out[n] = acc
        self._products[factors] = out
        return out

    def residual(self, eq: KpEquation, n: int) -> GradedSeries:
        """s^n coefficient of the residual; a polynomial in u, v, t."""
        if not 1 <= n <= self.nmax:
            raise TruncationError(f"s-degree {n} outside 1..{self.nmax}")
        acc: dict = {}
        for coeff, factors in eq.terms:
            vals = self._product(factors)[n]
            if vals:
                _add_scaled(acc, vals, coeff)
        return GradedSeries(acc, n, _raw=True)


def kp_residual(series: ConnectedSeries, eq: KpEquation, n: int) -> GradedSeries:
    """Residual polynomial of one equation at one s-degree (must be zero)."""
    return KpEvaluator(series, n).residual(eq, n)


@dataclass(frozen=True)
class KpRow:
    eq: int
    n: int
    residual_terms: int
    passed: bool


@dataclass(frozen=True)
class KpReport:
    nmax: int
    rows: tuple[KpRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)


def kp_report(series: ConnectedSeries, nmax: int,
              equations: Sequence[KpEquation] = KP_EQUATIONS) -> KpReport:
    """Evaluate all residuals for every s-degree up to nmax.

    Passes overall iff every residual is the identically zero polynomial;
    nmax = 0 is a vacuous pass.
    """
    evaluator = KpEvaluator(series, nmax)
    rows = []
    for eq in equations:
        eq.weight()  # audit homogeneity before trusting the data
        for n in range(1, nmax + 1):
            res = evaluator.residual(eq, n)
            rows.append(KpRow(eq.id, n, len(res), res.is_zero()))
    return KpReport(nmax, tuple(rows))
