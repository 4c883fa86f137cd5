"""Hilbert series of monomial quotients and Krull dimension.

A HilbertSeries is an integer Laurent numerator over the implicit
denominator (1-t)^m.  The reduced form divides out every factor of (1-t)
from the numerator; the remaining pole order at t=1 is the Krull dimension
of the graded module the series describes.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

from .poly import Expo, mono_deg, mono_divides

NEG_INF = -math.inf
POS_INF = math.inf


class HilbertSeries:
    """numerator / (1-t)^den_pow with integer Laurent numerator."""

    __slots__ = ("num", "den_pow", "_reduced")

    def __init__(self, num: dict, den_pow: int):
        self.num = {k: v for k, v in num.items() if v != 0}
        self.den_pow = den_pow
        self._reduced = None

    def is_zero(self) -> bool:
        return not self.num

    def reduced(self) -> tuple[dict, float]:
        """(numerator with all (1-t) factors removed, pole order at t=1).

        The pole order of the zero series is -inf.
        """
        if self._reduced is not None:
            return self._reduced
        if not self.num:
            self._reduced = ({}, NEG_INF)
            return self._reduced
        num = dict(self.num)
        pole = self.den_pow
        while sum(num.values()) == 0:
            num = _divide_by_one_minus_t(num)
            pole -= 1
        self._reduced = (num, pole)
        return self._reduced

    @property
    def pole_order(self):
        return self.reduced()[1]

    def coefficient(self, d: int) -> int:
        """Coefficient of t^d in the power-series expansion."""
        num, pole = self.reduced()
        if not num:
            return 0
        if pole <= 0:
            # polynomial: multiply the reduced numerator by (1-t)^(-pole)
            poly = num
            for _ in range(-int(pole)):
                poly = _mul_one_minus_t(poly)
            return poly.get(d, 0)
        p = int(pole)
        total = 0
        for j, c in num.items():
            k = d - j
            if k >= 0:
                total += c * math.comb(k + p - 1, p - 1)
        return total

    def coefficients(self, upto: int, start: int | None = None) -> list[int]:
        if start is None:
            start = min(self.num) if self.num else 0
            start = min(start, 0)
        return [self.coefficient(d) for d in range(start, upto + 1)]

    def shift(self, w: int) -> HilbertSeries:
        """Multiply by t^w (internal-degree twist)."""
        return HilbertSeries({k + w: v for k, v in self.num.items()}, self.den_pow)

    def __add__(self, other: HilbertSeries) -> HilbertSeries:
        a, b = self, other
        if a.den_pow < b.den_pow:
            a, b = b, a
        num = dict(a.num)
        lifted = dict(b.num)
        for _ in range(a.den_pow - b.den_pow):
            lifted = _mul_one_minus_t(lifted)
        for k, v in lifted.items():
            num[k] = num.get(k, 0) + v
        return HilbertSeries(num, a.den_pow)

    def __sub__(self, other: HilbertSeries) -> HilbertSeries:
        neg = HilbertSeries({k: -v for k, v in other.num.items()}, other.den_pow)
        return self + neg

    def scale(self, c: int) -> HilbertSeries:
        return HilbertSeries({k: c * v for k, v in self.num.items()}, self.den_pow)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        ra, pa = self.reduced()
        rb, pb = other.reduced()
        return pa == pb and ra == rb

    def equal_up_to_twist(self, other: HilbertSeries):
        """The uniform w with self = t^w * other, or None."""
        ra, pa = self.reduced()
        rb, pb = other.reduced()
        if pa != pb:
            return None
        if not ra and not rb:
            return 0
        if not ra or not rb:
            return None
        w = min(ra) - min(rb)
        if {k - w: v for k, v in ra.items()} == rb:
            return w
        return None

    def __hash__(self):
        num, pole = self.reduced()
        return hash((frozenset(num.items()), pole))

    def to_json(self):
        num, pole = self.reduced()
        return {
            "numerator": [[k, v] for k, v in sorted(num.items())],
            "pole_order": None if pole == NEG_INF else int(pole),
        }

    def __repr__(self):
        num, pole = self.reduced()
        return f"HS({dict(sorted(num.items()))}, pole={pole})"


def _divide_by_one_minus_t(num: dict) -> dict:
    """Divide a Laurent polynomial (summing to 0 at t=1) by (1-t)."""
    if not num:
        return {}
    lo, hi = min(num), max(num)
    out = {}
    acc = 0
    # (1-t) * sum(b_k t^k) = sum((b_k - b_{k-1}) t^k): invert by prefix sums.
    for k in range(lo, hi + 1):
        acc += num.get(k, 0)
        if acc:
            out[k] = acc
    return out


def _mul_one_minus_t(num: dict) -> dict:
    out = {}
    for k, v in num.items():
        out[k] = out.get(k, 0) + v
        out[k + 1] = out.get(k + 1, 0) - v
    return {k: v for k, v in out.items() if v != 0}


# ---------- monomial ideals ----------

def _minimalize(gens: frozenset) -> frozenset:
    out = []
    for g in sorted(gens):
        if not any(h != g and mono_divides(h, g) for h in gens):
            out.append(g)
    return frozenset(out)


@lru_cache(maxsize=None)
def _numerator(gens: frozenset, nvars: int) -> tuple:
    """Numerator of HS(S/I) over (1-t)^nvars for the monomial ideal I.

    Bayer-Stillman style splitting: N(I + (g)) = N(I) - t^deg(g) N(I : g).
    Returned as a sorted tuple of (degree, coeff) pairs for cacheability.
    """
    gens = _minimalize(gens)
    if not gens:
        return ((0, 1),)
    zero = (0,) * nvars
    if zero in gens:
        return ()
    # Disjoint supports: product of (1 - t^deg).
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(
        supports[i].isdisjoint(supports[j])
        for i in range(len(supports))
        for j in range(i)
    ):
        num = {0: 1}
        for g in gens:
            d = mono_deg(g)
            new = {}
            for k, v in num.items():
                new[k] = new.get(k, 0) + v
                new[k + d] = new.get(k + d, 0) - v
            num = {k: v for k, v in new.items() if v != 0}
        return tuple(sorted(num.items()))
    ordered = sorted(gens)
    rest = frozenset(ordered[:-1])
    g = ordered[-1]
    base = dict(_numerator(rest, nvars))
    colon = frozenset(
        tuple(max(h[i] - g[i], 0) for i in range(nvars)) for h in rest
    )
    corr = dict(_numerator(colon, nvars))
    d = mono_deg(g)
    out = dict(base)
    for k, v in corr.items():
        out[k + d] = out.get(k + d, 0) - v
    return tuple(sorted((k, v) for k, v in out.items() if v != 0))


def monomial_quotient_series(gens: Sequence[Expo], nvars: int) -> HilbertSeries:
    """Hilbert series of S/I for the monomial ideal I."""
    num = dict(_numerator(frozenset(gens), nvars))
    return HilbertSeries(num, nvars)


def lead_module_series(
    lead_terms: Sequence[tuple], rank: int, twists: Sequence[int], nvars: int
) -> HilbertSeries:
    """Hilbert series of F/L for a monomial submodule L of the free module F.

    lead_terms: (component, exponent) pairs generating L.
    """
    per_comp: list[list[Expo]] = [[] for _ in range(rank)]
    for comp, e in lead_terms:
        per_comp[comp].append(e)
    total = HilbertSeries({}, nvars)
    for comp in range(rank):
        total = total + monomial_quotient_series(per_comp[comp], nvars).shift(
            twists[comp]
        )
    return total


# ---------- Krull dimension of monomial quotients ----------

def dim_monomial_quotient(gens: Sequence[Expo], nvars: int):
    """Krull dimension of S/I by maximal independent variable sets.

    dim = max size of a variable subset V such that no minimal generator is
    supported inside V.  The unit ideal gives -inf; cross-checked against
    the Hilbert-series pole order by krull_dim_lead.
    """
    mins = _minimalize(frozenset(gens))
    zero = (0,) * nvars
    if zero in mins:
        return NEG_INF
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in mins]
    best = -1
    for mask in range(1 << nvars):
        sub = frozenset(i for i in range(nvars) if mask >> i & 1)
        if any(s <= sub for s in supports):
            continue
        best = max(best, len(sub))
    return best


def krull_dim_lead(gens: Sequence[Expo], nvars: int):
    """Dimension of S/I for a monomial ideal, by both methods (they must
    agree): combinatorial independent sets and Hilbert-series pole order."""
    combinatorial = dim_monomial_quotient(gens, nvars)
    pole = monomial_quotient_series(gens, nvars).pole_order
    if combinatorial != pole:
        raise AssertionError(
            f"dimension methods disagree: sets={combinatorial} pole={pole}"
        )
    return combinatorial
