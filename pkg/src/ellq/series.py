"""Truncated multivariate Laurent series with exactness windows.

A TruncSeries stores finitely many terms of a Laurent series in named
formal variables.  Exponents are exact Fractions (rational lattices).
Each variable carries two intervals:

  support  -- where the *true* series may have nonzero coefficients
              (None bound = unbounded);
  window   -- where the stored coefficients are guaranteed to equal the
              true ones.  Outside the window the series is silently
              partial.

Arithmetic propagates both intervals conservatively, so that equality
tests can restrict themselves to exponents both operands actually
determine.  This implements the truncation discipline used throughout
the verification suites: coefficients possibly polluted by truncation
are never compared.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Frac = Fraction
_ZERO = Fraction(0)


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise TypeError(f"exponents must be rational, got {x!r}")


class Interval:
    """Closed interval with None = unbounded on either side."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo=None, hi=None):
        self.lo = None if lo is None else _fr(lo)
        self.hi = None if hi is None else _fr(hi)

    def __repr__(self):
        return f"[{self.lo},{self.hi}]"

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and x < self.lo:
            return False
        if self.hi is not None and x > self.hi:
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        lo = self.lo if other.lo is None else (other.lo if self.lo is None else max(self.lo, other.lo))
        hi = self.hi if other.hi is None else (other.hi if self.hi is None else min(self.hi, other.hi))
        return Interval(lo, hi)

    def shift(self, d: Fraction) -> "Interval":
        return Interval(None if self.lo is None else self.lo + d,
                        None if self.hi is None else self.hi + d)

    def is_empty(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo > self.hi

    def copy(self) -> "Interval":
        return Interval(self.lo, self.hi)


def _sum_lo(a, b):
    return None if a is None or b is None else a + b


def _mul_window(s1: Interval, w1: Interval, s2: Interval, w2: Interval) -> Interval:
    """Window of a product, given supports and windows of the factors."""
    # Unknown region of factor i above its window exists iff the support
    # extends past the window top (analogously below).
    def top(sa, wa, sb):
        unknown_above = (wa.hi is not None) and (sa.hi is None or sa.hi > wa.hi)
        if not unknown_above:
            return None  # no constraint from this side
        # contributions e1 > wa.hi pair with e2 >= sb.lo; first polluted
        # exponent is wa.hi + sb.lo (exclusive), so determined up to
        # wa.hi + sb.lo  (coefficients at exponents strictly below
        # wa.hi + sb.lo + (smallest step) are safe; we keep the closed
        # conservative bound wa.hi + sb.lo).
        if sb.lo is None:
            return "empty"
        return wa.hi + sb.lo

    def bot(sa, wa, sb):
        unknown_below = (wa.lo is not None) and (sa.lo is None or sa.lo < wa.lo)
        if not unknown_below:
            return None
        if sb.hi is None:
            return "empty"
        return wa.lo + sb.hi

    tops = [t for t in (top(s1, w1, s2), top(s2, w2, s1)) if t is not None]
    bots = [b for b in (bot(s1, w1, s2), bot(s2, w2, s1)) if b is not None]
    if "empty" in tops or "empty" in bots:
        return Interval(0, -1)  # canonical empty interval
    hi = min(tops) if tops else None
    lo = max(bots) if bots else None
    return Interval(lo, hi)


class TruncSeries:
    __slots__ = ("vars", "terms", "support", "window")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None,
                 support: Mapping[str, Interval] | None = None,
                 window: Mapping[str, Interval] | None = None):
        self.vars = tuple(vars)
        self.terms: dict[tuple, complex] = {}
        if terms:
            for e, c in terms.items():
                key = tuple(_fr(x) for x in e)
                if len(key) != len(self.vars):
                    raise ValueError("exponent tuple length mismatch")
                if c != 0:
                    self.terms[key] = self.terms.get(key, 0) + complex(c)
        sup = support or {}
        win = window or {}
        self.support = {v: sup.get(v, Interval()).copy() if v in sup else Interval()
                        for v in self.vars}
        self.window = {v: win.get(v, Interval()).copy() if v in win else Interval()
                       for v in self.vars}

    # -- constructors --------------------------------------------------------

    @classmethod
    def scalar(cls, c, vars=()) -> "TruncSeries":
        s = cls(vars, {tuple(_ZERO for _ in vars): c} if c else {})
        for v in s.vars:
            s.support[v] = Interval(0, 0)
        return s

    @classmethod
    def monomial(cls, vars, expts, c=1) -> "TruncSeries":
        vars = tuple(vars)
        key = tuple(_fr(x) for x in expts)
        s = cls(vars, {key: c})
        for v, e in zip(vars, key):
            s.support[v] = Interval(e, e)
        return s

    # -- variable alignment ---------------------------------------------------

    def aligned_to(self, vars: tuple) -> "TruncSeries":
        """Re-express on a superset variable tuple (missing exponents 0)."""
        if vars == self.vars:
            return self
        if not set(self.vars) <= set(vars):
            raise ValueError(f"incompatible variable lists {self.vars} vs {vars}")
        idx = {v: i for i, v in enumerate(self.vars)}
        out = TruncSeries(vars)
        for e, c in self.terms.items():
            key = tuple(e[idx[v]] if v in idx else _ZERO for v in vars)
            out.terms[key] = c
        for v in vars:
            if v in idx:
                out.support[v] = self.support[v].copy()
                out.window[v] = self.window[v].copy()
            else:
                out.support[v] = Interval(0, 0)
                out.window[v] = Interval()
        return out

    @staticmethod
    def _common_vars(a: "TruncSeries", b: "TruncSeries") -> tuple:
        return tuple(sorted(set(a.vars) | set(b.vars)))

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.scalar(other, self.vars)
        vars = self._common_vars(self, other)
        a, b = self.aligned_to(vars), other.aligned_to(vars)
        out = TruncSeries(vars)
        out.terms = dict(a.terms)
        for e, c in b.terms.items():
            out.terms[e] = out.terms.get(e, 0) + c
        out.terms = {e: c for e, c in out.terms.items() if c != 0}
        for v in vars:
            slo = None if (a.support[v].lo is None or b.support[v].lo is None) else min(a.support[v].lo, b.support[v].lo)
            shi = None if (a.support[v].hi is None or b.support[v].hi is None) else max(a.support[v].hi, b.support[v].hi)
            out.support[v] = Interval(slo, shi)
            out.window[v] = a.window[v].intersect(b.window[v])
        return out

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = TruncSeries(self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        out.support = {v: i.copy() for v, i in self.support.items()}
        out.window = {v: i.copy() for v, i in self.window.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.scalar(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            out = TruncSeries(self.vars)
            if other != 0:
                out.terms = {e: c * other for e, c in self.terms.items()}
                out.support = {v: i.copy() for v, i in self.support.items()}
            else:
                out.support = {v: Interval(0, 0) for v in self.vars}
            out.window = {v: i.copy() for v, i in self.window.items()}
            return out
        vars = self._common_vars(self, other)
        a, b = self.aligned_to(vars), other.aligned_to(vars)
        out = TruncSeries(vars)
        acc: dict[tuple, complex] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                acc[key] = acc.get(key, 0) + c1 * c2
        out.terms = {e: c for e, c in acc.items() if c != 0}
        for i, v in enumerate(vars):
            out.support[v] = Interval(_sum_lo(a.support[v].lo, b.support[v].lo),
                                      _sum_lo(a.support[v].hi, b.support[v].hi))
            out.window[v] = _mul_window(a.support[v], a.window[v],
                                        b.support[v], b.window[v])
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def shifted(self, var: str, d) -> "TruncSeries":
        """Multiply by var**d."""
        d = _fr(d)
        i = self.vars.index(var)
        out = TruncSeries(self.vars)
        out.terms = {tuple(x + d if j == i else x for j, x in enumerate(e)): c
                     for e, c in self.terms.items()}
        out.support = {v: (iv.shift(d) if v == var else iv.copy())
                       for v, iv in self.support.items()}
        out.window = {v: (iv.shift(d) if v == var else iv.copy())
                      for v, iv in self.window.items()}
        return out

    def clipped(self, var: str, lo, hi) -> "TruncSeries":
        """Drop stored terms outside [lo,hi] in var; the window shrinks too."""
        i = self.vars.index(var)
        clip = Interval(lo, hi)
        out = TruncSeries(self.vars)
        out.terms = {e: c for e, c in self.terms.items() if clip.contains(e[i])}
        out.support = {v: iv.copy() for v, iv in self.support.items()}
        out.window = {v: iv.copy() for v, iv in self.window.items()}
        out.window[var] = out.window[var].intersect(clip)
        return out

    # -- inverse ---------------------------------------------------------------

    def inverse(self, order: int = 20) -> "TruncSeries":
        """Inverse with respect to the total-degree grading.

        Requires a unique term of minimal total degree (the leading term)
        with nonzero coefficient; every other term must have strictly
        larger total degree.  The result window matches the requested
        expansion order.
        """
        if not self.terms:
            raise ZeroDivisionError("cannot invert the zero series")
        bydeg = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        (e0, c0), rest = bydeg[0], bydeg[1:]
        deg0 = sum(e0)
        if rest and sum(rest[0][0]) == deg0:
            raise ValueError("no unique lowest-order term; inverse is region-ambiguous")
        if c0 == 0:
            raise ZeroDivisionError("leading coefficient vanishes")
        # S = c0 x^e0 (1 + N),  N strictly positive graded
        n_terms = {tuple(a - b for a, b in zip(e, e0)): c / c0 for e, c in rest}
        inv = TruncSeries(self.vars, {tuple(_ZERO for _ in self.vars): 1.0})
        n_ser = TruncSeries(self.vars, n_terms)
        power = TruncSeries.scalar(1.0, self.vars)
        min_step = min((sum(e) for e in n_terms), default=None)
        if min_step is not None and min_step <= 0:
            raise ValueError("non-leading term with non-positive relative grading")
        if min_step is not None:
            reps = int(order / float(min_step)) + 1
            for _ in range(reps):
                power = power * n_ser * (-1)
                power.terms = {e: c for e, c in power.terms.items() if sum(e) <= order}
                if not power.terms:
                    break
                inv = inv + power
        out = inv * (1.0 / c0)
        out = out if all(x == 0 for x in e0) else out._shift_all(tuple(-x for x in e0))
        for v in out.vars:
            out.support[v] = Interval()
            out.window[v] = Interval()  # exact as a formal inverse to this order
        return out

    def _shift_all(self, d: tuple) -> "TruncSeries":
        out = TruncSeries(self.vars)
        out.terms = {tuple(x + y for x, y in zip(e, d)): c for e, c in self.terms.items()}
        out.support = {v: iv.shift(dd) for (v, iv), dd in zip(self.support.items(), d)}
        out.window = {v: iv.shift(dd) for (v, iv), dd in zip(self.window.items(), d)}
        return out

    # -- comparison --------------------------------------------------------------

    def residual_against(self, other: "TruncSeries"):
        """(max |difference|, number of compared coefficients, scale).

        Coefficients are compared on the intersection of both windows.
        `scale` is the largest compared coefficient magnitude (0 if none).
        """
        if not isinstance(other, TruncSeries):
            other = TruncSeries.scalar(other, self.vars)
        vars = self._common_vars(self, other)
        a, b = self.aligned_to(vars), other.aligned_to(vars)
        wins = {v: a.window[v].intersect(b.window[v]) for v in vars}
        if any(w.is_empty() for w in wins.values()):
            return (0.0, 0, 0.0)

        def inside(e):
            return all(wins[v].contains(x) for v, x in zip(vars, e))

        keys = {e for e in a.terms if inside(e)} | {e for e in b.terms if inside(e)}
        if not keys:
            return (0.0, 0, 0.0)
        max_res, scale = 0.0, 0.0
        for e in keys:
            ca, cb = a.terms.get(e, 0), b.terms.get(e, 0)
            max_res = max(max_res, abs(ca - cb))
            scale = max(scale, abs(ca), abs(cb))
        return (max_res, len(keys), scale)

    def eq(self, other, tol_abs=1e-12, tol_rel=1e-8) -> bool:
        res, n, scale = self.residual_against(other)
        return res <= tol_abs + tol_rel * scale

    # -- misc ---------------------------------------------------------------------

    def coeff(self, expts) -> complex:
        key = tuple(_fr(x) for x in expts)
        return self.terms.get(key, 0.0 + 0.0j)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __repr__(self):
        items = sorted(self.terms.items())[:8]
        body = " + ".join(
            f"({c:.6g})*" + "*".join(f"{v}^{x}" for v, x in zip(self.vars, e) if x != 0)
            for e, c in items) or "0"
        more = "" if len(self.terms) <= 8 else f" ... ({len(self.terms)} terms)"
        return f"<TruncSeries {body}{more}>"


# -- spec-level functional surface --------------------------------------------


def series_make(vars, terms, support=None, window=None) -> TruncSeries:
    return TruncSeries(vars, terms, support=support, window=window)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_inverse(a: TruncSeries, order: int = 20) -> TruncSeries:
    return a.inverse(order=order)


def series_eq(a: TruncSeries, b: TruncSeries, tol_abs=1e-12, tol_rel=1e-8) -> bool:
    return a.eq(b, tol_abs=tol_abs, tol_rel=tol_rel)
