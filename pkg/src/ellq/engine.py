"""Application engine: currents acting on truncated Fock vectors.

A SymbolicVector maps FockStates to TruncSeries in the spectral
variables introduced so far.  Applying a current at variable `v`
multiplies each contribution by c * v^e and records the truncation
window of `v`: exponents above the recorded cap would have needed
intermediate states beyond the degree cap, so coefficients there are
not determined.  Windows are attached to the stored series when the
vector is finalized.
"""

from __future__ import annotations

from fractions import Fraction

from .fock import FockState, apply_boson
from .series import Interval, TruncSeries
from .vertexops import CurrentSum, VertexOpSpec, apply_spec, as_spec_list

Frac = Fraction


class SymbolicVector:
    def __init__(self, vars=(), terms=None, caps=None):
        self.vars = tuple(vars)
        self.terms: dict[FockState, TruncSeries] = dict(terms or {})
        # per-variable exactness cap (upper bound on determined exponents)
        self.caps: dict[str, Fraction | None] = dict(caps or {})

    @classmethod
    def unit(cls, state: FockState) -> "SymbolicVector":
        return cls((), {state: TruncSeries.scalar(1.0)})

    def copy(self) -> "SymbolicVector":
        return SymbolicVector(self.vars, dict(self.terms), dict(self.caps))

    def is_zero(self) -> bool:
        return not self.terms or all(not s.terms for s in self.terms.values())

    # -- operator application -------------------------------------------------

    def apply_current(self, op, var: str, cap: int) -> "SymbolicVector":
        """Apply a VertexOpSpec or CurrentSum at spectral variable `var`."""
        specs = as_spec_list(op)
        vars = self.vars if var in self.vars else self.vars + (var,)
        out = SymbolicVector(vars, {}, dict(self.caps))
        drop_min: Fraction | None = None
        for st, series in self.terms.items():
            if not series.terms:
                continue
            for spec in specs:
                contribs, drop_hi = apply_spec(spec, st, cap)
                drop_min = drop_hi if drop_min is None else min(drop_min, drop_hi)
                for st2, coeff, e in contribs:
                    add = series.aligned_to(vars)
                    add = add.shifted(var, e) * coeff
                    if st2 in out.terms:
                        out.terms[st2] = out.terms[st2] + add
                    else:
                        out.terms[st2] = add
        prev = out.caps.get(var)
        if drop_min is not None:
            out.caps[var] = drop_min if prev is None else min(prev, drop_min)
        # composite application at a shared variable: exponents add, so a
        # pre-existing cap combined with new shifts is handled by taking
        # the min; this is conservative.
        return out

    def apply_boson_mode(self, family: str, n: int, ctx, cap: int) -> "SymbolicVector":
        out = SymbolicVector(self.vars, {}, dict(self.caps))
        for st, series in self.terms.items():
            for st2, coeff in apply_boson(family, n, st, ctx, cap=cap):
                add = series * coeff
                if st2 in out.terms:
                    out.terms[st2] = out.terms[st2] + add
                else:
                    out.terms[st2] = add
        return out

    def map_coeff(self, fn) -> "SymbolicVector":
        """Multiply each state's series by fn(state) (scalar or series)."""
        out = SymbolicVector(self.vars, {}, dict(self.caps))
        for st, series in self.terms.items():
            fac = fn(st)
            if fac is None:
                continue
            out.terms[st] = series * fac
        return out

    def scaled(self, s) -> "SymbolicVector":
        return self.map_coeff(lambda st: s)

    def __add__(self, other: "SymbolicVector") -> "SymbolicVector":
        vars = tuple(dict.fromkeys(self.vars + other.vars))
        out = SymbolicVector(vars, {}, {})
        for src in (self, other):
            for st, series in src.terms.items():
                if st in out.terms:
                    out.terms[st] = out.terms[st] + series
                else:
                    out.terms[st] = series
        for v in set(self.caps) | set(other.caps):
            caps = [c.caps[v] for c in (self, other) if v in c.caps and c.caps[v] is not None]
            out.caps[v] = min(caps) if caps else None
        return out

    def __sub__(self, other: "SymbolicVector") -> "SymbolicVector":
        return self + other.scaled(-1.0)

    def mul_series(self, scalar: TruncSeries) -> "SymbolicVector":
        out = SymbolicVector(self.vars, {}, dict(self.caps))
        for st, series in self.terms.items():
            out.terms[st] = series * scalar
        return out

    # -- finalization ----------------------------------------------------------

    def finalized(self) -> "SymbolicVector":
        """Fold the per-variable drop caps into each stored series window."""
        out = SymbolicVector(self.vars, {}, dict(self.caps))
        for st, series in self.terms.items():
            s2 = series
            for v, cap in self.caps.items():
                if cap is not None and v in s2.vars:
                    win = s2.window[v].intersect(Interval(None, cap))
                    s2 = TruncSeries(s2.vars, s2.terms, support=s2.support,
                                     window={**s2.window, v: win})
            out.terms[st] = s2
        return out


def residual_between(lhs: SymbolicVector, rhs: SymbolicVector):
    """Max coefficient residual between two finalized vectors.

    Returns (max_abs_residual, n_compared, scale).
    """
    a, b = lhs.finalized(), rhs.finalized()
    states = set(a.terms) | set(b.terms)
    max_res, n_tot, scale = 0.0, 0, 0.0
    zero = TruncSeries.scalar(0.0)
    for st in states:
        sa = a.terms.get(st)
        sb = b.terms.get(st)
        if sa is None:
            sa, sb = zero.aligned_to(sb.vars), sb
        if sb is None:
            sb = zero.aligned_to(sa.vars)
        res, n, sc = sa.residual_against(sb)
        max_res = max(max_res, res)
        n_tot += n
        scale = max(scale, sc)
    return max_res, n_tot, scale


def mode_of(vec: SymbolicVector, var: str, n: int,
            base: Fraction | None = None) -> dict:
    """Extract the coefficient of var^(base - n)... careful: convention.

    For a current V(z) = sum_n V_n z^{-n} applied once at `var`, the
    operator V_n's image is the coefficient at exponent -n (plus the
    state-dependent fractional base when one was supplied).
    """
    out = {}
    i_cache = {}
    for st, series in vec.terms.items():
        if var not in series.vars:
            continue
        idx = i_cache.setdefault(series.vars, series.vars.index(var))
        target = Frac(-n) if base is None else base - n
        for e, c in series.terms.items():
            if e[idx] == target:
                rest = tuple(x for j, x in enumerate(e) if j != idx)
                out[(st, rest)] = out.get((st, rest), 0) + c
    return out
