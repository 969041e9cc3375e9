"""Normal-ordered vertex-operator specs and the current registry.

A VertexOpSpec describes an operator of the shape

    prefactor * q^{G(chi)} * z^{delta(chi)} * exp(sum A_{j,n} a_{j,-n} z^n)
              * exp(sum B_{j,n} a_{j,n} z^-n) * (lattice shift)

acting on a truncated Fock module.  G and delta are affine functions of
the zero-mode charges chi = (m, mp, mu, J) with exact rational
coefficients; A and B are complex coefficient tables per boson family.
Charge-dependent factors are always evaluated on the *input* state.

Currents with a two-term parafermion structure are CurrentSum objects:
formal sums  sum_i c_i * spec_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .context import EllipticContext
from .fock import FAMILIES, FockState, boson_norm

Frac = Fraction


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -- affine functions of the charge vector --------------------------------------


@dataclass(frozen=True)
class AffineCharge:
    """c0 + cm*m + cmp*mp + cmu*mu + cJ*J with Fraction coefficients."""

    c0: Fraction = Frac(0)
    cm: Fraction = Frac(0)
    cmp: Fraction = Frac(0)
    cmu: Fraction = Frac(0)
    cJ: Fraction = Frac(0)

    def __add__(self, other):
        if isinstance(other, AffineCharge):
            return AffineCharge(self.c0 + other.c0, self.cm + other.cm,
                                self.cmp + other.cmp, self.cmu + other.cmu,
                                self.cJ + other.cJ)
        return AffineCharge(self.c0 + _fr(other), self.cm, self.cmp,
                            self.cmu, self.cJ)

    __radd__ = __add__

    def __neg__(self):
        return AffineCharge(-self.c0, -self.cm, -self.cmp, -self.cmu, -self.cJ)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, AffineCharge)
                         else AffineCharge(_fr(other))))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, s):
        s = _fr(s)
        return AffineCharge(self.c0 * s, self.cm * s, self.cmp * s,
                            self.cmu * s, self.cJ * s)

    __rmul__ = __mul__

    def eval(self, st: FockState) -> Fraction:
        return (self.c0 + self.cm * st.m + self.cmp * st.mp
                + self.cmu * st.mu + self.cJ * st.J)

    def shifted_input(self, dm, dmp, dmu, dJ) -> "AffineCharge":
        """The affine function chi -> self(chi + d)."""
        return AffineCharge(self.c0 + self.cm * _fr(dm) + self.cmp * _fr(dmp)
                            + self.cmu * _fr(dmu) + self.cJ * _fr(dJ),
                            self.cm, self.cmp, self.cmu, self.cJ)

    def is_zero(self) -> bool:
        return not any((self.c0, self.cm, self.cmp, self.cmu, self.cJ))


def aff_h() -> AffineCharge:
    """h = J + 2 mp."""
    return AffineCharge(cmp=Frac(2), cJ=Frac(1))


def aff_P(ctx: EllipticContext) -> AffineCharge:
    """P = 1 + (2 r*/k) m - mu + (r*/k)(J + 2 mp)."""
    if ctx.k == 0:
        raise ValueError("the free-field realization needs level k >= 1")
    t = Fraction(ctx.r_star, ctx.k)
    return AffineCharge(Frac(1), 2 * t, 2 * t, Frac(-1), t)


# -- the spec --------------------------------------------------------------------


@dataclass(frozen=True)
class VertexOpSpec:
    ctx: EllipticContext
    prefactor: complex = 1.0 + 0.0j
    qpow: AffineCharge = field(default_factory=AffineCharge)
    zpow: AffineCharge = field(default_factory=AffineCharge)
    dm: Fraction = Frac(0)
    dmp: Fraction = Frac(0)
    dmu: Fraction = Frac(0)
    dJ: Fraction = Frac(0)
    # coefficient tables: tuple of (family, n) -> complex, n = 1..ncap
    cre: tuple = ()   # tuple of (family, n, coeff)
    ann: tuple = ()

    def cre_table(self) -> dict:
        return {(f, n): c for f, n, c in self.cre}

    def ann_table(self) -> dict:
        return {(f, n): c for f, n, c in self.ann}

    # -- algebra ------------------------------------------------------------

    def scaled(self, s: complex) -> "VertexOpSpec":
        return replace(self, prefactor=self.prefactor * s)

    def with_argument_shift(self, sh: Fraction) -> "VertexOpSpec":
        """The spec of V(q^{2 sh} z) given the spec of V(z).

        Every z^n coefficient picks up q^{2 sh n}; the charge-dependent
        power z^{delta} contributes q^{2 sh delta} to the q-exponent.
        """
        sh = _fr(sh)
        qs = float(self.ctx.qpow(2 * sh))
        cre = tuple((f, n, c * qs ** n) for f, n, c in self.cre)
        ann = tuple((f, n, c * qs ** (-n)) for f, n, c in self.ann)
        return replace(self, cre=cre, ann=ann,
                       qpow=self.qpow + self.zpow * (2 * sh))

    def inverse(self) -> "VertexOpSpec":
        """Exact operator inverse on the truncation.

        (C q^G z^d e^{Ac} e^{Ba} S)^-1
            = exp(sum B A C_j(n)) / C * q^{-G'} z^{-d'} e^{-Ac} e^{-Ba} S^-1
        with G', d' the input-shifted affine functions.
        """
        corr = 0.0 + 0.0j
        annt = self.ann_table()
        for (f, n), a in self.cre_table().items():
            b = annt.get((f, n))
            if b:
                corr += b * a * boson_norm(f, n, self.ctx)
        pref = complex(math.e) ** corr / self.prefactor
        d = (-self.dm, -self.dmp, -self.dmu, -self.dJ)
        return VertexOpSpec(
            self.ctx, pref,
            -(self.qpow.shifted_input(*d)),
            -(self.zpow.shifted_input(*d)),
            *d,
            cre=tuple((f, n, -c) for f, n, c in self.cre),
            ann=tuple((f, n, -c) for f, n, c in self.ann),
        )

    def product(self, right: "VertexOpSpec") -> "VertexOpSpec":
        """self(z) * right(z) at the same spectral variable.

        Moving self's annihilation part through right's creation part
        yields the scalar exp(sum B^L A^R C_j(n)); charge functions of
        self are substituted with right's lattice shift.
        """
        if self.ctx is not right.ctx and self.ctx != right.ctx:
            raise ValueError("specs built on different contexts")
        corr = 0.0 + 0.0j
        rt = right.cre_table()
        for (f, n), b in self.ann_table().items():
            a = rt.get((f, n))
            if a:
                corr += b * a * boson_norm(f, n, self.ctx)
        dR = (right.dm, right.dmp, right.dmu, right.dJ)
        cre = {}
        for f, n, c in self.cre + right.cre:
            cre[(f, n)] = cre.get((f, n), 0) + c
        ann = {}
        for f, n, c in self.ann + right.ann:
            ann[(f, n)] = ann.get((f, n), 0) + c
        return VertexOpSpec(
            self.ctx,
            self.prefactor * right.prefactor * complex(math.e) ** corr,
            self.qpow.shifted_input(*dR) + right.qpow,
            self.zpow.shifted_input(*dR) + right.zpow,
            self.dm + right.dm, self.dmp + right.dmp,
            self.dmu + right.dmu, self.dJ + right.dJ,
            cre=tuple((f, n, c) for (f, n), c in sorted(cre.items()) if c != 0),
            ann=tuple((f, n, c) for (f, n), c in sorted(ann.items()) if c != 0),
        )


@dataclass(frozen=True)
class CurrentSum:
    """Formal sum  sum_i coeff_i * spec_i  (parafermion two-term currents)."""

    terms: tuple  # tuple of (complex, VertexOpSpec)

    def scaled(self, s: complex) -> "CurrentSum":
        return CurrentSum(tuple((c * s, sp) for c, sp in self.terms))

    def specs(self):
        return [sp.scaled(c) for c, sp in self.terms]


def as_spec_list(op) -> list:
    if isinstance(op, VertexOpSpec):
        return [op]
    if isinstance(op, CurrentSum):
        return op.specs()
    raise TypeError(f"not a vertex operator: {op!r}")


# -- application to states -------------------------------------------------------


def _ann_patterns(parts: tuple, btab: dict, family: str, ctx: EllipticContext):
    """All ways the annihilation exponential can eat parts of one family.

    Yields (remaining_parts, coefficient, eaten_degree).
    """
    from math import comb

    values = sorted(set(parts))
    result = [(list(parts), 1.0 + 0.0j, 0)]
    for v in values:
        mult = parts.count(v)
        b = btab.get((family, v))
        if not b:
            continue
        bc = b * boson_norm(family, v, ctx)
        new = []
        for rem, coeff, eaten in result:
            for t in range(0, mult + 1):
                c2 = coeff * comb(mult, t) * bc ** t
                rem2 = list(rem)
                for _ in range(t):
                    rem2.remove(v)
                new.append((rem2, c2, eaten + v * t))
        result = new
    for rem, coeff, eaten in result:
        yield tuple(sorted(rem, reverse=True)), coeff, eaten


def _cre_patterns(budget: int, atab: dict, family: str):
    """All creation multisets of one family within the degree budget.

    Yields (added_parts, coefficient, added_degree).
    """
    values = [n for (f, n) in atab if f == family and n <= budget]
    values.sort()

    def rec(i, budget_left):
        if i == len(values):
            yield (), 1.0 + 0.0j, 0
            return
        v = values[i]
        a = atab[(family, v)]
        for rest, coeff, deg in rec(i + 1, budget_left):
            yield rest, coeff, deg
            c, d, t = coeff, deg, 0
            fact = 1.0
            while d + v <= budget_left:
                t += 1
                fact *= t
                d += v
                c = c * a
                yield tuple(sorted(rest + (v,) * t, reverse=True)), c / fact, d

    yield from rec(0, budget)


def apply_spec(spec: VertexOpSpec, st: FockState, cap: int):
    """spec(z) |st>.

    Returns (contribs, drop_hi) where contribs is a list of
    (state, coefficient, z_exponent) and drop_hi is the largest exact
    z-exponent: coefficients at exponents > drop_hi were truncated away
    by the degree cap.  Annihilation below the vacuum is exactly zero,
    so there is no lower drop bound.
    """
    ctx = spec.ctx
    delta = spec.zpow.eval(st)
    scale = spec.prefactor * complex(ctx.qpow(spec.qpow.eval(st)))
    shifted = st.shifted(spec.dm, spec.dmp, spec.dmu, spec.dJ)
    atab, btab = spec.cre_table(), spec.ann_table()

    ann_by_family = {}
    for f in FAMILIES:
        ann_by_family[f] = list(_ann_patterns(shifted.parts(f), btab, f, ctx))

    contribs = []
    deg_in = st.degree
    for rem_a, ca, e_a in ann_by_family["a"]:
        for rem_1, c1, e_1 in ann_by_family["a1"]:
            for rem_2, c2, e_2 in ann_by_family["a2"]:
                eaten = e_a + e_1 + e_2
                base_coeff = scale * ca * c1 * c2
                deg_now = deg_in - eaten
                budget = cap - deg_now
                for add_a, ka, d_a in _cre_patterns(budget, atab, "a"):
                    for add_1, k1, d_1 in _cre_patterns(budget - d_a, atab, "a1"):
                        for add_2, k2, d_2 in _cre_patterns(budget - d_a - d_1, atab, "a2"):
                            coeff = base_coeff * ka * k1 * k2
                            if coeff == 0:
                                continue
                            created = d_a + d_1 + d_2
                            out = shifted
                            if eaten or created:
                                out = FockState(
                                    tuple(sorted(rem_a + add_a, reverse=True)),
                                    tuple(sorted(rem_1 + add_1, reverse=True)),
                                    tuple(sorted(rem_2 + add_2, reverse=True)),
                                    shifted.m, shifted.mp, shifted.mu, shifted.J)
                            contribs.append((out, coeff,
                                             delta + created - eaten))
    drop_hi = delta + (cap - deg_in)
    return contribs, drop_hi


# -- scalar OPE factor ------------------------------------------------------------


def contraction_factor(spec1: VertexOpSpec, spec2: VertexOpSpec, order: int):
    """Scalar factor of  spec1(z1) spec2(z2)  relative to :spec1 spec2:.

    Returns (coeffs, mono1, mono2) with

        spec1(z1) spec2(z2) = [sum_j coeffs[j] (z2/z1)^j]
                              * z1^mono1 * q^mono2 * :spec1(z1) spec2(z2):

    where mono1, mono2 are exact Fractions: the shifts of spec1's
    z-power and q-power caused by spec2's lattice shift.  `order` caps
    the retained power of the ratio z2/z1.
    """
    ctx = spec1.ctx
    log = {}
    t2 = spec2.cre_table()
    for (f, n), b in spec1.ann_table().items():
        a = t2.get((f, n))
        if a and n <= order:
            log[n] = log.get(n, 0) + b * a * boson_norm(f, n, ctx)
    coeffs = _exp_series(log, order)
    d2 = (spec2.dm, spec2.dmp, spec2.dmu, spec2.dJ)
    mono_z = spec1.zpow.shifted_input(*d2).c0 - spec1.zpow.c0
    mono_q = spec1.qpow.shifted_input(*d2).c0 - spec1.qpow.c0
    return coeffs, mono_z, mono_q


def _exp_series(log: dict, order: int) -> dict:
    """exp(sum_j log[j] x^j) as {k: coeff}, truncated at x^order."""
    out = {0: 1.0 + 0.0j}
    for k in range(1, order + 1):
        s = 0.0 + 0.0j
        for j, lj in log.items():
            if j <= k:
                s += j * lj * out.get(k - j, 0)
        if s:
            out[k] = s / k
    return out
