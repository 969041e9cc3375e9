"""Truncated three-boson Fock modules.

Basis states are monomials in the creation modes of three boson families

    a   : [a_m, a_n]   =  [2m][km]/m * q^(-k|m|) delta_{m+n,0}
    a1  : [a1_m, a1_n] =  [2m][(k+2)m]/m        delta_{m+n,0}
    a2  : [a2_m, a2_n] = -[2m][km]/m            delta_{m+n,0}

over a zero-mode charge lattice.  Charges are stored as exact Fractions:

    m   -- beta-lattice charge   (e^{m beta})
    mp  -- alpha-lattice charge  (e^{mp alpha}), h = J + 2 mp
    mu  -- Q-lattice charge      (e^{mu Q})
    J   -- background label      (P1 = J on the module)

Vertex operators may shift m, mp by half-integers, so the lattice is
rational by design.  The physically meaningful combinations are

    h  = J + 2 mp
    P  = 1 + (2 r*/k) m - mu + (r*/k) h
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import EllipticContext

Frac = Fraction

FAMILIES = ("a", "a1", "a2")


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class FockState:
    """Basis monomial: three partitions plus zero-mode charges."""

    parts_a: tuple = ()
    parts_a1: tuple = ()
    parts_a2: tuple = ()
    m: Fraction = Frac(0)
    mp: Fraction = Frac(0)
    mu: Fraction = Frac(0)
    J: Fraction = Frac(0)

    def parts(self, family: str) -> tuple:
        return getattr(self, "parts_" + family if family != "a" else "parts_a")

    @property
    def degree(self) -> int:
        return sum(self.parts_a) + sum(self.parts_a1) + sum(self.parts_a2)

    def with_parts(self, family: str, parts: tuple) -> "FockState":
        kw = {"parts_a": self.parts_a, "parts_a1": self.parts_a1,
              "parts_a2": self.parts_a2,
              "m": self.m, "mp": self.mp, "mu": self.mu, "J": self.J}
        kw["parts_" + family if family != "a" else "parts_a"] = parts
        return FockState(**kw)

    def shifted(self, dm=0, dmp=0, dmu=0, dJ=0) -> "FockState":
        return FockState(self.parts_a, self.parts_a1, self.parts_a2,
                         self.m + _fr(dm), self.mp + _fr(dmp),
                         self.mu + _fr(dmu), self.J + _fr(dJ))

    # -- derived charge values ------------------------------------------------

    def h_val(self) -> Fraction:
        return self.J + 2 * self.mp

    def p_val(self, ctx: EllipticContext) -> Fraction:
        rs_over_k = Fraction(ctx.r_star, ctx.k)
        return 1 + 2 * rs_over_k * self.m - self.mu + rs_over_k * self.h_val()


def vacuum(J=0) -> FockState:
    return FockState(J=_fr(J))


def boson_norm(family: str, n: int, ctx: EllipticContext) -> complex:
    """C_j(n) with [x_m, x_n] = C_j(m) delta_{m+n,0}; odd in n."""
    if n == 0:
        raise ValueError("n = 0 is a zero mode, not an oscillator")
    k = ctx.k
    if family == "a":
        return ctx.qint(2 * n) * ctx.qint(k * n) / n * ctx.qpow(-k * abs(n))
    if family == "a1":
        return ctx.qint(2 * n) * ctx.qint((k + 2) * n) / n
    if family == "a2":
        return -ctx.qint(2 * n) * ctx.qint(k * n) / n
    raise ValueError(f"unknown boson family {family!r}")


def dressed_norm(kind: str, n: int, ctx: EllipticContext) -> complex:
    """Norms of the dressed bosons: kind in {'a0', 'a0p'}."""
    base = ctx.qint(2 * n) * ctx.qint(ctx.k * n) / n
    rn = ctx.qint(float(ctx.r) * n)
    rsn = ctx.qint(float(ctx.r_star) * n)
    if kind == "a0":
        return base * rn / rsn
    if kind == "a0p":
        return base * rsn / rn
    raise ValueError(f"unknown dressed boson {kind!r}")


def dressed_coeff(kind: str, n: int, ctx: EllipticContext) -> complex:
    """Coefficient lambda with  x_n = lambda * a_n  for the dressed bosons.

    a0_n  = a_n (n>0),  [rn]/[r*n] q^(k|n|) a_n (n<0)
    a0p_n = [r*n]/[rn] a0_n
    """
    if n == 0:
        raise ValueError("zero mode")
    ratio = ctx.qint(float(ctx.r) * n) / ctx.qint(float(ctx.r_star) * n)
    if kind == "a0":
        return 1.0 if n > 0 else ratio * ctx.qpow(ctx.k * abs(n))
    if kind == "a0p":
        inv = 1.0 / ratio
        return inv if n > 0 else ctx.qpow(ctx.k * abs(n))
    raise ValueError(f"unknown dressed boson {kind!r}")


# -- basis enumeration ---------------------------------------------------------


def _partitions(total: int):
    """All partitions of `total` as sorted (descending) tuples."""
    if total == 0:
        yield ()
        return

    def rec(rem, maxpart):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, maxpart), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    yield from rec(total, total)


def colored_states(max_degree: int):
    """All (parts_a, parts_a1, parts_a2) triples with total degree <= cap.

    Deterministic order: by degree, then lexicographic.
    """
    out = []
    for d in range(max_degree + 1):
        for d0 in range(d + 1):
            for d1 in range(d - d0 + 1):
                d2 = d - d0 - d1
                for p0 in _partitions(d0):
                    for p1 in _partitions(d1):
                        for p2 in _partitions(d2):
                            out.append((p0, p1, p2))
    return out


def build_fock(ctx: EllipticContext, J=0, m_window=(0, 0), mp_window=(0, 0),
               mu_window=(0, 0), max_degree=None):
    """Enumerate FockStates up to the degree cap inside charge windows."""
    cap = ctx.policy.fock_degree if max_degree is None else max_degree
    if cap < 0:
        raise ValueError("degree cap must be non-negative")
    for lo, hi in (m_window, mp_window, mu_window):
        if lo > hi:
            raise ValueError("empty charge window")
    states = []
    for m in range(m_window[0], m_window[1] + 1):
        for mp in range(mp_window[0], mp_window[1] + 1):
            for mu in range(mu_window[0], mu_window[1] + 1):
                for (p0, p1, p2) in colored_states(cap):
                    states.append(FockState(p0, p1, p2, Frac(m), Frac(mp),
                                            Frac(mu), _fr(J)))
    return states


# -- single boson mode action ---------------------------------------------------


def apply_boson(family: str, n: int, state: FockState, ctx: EllipticContext,
                cap: int | None = None):
    """a_{family,n} |state>  as a list of (state, coefficient).

    n < 0 appends a part (empty list if the degree cap would be exceeded);
    n > 0 contracts against matching parts.  Raises on n = 0.
    """
    if n == 0:
        raise ValueError("n = 0 is a zero mode, not an oscillator")
    cap = ctx.policy.fock_degree if cap is None else cap
    parts = list(state.parts(family))
    if n < 0:
        if state.degree + (-n) > cap:
            return []
        parts.append(-n)
        parts.sort(reverse=True)
        return [(state.with_parts(family, tuple(parts)), 1.0 + 0.0j)]
    mult = parts.count(n)
    if mult == 0:
        return []
    parts.remove(n)
    return [(state.with_parts(family, tuple(parts)),
             mult * boson_norm(family, n, ctx))]
