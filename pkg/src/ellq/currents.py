"""Registry of currents on the truncated Fock module.

Builds VertexOpSpec / CurrentSum objects for:

  Drinfeld currents          x_plus, x_minus
  dressing exponentials      u_plus, u_minus
  elliptic currents          e, f, k, psi_plus, psi_minus
  total currents             K, E, F, H_plus, H_minus
  direct boson forms         K_direct, E_direct, F_direct
  parafermion fields         pf_psi (Psi), pf_psi_dag (Psi+)
  level-one vertex ops       Phi_minus, Psi_star_minus   (k = 1 only)
  cross-check variants       psi_plus_kk, psi_minus_kk   (via the k current)

Zero-mode lattice convention: x_plus shifts (m, mp) by (-1, +1) and
x_minus by (+1, -1); this is the assignment under which P and Q commute
with the whole deformed affine algebra, as the defining relations
require.  The charge-lattice labels are a bookkeeping gauge; only the
values of P and h enter any formula.
"""

from __future__ import annotations

from fractions import Fraction

from .context import EllipticContext
from .fock import boson_norm
from .qseries import kappa
from .vertexops import AffineCharge, CurrentSum, VertexOpSpec, aff_P, aff_h

Frac = Fraction


def _qq(ctx):
    return ctx.q - 1.0 / ctx.q


def _tables(ctx, entries, ncap):
    """entries: dict family -> (A(n), B(n)) callables; returns (cre, ann)."""
    cre, ann = [], []
    for fam, (A, B) in entries.items():
        for n in range(1, ncap + 1):
            if A is not None:
                a = A(n)
                if a != 0:
                    cre.append((fam, n, complex(a)))
            if B is not None:
                b = B(n)
                if b != 0:
                    ann.append((fam, n, complex(b)))
    return tuple(cre), tuple(ann)


def _spec(ctx, entries, ncap, prefactor=1.0, qpow=None, zpow=None,
          dm=0, dmp=0, dmu=0, dJ=0):
    cre, ann = _tables(ctx, entries, ncap)
    return VertexOpSpec(ctx, complex(prefactor),
                        qpow or AffineCharge(), zpow or AffineCharge(),
                        Frac(dm), Frac(dmp), Frac(dmu), Frac(dJ),
                        cre=cre, ann=ann)


def _parafermion_terms(ctx, ncap, plus: bool):
    """The two normal-ordered exponential pieces of Psi~(+/-).

    plus=False gives Psi~ = Psi~^- (enters x+, e);
    plus=True  gives Psi~+ = Psi~^+ (enters x-, f).
    Returns [(coeff, a1/a2-entry-dict, qpow)] for terms I and II.
    """
    q, k = ctx.q, ctx.k
    qq = _qq(ctx)

    def half(n):
        return ctx.qint(n) / ctx.qint(2 * n)

    if not plus:
        # Psi~^-_I / Psi~^-_II
        diag_a = lambda n: ctx.qpow(Frac(-k * n, 2)) / ctx.qint(k * n)
        tail2 = lambda n: qq * half(n) * ctx.qpow(Frac((k + 2) * n, 2))
        tail1 = lambda n: qq * half(n) * ctx.qpow(Frac(k * n, 2))
        term_i = {"a2": (lambda n: diag_a(n),
                         lambda n: -diag_a(n) - tail2(n)),
                  "a1": (None, lambda n: -tail1(n))}
        term_ii = {"a2": (lambda n: diag_a(n) + tail2(n),
                          lambda n: -diag_a(n)),
                   "a1": (lambda n: tail1(n), None)}
        g_i = AffineCharge(cmp=Frac(1))          # -(J-h)/2 = mp
        coeff_i, coeff_ii = 1.0 / qq, -1.0 / qq
    else:
        # Psi~^+_I / Psi~^+_II
        diag_a = lambda n: ctx.qpow(Frac(k * n, 2)) / ctx.qint(k * n)
        tail2 = lambda n: qq * half(n) * ctx.qpow(Frac(-(k + 2) * n, 2))
        tail1 = lambda n: qq * half(n) * ctx.qpow(Frac(-k * n, 2))
        term_i = {"a2": (lambda n: -diag_a(n),
                         lambda n: diag_a(n) - tail2(n)),
                  "a1": (None, lambda n: tail1(n))}
        term_ii = {"a2": (lambda n: -diag_a(n) + tail2(n),
                          lambda n: diag_a(n)),
                   "a1": (lambda n: -tail1(n), None)}
        g_i = AffineCharge(cmp=Frac(1), cJ=Frac(1))  # (J+h)/2 = J + mp
        coeff_i, coeff_ii = -1.0 / qq, 1.0 / qq
    return [(coeff_i, term_i, g_i), (coeff_ii, term_ii, -g_i)]


def _x_current(ctx, ncap, plus: bool, dressed: bool):
    """x^{+/-}(z) (dressed=False) or e/f(z,p) (dressed=True)."""
    q, k = ctx.q, ctx.k
    r, rs = float(ctx.r), float(ctx.r_star)

    if plus:
        if dressed:
            A = lambda n: (ctx.qpow(k * n) * ctx.qint(r * n)
                           / (ctx.qint(rs * n) * ctx.qint(k * n)))
        else:
            A = lambda n: 1.0 / ctx.qint(k * n)
        B = lambda n: -1.0 / ctx.qint(k * n)
        dm, dmp = -1, 1
    else:
        A = lambda n: -ctx.qpow(k * n) / ctx.qint(k * n)
        if dressed:
            B = lambda n: (ctx.qint(rs * n)
                           / (ctx.qint(r * n) * ctx.qint(k * n)))
        else:
            B = lambda n: ctx.qpow(k * n) / ctx.qint(k * n)
        dm, dmp = 1, -1

    terms = []
    for coeff, pf_entries, g in _parafermion_terms(ctx, ncap, plus=not plus):
        entries = dict(pf_entries)
        entries["a"] = (A, B)
        terms.append((complex(coeff),
                      _spec(ctx, entries, ncap, qpow=g, dm=dm, dmp=dmp)))
    return CurrentSum(tuple(terms))


def _k_entries(ctx):
    r, rs, k = float(ctx.r), float(ctx.r_star), ctx.k
    A = lambda n: ctx.qint(n) * ctx.qpow(k * n) / (ctx.qint(2 * n) * ctx.qint(rs * n))
    B = lambda n: -ctx.qint(n) / (ctx.qint(2 * n) * ctx.qint(r * n))
    return {"a": (A, B)}


def _psi_spec(ctx, ncap, plus: bool):
    q, k = ctx.q, ctx.k
    r, rs = float(ctx.r), float(ctx.r_star)
    qq = _qq(ctx)
    if plus:
        A = lambda n: ctx.qpow((r + k / 2.0) * n) / ctx.qint(rs * n)
        B = lambda n: (qq * ctx.qpow(Frac(k * n, 2))
                       - ctx.qpow((r + k / 2.0) * n) / ctx.qint(r * n))
        g = aff_h()
    else:
        A = lambda n: (ctx.qpow((r - k / 2.0) * n) / ctx.qint(rs * n)
                       - qq * ctx.qpow(Frac(k * n, 2)))
        B = lambda n: -ctx.qpow((r - k / 2.0) * n) / ctx.qint(r * n)
        g = -aff_h()
    return _spec(ctx, {"a": (A, B)}, ncap, qpow=g)


def S_exponent(ctx) -> AffineCharge:
    """S(P,h) = (P+h-1)/r + (1-P)/r*, the H± spectral exponent."""
    P, h = aff_P(ctx), aff_h()
    return (P + h - 1) * (Frac(1) / Frac(ctx.r)) + (1 - P) * (Frac(1) / Frac(ctx.r_star))


def build_current(name: str, ctx: EllipticContext, ncap: int | None = None):
    """Construct the named current; see the module docstring for names."""
    if ctx.k < 1:
        raise ValueError("the free-field realization needs level k >= 1")
    if ncap is None:
        ncap = ctx.policy.fock_degree
    q, k = ctx.q, ctx.k
    r, rs = float(ctx.r), float(ctx.r_star)
    rfrac, rsfrac = Frac(ctx.r), Frac(ctx.r_star)
    P, h = aff_P(ctx), aff_h()

    if name == "x_plus":
        return _x_current(ctx, ncap, plus=True, dressed=False)
    if name == "x_minus":
        return _x_current(ctx, ncap, plus=False, dressed=False)
    if name == "e":
        return _x_current(ctx, ncap, plus=True, dressed=True)
    if name == "f":
        return _x_current(ctx, ncap, plus=False, dressed=True)
    if name == "u_plus":
        return _spec(ctx, {"a": (lambda n: ctx.qpow(r * n) / ctx.qint(rs * n), None)}, ncap)
    if name == "u_minus":
        return _spec(ctx, {"a": (None, lambda n: -ctx.qpow(r * n) / ctx.qint(r * n))}, ncap)
    if name == "k":
        return _spec(ctx, _k_entries(ctx), ncap)
    if name == "psi_plus":
        return _psi_spec(ctx, ncap, plus=True)
    if name == "psi_minus":
        return _psi_spec(ctx, ncap, plus=False)

    if name in ("psi_plus_kk", "psi_minus_kk"):
        # psi^{+/-}(z) = kappa q^{+/-h} k(q^{1+/-rbar} z) k(q^{-1+/-rbar} z)
        sign = 1 if name == "psi_plus_kk" else -1
        rbar = rfrac - Frac(k, 2)
        kk = build_current("k", ctx, ncap)
        left = kk.with_argument_shift(Frac(1, 2) + sign * rbar * Frac(1, 2))
        right = kk.with_argument_shift(Frac(-1, 2) + sign * rbar * Frac(1, 2))
        prod = left.product(right)
        g = aff_h() * sign
        return VertexOpSpec(ctx, prod.prefactor * complex(kappa(ctx)),
                            prod.qpow + g, prod.zpow,
                            prod.dm, prod.dmp, prod.dmu, prod.dJ,
                            cre=prod.cre, ann=prod.ann)

    one_r = Frac(1) / rfrac
    one_rs = Frac(1) / rsfrac

    if name == "K":
        base = _spec(ctx, _k_entries(ctx), ncap)
        x_exp = (-(2 * P - 1)) * Frac(k, 1) * (one_r * one_rs * Frac(1, 4)) + h * (one_r * Frac(1, 2))
        return VertexOpSpec(ctx, base.prefactor, base.qpow, base.zpow + x_exp,
                            base.dm, base.dmp, base.dmu + 1, base.dJ,
                            cre=base.cre, ann=base.ann)
    if name == "E":
        ecur = _x_current(ctx, ncap, plus=True, dressed=True)
        zadd = (1 - P) * one_rs
        return CurrentSum(tuple(
            (c, VertexOpSpec(ctx, sp.prefactor, sp.qpow, sp.zpow + zadd,
                             sp.dm, sp.dmp, sp.dmu + 2, sp.dJ,
                             cre=sp.cre, ann=sp.ann))
            for c, sp in ecur.terms))
    if name == "F":
        fcur = _x_current(ctx, ncap, plus=False, dressed=True)
        zadd = (P + h - 1) * one_r
        return CurrentSum(tuple(
            (c, VertexOpSpec(ctx, sp.prefactor, sp.qpow, sp.zpow + zadd,
                             sp.dm, sp.dmp, sp.dmu, sp.dJ,
                             cre=sp.cre, ann=sp.ann))
            for c, sp in fcur.terms))
    if name in ("H_plus", "H_minus"):
        sign = 1 if name == "H_plus" else -1
        psi = _psi_spec(ctx, ncap, plus=(sign == 1))
        S = (P + h - 1) * one_r + (1 - P) * one_rs
        rbar = rfrac - Frac(k, 2)
        qadd = h * Frac(-sign) + S * (sign * rbar)
        return VertexOpSpec(ctx, psi.prefactor, psi.qpow + qadd, psi.zpow + S,
                            psi.dm, psi.dmp, psi.dmu + 2, psi.dJ,
                            cre=psi.cre, ann=psi.ann)

    if name == "K_direct":
        # :exp(-phi_0(1;2,r|z)):  as printed
        A = lambda n: ctx.qint(n) * ctx.qpow(k * n) / (ctx.qint(2 * n) * ctx.qint(rs * n))
        B = lambda n: -ctx.qint(n) / (ctx.qint(2 * n) * ctx.qint(r * n))
        zp = (-(P - 1)) * Frac(k, 1) * (one_r * one_rs * Frac(1, 2)) + h * (one_r * Frac(1, 2))
        return _spec(ctx, {"a": (A, B)}, ncap, zpow=zp, dmu=1)

    if name in ("pf_psi", "pf_psi_dag"):
        # full parafermions  Psi = Psi~ e^{alpha} z^{-h/k},  Psi+ = Psi~+ e^{-alpha} z^{h/k}
        plus = name == "pf_psi_dag"
        sgn = -1 if plus else 1
        terms = []
        for coeff, pf_entries, g in _parafermion_terms(ctx, ncap, plus=plus):
            sp = _spec(ctx, dict(pf_entries), ncap, qpow=g,
                       zpow=h * Frac(-sgn, k), dmp=sgn)
            terms.append((complex(coeff), sp))
        return CurrentSum(tuple(terms))

    if name == "E_direct":
        # Psi(z) :exp(-phi_0(k|z)):
        pf = build_current("pf_psi", ctx, ncap)
        A = lambda n: (ctx.qpow(k * n) * ctx.qint(r * n)
                       / (ctx.qint(rs * n) * ctx.qint(k * n)))
        B = lambda n: -1.0 / ctx.qint(k * n)
        expo = _spec(ctx, {"a": (A, B)}, ncap,
                     zpow=(1 - P) * one_rs + h * Frac(1, k),
                     dm=-1, dmu=2)
        return CurrentSum(tuple((c, sp.product(expo)) for c, sp in pf.terms))

    if name == "F_direct":
        # Psi+(z) :exp(+phi'_0(k|z)):
        pf = build_current("pf_psi_dag", ctx, ncap)
        A = lambda n: -ctx.qpow(k * n) / ctx.qint(k * n)
        B = lambda n: ctx.qint(rs * n) / (ctx.qint(r * n) * ctx.qint(k * n))
        expo = _spec(ctx, {"a": (A, B)}, ncap,
                     zpow=(P - 1) * one_r - h * (one_r * Frac(ctx.r_star, k)),
                     dm=1)
        return CurrentSum(tuple((c, sp.product(expo)) for c, sp in pf.terms))

    if name == "Phi_minus":
        if k != 1:
            raise ValueError("level-one vertex operators need k = 1")
        A = lambda n: ctx.qpow(k * n) / ctx.qint(2 * n)
        B = lambda n: -ctx.qint(rs * n) / (ctx.qint(r * n) * ctx.qint(2 * n))
        zp = (-(P - 1)) * Frac(k, 1) * (one_r * Frac(1, 2)) + h * (one_r * Frac(ctx.r_star, 2))
        return _spec(ctx, {"a": (A, B)}, ncap, zpow=zp, dm=Frac(-k, 2))

    if name == "Psi_star_minus":
        if k != 1:
            raise ValueError("level-one vertex operators need k = 1")
        A = lambda n: -ctx.qpow(k * n) * ctx.qint(r * n) / (ctx.qint(rs * n) * ctx.qint(2 * n))
        B = lambda n: 1.0 / ctx.qint(2 * n)
        zp = (P - 1) * Frac(k, 1) * (one_rs * Frac(1, 2)) + h * Frac(-1, 2)
        return _spec(ctx, {"a": (A, B)}, ncap, zpow=zp, dm=Frac(k, 2), dmu=-k)

    raise ValueError(f"unknown current {name!r}")
