"""q-Pochhammer products, Jacobi theta functions, and scalar factors.

Numeric evaluation only; series expansions of the same objects live in
expansions.py.  Conventions:

    Theta_p(z)  = (z;p) (p/z;p) (p;p)
    theta(u)    = q^(u^2/r - u) Theta_p(q^(2u)) / (p;p)^3        [nome p]
    theta*(u)   = same with r -> r* = r - k                      [nome p*]
    {z}         = (z; p, q^4)
    xi(z;p,q)   = (q^2 z;p,q^4)(p q^2 z;p,q^4) / ((q^4 z;p,q^4)(p z;p,q^4))
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .context import EllipticContext

_MAX_FACTORS = 400
_FACTOR_EPS = 1e-17


def q_pochhammer(z: complex, bases) -> complex:
    """(z; t_1, ..., t_k)_infinity over multi-indices n_i >= 0.

    Every base must have modulus < 1.  The product is truncated once the
    remaining factors differ from 1 by less than machine epsilon.
    """
    bases = [complex(b) for b in bases]
    for b in bases:
        if abs(b) >= 1.0:
            raise ValueError(f"pochhammer base must have |t| < 1, got {b}")
    if z == 0:
        return 1.0 + 0.0j
    return _poch_rec(complex(z), bases)


def _poch_rec(z: complex, bases) -> complex:
    if not bases:
        return 1.0 - z
    t, rest = bases[0], bases[1:]
    result = 1.0 + 0.0j
    cur = z
    for _ in range(_MAX_FACTORS):
        if abs(cur) < _FACTOR_EPS:
            break
        result *= _poch_rec(cur, rest)
        cur = cur * t
    return result


def theta_big(z: complex, p: float) -> complex:
    """Theta_p(z) = (z;p)(p/z;p)(p;p)."""
    if z == 0:
        raise ValueError("Theta_p(0) is singular (p/z factor)")
    return q_pochhammer(z, [p]) * q_pochhammer(p / z, [p]) * q_pochhammer(0, [p]) * _poch_one(p)


def _poch_one(p: float) -> complex:
    # (p;p)_infinity
    return _poch_rec(complex(p), [complex(p)])


def theta_jacobi(u: complex, ctx: EllipticContext) -> complex:
    """theta(u) with nome p."""
    return _theta_jacobi(u, ctx.p, float(ctx.r), ctx)


def theta_jacobi_star(u: complex, ctx: EllipticContext) -> complex:
    """theta*(u): theta with r -> r*, p -> p*."""
    return _theta_jacobi(u, ctx.p_star, float(ctx.r_star), ctx)


def _theta_jacobi(u: complex, p: float, r: float, ctx: EllipticContext) -> complex:
    z = ctx.z_of_u(u)
    pref = ctx.qpow(u * u / r - u)
    return pref * theta_big(z, p) / _poch_one(p) ** 3


def theta(kind: str, arg: complex, ctx: EllipticContext) -> complex:
    """Dispatch: kind in {'Theta_p', 'jacobi', 'jacobi_star'}."""
    if kind == "Theta_p":
        return theta_big(arg, ctx.p)
    if kind == "jacobi":
        return theta_jacobi(arg, ctx)
    if kind == "jacobi_star":
        return theta_jacobi_star(arg, ctx)
    raise ValueError(f"unknown theta kind {kind!r}")


def brace(z: complex, ctx: EllipticContext, star: bool = False) -> complex:
    """{z} = (z; p, q^4), or the p* variant."""
    p = ctx.p_star if star else ctx.p
    return q_pochhammer(z, [p, ctx.q ** 4])


def xi(z: complex, ctx: EllipticContext, star: bool = False) -> complex:
    """xi(z;p,q); star=True evaluates xi(z;p*,q)."""
    p = ctx.p_star if star else ctx.p
    q2, q4 = ctx.q ** 2, ctx.q ** 4
    num = q_pochhammer(q2 * z, [p, q4]) * q_pochhammer(p * q2 * z, [p, q4])
    den = q_pochhammer(q4 * z, [p, q4]) * q_pochhammer(p * z, [p, q4])
    return num / den


def kappa(ctx: EllipticContext) -> complex:
    """kappa = xi(z;p*,q)/xi(z;p,q) at z = q^-2.

    At that point the leading factor (q^2 z; p, q^4) of both xi's vanishes
    (its (0,0) term is 1 - 1); the common zero is cancelled before taking
    the ratio.
    """
    q = ctx.q
    q2, q4 = q ** 2, q ** 4
    z = q ** (-2)

    def poch_skip00(p: float) -> complex:
        # (q^2 z; p, q^4) at z=q^-2 with the (n1,n2)=(0,0) factor omitted
        result = 1.0 + 0.0j
        n1 = 0
        cur1 = 1.0
        while abs(cur1) >= _FACTOR_EPS and n1 < _MAX_FACTORS:
            n2 = 1 if n1 == 0 else 0
            cur = cur1 * q4 ** n2
            while abs(cur) >= _FACTOR_EPS and n2 < _MAX_FACTORS:
                result *= 1.0 - cur
                cur *= q4
                n2 += 1
            n1 += 1
            cur1 *= p
        return result

    def rest(p: float) -> complex:
        return (q_pochhammer(p * q2 * z, [p, q4])
                / (q_pochhammer(q4 * z, [p, q4]) * q_pochhammer(p * z, [p, q4])))

    ps, p = ctx.p_star, ctx.p
    return (poch_skip00(ps) * rest(ps)) / (poch_skip00(p) * rest(p))


def rho_lm(z: complex, l: int, m: int, ctx: EllipticContext, star: bool = False) -> complex:
    """Scalar factor rho^+_{lm}(z,p) of the spin-(l/2,m/2) R-matrix."""
    q = ctx.q
    p = ctx.p_star if star else ctx.p

    def br(x):
        return q_pochhammer(x, [p, q ** 4])

    zi = 1.0 / z
    num = (br(p * q ** (l - m + 2) * z) * br(p * q ** (-l + m + 2) * z)
           * br(q ** (l + m + 2) * zi) * br(q ** (-l - m + 2) * zi))
    den = (br(p * q ** (l + m + 2) * z) * br(p * q ** (-l - m + 2) * z)
           * br(q ** (l - m + 2) * zi) * br(q ** (-l + m + 2) * zi))
    return q ** (l * m / 2.0) * num / den


def rho_plus(u: complex, ctx: EllipticContext, star: bool = False) -> complex:
    """rho^+(u) = z^(1/2r) rho^+_11(z,p); star=True gives rho^{+*}(u)."""
    z = ctx.z_of_u(u)
    r = ctx.r_star if star else ctx.r
    return cmath.exp(cmath.log(ctx.q) * 2 * u / (2 * float(r))) * rho_lm(z, 1, 1, ctx, star=star)


def _rho_plus_regular(u: complex, ctx: EllipticContext, star: bool) -> complex:
    """rho^+(u) with every nome-free leading factor stripped.

    The braces of rho^+_11 whose argument carries no factor of the nome
    ({1/z}, {q^4/z}, {q^2/z}^2) contribute leading (n1=0, n2=0) factors
    (1 - x) that are identical for the p and p* variants.  Stripping them
    from both makes the ratio rho = rho^{+*}/rho^+ regular at the points
    u in {0, +-1, ...} where those factors vanish, without changing its
    value elsewhere.
    """
    q = ctx.q
    p = ctx.p_star if star else ctx.p
    r = ctx.r_star if star else ctx.r
    z = ctx.z_of_u(u)
    zi = 1.0 / z

    def br(x):
        return q_pochhammer(x, [p, q ** 4])

    def br_strip(x):
        # {x} / (1 - x) = (px; p, q^4) (q^4 x; q^4)
        return br(p * x) * _poch_rec(x * q ** 4, [complex(q ** 4)])

    num = br(p * q ** 2 * z) ** 2 * br_strip(zi) * br_strip(q ** 4 * zi)
    den = br(p * z) * br(p * q ** 4 * z) * br_strip(q ** 2 * zi) ** 2
    pref = cmath.exp(cmath.log(q) * 2 * u / (2 * float(r)))
    return pref * (q ** 0.5) * num / den


def rho(u: complex, ctx: EllipticContext) -> complex:
    """rho(u) = rho^{+*}(u)/rho^+(u), the K-K exchange factor.

    Nome-free leading factors common to numerator and denominator are
    cancelled analytically, so rho is regular at u = 0, 1, ... with
    rho(0) = 1.
    """
    return (_rho_plus_regular(u, ctx, star=True)
            / _rho_plus_regular(u, ctx, star=False))


def varphi_l(u: complex, l: int, ctx: EllipticContext, star: bool = False) -> complex:
    """varphi_l(u) = -z^(-l/2r) theta(u + (l+1)/2) / rho^+_{1l}(z,p).

    star=True evaluates the r -> r* variant used for type-II intertwiners.
    """
    z = ctx.z_of_u(u)
    r = ctx.r_star if star else ctx.r
    th = theta_jacobi_star(u + (l + 1) / 2.0, ctx) if star else theta_jacobi(u + (l + 1) / 2.0, ctx)
    pref = cmath.exp(cmath.log(ctx.q) * 2 * u * (-l) / (2 * float(r)))
    return -pref * th / rho_lm(z, 1, l, ctx, star=star)


def scalar_factor(name: str, ctx: EllipticContext, **args) -> complex:
    """Named scalar factors.

    name in {'xi','kappa','rho_plus','rho','rho_lm','varphi_l','brace'};
    arguments per name: xi(z, star=False), rho_plus(u, star=False), rho(u),
    rho_lm(z, l, m, star=False), varphi_l(u, l, star=False), brace(z, star=False).
    """
    table = {
        "xi": xi,
        "rho_plus": rho_plus,
        "rho": rho,
        "rho_lm": rho_lm,
        "varphi_l": varphi_l,
        "brace": brace,
    }
    if name == "kappa":
        return kappa(ctx)
    if name not in table:
        raise ValueError(f"unknown scalar factor {name!r}")
    fn = table[name]
    if name in ("xi", "brace"):
        return fn(args.pop("z"), ctx, **args)
    if name == "rho_lm":
        return fn(args.pop("z"), args.pop("l"), args.pop("m"), ctx, **args)
    if name == "varphi_l":
        return fn(args.pop("u"), args.pop("l"), ctx, **args)
    return fn(args.pop("u"), ctx, **args)
