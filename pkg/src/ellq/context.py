"""Numeric context: deformation parameters and truncation policy.

All computations in this package are driven by a single immutable
EllipticContext holding the deformation parameter q, the elliptic
modulus r, the level k, the derived nomes p = q^(2r) and
p* = q^(2(r-k)), and the truncation/tolerance policy used by the
series engine and the verification suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        f = Fraction(x).limit_denominator(10**6)
        if abs(float(f) - x) > 1e-12:
            raise ValueError(f"r={x!r} is not recognizably rational")
        return f
    raise TypeError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True)
class TruncationPolicy:
    """Caps and tolerances shared by the series engine and the suites."""

    nome_order: int = 4        # max retained power of p (and p*) in scalar series
    fock_degree: int = 6       # degree cap of truncated Fock modules
    spectral_window: int = 12  # retained Laurent exponents lie in [-M, M]
    tol_abs: float = 1e-12
    tol_rel: float = 1e-9
    series_tol_rel: float = 1e-8
    rng_seed: int = 42

    def __post_init__(self):
        if self.nome_order < 1 or self.fock_degree < 1 or self.spectral_window < 1:
            raise ValueError("truncation caps must be positive")
        if self.tol_abs <= 0 or self.tol_rel <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class EllipticContext:
    q: float
    r: Fraction
    k: int
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ValueError(f"q must lie in (0,1), got {self.q}")
        if self.k < 0:
            raise ValueError(f"level k must be a non-negative integer, got {self.k}")
        if self.r <= self.k:
            raise ValueError(
                f"need r > k so that r* = r - k stays positive, got r={self.r}, k={self.k}"
            )

    # -- derived parameters -------------------------------------------------

    @property
    def r_star(self) -> Fraction:
        return self.r - self.k

    @property
    def p(self) -> float:
        return self.qpow(2 * self.r)

    @property
    def p_star(self) -> float:
        return self.qpow(2 * self.r_star)

    @property
    def log_q(self) -> float:
        return math.log(self.q)

    def qpow(self, a) -> complex | float:
        """q**a for rational/real/complex a via exp(a*log q), log q real."""
        if isinstance(a, Fraction):
            a = float(a)
        if isinstance(a, complex):
            import cmath

            return cmath.exp(a * self.log_q)
        return math.exp(a * self.log_q)

    def z_of_u(self, u) -> complex:
        """z = q^(2u); u may be complex."""
        return self.qpow(2 * u)

    def qint(self, x) -> complex:
        """[x] = (q^x - q^-x)/(q - q^-1); x may be rational or complex."""
        return (self.qpow(x) - self.qpow(-x)) / (self.q - 1.0 / self.q)

    # -- starred twin -------------------------------------------------------

    def star(self) -> "EllipticContext":
        """Context with r -> r* and level 0: theta of the star context is theta*."""
        return EllipticContext(self.q, self.r_star, 0, self.policy)

    def with_r(self, r) -> "EllipticContext":
        return EllipticContext(self.q, _as_fraction(r), self.k, self.policy)


def make_context(q: float, r, k: int = 1, policy: TruncationPolicy | None = None,
                 **policy_kwargs) -> EllipticContext:
    """Build a validated context.

    `r` accepts ints, Fractions, or floats that are recognizably rational.
    Extra keyword arguments override individual TruncationPolicy fields.
    """
    if policy is None:
        policy = TruncationPolicy(**policy_kwargs)
    elif policy_kwargs:
        raise TypeError("pass either a policy object or keyword overrides, not both")
    return EllipticContext(float(q), _as_fraction(r), int(k), policy)
