"""Scalar exponent arithmetic for the inverse-square-potential heat flow.

Everything downstream (admissibility windows, Kato weights, lifespan
power laws) is a function of a handful of exponents derived from the
problem parameters (d, a, gamma, alpha, mu) and a weighted-Lebesgue
index pair (q, s).  This module computes them, in exact rational
arithmetic whenever the inputs are rationals (config files supply
p/q literals), otherwise in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

Num = Union[int, float, Fraction]

#: tolerance admitting the critical coupling a = a_* itself
A_STAR_TOL = 1e-12


def _exact(x) -> Optional[Fraction]:
    """Return x as a Fraction if it is exactly rational-typed, else None.

    Floats are deliberately not promoted: only ints and Fractions ride
    the exact path, so 'exact' means the caller said so.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):  # includes int / numpy happy path via index
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    return None


def _exact_sqrt(x: Fraction) -> Optional[Fraction]:
    """Square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _pos(x: Num) -> Num:
    """Positive part max(x, 0), preserving exactness."""
    return x if x > 0 else x * 0


@dataclass(frozen=True)
class ProblemParams:
    """One instance of the evolution problem.

    d     spatial dimension (integer >= 2)
    a     coupling of the a/|x|^2 potential, a >= a_* = -((d-2)/2)^2
    gamma power of the forcing weight |x|^gamma
    alpha nonlinearity power (> 1)
    mu    nonlinearity sign in {-1, 0, +1}

    Derived on construction: the indicial roots sigma_minus <= sigma_plus
    of s^2 - (d-2)s - a = 0 and the order nu = (sigma_plus - sigma_minus)/2.
    Exact rational values are kept alongside the floats whenever a was
    given as a rational and the discriminant has a rational square root.
    """

    d: int
    a: Num
    gamma: Num = 0
    alpha: Num = 2
    mu: int = 0
    sigma_minus: float = field(init=False)
    sigma_plus: float = field(init=False)
    nu: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"dimension d must be an integer >= 2, got {self.d!r}")
        if self.mu not in (-1, 0, 1):
            raise ValueError(f"mu must be -1, 0 or +1, got {self.mu!r}")
        if not self.alpha > 1:
            raise ValueError(f"alpha must exceed 1, got {self.alpha!r}")
        a_star = self.a_star
        if float(self.a) < a_star - A_STAR_TOL:
            raise ValueError(
                f"coupling a={float(self.a)} below the critical threshold "
                f"a_* = -((d-2)/2)^2 = {a_star}"
            )
        half = Fraction(self.d - 2, 2)
        ae = _exact(self.a)
        root = None
        if ae is not None:
            disc = half * half * 4 + 4 * ae
            if -A_STAR_TOL < disc < 0:
                disc = Fraction(0)  # clamp roundoff at critical coupling
            root = _exact_sqrt(disc) if disc >= 0 else None
        if root is not None:
            sm, sp = half - root / 2, half + root / 2
            object.__setattr__(self, "_sigma_minus_exact", sm)
            object.__setattr__(self, "_sigma_plus_exact", sp)
            object.__setattr__(self, "sigma_minus", float(sm))
            object.__setattr__(self, "sigma_plus", float(sp))
            object.__setattr__(self, "nu", float(root / 2))
        else:
            disc_f = (self.d - 2) ** 2 + 4.0 * float(self.a)
            disc_f = max(disc_f, 0.0)
            h = 0.5 * math.sqrt(disc_f)
            object.__setattr__(self, "_sigma_minus_exact", None)
            object.__setattr__(self, "_sigma_plus_exact", None)
            object.__setattr__(self, "sigma_minus", float(half) - h)
            object.__setattr__(self, "sigma_plus", float(half) + h)
            object.__setattr__(self, "nu", h)

    @property
    def a_star(self) -> float:
        return -((self.d - 2) / 2) ** 2

    @property
    def sigma_minus_exact(self) -> Optional[Fraction]:
        return self._sigma_minus_exact

    @property
    def sigma_plus_exact(self) -> Optional[Fraction]:
        return self._sigma_plus_exact

    def sigma_minus_num(self) -> Num:
        """sigma_minus, exact when available."""
        e = self._sigma_minus_exact
        return e if e is not None else self.sigma_minus

    def sigma_plus_num(self) -> Num:
        e = self._sigma_plus_exact
        return e if e is not None else self.sigma_plus


@dataclass(frozen=True)
class SpacePair:
    """A weighted-Lebesgue index pair (q, s) with 1 < q < infinity."""

    q: Num
    s: Num

    def __post_init__(self):
        if not (1 < float(self.q) < math.inf):
            raise ValueError(f"q must lie in (1, inf), got {self.q!r}")

    @property
    def tau(self) -> float:
        """Scaling index tau = s + d/q (needs d; see tau_of)."""
        raise AttributeError("tau depends on d; use tau_of(d)")

    def tau_of(self, d: int) -> Num:
        qe, se = _exact(self.q), _exact(self.s)
        if qe is not None and se is not None:
            return se + Fraction(d) / qe
        return float(self.s) + d / float(self.q)


@dataclass(frozen=True)
class DecayQuadruple:
    """Source/target pair (q1, s1) -> (q2, s2) for the fixed-time estimate."""

    source: SpacePair
    target: SpacePair

    @property
    def q1(self) -> Num:
        return self.source.q

    @property
    def s1(self) -> Num:
        return self.source.s

    @property
    def q2(self) -> Num:
        return self.target.q

    @property
    def s2(self) -> Num:
        return self.target.s

    def reversed(self) -> "DecayQuadruple":
        return DecayQuadruple(self.target, self.source)


def indicial_roots(p: ProblemParams) -> tuple:
    """Both roots of s^2 - (d-2)s - a = 0 in increasing order."""
    return p.sigma_minus, p.sigma_plus


def fujita_exponent(p: ProblemParams) -> Num:
    """1 + (2+gamma)^+ / (sigma_plus + 2), the small/large data threshold."""
    ge = _exact(p.gamma)
    spe = p.sigma_plus_exact
    if ge is not None and spe is not None:
        return 1 + _pos(ge + 2) / (spe + 2)
    return 1.0 + max(float(p.gamma) + 2.0, 0.0) / (p.sigma_plus + 2.0)


def critical_index(p: ProblemParams) -> Num:
    """tau_c = (2 + gamma)/(alpha - 1)."""
    ge, ae = _exact(p.gamma), _exact(p.alpha)
    if ge is not None and ae is not None:
        return (2 + ge) / (ae - 1)
    return (2.0 + float(p.gamma)) / (float(p.alpha) - 1.0)


def decay_exponent(p: ProblemParams, quad: DecayQuadruple) -> Num:
    """Sharp power of t in the fixed-time bound between the two spaces.

    Equals -(d/2)(1/q1 - 1/q2) - (s1 - s2)/2.
    """
    d = p.d
    vals = [_exact(v) for v in (quad.q1, quad.q2, quad.s1, quad.s2)]
    if all(v is not None for v in vals):
        q1, q2, s1, s2 = vals
        return -Fraction(d, 2) * (1 / q1 - 1 / q2) - (s1 - s2) / 2
    q1, q2 = float(quad.q1), float(quad.q2)
    s1, s2 = float(quad.s1), float(quad.s2)
    return -(d / 2.0) * (1.0 / q1 - 1.0 / q2) - (s1 - s2) / 2.0


def kato_beta(d: int, k: Num, s: Num, p: Num, q: Num) -> Num:
    """Time weight beta = (s + d/q - k - d/p)/2; zero when (p,k)=(q,s)."""
    if not (1 < float(p) < math.inf and 1 < float(q) < math.inf):
        raise ValueError("p and q must lie in (1, inf)")
    vals = [_exact(v) for v in (k, s, p, q)]
    if all(v is not None for v in vals):
        ke, se, pe, qe = vals
        return (se + Fraction(d) / qe - ke - Fraction(d) / pe) / 2
    return 0.5 * (float(s) + d / float(q) - float(k) - d / float(p))


def lifespan_kappa(p: ProblemParams, beta_data: Num) -> Num:
    """kappa = (2+gamma)/(2(alpha-1)) - beta/2 for data lam*|x|^{-beta}.

    Positive kappa gives the lifespan bound T_m <= c * lam^{-1/kappa};
    positivity is the caller's check.
    """
    tc = critical_index(p)
    be = _exact(beta_data)
    if isinstance(tc, Fraction) and be is not None:
        return tc / 2 - be / 2
    return float(tc) / 2.0 - float(beta_data) / 2.0
