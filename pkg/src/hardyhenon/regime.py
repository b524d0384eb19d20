"""Parameter-space classification: admissibility, criticality, well-posedness
regions, blow-up / nonexistence verdicts, and the feasible Kato parameters.

All strict/non-strict inequalities are encoded exactly as the theory states
them.  Comparisons are exact when both sides are rationals; float ties within
BOUNDARY_TOL are resolved as ties and flagged with a "boundary" warning.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .exponents import (
    DecayQuadruple,
    Num,
    ProblemParams,
    SpacePair,
    _exact,
    critical_index,
    kato_beta,
)

BOUNDARY_TOL = 1e-12


class Criticality(enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


class InfeasibleRegionError(ValueError):
    """The admissible Kato-parameter region is empty."""


def _cmp(x: Num, y: Num, boundary: Optional[List[str]] = None, label: str = "") -> int:
    """Three-way compare with exact ties on rationals, tolerance on floats."""
    xe, ye = _exact(x), _exact(y)
    if xe is not None and ye is not None:
        return (xe > ye) - (xe < ye)
    xf, yf = float(x), float(y)
    scale = max(1.0, abs(xf), abs(yf))
    if abs(xf - yf) <= BOUNDARY_TOL * scale:
        if boundary is not None:
            boundary.append(label or f"{xf} ~ {yf}")
        return 0
    return (xf > yf) - (xf < yf)


def _lt(x, y, warn=None, label="") -> bool:
    return _cmp(x, y, warn, label) < 0


def _le(x, y, warn=None, label="") -> bool:
    return _cmp(x, y, warn, label) <= 0


def classify_criticality(p: ProblemParams, sp: SpacePair) -> Criticality:
    """Compare tau = s + d/q against tau_c = (2+gamma)/(alpha-1)."""
    c = _cmp(sp.tau_of(p.d), critical_index(p))
    if c < 0:
        return Criticality.SUBCRITICAL
    if c == 0:
        return Criticality.CRITICAL
    return Criticality.SUPERCRITICAL


def dissipative_admissible(p: ProblemParams, quad: DecayQuadruple) -> bool:
    """True iff sigma_- < d/q2 + s2 <= d/q1 + s1 < sigma_+ + 2 and s2 <= s1."""
    d = p.d
    t2 = quad.target.tau_of(d)
    t1 = quad.source.tau_of(d)
    sm = p.sigma_minus_num()
    sp2 = p.sigma_plus_num() + 2
    return (
        _lt(sm, t2)
        and _le(t2, t1)
        and _lt(t1, sp2)
        and _le(quad.s2, quad.s1)
    )


def duality_image(quad: DecayQuadruple) -> DecayQuadruple:
    """(q1,s1,q2,s2) -> (q2', -s2, q1', -s1) with q' the Holder conjugate."""

    def conj(q: Num) -> Num:
        qe = _exact(q)
        if qe is not None:
            return qe / (qe - 1)
        qf = float(q)
        return qf / (qf - 1.0)

    return DecayQuadruple(
        SpacePair(conj(quad.q2), -quad.s2),
        SpacePair(conj(quad.q1), -quad.s1),
    )


def endpoint_admissible(p: ProblemParams, q1, s1, q2, s2) -> bool:
    """Endpoint variant: s1 = -sigma_- frees q1 in [1, inf] (equality allowed
    on the upper index bound); s2 = sigma_- frees q2 likewise on the lower.

    Reported separately from the open-range test and never merged into it.
    q may be 1 or math.inf here.
    """
    d = p.d
    sm = p.sigma_minus_num()
    sp2 = p.sigma_plus_num() + 2

    def idx(q, s):
        if math.isinf(float(q)):
            return s if _exact(s) is not None else float(s)
        qe, se = _exact(q), _exact(s)
        if qe is not None and se is not None:
            return se + Fraction(d) / qe
        return float(s) + d / float(q)

    free1 = _cmp(s1, -sm) == 0
    free2 = _cmp(s2, sm) == 0
    if not (free1 or free2):
        return False
    q1f, q2f = float(q1), float(q2)
    if not free1 and not (1 < q1f < math.inf):
        return False
    if not free2 and not (1 < q2f < math.inf):
        return False
    if not (1 <= q1f <= math.inf and 1 <= q2f <= math.inf):
        return False
    t1, t2 = idx(q1, s1), idx(q2, s2)
    lower_ok = _le(sm, t2) if free2 else _lt(sm, t2)
    upper_ok = _le(t1, sp2) if free1 else _lt(t1, sp2)
    return lower_ok and _le(t2, t1) and upper_ok and _le(s2, s1)


@dataclass(frozen=True)
class KatoParams:
    """Auxiliary pair (p, k) steering the time-weighted iteration space."""

    p: float
    k: float
    beta: float

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError("p must exceed 1")


@dataclass(frozen=True)
class KatoBox:
    """Feasible rectangle for (k, d/p); d/p bounds evaluated at the chosen k."""

    k_lo: float
    k_hi: float
    dinvp_lo: float
    dinvp_hi: float


@dataclass(frozen=True)
class RegimeVerdict:
    criticality: Criticality
    dissipative_admissible: bool
    lwp: bool
    uniqueness_in_C: bool
    small_data_global: bool
    blowup_data_exists: bool
    nonexistence: bool
    kato_feasible: Optional[KatoBox] = None
    failures: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = ()
    unknown: Tuple[str, ...] = ()


def _gamma_window_ok(p: ProblemParams, warn) -> bool:
    # gamma in (-2, inf) for a <= 0; all of R for a > 0
    if _cmp(p.a, 0) > 0:
        return True
    return _lt(-2, p.gamma, warn, "gamma = -2")


def _alpha_window_ok(p: ProblemParams, warn) -> bool:
    # a <= 0: alpha in (1, 1 + (gamma+2)/sigma_-), upper bound +inf at a = 0
    # a  > 0: alpha in (1 + max((gamma+2)/sigma_-, 0), inf)
    sm = p.sigma_minus_num()
    if _cmp(p.a, 0) <= 0:
        if _cmp(sm, 0) == 0:
            return True  # a = 0: any alpha > 1 (gamma window already holds)
        ge, sme = _exact(p.gamma), _exact(sm)
        if ge is not None and sme is not None:
            upper = 1 + (ge + 2) / sme
        else:
            upper = 1.0 + (float(p.gamma) + 2.0) / float(sm)
        return _lt(p.alpha, upper, warn, "alpha at upper window edge")
    ge, sme = _exact(p.gamma), _exact(sm)
    if ge is not None and sme is not None:
        lower = 1 + max((ge + 2) / sme, Fraction(0))
    else:
        lower = 1.0 + max((float(p.gamma) + 2.0) / float(sm), 0.0)
    return _lt(lower, p.alpha, warn, "alpha at lower window edge")


def _sign_condition(p: ProblemParams, warn) -> bool:
    # d + gamma < alpha*d if a = 0, d + gamma < alpha*(d-2) if a != 0
    rhs_factor = p.d if _cmp(p.a, 0) == 0 else p.d - 2
    ae, ge = _exact(p.alpha), _exact(p.gamma)
    if ae is not None and ge is not None:
        return _lt(p.d + ge, ae * rhs_factor, warn, "growth condition boundary")
    return _lt(p.d + float(p.gamma), float(p.alpha) * rhs_factor, warn,
               "growth condition boundary")


def _fujita_zero_condition(p: ProblemParams, warn) -> bool:
    # alpha > 1 + (2+gamma)^+ / d  (potential-free threshold)
    ge = _exact(p.gamma)
    if ge is not None:
        thr = 1 + max(2 + ge, Fraction(0)) / Fraction(p.d)
    else:
        thr = 1.0 + max(2.0 + float(p.gamma), 0.0) / p.d
    return _lt(thr, p.alpha, warn, "threshold exponent boundary")


def _kato_intervals(p: ProblemParams, sp: SpacePair):
    """Raw feasibility intervals for k and then d/p at a given k."""
    d = p.d
    sm = p.sigma_minus_num()
    sp2 = p.sigma_plus_num() + 2
    alpha, gamma, s, q = p.alpha, p.gamma, sp.s, sp.q
    tau = sp.tau_of(d)

    def over(x, y):  # x / y with exactness
        xe, ye = _exact(x), _exact(y)
        if xe is not None and ye is not None:
            return xe / ye
        return float(x) / float(y)

    k_lo = max(sm - over(d, alpha), over(s + gamma, alpha), key=float)
    k_hi = min(over(sp2 + gamma, alpha), s, key=float)

    def dinvp_bounds(k):
        lo = max(sm - k, over(tau + gamma, alpha) - k, 0 * k, key=float)
        hi = min(over(sp2 + gamma, alpha) - k, tau - k, over(d, alpha), key=float)
        return lo, hi

    return k_lo, k_hi, dinvp_bounds


def choose_kato_params(p: ProblemParams, sp: SpacePair) -> KatoParams:
    """Pick (p, k) in the feasible region, at interval midpoints.

    Midpoints maximize margin for the downstream quadrature.  When the
    problem is subcritical and the plain-space uniqueness window holds
    (q > alpha and tau < (sigma_+ + 2 + gamma)/alpha), returns (q, s)
    verbatim.  A degenerate k-interval collapses to its endpoint when the
    non-strict constraints still hold there (the strict interval is only
    a sufficient choice).
    """
    verdict = lwp_verdict(p, sp)
    if not verdict.lwp:
        raise InfeasibleRegionError(
            "well-posedness hypotheses fail upstream: " + "; ".join(verdict.failures)
        )
    d = p.d
    tau = sp.tau_of(d)
    crit = classify_criticality(p, sp)
    sp2 = p.sigma_plus_num() + 2

    if crit is Criticality.SUBCRITICAL and _cmp(sp.q, p.alpha) > 0:
        ae, ge, spe = _exact(p.alpha), _exact(p.gamma), _exact(sp2)
        if ae is not None and ge is not None and spe is not None:
            uniq_edge = (spe + ge) / ae
        else:
            uniq_edge = (float(sp2) + float(p.gamma)) / float(p.alpha)
        if _cmp(tau, uniq_edge) < 0:
            return KatoParams(
                p=float(sp.q), k=float(sp.s),
                beta=float(kato_beta(d, sp.s, sp.s, sp.q, sp.q)),
            )

    k_lo, k_hi, dinvp_bounds = _kato_intervals(p, sp)
    c = _cmp(k_lo, k_hi)
    if c < 0:
        k = (k_lo + k_hi) / 2 if type(k_lo) is type(k_hi) else (float(k_lo) + float(k_hi)) / 2.0
    elif c == 0:
        # closed-endpoint fallback; the endpoint must still sit strictly
        # inside the two strict constraints
        k = k_lo
        sm = p.sigma_minus_num()
        strict_lo = sm - (Fraction(d) / _exact(p.alpha) if _exact(p.alpha) is not None else d / float(p.alpha))
        ae, ge = _exact(p.alpha), _exact(p.gamma)
        spe = _exact(sp2)
        if ae is not None and ge is not None and spe is not None:
            strict_hi = (spe + ge) / ae
        else:
            strict_hi = (float(sp2) + float(p.gamma)) / float(p.alpha)
        if not (_cmp(strict_lo, k) < 0 and _cmp(k, strict_hi) < 0):
            raise InfeasibleRegionError("k-interval degenerates outside the strict window")
    else:
        raise InfeasibleRegionError(
            f"empty k-interval ({float(k_lo)}, {float(k_hi)})"
        )

    dp_lo, dp_hi = dinvp_bounds(k)
    if not _cmp(dp_lo, dp_hi) < 0:
        raise InfeasibleRegionError(
            f"empty d/p-interval ({float(dp_lo)}, {float(dp_hi)}) at k={float(k)}"
        )
    dinvp = (dp_lo + dp_hi) / 2 if type(dp_lo) is type(dp_hi) else (float(dp_lo) + float(dp_hi)) / 2.0
    pp = d / float(dinvp)
    kk = float(k)
    ok, why = kato_params_valid(p, sp, pp, kk)
    if not ok:
        raise InfeasibleRegionError("midpoint choice fails validation: " + "; ".join(why))
    return KatoParams(p=pp, k=kk, beta=float(kato_beta(d, kk, sp.s, pp, sp.q)))


def kato_params_valid(p: ProblemParams, sp: SpacePair, pk_p: float, pk_k: float):
    """Independent validator of the (p, k) constraint list.

    Written straight off the inequality list, sharing no code with the
    chooser.  Returns (ok, list-of-violations).
    """
    d = p.d
    alpha = float(p.alpha)
    gamma = float(p.gamma)
    s = float(sp.s)
    q = float(sp.q)
    sm = p.sigma_minus
    sp2 = p.sigma_plus + 2.0
    tau = s + d / q
    tau_c = (2.0 + gamma) / (alpha - 1.0)
    tol = BOUNDARY_TOL
    bad = []
    if not pk_k <= s + tol:
        bad.append("k <= s fails")
    if not (sm < d / pk_p + pk_k + tol and d / pk_p + pk_k <= tau + tol and tau < sp2 + tol):
        bad.append("sigma_- < d/p + k <= d/q + s < sigma_+ + 2 fails")
    if not gamma / (alpha - 1.0) <= pk_k + tol:
        bad.append("gamma/(alpha-1) <= k fails")
    if not (alpha < pk_p + tol and math.isfinite(pk_p)):
        bad.append("alpha < p < inf fails")
    if not (s + gamma) / alpha <= pk_k + tol:
        bad.append("(s+gamma)/alpha <= k fails")
    if not (sm < pk_k + d / pk_p + tol and pk_k + d / pk_p < (sp2 + gamma) / alpha + tol):
        bad.append("sigma_- < k + d/p < (sigma_+ + 2 + gamma)/alpha fails")
    lower = (d / q + s + gamma) / alpha
    upper_strict = abs(tau - tau_c) <= tol * max(1.0, abs(tau_c))
    if upper_strict:
        if not (lower < d / pk_p + pk_k + tol and d / pk_p + pk_k < tau + tol):
            bad.append("nonlinear window (critical form) fails")
    else:
        if not (lower < d / pk_p + pk_k + tol and d / pk_p + pk_k <= tau + tol):
            bad.append("nonlinear window (subcritical form) fails")
    return (not bad), bad


def lwp_verdict(p: ProblemParams, sp: SpacePair,
                f_sign_compatible: bool = False) -> RegimeVerdict:
    """Full per-theorem applicability report for one (params, space) pair.

    The blow-up and nonexistence flags additionally require the caller to
    assert that the nonlinearity acts as z^alpha on z >= 0 (pass
    f_sign_compatible=True); they are never inferred from mu alone.
    """
    d = p.d
    warn: List[str] = []
    failures: List[str] = []
    unknown: List[str] = []
    tau = sp.tau_of(d)
    tau_c = critical_index(p)
    crit = classify_criticality(p, sp)
    sm = p.sigma_minus_num()
    sp2 = p.sigma_plus_num() + 2

    self_quad = DecayQuadruple(sp, sp)
    self_admissible = dissipative_admissible(p, self_quad)

    ok = True
    if not _gamma_window_ok(p, warn):
        failures.append("gamma outside (-2, inf) for a <= 0")
        ok = False
    if not _alpha_window_ok(p, warn):
        failures.append("alpha outside the admissible window for this coupling")
        ok = False

    def over(x, y):
        xe, ye = _exact(x), _exact(y)
        if xe is not None and ye is not None:
            return xe / ye
        return float(x) / float(y)

    if not _le(over(p.gamma, (p.alpha - 1 if _exact(p.alpha) is not None else float(p.alpha) - 1.0)), sp.s,
               warn, "s = gamma/(alpha-1)"):
        failures.append("s >= gamma/(alpha-1) fails")
        ok = False
    if not _lt(sm - over(d, p.alpha), sp.s, warn, "s at sigma_- - d/alpha"):
        failures.append("s > sigma_- - d/alpha fails")
        ok = False
    if not _lt(sm, tau, warn, "tau = sigma_-"):
        failures.append("tau > sigma_- fails")
        ok = False
    if not _lt(tau, sp2, warn, "tau = sigma_+ + 2"):
        failures.append("tau < sigma_+ + 2 fails")
        ok = False
    if not _le(tau, tau_c, warn, "tau = tau_c"):
        failures.append("tau > tau_c (scale supercritical)")
        ok = False

    lwp = ok
    small_data_global = lwp and crit is Criticality.CRITICAL

    uniqueness = False
    if lwp and crit is Criticality.SUBCRITICAL:
        ae, ge, spe = _exact(p.alpha), _exact(p.gamma), _exact(sp2)
        if ae is not None and ge is not None and spe is not None:
            uniq_edge = (spe + ge) / ae
        else:
            uniq_edge = (float(sp2) + float(p.gamma)) / float(p.alpha)
        uniqueness = _cmp(sp.q, p.alpha) > 0 and _cmp(tau, uniq_edge) < 0

    blowup = False
    if lwp and f_sign_compatible:
        if p.d == 2 and _cmp(p.a, 0) != 0:
            unknown.append("blowup_data_exists (d = 2 with nonzero coupling)")
        else:
            blowup = _sign_condition(p, warn)

    nonexistence = False
    if crit is Criticality.SUPERCRITICAL:
        if f_sign_compatible and _sign_condition(p, warn) and _fujita_zero_condition(p, warn):
            nonexistence = True
        else:
            unknown.append("nonexistence (supercritical but hypotheses unmet)")

    box = None
    if lwp:
        try:
            k_lo, k_hi, dinvp_bounds = _kato_intervals(p, sp)
            if _cmp(k_lo, k_hi) <= 0:
                kmid = (float(k_lo) + float(k_hi)) / 2.0
                dlo, dhi = dinvp_bounds(kmid if _cmp(k_lo, k_hi) < 0 else k_lo)
                box = KatoBox(float(k_lo), float(k_hi), float(dlo), float(dhi))
        except (ZeroDivisionError, ValueError):
            box = None

    return RegimeVerdict(
        criticality=crit,
        dissipative_admissible=self_admissible,
        lwp=lwp,
        uniqueness_in_C=uniqueness,
        small_data_global=small_data_global,
        blowup_data_exists=blowup,
        nonexistence=nonexistence,
        kato_feasible=box,
        failures=tuple(failures),
        warnings=tuple(warn),
        unknown=tuple(unknown),
    )


def figure_region(d: int, a: Num, gamma: Num, alpha: float, tau: float) -> str:
    """Region label at a point of the (alpha, tau) plane.

    Mirrors the classifier's inequalities with the space indices (q, s)
    assumed realizable (the plane plots assume s large enough).  Labels:
    'lwp_unique', 'lwp', 'nonexistence', or '' for unclassified.
    """
    if alpha <= 1:
        return ""
    p = ProblemParams(d=d, a=a, gamma=gamma, alpha=alpha, mu=1)
    sm, sp2 = p.sigma_minus, p.sigma_plus + 2.0
    tau_c = float(critical_index(p))
    warn: List[str] = []
    if sm < tau < sp2 and tau <= tau_c and _gamma_window_ok(p, warn) and _alpha_window_ok(p, warn):
        if tau < tau_c and tau < (sp2 + float(gamma)) / alpha:
            return "lwp_unique"
        return "lwp"
    if tau > tau_c:
        pf = ProblemParams(d=d, a=a, gamma=gamma, alpha=alpha, mu=1)
        if _sign_condition(pf, warn) and _fujita_zero_condition(pf, warn):
            return "nonexistence"
    return ""
