"""Closed-form radial solutions of the fuzzy radial equation.

A radial wave function lives on Fock levels: the sequence R(n) is the value
of the level-diagonal radial operator on level n.  The associated ordinary
ODE  x y'' + (a1 x + b1) y' + (a2 x + b2) y = 0  classifies by the
discriminant D^2 = a1^2 - 4 a2: confluent-hypergeometric branches when
D != 0 and a Bessel branch when D = 0.  In level space the five energy
regimes give

  * generic (eta not 0 or 1):
      R(N) = [1 +- 2 eta s - 2 eta^2]^N
             F(j+1 +- alpha lam / (2 eta s), -N; 2j+2;
               +- 4 eta s / (1 +- 2 eta s - 2 eta^2)),  s = sqrt(eta^2 - 1),
    with the plus and minus branches equal by the Euler identity;
  * eta = 0:  R(N) = -(2 alpha)^(j+1/2) / (2j+1)! * phi(-N, 2j+2, 2 alpha lam);
  * eta = 1:  R(N) = -(-1)^N (2 alpha)^(j+1/2) / (2j+1)!
                        * phi(-N, 2j+2, -2 alpha lam).

Here eta = k lam / 2 and k^2 = 2 E.  An independent oracle re-derives every
sequence from the three-term level recurrence whose coefficients are read
off truncated-Fock matrix elements, with no reference to any closed form.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy import sparse

from . import fuzzy
from .special import gauss_2f1, kummer_1f1

_BOUNDARY_WINDOW = 1e-8  # |eta - boundary| below which the generic form degenerates


class Regime(Enum):
    NEGATIVE_E = "NegativeE"
    LOW_SCATTERING = "LowScattering"
    ETA_ZERO = "EtaZero"
    ETA_ONE = "EtaOne"
    ULTRA_HIGH = "UltraHigh"


@dataclass(frozen=True)
class EnergyContext:
    E: float
    k: complex
    eta: complex
    regime: Regime


@dataclass(frozen=True)
class OdeCoefficients:
    a0: complex
    a1: complex
    a2: complex
    b0: complex
    b1: complex
    b2: complex
    D_sq: complex


@dataclass
class RadialSeq:
    """Radial values R_j(n) on Fock levels n = 0..n_max."""

    j: int
    values: object  # ndarray of complex, or list of Fractions on the exact path
    provenance: str = ""

    def __len__(self):
        return len(self.values)


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def classify(E, params: fuzzy.Params) -> EnergyContext:
    """Place E in one of the five regimes.

    Rational (int/Fraction) energy and lam compare exactly against the
    boundaries 0 and 2/lam^2; floats use the tolerance 1e-14 * (2/lam^2).
    """
    e_crit = params.e_crit
    if _is_rational(E) and _is_rational(params.lam):
        e_crit_exact = 2 / Fraction(params.lam) ** 2
        if E == 0:
            regime = Regime.ETA_ZERO
        elif E == e_crit_exact:
            regime = Regime.ETA_ONE
        elif E < 0:
            regime = Regime.NEGATIVE_E
        elif E < e_crit_exact:
            regime = Regime.LOW_SCATTERING
        else:
            regime = Regime.ULTRA_HIGH
    else:
        e = float(E)
        tol = 1e-14 * e_crit
        if abs(e) <= tol:
            regime = Regime.ETA_ZERO
        elif abs(e - e_crit) <= tol:
            regime = Regime.ETA_ONE
        elif e < 0:
            regime = Regime.NEGATIVE_E
        elif e < e_crit:
            regime = Regime.LOW_SCATTERING
        else:
            regime = Regime.ULTRA_HIGH
    k = cmath.sqrt(complex(2.0 * float(E)))
    return EnergyContext(float(E), k, 0.5 * k * params.lam, regime)


def ode_coefficients(j: int, E, params: fuzzy.Params) -> OdeCoefficients:
    """Coefficients of the associated ODE for angular momentum j:

    a0 = 1, a1 = lam k^2, a2 = k^2, b0 = 0, b1 = 2(j+1),
    b2 = lam k^2 (j+1) + 2 alpha, and D^2 = lam^2 k^4 - 4 k^2.
    """
    k2 = 2.0 * float(E)
    lam, alpha = params.lam, params.alpha
    a1 = lam * k2
    return OdeCoefficients(
        a0=1.0, a1=a1, a2=k2, b0=0.0,
        b1=2.0 * (j + 1), b2=a1 * (j + 1) + 2.0 * alpha,
        D_sq=lam * lam * k2 * k2 - 4.0 * k2,
    )


def _sqrt_exact(x: Fraction) -> Fraction:
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ValueError(f"{x} has no rational square root; exact path unavailable")
    return Fraction(num, den)


def _terminating_2f1_sequence(a, c, z, base, n_max, force_mp=False):
    """Level sequence base^N F(a, -N; c; z) at precision matched to the
    term growth.

    The terminating series has terms up to ~(1 + |z|)^N in magnitude while
    the value can stay order one (scattering band), so the summation is
    promoted to multiprecision whenever the cancellation would eat more
    than a few float digits.  Ill-conditioning lives in the summation
    only: the parameters themselves are benign, so promoting their double
    values loses nothing.
    """
    digits = n_max * math.log10(1.0 + abs(complex(z)))
    if digits <= 3.0 and not force_mp:
        out = []
        p_n = 1.0 + 0.0j
        for n in range(n_max + 1):
            out.append(p_n * gauss_2f1(a, -n, c, z))
            p_n *= complex(base)
        return out
    import mpmath
    with mpmath.workdps(int(digits) + 25):
        a_m = mpmath.mpc(complex(a))
        z_m = mpmath.mpc(complex(z))
        base_m = mpmath.mpc(complex(base))
        out = []
        p_n = mpmath.mpc(1)
        for n in range(n_max + 1):
            out.append(complex(p_n * gauss_2f1(a_m, -n, c, z_m)))
            p_n *= base_m
    return out


def _generic_values(j, eta_sq, alpha_lam, n_max, sign, exact, force_mp=False):
    """Both sign branches of the generic closed form, driven by eta^2.

    eta^2 < 0 covers E < 0, 0 < eta^2 < 1 the scattering band, eta^2 > 1
    the ultra-high band; the real specializations are recovered through the
    principal square root.  On the exact path eta^2 and alpha*lam must be
    rational with eta^2 (eta^2 - 1) a perfect rational square.
    """
    pm = {"plus": 1, "minus": -1}[sign]
    if exact:
        eta_sq = Fraction(eta_sq)
        half_d = pm * _sqrt_exact(eta_sq * (eta_sq - 1))  # eta sqrt(eta^2-1), signed
        one = Fraction(1)
    else:
        eta = cmath.sqrt(complex(eta_sq))
        half_d = pm * eta * cmath.sqrt(complex(eta_sq) - 1.0)
        one = 1.0 + 0.0j
        eta_sq = complex(eta_sq)
    pref = one + 2 * half_d - 2 * eta_sq
    if pref == 0:
        raise ZeroDivisionError("generic closed form degenerates at this energy")
    a = (j + 1) + alpha_lam / (2 * half_d)
    z = 4 * half_d / pref
    c = 2 * j + 2
    if exact:
        values = []
        p_n = one
        for n in range(n_max + 1):
            values.append(p_n * gauss_2f1(a, -n, c, z))
            p_n = p_n * pref
        return values
    return _terminating_2f1_sequence(a, c, z, pref, n_max, force_mp=force_mp)


def _eta_boundary_values(j, alpha, lam, n_max, at_one, force_mp=False):
    """Bessel-branch solutions at eta = 0 and eta = 1 in level space."""
    pref = -((2.0 * complex(alpha)) ** (j + 0.5)) / math.factorial(2 * j + 1)
    arg = -2.0 * alpha * lam if at_one else 2.0 * alpha * lam
    c = 2 * j + 2
    digits = n_max * math.log10(1.0 + abs(arg))
    if digits <= 3.0 and not force_mp:
        vals = [kummer_1f1(-n, c, arg) for n in range(n_max + 1)]
    else:
        import mpmath
        with mpmath.workdps(int(digits) + 25):
            arg_m = mpmath.mpf(arg)
            vals = [complex(kummer_1f1(-n, c, arg_m)) for n in range(n_max + 1)]
    out = []
    for n, v in enumerate(vals):
        v = pref * v
        if at_one and n % 2:
            v = -v
        out.append(v)
    return out


def scattering_values(j, p, E, alpha, lam, n_max):
    """Scattering-band closed form with an explicit momentum convention:

    R(N) = ((p + i lam E) / (p - i lam E))^N
           F(j+1 - i alpha/p, -N; 2j+2; 2 i lam p (p - i lam E)/(p + i lam E)).

    p is a free argument so that both momentum sign conventions of the
    scattering mirror can be exercised; the standard path feeds in the
    positive root of 2E (1 - lam^2 E / 2).
    """
    ratio = (p + 1j * lam * E) / (p - 1j * lam * E)
    a = j + 1 - 1j * alpha / p
    z = 2j * lam * p / ratio
    return _terminating_2f1_sequence(a, 2 * j + 2, z, ratio, n_max)


def radial_closed_form(j: int, E, params: fuzzy.Params, n_max: int,
                       sign: str = "plus", exact: bool = False,
                       extended: bool = False) -> RadialSeq:
    """Closed-form radial sequence for the regime of E.

    ``sign`` selects the redundant branch of the generic form (the two are
    value-equal by the Euler identity).  ``extended`` forces multiprecision
    summation even where double precision would do.  Near eta = 0 or eta = 1 the
    generic expression is numerically singular, so the degenerate branch is
    returned after a loose cross-check against the generic one.  With
    ``exact=True`` the evaluation runs in Fraction arithmetic and raises
    when the needed square roots are irrational (the eta = 0, 1 prefactor
    contains a half-integer power, so those regimes have no exact path).
    """
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    if j < 0:
        raise ValueError("partial wave j must be non-negative")
    if n_max < j:
        raise ValueError("need n_max >= j")
    ctx = classify(E, params)
    lam, alpha = params.lam, params.alpha
    if exact:
        if not (_is_rational(E) and _is_rational(params.lam) and _is_rational(params.alpha)):
            raise ValueError("exact evaluation needs rational E, lam, alpha")
        if ctx.regime in (Regime.ETA_ZERO, Regime.ETA_ONE):
            raise ValueError("eta = 0, 1 prefactors are irrational; no exact path")
        if ctx.regime is Regime.LOW_SCATTERING:
            raise ValueError("scattering-band values are complex; no exact path")
        eta_sq = Fraction(params.lam) ** 2 * Fraction(E) / 2
        vals = _generic_values(j, eta_sq, Fraction(params.lam) * Fraction(params.alpha),
                               n_max, sign, exact=True)
        return RadialSeq(j, vals, provenance=f"closed-{ctx.regime.value}-{sign}-exact")

    if ctx.regime is Regime.ETA_ZERO:
        vals = _eta_boundary_values(j, alpha, lam, n_max, at_one=False,
                                    force_mp=extended)
    elif ctx.regime is Regime.ETA_ONE:
        vals = _eta_boundary_values(j, alpha, lam, n_max, at_one=True,
                                    force_mp=extended)
    else:
        eta_sq = (lam * lam) * float(E) / 2.0
        near_zero = abs(ctx.eta) < _BOUNDARY_WINDOW
        near_one = abs(ctx.eta - 1.0) < _BOUNDARY_WINDOW
        if near_zero or near_one:
            vals = _eta_boundary_values(j, alpha, lam, n_max, at_one=near_one,
                                        force_mp=extended)
            check_n = min(n_max, 8)
            generic = _generic_values(j, eta_sq, lam * alpha, check_n, sign, exact=False)
            dev = max(abs(g - v) for g, v in zip(generic, vals[: check_n + 1]))
            scale = max(1.0, max(abs(v) for v in vals[: check_n + 1]))
            if dev / scale > 1e-4:
                warnings.warn(
                    f"degenerate/generic cross-check off by {dev / scale:.2e} "
                    f"at eta = {ctx.eta:.3e}", stacklevel=2)
        else:
            vals = _generic_values(j, eta_sq, lam * alpha, n_max, sign, exact=False,
                                   force_mp=extended)
    return RadialSeq(j, np.asarray(vals, dtype=complex),
                     provenance=f"closed-{ctx.regime.value}-{sign}")


def commutative_radial(j: int, E, alpha, r):
    """Ordinary-space regular Coulomb radial function, normalized to 1 at
    the origin:

    R(r) = e^{i k r} phi(j+1 - i alpha/k, 2j+2, -2 i k r),  k = sqrt(2E).

    Real for E > 0; the analytic continuation to E < 0 (k = i|k|) lands on
    the bound-state form e^{-|k| r} phi(j+1 - alpha/|k|, 2j+2, 2 |k| r).
    """
    k = cmath.sqrt(complex(2.0 * float(E)))
    if k == 0:
        raise ValueError("E = 0 has no confluent-hypergeometric form")
    a = j + 1 - 1j * complex(alpha) / k
    return cmath.exp(1j * k * r) * kummer_1f1(a, 2 * j + 2, -2j * k * r)


# ---------------------------------------------------------------------------
# Recurrence oracle
# ---------------------------------------------------------------------------

class RecurrenceBreakdown(ArithmeticError):
    """Leading recurrence coefficient vanished at some level."""


def recurrence_coefficients(j: int, E, params: fuzzy.Params, count: int) -> np.ndarray:
    """Three-term recurrence coefficients read off the Fock matrices.

    Row i (i = 0..count-1) holds (c_minus, c_zero, c_plus) such that the
    radial equation at total level nu = i + j reads
        c_minus R(i-1) + c_zero R(i) + c_plus R(i+1) = 0
    (row 0 has c_minus = 0).  The coefficients are extracted by pushing
    delta-comb radial sequences through the literal matrix form of
    (1/lam) [a^+, [a, Psi]] - 2 alpha Psi - k^2 r Psi, so they carry no
    information from any closed-form solution.
    """
    work = fuzzy.TruncatedFock(count + j + 3)
    lad = fuzzy.build_ladder(work)
    lam = params.lam
    k2 = 2.0 * complex(E)
    r_diag = sparse.diags((lam * (work.levels + 1.0)).astype(complex)).tocsr()

    applied = []
    for residue in range(3):
        comb = np.array([1.0 if i % 3 == residue else 0.0
                         for i in range(work.n_max + 1)])
        psi = fuzzy.build_psi_jm(j, j, comb, work, params)
        dc = None
        for a, ad in ((lad.a1, lad.a1_dag), (lad.a2, lad.a2_dag)):
            inner = a @ psi.mat - psi.mat @ a
            term = ad @ inner - inner @ ad
            dc = term if dc is None else dc + term
        t_mat = dc.tocsr() / lam - 2.0 * params.alpha * psi.mat - k2 * (r_diag @ psi.mat)
        applied.append(t_mat.tocsr())

    coeffs = np.zeros((count, 3), dtype=complex)
    for i in range(count):
        nu = i + j
        row = work.index(j, nu - j)
        col = work.index(0, nu)
        for d, slot in ((-1, 0), (0, 1), (1, 2)):
            target = i + d
            if target < 0:
                continue
            coeffs[i, slot] = applied[target % 3][row, col]
    return coeffs


def radial_from_recurrence(j: int, E, params: fuzzy.Params, n_max: int,
                           seed: complex = 1.0) -> RadialSeq:
    """Radial sequence from the matrix-element recurrence (the oracle).

    Seeds R(0) = seed; R(1) follows from the two-term relation at total
    level j, and the three-term relation rolls the rest forward.  Raises
    RecurrenceBreakdown if a leading coefficient vanishes.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    coeffs = recurrence_coefficients(j, E, params, n_max)
    values = np.zeros(n_max + 1, dtype=complex)
    values[0] = seed
    for i in range(n_max):
        cm, c0, cp = coeffs[i]
        scale = max(abs(cm), abs(c0), abs(cp))
        if abs(cp) <= 1e-14 * scale:
            raise RecurrenceBreakdown(f"leading coefficient vanished at level {i + j}")
        prev = values[i - 1] if i >= 1 else 0.0
        values[i + 1] = -(cm * prev + c0 * values[i]) / cp
    return RadialSeq(j, values, provenance="recurrence")


def recurrence_residuals(seq: RadialSeq, E, params: fuzzy.Params) -> np.ndarray:
    """Per-level relative residual of a radial sequence in the recurrence.

    Entry i is |c_- R(i-1) + c_0 R(i) + c_+ R(i+1)| normalized by the sum
    of the term magnitudes, for i = 0..len(seq)-2.
    """
    values = np.asarray([complex(v) for v in seq.values])
    count = len(values) - 1
    coeffs = recurrence_coefficients(seq.j, E, params, count)
    out = np.zeros(count)
    for i in range(count):
        cm, c0, cp = coeffs[i]
        prev = values[i - 1] if i >= 1 else 0.0
        terms = (cm * prev, c0 * values[i], cp * values[i + 1])
        num = abs(sum(terms))
        den = sum(abs(t) for t in terms)
        out[i] = num / den if den > 0 else 0.0
    return out
