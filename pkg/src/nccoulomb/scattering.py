"""Partial-wave S-matrix on the fuzzy space and its asymptotics.

The conformal momentum p = sqrt(2E (1 - lam^2 E / 2)) maps the physical
band (0, 2/lam^2) onto the two edges of a cut (0, 1/lam): energies below
1/lam^2 land on the upper edge, energies above on the lower edge, selected
by the E + i0 prescription.  The S-matrix is the same Gamma ratio as in
ordinary quantum mechanics with k replaced by p,

    S_j(E) = Gamma(j+1 - i alpha/p) / Gamma(j+1 + i alpha/p),

and its poles at p = i alpha / n encode both bound-state branches.  The
large-radius decomposition splits the regular radial solution into an
in/out pair of convergent Gauss series whose sum reproduces the solution
exactly; the Gamma-ratio prefactor of those terms has an equivalent
Bernoulli-series exponential form.  All square roots and logs are
principal; the physical sheet is fixed analytically and cross-checked
against the E + i eps rule in the tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import radial
from .fuzzy import Params
from .special import BERNOULLI, bernoulli_poly, gauss_2f1, log_gamma

EDGE_UPPER = "upper"
EDGE_LOWER = "lower"
EDGE_OFF_CUT = "off-cut"


@dataclass(frozen=True)
class Momentum:
    p: complex
    edge: str


@dataclass(frozen=True)
class SMatrixValue:
    S: complex
    phase_shift: float


class SMatrixPole(ArithmeticError):
    """The Gamma-ratio argument hit a non-positive integer (bound state)."""


def p_of_E(E, params: Params) -> Momentum:
    """Conformal momentum p = sqrt(2E - lam^2 E^2) on the physical sheet.

    Real energies take the limit from the upper E half-plane: inside the
    band that picks the positive real root (upper edge below 1/lam^2,
    lower edge above), below the band p is +i sqrt(|.|), above the band
    -i sqrt(|.|).  Complex E uses the principal square root.
    """
    lam = params.lam
    if isinstance(E, complex) and E.imag != 0.0:
        return Momentum(cmath.sqrt(2.0 * E - (lam * E) ** 2), EDGE_OFF_CUT)
    e = float(E.real if isinstance(E, complex) else E)
    w = e * (2.0 - lam * lam * e)
    mid = 1.0 / (lam * lam)
    if w > 0.0:
        p = math.sqrt(w)
        if 0.0 < e < mid:
            return Momentum(complex(p), EDGE_UPPER)
        if mid < e < params.e_crit:
            return Momentum(complex(p), EDGE_LOWER)
        return Momentum(complex(p), EDGE_OFF_CUT)
    root = math.sqrt(-w)
    return Momentum(1j * root if e < 0.0 else -1j * root, EDGE_OFF_CUT)


def E_of_p(p, params: Params, sheet: int = 1) -> complex:
    """Inverse conformal map E = (1/lam^2) (1 + i sqrt(lam^2 p^2 - 1)).

    sheet=1 is the principal (physical) inverse, positive square root for
    p in (1/lam, inf); sheet=2 flips the sign of the root, continuing
    through the cut.
    """
    if sheet not in (1, 2):
        raise ValueError("sheet must be 1 or 2")
    lam = params.lam
    root = cmath.sqrt((lam * complex(p)) ** 2 - 1.0)
    sign = 1.0 if sheet == 1 else -1.0
    return (1.0 + sign * 1j * root) / (lam * lam)


def _gamma_ratio(z_minus, z_plus):
    return cmath.exp(log_gamma(z_minus) - log_gamma(z_plus))


def _check_pole(z, what):
    if abs(z.imag) < 1e-8:
        nearest = round(z.real)
        if nearest <= 0 and abs(z.real - nearest) < 1e-8:
            raise SMatrixPole(f"{what} argument {z:g} at non-positive integer")


def smatrix_nc(j: int, E, params: Params) -> SMatrixValue:
    """Fuzzy partial-wave S-matrix via log-gamma differences.

    The phase shift returned is the principal value arg(S)/2; use
    phase_shift_sweep for a phase that is continuous along an energy grid.
    """
    if j < 0:
        raise ValueError("partial wave j must be non-negative")
    mom = p_of_E(E, params)
    if mom.p == 0:
        raise ValueError("p = 0: S-matrix undefined at the band endpoints")
    z_minus = j + 1 - 1j * params.alpha / mom.p
    z_plus = j + 1 + 1j * params.alpha / mom.p
    _check_pole(z_minus, "smatrix_nc")
    s = _gamma_ratio(z_minus, z_plus)
    return SMatrixValue(s, 0.5 * cmath.phase(s))


def smatrix_qm(j: int, E, alpha) -> SMatrixValue:
    """Ordinary Coulomb S-matrix Gamma(j+1-i alpha/k)/Gamma(j+1+i alpha/k)."""
    if j < 0:
        raise ValueError("partial wave j must be non-negative")
    if not float(E) > 0:
        raise ValueError("smatrix_qm needs E > 0")
    k = math.sqrt(2.0 * float(E))
    z_minus = j + 1 - 1j * alpha / k
    _check_pole(z_minus, "smatrix_qm")
    s = _gamma_ratio(z_minus, j + 1 + 1j * alpha / k)
    return SMatrixValue(s, 0.5 * cmath.phase(s))


def phase_shift_sweep(j: int, energies: Sequence[float], params: Params | None = None,
                      alpha: float | None = None):
    """Phase shifts along an energy sweep, made continuous by pi steps.

    With ``params`` the fuzzy S-matrix is swept; with ``alpha`` alone the
    ordinary one.  Returns (deltas, flags) where flags marks residual
    jumps exceeding pi/2 after unwrapping (none are expected on grids that
    resolve the phase).
    """
    if (params is None) == (alpha is None):
        raise ValueError("give exactly one of params / alpha")
    raw = []
    for e in energies:
        val = smatrix_nc(j, e, params) if params is not None else smatrix_qm(j, e, alpha)
        raw.append(val.phase_shift)
    deltas = np.array(raw)
    flags = np.zeros(len(deltas), dtype=bool)
    for i in range(1, len(deltas)):
        step = deltas[i] - deltas[i - 1]
        deltas[i] -= math.pi * round(step / math.pi)
        if abs(deltas[i] - deltas[i - 1]) > math.pi / 2:
            flags[i] = True
    return deltas, flags


# ---------------------------------------------------------------------------
# Large-radius decomposition (in/out split of the regular solution)
# ---------------------------------------------------------------------------

class Decomposition(NamedTuple):
    term_in: complex
    term_out: complex
    prefactor_in: complex
    prefactor_out: complex


def _decomposition_pieces(j: int, E: float, params: Params):
    lam, alpha = params.lam, params.alpha
    mom = p_of_E(E, params)
    p = mom.p.real
    if mom.edge == EDGE_OFF_CUT or p <= 0:
        raise ValueError("asymptotic decomposition needs E inside the open band")
    a = j + 1 - 1j * alpha / p
    c = 2 * j + 2
    rho = (p + 1j * lam * E) / (p - 1j * lam * E)
    log_rho = cmath.log(rho)  # continuous from log 1 = 0 across the whole band
    log_2lp = math.log(2.0 * lam * p)
    # log of rho/(lam Q) with Q = -2ip, and of (1/rho)/(lam Q') with Q' = 2ip
    lw_out = log_rho - (log_2lp - 1j * math.pi / 2)
    lw_in = -log_rho - (log_2lp + 1j * math.pi / 2)
    pre_out = cmath.exp(log_gamma(c) - 1j * math.pi * a - log_gamma(c - a) + a * lw_out)
    pre_in = cmath.exp(log_gamma(c) + 1j * math.pi * (c - a) - log_gamma(a)
                       + (c - a) * lw_in)
    z_out = -cmath.exp(lw_out)
    z_in = -cmath.exp(lw_in)
    return a, c, rho, pre_out, pre_in, z_out, z_in


def asymptotic_decomposition(j: int, E, params: Params, n: int) -> Decomposition:
    """Exact in/out split of the scattering radial value at level n.

    term_out + term_in equals the direct closed-form value R(n); each term
    is a convergent Gauss series (ratio-monitored, |argument| = 1/(2 lam p)
    must be below one, otherwise DivergenceError propagates).  The
    r-independent prefactors are returned for the S-matrix bookkeeping
    check: prefactor_out / prefactor_in = S * (2 lam p)^(-2j-2)
    * e^(pi alpha / p) * rho^(-2 i alpha / p).
    """
    a, c, rho, pre_out, pre_in, z_out, z_in = _decomposition_pieces(j, float(E), params)
    gn_out = cmath.exp(log_gamma(n + 1) - log_gamma(n + 1 + a))
    gn_in = cmath.exp(log_gamma(n + 1) - log_gamma(n + 1 + c - a))
    f_out = gauss_2f1(a, a - c + 1, n + 1 + a, z_out)
    f_in = gauss_2f1(c - a, 1 - a, n + 1 + c - a, z_in)
    term_out = pre_out * rho ** n * gn_out * f_out
    term_in = pre_in * rho ** (-n) * gn_in * f_in
    return Decomposition(term_in, term_out, pre_in, pre_out)


def smatrix_from_decomposition(j: int, E, params: Params, n: int = 10) -> complex:
    """S-matrix recovered from the in/out prefactor ratio.

    The decomposition prefactors carry the wave-redistribution factors
    rho^(2j+2) (2 lam p)^(2 i alpha / p) and the kinematical (-1)^(j+1) on
    top of the S-matrix; stripping them inverts
        A_out / A_in = (-1)^(j+1) S rho^(2j+2) (2 lam p)^(2 i alpha / p).
    """
    d = asymptotic_decomposition(j, E, params, n)
    mom = p_of_E(E, params)
    p = mom.p.real
    lam = params.lam
    rho = (p + 1j * lam * E) / (p - 1j * lam * E)
    strip = (-1.0) ** (j + 1) * rho ** (2 * j + 2) \
        * (2.0 * lam * p) ** (2j * params.alpha / p)
    return d.prefactor_out / d.prefactor_in / strip


class PrefactorForms(NamedTuple):
    bernoulli_form: complex
    gamma_form: complex
    truncation_estimate: float


def prefactor_via_lngamma(j: int, E, params: Params, n: int, terms: int = 10,
                          conjugate: bool = False) -> PrefactorForms:
    """Gamma(N+1)/Gamma(N+1+a) two ways, a = j+1 -+ i alpha / p.

    The exact way is a log-gamma difference; the asymptotic way is the
    Bernoulli-series exponential

    z^(-a) exp(-sum_m (-1)^(m+1) (B_{m+1}(a) - B_{m+1}(0)) / (m (m+1)) z^-m)

    with z = N + 1 = r / lam, truncated at ``terms`` with the magnitude of
    the first dropped term reported.  ``conjugate`` selects the companion
    a = j+1 + i alpha / p.
    """
    mom = p_of_E(E, params)
    p = mom.p.real
    if p <= 0 or mom.p.imag != 0:
        raise ValueError("needs E inside the open band")
    a = j + 1 + 1j * params.alpha / p if conjugate else j + 1 - 1j * params.alpha / p
    z = float(n + 1)
    gamma_form = cmath.exp(log_gamma(z) - log_gamma(z + a))
    acc = 0.0 + 0.0j
    zk = z
    for m in range(1, terms + 1):
        sign = 1.0 if m % 2 else -1.0
        acc += sign * (complex(bernoulli_poly(m + 1, a)) - complex(BERNOULLI.number(m + 1))) \
            / (m * (m + 1)) / zk
        zk *= z
    dropped = abs(complex(bernoulli_poly(terms + 2, a))
                  - complex(BERNOULLI.number(terms + 2))) \
        / ((terms + 1) * (terms + 2)) / zk
    bern_form = cmath.exp(-a * math.log(z) - acc)
    return PrefactorForms(bern_form, gamma_form, dropped)


def mirror_momenta(eps: float, params: Params):
    """Mirror pair of energies/momenta around the band midpoint:

    E_I = 1/lam^2 - eps with p_I = +sqrt(1/lam^2 - lam^2 eps^2) and
    E_II = 1/lam^2 + eps with p_II = -p_I.
    """
    lam = params.lam
    mid = 1.0 / (lam * lam)
    if not 0.0 < eps < mid:
        raise ValueError("eps must lie in (0, 1/lam^2)")
    p = math.sqrt(mid - (lam * eps) ** 2)
    return (mid - eps, p), (mid + eps, -p)


def scattering_mirror_check(j: int, eps: float, params: Params, n_max: int) -> float:
    """Max deviation in R_II(-alpha)(N) = (-1)^N R_I(alpha)(N).

    R_I is built at E = 1/lam^2 - eps with the positive momentum root,
    R_II at E = 1/lam^2 + eps with the negative root and alpha negated;
    the deviation is normalized by the largest level magnitude.
    """
    (e1, p1), (e2, p2) = mirror_momenta(eps, params)
    r_one = radial.scattering_values(j, p1, e1, params.alpha, params.lam, n_max)
    r_two = radial.scattering_values(j, p2, e2, -params.alpha, params.lam, n_max)
    scale = max(max(abs(v) for v in r_one), 1e-300)
    dev = max(abs(r_two[n] - (-1.0) ** n * r_one[n]) for n in range(n_max + 1))
    return dev / scale
