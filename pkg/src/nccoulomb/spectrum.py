"""Bound states on both branches, norms, mirror symmetry, and the
electron self-energy estimate.

With kappa_n = lam alpha / n the two bound-state towers are

    E_I(n)  = (1/lam^2) (1 - sqrt(1 + kappa_n^2)) < 0        (alpha > 0),
    E_II(n) = (1/lam^2) (1 + sqrt(1 + kappa_n^2)) > 2/lam^2  (alpha < 0),

mirror images about the band midpoint: E_I + E_II = 2/lam^2 at matched
(|alpha|, n).  Their radial sequences are geometric-times-polynomial,

    R_I(N)  = Omega^N  F(j+1-n, -N; 2j+2; -2 kappa / Omega),
    R_II(N) = (-Omega)^N F(j+1-n, -N; 2j+2;  2 kappa / Omega),

with Omega in (0, 1), and obey R_II(-alpha)(N) = (-1)^N R_I(alpha)(N)
level by level (exactly so in rational arithmetic when sqrt(1 + kappa^2)
is rational).  An independent root finder recovers the energies from the
S-matrix pole condition without touching the closed forms.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import NamedTuple

import numpy as np

from . import scattering
from .fuzzy import Params
from .radial import RadialSeq, _sqrt_exact
from .special import gauss_2f1

CONSTANTS_ENV = "NCCOULOMB_CONSTANTS"


@dataclass(frozen=True)
class EnergyLevel:
    branch: str  # "I" or "II"
    n: int
    j: int
    E: float
    kappa: float
    omega: float


def _omega_one(kappa, s):
    # (kappa - s + 1)/(kappa + s - 1), algebraically equal to s - kappa
    return (kappa - s + 1) / (kappa + s - 1)


def _omega_two(kappa, s):
    return -(kappa + s + 1) / (kappa - s - 1)


def bound_energies_I(params: Params, j: int, n_count: int) -> list[EnergyLevel]:
    """Attractive-branch energies for n = j+1 .. j+n_count.

    Evaluated in the cancellation-free form -(alpha/n)^2 / (1 + sqrt(1+kappa^2)),
    identical to (1/lam^2)(1 - sqrt(1 + kappa^2)).
    """
    if not params.alpha > 0:
        raise ValueError("branch I needs alpha > 0")
    if j < 0 or n_count < 0:
        raise ValueError("need j >= 0 and n_count >= 0")
    out = []
    for n in range(j + 1, j + n_count + 1):
        kappa = params.lam * params.alpha / n
        s = math.sqrt(1.0 + kappa * kappa)
        energy = -((params.alpha / n) ** 2) / (1.0 + s)
        out.append(EnergyLevel("I", n, j, energy, kappa, _omega_one(kappa, s)))
    return out


def bound_energies_II(params: Params, j: int, n_count: int) -> list[EnergyLevel]:
    """Repulsive-branch energies E_II = 2/lam^2 - E_I(|alpha|), above the band."""
    if not params.alpha < 0:
        raise ValueError("branch II needs alpha < 0")
    if j < 0 or n_count < 0:
        raise ValueError("need j >= 0 and n_count >= 0")
    out = []
    for n in range(j + 1, j + n_count + 1):
        kappa = params.lam * params.alpha / n
        s = math.sqrt(1.0 + kappa * kappa)
        energy = (1.0 + s) / (params.lam * params.lam)
        out.append(EnergyLevel("II", n, j, energy, kappa, _omega_two(kappa, s)))
    return out


class BracketError(RuntimeError):
    """Root bracketing failed (implementation bug, not physics)."""


def _pole_condition(j: int, E: float, params: Params) -> float:
    # Re(j + 1 - i alpha / p(E)); real on both bound-state axes.
    mom = scattering.p_of_E(E, params)
    return (j + 1 - 1j * params.alpha / mom.p).real


def _bisect_secant(f, lo, hi):
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo:g}, {hi:g}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if abs(hi - lo) <= 1e-15 * max(abs(lo), abs(hi)):
            break
    # secant polish inside the bracket
    x0, x1, f0, f1 = lo, hi, flo, fhi
    for _ in range(4):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (min(lo, hi) <= x2 <= max(lo, hi)):
            break
        x0, f0, x1, f1 = x1, f1, x2, f(x2)
    return x1


def termination_roots(j: int, params: Params, n_count: int) -> list[EnergyLevel]:
    """Bound energies recovered by root-finding the S-matrix pole condition
    j + 1 - i alpha / p(E) = -(n - j - 1) in E.

    Brackets come from the closed-form energies perturbed by +-10 percent
    of their distance to the branch edge (0 below the band, 2/lam^2 above,
    so branch-II brackets never leak into the scattering band), keeping the
    root finder independent while always convergent.  Both branch
    conditions derive from the pole positions p = i alpha / n.
    """
    if params.alpha == 0:
        raise ValueError("alpha = 0 has no bound states")
    closed = (bound_energies_I if params.alpha > 0 else bound_energies_II)(
        params, j, n_count)
    edge = 0.0 if params.alpha > 0 else params.e_crit
    out = []
    for level in closed:
        target = float(j + 1 - level.n)
        f = lambda e: _pole_condition(j, e, params) - target  # noqa: E731
        offset = level.E - edge
        lo, hi = sorted((edge + 0.9 * offset, edge + 1.1 * offset))
        root = _bisect_secant(f, lo, hi)
        out.append(EnergyLevel(level.branch, level.n, j, root, level.kappa, level.omega))
    return out


def bound_radial_values(branch: str, n: int, j: int, kappa, n_max: int):
    """Radial level values of a bound state, duck-typed over kappa.

    kappa = lam alpha / n carries its sign (positive on branch I, negative
    on branch II).  Fraction input runs exactly, requiring 1 + kappa^2 to
    be a perfect rational square (Pythagorean kappa).
    """
    if n < j + 1:
        raise ValueError("need n >= j + 1")
    if kappa == 0:
        raise ValueError("kappa = 0 has no bound state (Omega is 0/0)")
    if isinstance(kappa, Fraction) or isinstance(kappa, int):
        kappa = Fraction(kappa)
        s = _sqrt_exact(1 + kappa * kappa)
        one = Fraction(1)
    else:
        s = math.sqrt(1.0 + kappa * kappa)
        one = 1.0
    if branch == "I":
        if not kappa > 0:
            raise ValueError("branch I needs kappa > 0")
        omega = _omega_one(kappa, s)
        base = omega * one
        z = -2 * kappa / omega
    elif branch == "II":
        if not kappa < 0:
            raise ValueError("branch II needs kappa < 0")
        omega = _omega_two(kappa, s)
        base = -omega * one
        z = 2 * kappa / omega
    else:
        raise ValueError("branch must be 'I' or 'II'")
    a = j + 1 - n  # termination at the radial quantum number n - j - 1
    c = 2 * j + 2
    values = []
    p_n = one
    for level in range(n_max + 1):
        values.append(p_n * gauss_2f1(a, -level, c, z))
        p_n = p_n * base
    return values


def bound_wavefunction(level: EnergyLevel, n_max: int) -> RadialSeq:
    """Closed-form radial sequence of a bound EnergyLevel."""
    vals = bound_radial_values(level.branch, level.n, level.j, level.kappa, n_max)
    return RadialSeq(level.j, np.asarray(vals, dtype=complex),
                     provenance=f"bound-{level.branch}-n{level.n}")


class MirrorResult(NamedTuple):
    equal: bool
    max_deviation: float


def mirror_check(n: int, j: int, kappa, n_max: int) -> MirrorResult:
    """Verify R_II(-kappa)(N) = (-1)^N R_I(kappa)(N) for N <= n_max.

    kappa > 0 refers to the attractive branch; both sides are built
    independently from their own Omega formulas.  Fraction kappa with
    rational sqrt(1 + kappa^2) (e.g. 3/4 -> 5/4) gives the exact path and
    an exactly-zero deviation on success.
    """
    r_one = bound_radial_values("I", n, j, kappa, n_max)
    r_two = bound_radial_values("II", n, j, -kappa, n_max)
    exact = isinstance(kappa, (Fraction, int))
    dev = 0 if exact else 0.0
    for level in range(n_max + 1):
        d = abs(r_two[level] - (-1) ** level * r_one[level])
        dev = max(dev, d)
    return MirrorResult(dev == 0 if exact else dev < 1e-12, float(dev))


class NormResult(NamedTuple):
    value: float
    tail: float
    converged: bool


def radial_norm_sq(j: int, seq, params: Params) -> NormResult:
    """Reduced norm of the radial part:

    (4 pi lam^(3+2j) / (j!)^2) * sum_n (n+j+1) C(n+2j+1, 2j+1) |R(n)|^2,

    summed over the available levels with a geometric tail bound estimated
    from the last term ratio.  ``converged`` is False when the ratio test
    fails (scattering sequences, whose norm diverges by design).
    """
    values = getattr(seq, "values", seq)
    pref = 4.0 * math.pi * params.lam ** (3 + 2 * j) / math.factorial(j) ** 2
    terms = []
    for n, v in enumerate(values):
        weight = (n + j + 1) * math.comb(n + 2 * j + 1, 2 * j + 1)
        terms.append(weight * abs(complex(v)) ** 2)
    total = float(sum(terms))
    tail = math.inf
    converged = False
    if len(terms) >= 6 and terms[-1] > 0:
        ratios = [terms[i + 1] / terms[i] for i in range(len(terms) - 4, len(terms) - 1)
                  if terms[i] > 0]
        if ratios:
            q = max(ratios)
            if q < 1.0:
                tail = terms[-1] * q / (1.0 - q)
                converged = True
    if terms and terms[-1] == 0:
        tail, converged = 0.0, True
    return NormResult(pref * total, pref * tail if math.isfinite(tail) else math.inf,
                      converged)


# ---------------------------------------------------------------------------
# Physical-scale estimates
# ---------------------------------------------------------------------------

def load_constants(path: str | None = None) -> dict[str, float]:
    """Read the key = value constants file.

    Resolution order: explicit path, the NCCOULOMB_CONSTANTS environment
    variable, then the packaged CODATA defaults.
    """
    if path is None:
        path = os.environ.get(CONSTANTS_ENV)
    if path is None:
        text = resources.files("nccoulomb").joinpath("data/constants.cfg").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    out: dict[str, float] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = float(value)
    required = {"e_squared_gaussian", "m_electron", "c", "hbar"}
    missing = required - out.keys()
    if missing:
        raise ValueError(f"constants file is missing {sorted(missing)}")
    return out


class Lambda0Estimate(NamedTuple):
    lambda0_m: float
    lambda0_over_r0: float
    alpha0: float
    lambda0_over_a0: float
    correction_scale: float


def lambda0_estimate(constants: dict[str, float] | None = None) -> Lambda0Estimate:
    """Fuzziness scale from the electron self-energy condition
    m c^2 = (3/8) e^2 / lam:

    lambda0 = (3/8) e^2 / (m c^2), i.e. 3/8 of the classical electron
    radius (about 1.06 fm).  Relative to the Bohr radius,
    lambda0 / a0 = (3/8) alpha0^2, so level shifts are governed by its
    square (9/64) alpha0^4, a few parts in 10^10.
    """
    cst = constants if constants is not None else load_constants()
    e2, m, c, hbar = (cst["e_squared_gaussian"], cst["m_electron"],
                      cst["c"], cst["hbar"])
    r0_cm = e2 / (m * c * c)
    lambda0_cm = 0.375 * r0_cm
    alpha0 = e2 / (hbar * c)
    ratio_a0 = 0.375 * alpha0 * alpha0
    return Lambda0Estimate(lambda0_cm * 1e-2, 0.375, alpha0, ratio_a0, ratio_a0 ** 2)


class SelfEnergyTrace(NamedTuple):
    value: float
    target: float
    tail_bound: float


def self_energy_trace(n_max: int, params: Params) -> SelfEnergyTrace:
    """Truncated electrostatic self-energy of the fuzzy Coulomb field:

    (4 pi lam^3 / 8 pi) sum_{n=1}^{n_max} (n+1)^2 <E^2>_n
      with E_j = (q / lam^3) x_j / (N (N+1) (N+2)) and x^2 = r^2 - lam^2,

    which reduces level by level to (q^2 / 2 lam) sum 1/(n (n+2)) and
    telescopes to the target (3/8) q^2 / lam.  The analytic tail bound
    (q^2 / 4 lam) (1/(n_max+1) + 1/(n_max+2)) is reported alongside.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    q = params.alpha
    pref = q * q / (2.0 * params.lam)
    acc = 0.0
    for n in range(1, n_max + 1):
        acc += 1.0 / (n * (n + 2))
    tail = 0.5 * (1.0 / (n_max + 1) + 1.0 / (n_max + 2))
    return SelfEnergyTrace(pref * acc, 0.375 * q * q / params.lam, pref * tail)
