"""Named verification checks: every closed form against its brute-force
oracle.

Each check compares a closed-form result with an independent evaluation
path (truncated-Fock matrices, level recurrences, termwise series
summation, root finding, exact rational arithmetic) and reports the
measured residual against a fixed tolerance.  Checks are grouped into
suites so the command line can run subsets.  Everything is deterministic:
grids are enumerated, nothing is sampled.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse

from . import fuzzy, radial, scattering, spectrum
from .fuzzy import Params, TruncatedFock


@dataclass
class CheckResult:
    name: str
    suite: str
    passed: bool
    residual: float
    tolerance: float
    seconds: float
    detail: str = ""


@dataclass
class VerifyConfig:
    n_max: int = 40
    precision: str = "double"  # double | rational

    def __post_init__(self):
        if self.precision not in ("double", "rational"):
            raise ValueError("precision must be 'double' or 'rational'")


_REGISTRY: list[tuple[str, str, bool, object]] = []


def _check(name: str, suite: str, exact: bool = False):
    def wrap(fn):
        _REGISTRY.append((name, suite, exact, fn))
        return fn
    return wrap


def suites() -> list[str]:
    seen = []
    for _, suite, _, _ in _REGISTRY:
        if suite not in seen:
            seen.append(suite)
    return seen


# ---------------------------------------------------------------------------
# fuzzy-space algebra
# ---------------------------------------------------------------------------

@_check("ladder_commutators", "fuzzy")
def _ladder_commutators(cfg):
    """[a_a, a_b^+] = delta_ab and N |n1,n2> = (n1+n2)|n1,n2> below the top."""
    space = TruncatedFock(14)
    lad = fuzzy.build_ladder(space)
    keep = space.levels <= space.n_max - 1
    eye = sparse.identity(space.dim, dtype=complex)
    worst = 0.0
    pairs = {(1, 1): (lad.a1, lad.a1_dag), (2, 2): (lad.a2, lad.a2_dag)}
    for (ia, ib), (a, ad) in pairs.items():
        comm = (a @ ad - ad @ a - eye).toarray()
        worst = max(worst, np.abs(comm[np.ix_(keep, keep)]).max())
    cross = (lad.a1 @ lad.a2_dag - lad.a2_dag @ lad.a1).toarray()
    worst = max(worst, np.abs(cross[np.ix_(keep, keep)]).max())
    nvals = lad.num.diagonal().real - space.levels
    worst = max(worst, np.abs(nvals).max())
    return worst, 1e-13, "canonical commutators on unpolluted levels"


@_check("coordinate_algebra", "fuzzy")
def _coordinate_algebra(cfg):
    """[x1,x2] = 2 i lam x3 cyclically, [x_i, r] = 0, r^2 - x^2 = lam^2,
    and the level-1 block of x3 has eigenvalues +-lam."""
    params = Params(lam=0.37, alpha=1.0)
    space = TruncatedFock(12)
    x1, x2, x3, r = fuzzy.coordinates(space, params)
    xs = (x1.mat, x2.mat, x3.mat)
    keep = space.levels <= space.n_max - 1
    worst = 0.0
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        comm = (xs[i] @ xs[j] - xs[j] @ xs[i] - 2j * params.lam * xs[k]).toarray()
        worst = max(worst, np.abs(comm[np.ix_(keep, keep)]).max())
    for x in xs:
        worst = max(worst, np.abs((x @ r.mat - r.mat @ x).toarray()).max())
    casimir = (r.mat @ r.mat - sum(x @ x for x in xs)).toarray()
    target = params.lam ** 2 * np.eye(space.dim)
    worst = max(worst, np.abs((casimir - target)[np.ix_(keep, keep)]).max())
    block = x3.mat.toarray()[space.level_slice(1), space.level_slice(1)]
    eigs = sorted(np.linalg.eigvalsh(block))
    worst = max(worst, abs(eigs[0] + params.lam), abs(eigs[1] - params.lam))
    return worst, 1e-13, "rotationally invariant coordinate relations"


@_check("ball_volume_ratio", "fuzzy")
def _ball_volume(cfg):
    """V_n = 4 pi lam^3 sum (k+1)^2 approaches (4 pi/3) r^3 like lam/r."""
    params = Params(lam=0.5, alpha=1.0)
    worst = 0.0
    if abs(fuzzy.ball_volume(0, params) - 4 * math.pi * params.lam ** 3) > 1e-15:
        worst = 1.0
    if abs(fuzzy.ball_volume(1, params) - 20 * math.pi * params.lam ** 3) > 1e-14:
        worst = 1.0
    n = 1000
    r = params.lam * (n + 1)
    ratio = fuzzy.ball_volume(n, params) / (4 * math.pi / 3 * r ** 3)
    dev = abs(ratio - 1.0)
    worst = max(worst, dev / (2.0 * params.lam / r))
    return worst, 1.0, f"volume ratio deviation {dev:.2e} at n = {n}"


# ---------------------------------------------------------------------------
# angular structure
# ---------------------------------------------------------------------------

@_check("angular_eigenvalues", "angular")
def _angular_eigen(cfg):
    """L^2 Psi_jm = j(j+1) Psi_jm and L3 Psi_jm = m Psi_jm, j <= 3, all m."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(12)
    rvals = np.array([1.0 / (n + 1) for n in range(space.n_max + 1)])
    worst = 0.0
    for j in range(4):
        for m in range(-j, j + 1):
            psi = fuzzy.build_psi_jm(j, m, rvals, space, params)
            scale = max(np.abs(psi.mat.toarray()).max(), 1e-300)
            l2 = fuzzy.angular_momentum_sq_apply(psi)
            l3 = fuzzy.angular_momentum_apply(psi, 3)
            worst = max(worst,
                        np.abs((l2.mat - j * (j + 1) * psi.mat).toarray()).max() / scale,
                        np.abs((l3.mat - m * psi.mat).toarray()).max() / scale)
    return worst, 1e-12, "spin eigenvalues for j <= 3, n_max = 12"


@_check("su2_commutator", "angular")
def _su2_commutator(cfg):
    """(L1 L2 - L2 L1) Psi = i L3 Psi as superoperators."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(10)
    rvals = np.array([math.cos(0.3 * n) for n in range(space.n_max + 1)])
    psi = fuzzy.build_psi_jm(2, 1, rvals, space, params)
    ab = fuzzy.angular_momentum_apply(fuzzy.angular_momentum_apply(psi, 2), 1)
    ba = fuzzy.angular_momentum_apply(fuzzy.angular_momentum_apply(psi, 1), 2)
    rhs = fuzzy.angular_momentum_apply(psi, 3)
    dev = np.abs((ab.mat - ba.mat - 1j * rhs.mat).toarray()).max()
    scale = max(np.abs(rhs.mat.toarray()).max(), 1e-300)
    return dev / scale, 1e-12, "su(2) algebra of the adjoint generators"


# ---------------------------------------------------------------------------
# eigen-equation oracle
# ---------------------------------------------------------------------------

def _eigen_worst(params: Params, n_max: int) -> float:
    worst = 0.0
    for j in (0, 1, 2):
        energies = (spectrum.bound_energies_I if params.alpha > 0
                    else spectrum.bound_energies_II)(params, j, 3)
        space = TruncatedFock(n_max)
        for level in energies:
            seq = spectrum.bound_wavefunction(level, n_max)
            psi = fuzzy.build_psi_jm(j, j, seq, space, params)
            worst = max(worst, fuzzy.relative_eigen_residual(psi, params, level.E))
    return worst


@_check("eigen_residual_attractive", "eigen")
def _eigen_attractive(cfg):
    """||H Psi - E Psi|| / ||Psi|| for branch-I states, alpha = 1, lam = 0.2."""
    worst = _eigen_worst(Params(lam=0.2, alpha=1.0), cfg.n_max)
    return worst, 1e-10, f"j <= 2, n <= j+3, n_max = {cfg.n_max}"


@_check("eigen_residual_repulsive", "eigen")
def _eigen_repulsive(cfg):
    """Same residual for the ultra-high branch, alpha = -1."""
    worst = _eigen_worst(Params(lam=0.2, alpha=-1.0), cfg.n_max)
    return worst, 1e-10, f"branch II, n_max = {cfg.n_max}"


# ---------------------------------------------------------------------------
# second-difference and radial-multiplication identities
# ---------------------------------------------------------------------------

def _symbol_values(coeffs, lam, n_levels):
    out = []
    for n in range(n_levels):
        acc = 0.0
        for k, ck in enumerate(coeffs):
            if k <= n:
                acc += ck * lam ** k * math.factorial(n) / math.factorial(n - k)
        out.append(acc)
    return np.array(out)


def _symbol_derivative(coeffs):
    return [k * coeffs[k] for k in range(1, len(coeffs))]


def _rho_times(coeffs):
    return [0.0] + list(coeffs)


def _pad_add(*polys):
    size = max(len(p) for p in polys)
    out = [0.0] * size
    for p in polys:
        for k, x in enumerate(p):
            out[k] += x
    return out


@_check("second_difference_identity", "appendixA")
def _second_difference(cfg):
    """[a^+,[a, Psi_jm]] equals the assembly of :-lam rho R'' - 2(j+1) lam R':."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(18)
    coeffs = [0.7, -0.3, 0.05, 0.002]
    nl = space.n_max + 1
    worst = 0.0
    for j, m in ((0, 0), (1, 1), (2, 0), (3, -2)):
        psi = fuzzy.build_psi_jm(j, m, _symbol_values(coeffs, params.lam, nl),
                                 space, params)
        dc = fuzzy.double_commutator(psi)
        d1 = _symbol_derivative(coeffs)
        d2 = _symbol_derivative(d1)
        target = _pad_add([-params.lam * x for x in _rho_times(d2)],
                          [-2 * (j + 1) * params.lam * x for x in d1])
        expected = fuzzy.build_psi_jm(j, m, _symbol_values(target, params.lam, nl),
                                      space, params)
        keep = space.levels <= space.n_max - 2
        a = dc.mat.toarray()[np.ix_(keep, keep)]
        b = expected.mat.toarray()[np.ix_(keep, keep)]
        worst = max(worst, np.abs(a - b).max() / max(np.abs(b).max(), 1e-300))
    return worst, 1e-12, "polynomial radial symbols, four (j, m) pairs"


@_check("radial_multiplication_identity", "appendixA")
def _radial_multiplication(cfg):
    """r Psi_jm equals the assembly of :(rho + lam j + lam) R + lam rho R':."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(18)
    coeffs = [0.7, -0.3, 0.05, 0.002]
    nl = space.n_max + 1
    r_op = fuzzy.coordinates(space, params)[3]
    worst = 0.0
    for j, m in ((0, 0), (1, 1), (2, 0), (3, -2)):
        psi = fuzzy.build_psi_jm(j, m, _symbol_values(coeffs, params.lam, nl),
                                 space, params)
        target = _pad_add(_rho_times(coeffs),
                          [params.lam * (j + 1) * x for x in coeffs],
                          [params.lam * x for x in _rho_times(_symbol_derivative(coeffs))])
        expected = fuzzy.build_psi_jm(j, m, _symbol_values(target, params.lam, nl),
                                      space, params)
        keep = space.levels <= space.n_max - 2
        a = (r_op.mat @ psi.mat).toarray()[np.ix_(keep, keep)]
        b = expected.mat.toarray()[np.ix_(keep, keep)]
        worst = max(worst, np.abs(a - b).max() / max(np.abs(b).max(), 1e-300))
    return worst, 1e-12, "radial multiplication in normal-ordered form"


@_check("combinatorial_identity", "appendixA", exact=True)
def _combinatorial(cfg):
    """sum_k C(k+j, j) C(n-k, j) = C(n+j+1, 2j+1), exactly, j <= 6, n <= 40."""
    for j in range(7):
        for n in range(j, 41):
            lhs = sum(math.comb(k + j, j) * math.comb(n - k, j)
                      for k in range(n - j + 1))
            if lhs != math.comb(n + j + 1, 2 * j + 1):
                return 1.0, 0.5, f"failed at j={j}, n={n}"
    return 0.0, 0.5, "exact integer identity"


# ---------------------------------------------------------------------------
# normal-ordering calculus
# ---------------------------------------------------------------------------

@_check("normal_exp_series", "appendixB")
def _normal_exp_series(cfg):
    """:exp(beta rho): closed form vs the ladder-matrix power series."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(20)
    betas = (0.7, -0.4, 0.05, 0.9, -1.0)
    powers = [fuzzy.normal_rho_power_matrix(k, space, params).toarray()
              for k in range(space.n_max + 1)]
    worst = 0.0
    for beta in betas:
        closed = fuzzy.normal_ordered_exp(beta, space, params).mat.toarray()
        series = sum((beta ** k / math.factorial(k)) * powers[k]
                     for k in range(space.n_max + 1))
        worst = max(worst, np.abs(closed - series).max())
    return worst, 1e-13, f"beta grid {betas}, n_max = 20"


@_check("rho_power_exp_series", "appendixB")
def _rho_power_exp(cfg):
    """:rho^n e^(beta rho): and :rho^-n e^(beta rho): closed forms vs series.

    Closed forms: lam^n N!/(N-n)! (1+beta lam)^(N-n) and
    lam^-n N!/(N+n)! (1+beta lam)^(N+n)."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(20)
    beta = 0.7
    levels = np.arange(space.n_max + 1)
    base = 1.0 + params.lam * beta
    worst = 0.0
    for n_pow in (1, 2, 3):
        series = np.zeros((space.dim, space.dim), dtype=complex)
        for k in range(space.n_max + 1 + n_pow):
            series += (beta ** k / math.factorial(k)) * \
                fuzzy.normal_rho_power_matrix(k - n_pow, space, params).toarray()
        closed_neg = [params.lam ** (-n_pow) * float(fuzzy.normal_power_apply(-n_pow, n))
                      * base ** (n + n_pow) for n in levels]
        diag = np.asarray(closed_neg)[space.levels]
        scale = max(np.abs(diag).max(), 1.0)
        worst = max(worst, np.abs(series - np.diag(diag)).max() / scale)

        series = np.zeros((space.dim, space.dim), dtype=complex)
        for k in range(space.n_max + 1):
            series += (beta ** k / math.factorial(k)) * \
                fuzzy.normal_rho_power_matrix(k + n_pow, space, params).toarray()
        closed_pos = [params.lam ** n_pow * float(fuzzy.normal_power_apply(n_pow, n))
                      * base ** (n - n_pow) if n >= n_pow else 0.0 for n in levels]
        diag = np.asarray(closed_pos)[space.levels]
        scale = max(np.abs(diag).max(), 1.0)
        worst = max(worst, np.abs(series - np.diag(diag)).max() / scale)
    return worst, 1e-12, "powers n = 1..3, beta = 0.7, relative to the level scale"


@_check("normal_power_values", "appendixB", exact=True)
def _normal_power_values(cfg):
    """:N^k: ladder matrices against n!/(n-k)! (zero above k = n)."""
    space = TruncatedFock(10)
    worst = 0.0
    for k in range(5):
        mat = fuzzy.normal_power_matrix(k, space).toarray()
        expect = np.diag([float(fuzzy.normal_power_apply(k, int(n)))
                          for n in space.levels])
        worst = max(worst, np.abs(mat - expect).max())
    return worst, 1e-10, "k = 0..4 on n_max = 10"


# ---------------------------------------------------------------------------
# harmonic potential recurrence
# ---------------------------------------------------------------------------

@_check("laplace_potential_exact", "potential", exact=True)
def _laplace_exact(cfg):
    """Recurrence solution equals -q/(lam (N+1)) + q0 exactly for N <= 100."""
    space = TruncatedFock(100)
    params = Params(lam=Fraction(2), alpha=Fraction(3), q0=Fraction(1, 7))
    vals = fuzzy.laplace_potential(space, params, exact=True)
    for n, v in enumerate(vals):
        closed = -Fraction(3) / (Fraction(2) * (n + 1)) + Fraction(1, 7)
        if v != closed:
            return 1.0, 0.5, f"mismatch at N = {n}"
    return 0.0, 0.5, "exact rational recurrence, N <= 100"


@_check("potential_harmonicity", "potential")
def _potential_harmonicity(cfg):
    """Delta_lam V = 0 on unpolluted levels away from the source.

    Level 0 carries the point charge: there the Laplacian equals q / lam^3
    exactly, the fuzzy remnant of the delta source, so the harmonicity
    statement starts at level 1.
    """
    params = Params(lam=0.4, alpha=1.2)
    space = TruncatedFock(20)
    v = fuzzy.laplace_potential(space, params)
    psi = fuzzy.build_psi_jm(0, 0, v, space, params)
    lap = fuzzy.laplacian_apply(psi, params)
    keep = (space.levels <= lap.trusted_level_max()) & (space.levels >= 1)
    dev = np.abs(lap.mat.toarray()[np.ix_(keep, keep)]).max()
    source = lap.mat[0, 0].real
    dev = max(dev, abs(source - params.alpha / params.lam ** 3))
    return dev, 1e-12, "harmonic away from the level-0 source"


# ---------------------------------------------------------------------------
# radial closed forms vs level recurrence
# ---------------------------------------------------------------------------

@_check("closed_vs_recurrence", "radial")
def _closed_vs_recurrence(cfg):
    """Closed forms of all five regimes against the matrix recurrence."""
    params = Params(lam=0.5, alpha=1.3)
    n_max = min(cfg.n_max, 40)
    energies = {
        "NegativeE": -0.73,
        "LowScattering": 0.37 * params.e_crit,
        "EtaZero": 0.0,
        "EtaOne": params.e_crit,
        "UltraHigh": 1.9 * params.e_crit,
    }
    worst = 0.0
    for j in range(4):
        for name, energy in energies.items():
            seq = radial.radial_closed_form(j, energy, params, n_max)
            worst = max(worst, radial.recurrence_residuals(seq, energy, params).max())
            rec = radial.radial_from_recurrence(j, energy, params, n_max,
                                                seed=seq.values[0])
            agree = np.max(np.abs(rec.values - seq.values)
                           / np.maximum(np.abs(seq.values), 1e-300))
            worst = max(worst, agree)
    return worst, 1e-11, f"five regimes, j <= 3, n_max = {n_max}"


@_check("branch_equality_float", "radial")
def _branch_equality_float(cfg):
    """Plus and minus sign branches produce identical sequences (floats)."""
    params = Params(lam=0.5, alpha=1.3)
    worst = 0.0
    for energy in (-0.73, 0.37 * params.e_crit, 1.9 * params.e_crit):
        a = radial.radial_closed_form(1, energy, params, 25, sign="plus").values
        b = radial.radial_closed_form(1, energy, params, 25, sign="minus").values
        worst = max(worst, np.max(np.abs(a - b) / np.maximum(np.abs(a), 1e-300)))
    return worst, 1e-12, "Euler-identity redundancy"


@_check("branch_equality_exact", "radial", exact=True)
def _branch_equality_exact(cfg):
    """Sign-branch equality in exact rational arithmetic (eta = 5/4)."""
    lam = Fraction(1, 2)
    energy = 2 * Fraction(25, 16) / lam ** 2
    params = Params(lam=lam, alpha=Fraction(13, 10))
    for j in (0, 1):
        va = radial.radial_closed_form(j, energy, params, 30, sign="plus",
                                       exact=True).values
        vb = radial.radial_closed_form(j, energy, params, 30, sign="minus",
                                       exact=True).values
        if va != vb:
            return 1.0, 0.5, f"branch mismatch at j = {j}"
    return 0.0, 0.5, "exact equality through N = 30"


@_check("commutative_radial_limit", "radial")
def _commutative_limit(cfg):
    """Fuzzy radial values approach the ordinary Coulomb wave as O(lam)."""
    devs = []
    lams = (1e-1, 1e-2, 1e-3)
    for lam in lams:
        params = Params(lam=lam, alpha=1.0)
        dev = 0.0
        for r in (0.5, 1.0, 2.0):
            n = round(r / lam)
            seq = radial.radial_closed_form(0, 1.0, params, n)
            ref = radial.commutative_radial(0, 1.0, 1.0, lam * n)
            dev = max(dev, abs(seq.values[n] - ref))
        devs.append(dev)
    orders = [math.log10(devs[i] / devs[i + 1]) for i in range(len(devs) - 1)]
    ok = all(0.8 <= o <= 1.2 for o in orders)
    return (0.0 if ok else 1.0), 0.5, f"observed orders {[f'{o:.3f}' for o in orders]}"


# ---------------------------------------------------------------------------
# bound-state spectra
# ---------------------------------------------------------------------------

@_check("termination_roots_match", "spectrum")
def _termination_roots(cfg):
    """Root-found pole energies against the closed forms, 9 combinations."""
    worst = 0.0
    for alpha, lam in ((1.0, 0.2), (0.7, 0.45), (-1.0, 0.2)):
        params = Params(lam=lam, alpha=alpha)
        closed = (spectrum.bound_energies_I if alpha > 0
                  else spectrum.bound_energies_II)(params, 0, 3)
        roots = spectrum.termination_roots(0, params, 3)
        for c, r in zip(closed, roots):
            worst = max(worst, abs(r.E - c.E) / abs(c.E))
    return worst, 1e-12, "three (alpha, lam) pairs, three levels each"


@_check("spectral_mirror_sum", "spectrum")
def _spectral_mirror(cfg):
    """E_I + E_II = 2 / lam^2 at matched (|alpha|, n)."""
    lam = 0.2
    worst = 0.0
    one = spectrum.bound_energies_I(Params(lam=lam, alpha=1.0), 0, 4)
    two = spectrum.bound_energies_II(Params(lam=lam, alpha=-1.0), 0, 4)
    e_crit = 2.0 / lam ** 2
    for a, b in zip(one, two):
        worst = max(worst, abs(a.E + b.E - e_crit) / e_crit)
    return worst, 1e-15, "shared square root makes the sum exact"


@_check("bohr_expansion", "spectrum")
def _bohr_expansion(cfg):
    """Fitted lam^2 coefficient of E_I - E_Bohr against alpha^4 / (8 n^4)."""
    alpha = 1.0
    worst = 0.0
    for n, j in ((1, 0), (2, 0), (3, 2)):
        lams = (1e-1, 1e-2, 1e-3)
        shifts = []
        for lam in lams:
            level = spectrum.bound_energies_I(Params(lam=lam, alpha=alpha), j, n - j)[-1]
            shifts.append(level.E + alpha ** 2 / (2 * n ** 2))
        fit = sum(s * l ** 2 for s, l in zip(shifts, lams)) / sum(l ** 4 for l in lams)
        target = alpha ** 4 / (8 * n ** 4)
        worst = max(worst, abs(fit - target) / target)
    return worst, 1e-2, "second-order fuzziness shift of the Bohr levels"


@_check("mirror_exact", "mirror", exact=True)
def _mirror_exact(cfg):
    """R_II(-alpha) = (-1)^N R_I(alpha) exactly for kappa = 3/4, N <= 40."""
    kappa = Fraction(3, 4)
    for j in range(3):
        for n in range(j + 1, 5):
            res = spectrum.mirror_check(n, j, kappa, 40)
            if res.max_deviation != 0:
                return 1.0, 0.5, f"nonzero deviation at n={n}, j={j}"
    return 0.0, 0.5, "rational arithmetic, zero deviation"


@_check("mirror_float", "mirror")
def _mirror_float(cfg):
    """Same mirror identity on the float path, kappa = 0.37."""
    worst = 0.0
    for j in range(3):
        for n in range(j + 1, 5):
            worst = max(worst, spectrum.mirror_check(n, j, 0.37, 40).max_deviation)
    return worst, 1e-12, "float path"


@_check("scattering_mirror", "mirror")
def _scattering_mirror(cfg):
    """Scattering mirror across the band midpoint, eps = 0.3 / lam^2."""
    params = Params(lam=0.5, alpha=1.1)
    eps = 0.3 / params.lam ** 2
    worst = max(scattering.scattering_mirror_check(j, eps, params, 40)
                for j in range(3))
    (e1, p1), (e2, p2) = scattering.mirror_momenta(eps, params)
    lhs = (p1 + 1j * params.lam * e1) / (p1 - 1j * params.lam * e1)
    rhs = -(p2 + 1j * params.lam * e2) / (p2 - 1j * params.lam * e2)
    worst = max(worst, abs(lhs - rhs))
    return worst, 1e-11, "level-wise sign-flip equality and prefactor identity"


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

@_check("trace_vs_reduced", "norms")
def _trace_vs_reduced(cfg):
    """Operator trace norm against the reduced radial sum, 10 states."""
    params = Params(lam=0.3, alpha=1.0)
    space = TruncatedFock(16)
    nl = space.n_max + 1
    cases = [(0, 0), (1, 1), (1, 0), (2, 2), (2, 0), (2, -1), (3, 3), (3, 1),
             (4, 0), (4, -4)]
    worst = 0.0
    for idx, (j, m) in enumerate(cases):
        rvals = np.array([1.0 / (n + 1) + 0.1 * math.sin(n + idx) for n in range(nl)])
        psi = fuzzy.build_psi_jm(j, m, rvals, space, params)
        hs = fuzzy.hs_norm_sq(psi, params).value
        reduced = spectrum.radial_norm_sq(j, rvals[: nl - j], params).value
        worst = max(worst, abs(hs - reduced) / reduced)
    return worst, 1e-12, "10 assorted (j, m) wave operators"


@_check("norm_branch_equality", "norms")
def _norm_branch_equality(cfg):
    """Matched branch-I/II bound states carry the same norm."""
    params = Params(lam=0.25, alpha=1.0)
    worst = 0.0
    for j, n in ((0, 1), (0, 2), (1, 2)):
        kappa = params.lam * params.alpha / n
        one = spectrum.bound_radial_values("I", n, j, kappa, 80)
        two = spectrum.bound_radial_values("II", n, j, -kappa, 80)
        norm_one = spectrum.radial_norm_sq(j, one, params)
        norm_two = spectrum.radial_norm_sq(j, two, params)
        worst = max(worst, abs(norm_one.value - norm_two.value) / norm_one.value)
    return worst, 1e-12, "norm equality across the mirror"


# ---------------------------------------------------------------------------
# S-matrix
# ---------------------------------------------------------------------------

@_check("unitarity", "smatrix")
def _unitarity(cfg):
    """| |S| - 1 | on a 100-point physical grid for j <= 4."""
    params = Params(lam=0.4, alpha=1.0)
    grid = np.linspace(0.02, 0.98, 100) * params.e_crit
    worst = 0.0
    for j in range(5):
        for energy in grid:
            worst = max(worst, abs(abs(scattering.smatrix_nc(j, energy, params).S) - 1))
    return worst, 1e-12, "physical-band unitarity"


@_check("pole_positions", "smatrix")
def _pole_positions(cfg):
    """S-matrix pole flags fire exactly at the closed-form energies."""
    worst = 0.0
    for alpha in (1.0, -1.0):
        params = Params(lam=0.2, alpha=alpha)
        closed = (spectrum.bound_energies_I if alpha > 0
                  else spectrum.bound_energies_II)(params, 1, 2)
        roots = spectrum.termination_roots(1, params, 2)
        for c, r in zip(closed, roots):
            worst = max(worst, abs(r.E - c.E) / abs(c.E))
            try:
                scattering.smatrix_nc(1, c.E, params)
                return 1.0, 1e-12, f"pole not flagged at E = {c.E:.6f}"
            except scattering.SMatrixPole:
                pass
    return worst, 1e-12, "pole flags and root positions"


@_check("phase_commutative_order", "smatrix")
def _phase_order(cfg):
    """| delta_nc - delta_qm | shrinks as lam^2 (fitted order in [1.8, 2.2])."""
    energy, alpha = 1.0, 1.0
    worst_order_dev = 0.0
    for j in (0, 2, 4):
        ref = scattering.smatrix_qm(j, energy, alpha).phase_shift
        devs = [abs(scattering.smatrix_nc(j, energy, Params(lam=lam, alpha=alpha)).phase_shift - ref)
                for lam in (1e-1, 1e-2, 1e-3)]
        orders = [math.log10(devs[i] / devs[i + 1]) for i in range(2)]
        for order in orders:
            if not 1.8 <= order <= 2.2:
                return 1.0, 0.5, f"order {order:.3f} outside [1.8, 2.2] at j = {j}"
            worst_order_dev = max(worst_order_dev, abs(order - 2.0))
    return worst_order_dev, 0.2, "fitted convergence order of the phase shifts"


@_check("edge_consistency", "smatrix")
def _edge_consistency(cfg):
    """Sweeping across 1/lam^2 flips the edge tag at equal p."""
    params = Params(lam=0.4, alpha=1.0)
    mid = 1.0 / params.lam ** 2
    worst = 0.0
    for energy in (0.2 * mid, 0.6 * mid, 0.95 * mid):
        lo = scattering.p_of_E(energy, params)
        hi = scattering.p_of_E(2 * mid - energy, params)
        if lo.edge != scattering.EDGE_UPPER or hi.edge != scattering.EDGE_LOWER:
            return 1.0, 0.5, "edge tags wrong"
        worst = max(worst, abs(lo.p - hi.p))
    return worst, 1e-12, "mirror energies share p with opposite edges"


# ---------------------------------------------------------------------------
# large-radius decomposition
# ---------------------------------------------------------------------------

@_check("decomposition_closure", "appendixC")
def _decomposition_closure(cfg):
    """term_in + term_out equals the direct radial value, 1e-8 relative."""
    lam = 1.0
    worst = 0.0
    for lam_p in (0.6, 0.75, 0.9):
        energy = (1.0 - math.sqrt(1.0 - lam_p ** 2)) / lam ** 2
        params = Params(lam=lam, alpha=1.0)
        for j in (0, 1, 2):
            direct = radial.scattering_values(j, lam_p / lam, energy,
                                              params.alpha, lam, 40)
            for level in (20, 30, 40):
                dec = scattering.asymptotic_decomposition(j, energy, params, level)
                total = dec.term_in + dec.term_out
                worst = max(worst,
                            abs(total - direct[level]) / abs(direct[level]))
    return worst, 1e-8, "two-path closure, lam p in {0.6, 0.75, 0.9}"


@_check("decomposition_conjugacy", "appendixC")
def _decomposition_conjugacy(cfg):
    """The two decomposition terms are complex conjugates for physical E."""
    lam = 1.0
    params = Params(lam=lam, alpha=1.0)
    energy = (1.0 - math.sqrt(1.0 - 0.75 ** 2)) / lam ** 2
    worst = 0.0
    for j in (0, 1):
        for level in (10, 25):
            dec = scattering.asymptotic_decomposition(j, energy, params, level)
            worst = max(worst, abs(dec.term_in - dec.term_out.conjugate())
                        / max(abs(dec.term_out), 1e-300))
    return worst, 1e-10, "in/out conjugate pair"


@_check("prefactor_bernoulli", "appendixC")
def _prefactor_bernoulli(cfg):
    """Bernoulli-series prefactor against the exact Gamma ratio."""
    lam = 1.0
    energy = (1.0 - math.sqrt(1.0 - 0.5 ** 2)) / lam ** 2
    params = Params(lam=lam, alpha=1.0)
    worst = 0.0
    for conjugate in (False, True):
        forms = scattering.prefactor_via_lngamma(0, energy, params, 50, terms=10,
                                                 conjugate=conjugate)
        worst = max(worst, abs(forms.bernoulli_form - forms.gamma_form)
                    / abs(forms.gamma_form))
    return worst, 1e-8, "n = 50, j = 0, lam p = 0.5"


@_check("smatrix_from_prefactors", "appendixC")
def _smatrix_from_prefactors(cfg):
    """S-matrix recovered from the in/out prefactor ratio."""
    lam = 1.0
    energy = (1.0 - math.sqrt(1.0 - 0.75 ** 2)) / lam ** 2
    params = Params(lam=lam, alpha=1.0)
    worst = 0.0
    for j in (0, 1, 2):
        s_direct = scattering.smatrix_nc(j, energy, params).S
        s_est = scattering.smatrix_from_decomposition(j, energy, params)
        worst = max(worst, abs(s_est - s_direct))
    return worst, 1e-10, "kinematical-factor bookkeeping"


# ---------------------------------------------------------------------------
# self-energy
# ---------------------------------------------------------------------------

@_check("self_energy_sum", "selfenergy")
def _self_energy_sum(cfg):
    """Level sum against the telescoping value and the literal matrix trace."""
    params = Params(lam=1.0, alpha=1.0)
    worst = 0.0
    # partial-fraction telescoping: sum_{n=1..M} 1/(n(n+2)) = 3/4 - tail
    m_top = 400
    direct = sum(1.0 / (n * (n + 2)) for n in range(1, m_top + 1))
    tele = 0.75 - 0.5 * (1.0 / (m_top + 1) + 1.0 / (m_top + 2))
    worst = max(worst, abs(direct - tele))
    # literal matrix-trace oracle at small truncation
    space = TruncatedFock(30)
    x_ops = fuzzy.coordinates(space, params)[:3]
    n = space.levels.astype(float)
    g = np.where(n >= 1, 1.0 / np.where(n >= 1, n * (n + 1) * (n + 2), 1.0), 0.0)
    g_diag = sparse.diags(g.astype(complex)).tocsr()
    weight = sparse.diags((space.levels + 1.0).astype(complex)).tocsr()
    acc = 0.0
    for x in x_ops:
        e_mat = (params.alpha / params.lam ** 3) * (x.mat @ g_diag)
        acc += (weight @ e_mat.conjugate().transpose() @ e_mat).diagonal().sum().real
    matrix_value = 0.5 * params.lam ** 3 * acc
    worst = max(worst, abs(matrix_value - spectrum.self_energy_trace(30, params).value))
    # truncated trace at n_max = 2000 against (3/8) q^2 / lam
    trace = spectrum.self_energy_trace(2000, params)
    worst_big = abs(trace.value - trace.target) / trace.target
    ok = worst < 1e-12 and worst_big < 1e-3
    return (worst if not ok else max(worst, 0.0)), 1e-12, \
        f"matrix oracle + telescoping; n_max=2000 rel dev {worst_big:.2e} (tol 1e-3)" \
        if ok else f"big-sum rel dev {worst_big:.2e}"


@_check("lambda0_scale", "selfenergy")
def _lambda0_scale(cfg):
    """Fuzziness scale within 1 percent of 1.06e-15 m; ratio to r0 is 3/8."""
    est = spectrum.lambda0_estimate()
    dev = abs(est.lambda0_m - 1.06e-15) / 1.06e-15
    if est.lambda0_over_r0 != 0.375:
        return 1.0, 1e-2, "lambda0 / r0 must be exactly 3/8"
    return dev, 1e-2, f"lambda0 = {est.lambda0_m:.4e} m, correction scale " \
                      f"{est.correction_scale:.2e}"


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def run_checks(cfg: VerifyConfig | None = None,
               suites_filter: list[str] | None = None) -> list[CheckResult]:
    """Run the registered checks (optionally a subset of suites) and return
    their results in registry order."""
    cfg = cfg or VerifyConfig()
    results = []
    for name, suite, exact, fn in _REGISTRY:
        if suites_filter and suite not in suites_filter:
            continue
        if cfg.precision == "rational" and not exact:
            continue
        start = time.perf_counter()
        try:
            residual, tolerance, detail = fn(cfg)
            passed = bool(residual < tolerance)
        except Exception as exc:  # a crashed check is a failed check
            residual, tolerance = math.inf, 0.0
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, suite, passed, float(residual),
                                   float(tolerance),
                                   time.perf_counter() - start, detail))
    return results
