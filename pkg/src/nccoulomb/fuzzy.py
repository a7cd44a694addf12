"""Truncated two-mode Fock realization of the fuzzy configuration space.

Everything here is a dense-in-spirit, sparse-in-storage matrix model: the
two bosonic modes act on the basis |n1, n2> with n1 + n2 <= n_max, the
coordinates are x_j = lam * a^+ sigma_j a, the radial distance is
r = lam (N + 1), and wave operators are level-preserving matrices carrying
the same number of creation and annihilation operators.  These matrices are
the brute-force oracle against which every closed-form result of the solver
is validated.

Truncation policy: creation out of the top level is silently dropped by the
matrix representation, so each operator carries a ``polluted`` counter, the
number of top levels whose matrix elements must not be trusted.  Oracle
assertions exclude those levels, which makes them exact instead of
approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy import sparse


@dataclass(frozen=True)
class Params:
    """Physical inputs: fuzziness length ``lam``, coupling ``alpha`` (the
    Coulomb strength q in hbar = m = 1 units), and the additive potential
    constant ``q0`` (zero for a potential vanishing at infinity)."""

    lam: float
    alpha: float
    q0: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lam must be positive")

    @property
    def e_crit(self):
        """Upper edge 2 / lam^2 of the scattering band."""
        return 2.0 / (self.lam * self.lam)


class TruncatedFock:
    """Basis |n1, n2> with n1 + n2 <= n_max, grouped by total level.

    State (n1, n2) at level n = n1 + n2 has index n (n+1)/2 + n1, so the
    level-n block is contiguous with dimension n + 1.
    """

    def __init__(self, n_max: int):
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        self.n_max = n_max
        self.dim = (n_max + 1) * (n_max + 2) // 2
        self.levels = np.repeat(np.arange(n_max + 1), np.arange(1, n_max + 2))

    def index(self, n1: int, n2: int) -> int:
        n = n1 + n2
        if n1 < 0 or n2 < 0 or n > self.n_max:
            raise IndexError(f"state ({n1}, {n2}) outside the truncated basis")
        return n * (n + 1) // 2 + n1

    def state(self, idx: int) -> tuple[int, int]:
        n = int(self.levels[idx])
        n1 = idx - n * (n + 1) // 2
        return n1, n - n1

    def level_slice(self, n: int) -> slice:
        off = n * (n + 1) // 2
        return slice(off, off + n + 1)


@dataclass
class OperatorMatrix:
    """A dense complex matrix over a TruncatedFock basis plus metadata.

    ``polluted`` counts top levels whose entries are corrupted by the
    truncation; ``labels`` optionally records angular quantum numbers
    (j, m) for assembled wave operators.
    """

    space: TruncatedFock
    mat: sparse.csr_matrix
    polluted: int = 0
    labels: tuple[int, int] | None = None

    def trusted_level_max(self) -> int:
        return self.space.n_max - self.polluted

    def toarray(self) -> np.ndarray:
        return self.mat.toarray()


class Ladder(NamedTuple):
    a1: sparse.csr_matrix
    a2: sparse.csr_matrix
    a1_dag: sparse.csr_matrix
    a2_dag: sparse.csr_matrix
    num: sparse.csr_matrix


def build_ladder(space: TruncatedFock) -> Ladder:
    """Annihilation/creation matrices and the number operator.

    <n1-1, n2| a1 |n1, n2> = sqrt(n1) and its three companions; creation
    out of the top level is truncated to zero, which is why consumers flag
    one polluted level per bare creation factor.
    """
    rows1, cols1, vals1 = [], [], []
    rows2, cols2, vals2 = [], [], []
    for idx in range(space.dim):
        n1, n2 = space.state(idx)
        if n1 >= 1:
            rows1.append(space.index(n1 - 1, n2))
            cols1.append(idx)
            vals1.append(math.sqrt(n1))
        if n2 >= 1:
            rows2.append(space.index(n1, n2 - 1))
            cols2.append(idx)
            vals2.append(math.sqrt(n2))
    shape = (space.dim, space.dim)
    a1 = sparse.csr_matrix((vals1, (rows1, cols1)), shape=shape, dtype=complex)
    a2 = sparse.csr_matrix((vals2, (rows2, cols2)), shape=shape, dtype=complex)
    num = sparse.diags(space.levels.astype(complex)).tocsr()
    return Ladder(a1, a2, a1.conjugate().transpose().tocsr(),
                  a2.conjugate().transpose().tocsr(), num)


def _level_diag(space: TruncatedFock, level_values) -> sparse.csr_matrix:
    vals = np.asarray(level_values, dtype=complex)
    return sparse.diags(vals[space.levels]).tocsr()


def coordinates(space: TruncatedFock, params: Params):
    """Coordinate operators x_j = lam a^+ sigma_j a and r = lam (N + 1).

    All four preserve the total level, so their matrix elements are exact
    on the whole truncated basis.
    """
    lad = build_ladder(space)
    lam = params.lam
    up = lad.a1_dag @ lad.a2
    dn = lad.a2_dag @ lad.a1
    x1 = OperatorMatrix(space, (lam * (up + dn)).tocsr())
    x2 = OperatorMatrix(space, (-1j * lam * (up - dn)).tocsr())
    x3 = OperatorMatrix(space, (lam * (lad.a1_dag @ lad.a1 - lad.a2_dag @ lad.a2)).tocsr())
    r = OperatorMatrix(space, _level_diag(space, lam * (np.arange(space.n_max + 1) + 1.0)))
    return x1, x2, x3, r


def _spin_generator(space: TruncatedFock, axis: int) -> sparse.csr_matrix:
    lad = build_ladder(space)
    if axis == 1:
        return (lad.a1_dag @ lad.a2 + lad.a2_dag @ lad.a1).tocsr()
    if axis == 2:
        return (-1j * (lad.a1_dag @ lad.a2 - lad.a2_dag @ lad.a1)).tocsr()
    if axis == 3:
        return (lad.a1_dag @ lad.a1 - lad.a2_dag @ lad.a2).tocsr()
    raise ValueError("axis must be 1, 2 or 3")


def angular_momentum_apply(psi: OperatorMatrix, axis: int) -> OperatorMatrix:
    """Adjoint action L_j Psi = [a^+ sigma_j a, Psi] / 2."""
    g = _spin_generator(psi.space, axis)
    mat = 0.5 * (g @ psi.mat - psi.mat @ g)
    return OperatorMatrix(psi.space, mat.tocsr(), psi.polluted, psi.labels)


def angular_momentum_sq_apply(psi: OperatorMatrix) -> OperatorMatrix:
    """L^2 Psi = sum_j L_j (L_j Psi)."""
    out = None
    for axis in (1, 2, 3):
        step = angular_momentum_apply(angular_momentum_apply(psi, axis), axis)
        out = step.mat if out is None else out + step.mat
    return OperatorMatrix(psi.space, out.tocsr(), psi.polluted, psi.labels)


def _monomial(base: sparse.csr_matrix, power: int, dim: int) -> sparse.csr_matrix:
    out = sparse.identity(dim, dtype=complex, format="csr")
    for _ in range(power):
        out = (out @ base).tocsr()
    return out


def build_psi_jm(j: int, m: int, radial, space: TruncatedFock,
                 params: Params) -> OperatorMatrix:
    """Assemble the wave operator with angular labels (j, m) and the given
    radial level values.

    Psi_jm = lam^j C(2j, j-m)^(-1/2)
             sum (a1^+)^m1 (a2^+)^m2 / (m1! m2!) R(rho)
                   a1^n1 (-a2)^n2 / (n1! n2!),
    summed over m1 + m2 = n1 + n2 = j with m1 - m2 - n1 + n2 = 2 m.  The
    radial factor is the level-diagonal operator taking value R(n) on level
    n; the assembled operator annihilates every level below j.  The bare
    factorial weights give multiplet norms proportional to C(2j, j-m); the
    binomial root rescales the components so the weighted Hilbert-Schmidt
    norm is the same for every m, as the reduced radial norm formula
    presumes.
    """
    if j < 0:
        raise ValueError("need j >= 0")
    if abs(m) > j:
        raise ValueError("need |m| <= j")
    values = np.asarray(getattr(radial, "values", radial), dtype=complex)
    if len(values) < space.n_max + 1:
        raise ValueError("radial values must cover levels 0..n_max")
    r_diag = _level_diag(space, values[: space.n_max + 1])
    lad = build_ladder(space)
    total = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for m1 in range(max(0, m), min(j, j + m) + 1):
        m2 = j - m1
        n1 = m1 - m
        n2 = j - n1
        left = _monomial(lad.a1_dag, m1, space.dim) @ _monomial(lad.a2_dag, m2, space.dim)
        right = _monomial(lad.a1, n1, space.dim) @ _monomial(lad.a2, n2, space.dim)
        coeff = (-1.0) ** n2 / (
            math.factorial(m1) * math.factorial(m2)
            * math.factorial(n1) * math.factorial(n2)
        )
        total = total + coeff * (left @ r_diag @ right)
    scale = params.lam ** j / math.sqrt(math.comb(2 * j, j - m))
    return OperatorMatrix(space, (scale * total).tocsr(), 0, (j, m))


def double_commutator(psi: OperatorMatrix) -> OperatorMatrix:
    """sum_alpha [a_alpha^+, [a_alpha, Psi]], flagged two polluted levels."""
    lad = build_ladder(psi.space)
    acc = None
    for a, ad in ((lad.a1, lad.a1_dag), (lad.a2, lad.a2_dag)):
        inner = a @ psi.mat - psi.mat @ a
        term = ad @ inner - inner @ ad
        acc = term if acc is None else acc + term
    return OperatorMatrix(psi.space, acc.tocsr(), psi.polluted + 2, psi.labels)


def laplacian_apply(psi: OperatorMatrix, params: Params) -> OperatorMatrix:
    """Fuzzy Laplacian: -(1 / (lam^2 (N+1))) [a^+, [a, Psi]]."""
    dc = double_commutator(psi)
    n = np.arange(psi.space.n_max + 1)
    weight = _level_diag(psi.space, -1.0 / (params.lam ** 2 * (n + 1.0)))
    return OperatorMatrix(psi.space, (weight @ dc.mat).tocsr(), dc.polluted, psi.labels)


def hamiltonian_apply(psi: OperatorMatrix, params: Params) -> OperatorMatrix:
    """Coulomb Hamiltonian action (hbar = m = 1):

    H Psi = (1 / (2 lam r)) [a^+, [a, Psi]] - (alpha / r) Psi,
    with r = lam (N + 1) acting as the level diagonal.
    """
    dc = double_commutator(psi)
    n = np.arange(psi.space.n_max + 1)
    inv_r = 1.0 / (params.lam * (n + 1.0))
    kinetic = _level_diag(psi.space, inv_r / (2.0 * params.lam)) @ dc.mat
    potential = _level_diag(psi.space, params.alpha * inv_r) @ psi.mat
    return OperatorMatrix(psi.space, (kinetic - potential).tocsr(), dc.polluted, psi.labels)


class HSNorm(NamedTuple):
    value: float
    last_level: float


def hs_norm_sq(psi: OperatorMatrix, params: Params, max_level: int | None = None) -> HSNorm:
    """Weighted Hilbert-Schmidt norm 4 pi lam^3 Tr[(N+1) Psi^+ Psi].

    Restricted to levels <= max_level when given (used to exclude polluted
    levels); the contribution of the highest included level is returned as
    a truncation-tail indicator.
    """
    space = psi.space
    top = space.n_max if max_level is None else max_level
    col_levels = space.levels
    col_sums = np.asarray(psi.mat.multiply(psi.mat.conjugate()).sum(axis=0)).ravel().real
    keep = col_levels <= top
    weights = (col_levels + 1.0) * keep
    pref = 4.0 * math.pi * params.lam ** 3
    value = pref * float(np.dot(weights, col_sums))
    last = pref * float(np.dot(weights * (col_levels == top), col_sums))
    return HSNorm(value, last)


def relative_eigen_residual(psi: OperatorMatrix, params: Params, energy: float) -> float:
    """|| H Psi - E Psi || / || Psi || on pollution-excluded levels."""
    h = hamiltonian_apply(psi, params)
    resid = OperatorMatrix(psi.space, (h.mat - energy * psi.mat).tocsr(), h.polluted)
    cut = resid.trusted_level_max()
    num = hs_norm_sq(resid, params, max_level=cut).value
    den = hs_norm_sq(psi, params, max_level=cut).value
    return math.sqrt(num / den)


def normal_power_apply(k: int, n: int):
    """Eigenvalue of the normal-ordered power :N^k: on level n.

    For k >= 0 this is n! / (n-k)! (zero when k > n); for k < 0 the fuzzy
    inverse-power convention :N^-|k|: = N! / (N+|k|)! applies.
    """
    if int(k) != k or int(n) != n or n < 0:
        raise ValueError("k must be an integer and n a non-negative integer")
    k = int(k)
    n = int(n)
    if k >= 0:
        if k > n:
            return 0
        out = 1
        for i in range(k):
            out *= n - i
        return out
    out = Fraction(1)
    for i in range(1, -k + 1):
        out /= n + i
    return out


def normal_power_matrix(k: int, space: TruncatedFock) -> sparse.csr_matrix:
    """Matrix of :N^k: (k >= 0) built literally from ladder operators:

    :N^k: = sum_i C(k, i) (a1^+)^i (a2^+)^{k-i} a1^i a2^{k-i}.
    All intermediate states stay at or below the input level, so the
    result is exact on the whole truncated basis.
    """
    if k < 0:
        raise ValueError("ladder construction requires k >= 0")
    lad = build_ladder(space)
    total = sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for i in range(k + 1):
        left = _monomial(lad.a1_dag, i, space.dim) @ _monomial(lad.a2_dag, k - i, space.dim)
        right = _monomial(lad.a1, i, space.dim) @ _monomial(lad.a2, k - i, space.dim)
        total = total + math.comb(k, i) * (left @ right)
    return total.tocsr()


def normal_rho_power_matrix(k: int, space: TruncatedFock, params: Params) -> sparse.csr_matrix:
    """Matrix of :rho^k: with rho = lam N.

    Positive powers come from the ladder construction; negative powers are
    the diagonal lam^k N! / (N + |k|)! convention of the normal-ordering
    calculus (a definition, not derivable from ladders).
    """
    if k >= 0:
        return (params.lam ** k) * normal_power_matrix(k, space)
    vals = [params.lam ** k * float(normal_power_apply(k, n))
            for n in range(space.n_max + 1)]
    return _level_diag(space, vals)


def normal_ordered_exp(beta, space: TruncatedFock, params: Params) -> OperatorMatrix:
    """Closed form of :exp(beta rho):, the level diagonal (1 + lam beta)^N."""
    base = 1.0 + params.lam * complex(beta)
    vals = [base ** n for n in range(space.n_max + 1)]
    return OperatorMatrix(space, _level_diag(space, vals))


def ball_volume(n: int, params: Params) -> float:
    """Volume 4 pi lam^3 sum_{k<=n} (k+1)^2 of the fuzzy ball of radius
    lam (n + 1); the ratio to (4 pi / 3) r^3 tends to one."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return 4.0 * math.pi * params.lam ** 3 * sum((k + 1) ** 2 for k in range(n + 1))


def laplace_potential(space: TruncatedFock, params: Params, exact: bool = False):
    """Rotationally invariant solution of the fuzzy Laplace equation.

    Solves the level recurrence
        (N+2) V(N+1) - (N+1) V(N) = (N+1) V(N) - N V(N-1)
    with V(0) = q0 - q/lam, which telescopes to -q / (lam (N+1)) + q0.
    With ``exact=True`` the recurrence runs in Fraction arithmetic (the
    Params fields must then be rational-valued).
    """
    q, lam, q0 = params.alpha, params.lam, params.q0
    if exact:
        q, lam, q0 = Fraction(q), Fraction(lam), Fraction(q0)
    v_prev = q0 - q / lam
    values = [v_prev]
    if space.n_max >= 1:
        v_cur = (q0 + v_prev) / 2
        values.append(v_cur)
        for n in range(1, space.n_max):
            v_next = (2 * (n + 1) * v_cur - n * v_prev) / (n + 2)
            values.append(v_next)
            v_prev, v_cur = v_cur, v_next
    return values if exact else np.asarray(values, dtype=float)
