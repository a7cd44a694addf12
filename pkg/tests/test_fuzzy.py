"""Fuzzy-space operator tests: ladders, coordinates, angular momentum, the
Laplacian/Hamiltonian, norms, and the normal-ordering calculus, all against
literal matrix constructions."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import sparse

from nccoulomb import spectrum
from nccoulomb.fuzzy import (
    Params,
    TruncatedFock,
    angular_momentum_apply,
    angular_momentum_sq_apply,
    ball_volume,
    build_ladder,
    build_psi_jm,
    coordinates,
    double_commutator,
    hamiltonian_apply,
    hs_norm_sq,
    laplace_potential,
    laplacian_apply,
    normal_ordered_exp,
    normal_power_apply,
    normal_power_matrix,
    normal_rho_power_matrix,
    relative_eigen_residual,
)

PARAMS = Params(lam=0.3, alpha=1.0)


def test_params_validation():
    with pytest.raises(ValueError):
        Params(lam=0.0, alpha=1.0)
    assert Params(lam=0.5, alpha=2.0).q0 == 0.0


class TestBasis:
    def test_dimension_and_levels(self):
        space = TruncatedFock(7)
        assert space.dim == 8 * 9 // 2
        assert space.levels[space.index(3, 2)] == 5
        n1, n2 = space.state(space.index(3, 2))
        assert (n1, n2) == (3, 2)
        block = space.level_slice(4)
        assert block.stop - block.start == 5

    def test_out_of_range(self):
        space = TruncatedFock(4)
        with pytest.raises(IndexError):
            space.index(3, 2)


class TestLadder:
    def test_lowering_action(self):
        space = TruncatedFock(5)
        lad = build_ladder(space)
        vec = np.zeros(space.dim)
        vec[space.index(1, 0)] = 1.0
        out = lad.a1 @ vec
        expect = np.zeros(space.dim)
        expect[space.index(0, 0)] = 1.0
        assert np.allclose(out, expect)

    def test_ccr_on_unpolluted_levels(self):
        space = TruncatedFock(9)
        lad = build_ladder(space)
        keep = space.levels <= space.n_max - 1
        eye = sparse.identity(space.dim, dtype=complex)
        for a, ad in ((lad.a1, lad.a1_dag), (lad.a2, lad.a2_dag)):
            comm = (a @ ad - ad @ a - eye).toarray()
            assert np.abs(comm[np.ix_(keep, keep)]).max() < 1e-14

    def test_number_operator(self):
        space = TruncatedFock(6)
        lad = build_ladder(space)
        assert np.allclose(lad.num.diagonal().real, space.levels)


class TestCoordinates:
    def test_commutation_relations(self):
        space = TruncatedFock(8)
        x1, x2, x3, r = coordinates(space, PARAMS)
        keep = space.levels <= space.n_max - 1
        comm = (x1.mat @ x2.mat - x2.mat @ x1.mat - 2j * PARAMS.lam * x3.mat).toarray()
        assert np.abs(comm[np.ix_(keep, keep)]).max() < 1e-14
        for x in (x1, x2, x3):
            assert np.abs((x.mat @ r.mat - r.mat @ x.mat).toarray()).max() < 1e-14

    def test_casimir(self):
        space = TruncatedFock(8)
        x1, x2, x3, r = coordinates(space, PARAMS)
        keep = space.levels <= space.n_max - 1
        cas = (r.mat @ r.mat - x1.mat @ x1.mat - x2.mat @ x2.mat
               - x3.mat @ x3.mat).toarray()
        target = PARAMS.lam ** 2 * np.eye(space.dim)
        assert np.abs((cas - target)[np.ix_(keep, keep)]).max() < 1e-13

    def test_level_one_x3_eigenvalues(self):
        space = TruncatedFock(4)
        x3 = coordinates(space, PARAMS)[2]
        block = x3.mat.toarray()[space.level_slice(1), space.level_slice(1)]
        eigs = sorted(np.linalg.eigvalsh(block))
        assert abs(eigs[0] + PARAMS.lam) < 1e-15
        assert abs(eigs[1] - PARAMS.lam) < 1e-15


class TestAngularMomentum:
    def test_scalar_sector_annihilated(self):
        space = TruncatedFock(8)
        psi = build_psi_jm(0, 0, np.ones(space.n_max + 1), space, PARAMS)
        l3 = angular_momentum_apply(psi, 3)
        assert np.abs(l3.mat.toarray()).max() < 1e-14

    @pytest.mark.parametrize("j,m", [(1, 1), (1, 0), (2, -2), (3, 1)])
    def test_eigenvalues(self, j, m):
        space = TruncatedFock(10)
        rvals = np.array([1.0 / (n + 1) for n in range(space.n_max + 1)])
        psi = build_psi_jm(j, m, rvals, space, PARAMS)
        scale = np.abs(psi.mat.toarray()).max()
        l2 = angular_momentum_sq_apply(psi)
        l3 = angular_momentum_apply(psi, 3)
        assert np.abs((l2.mat - j * (j + 1) * psi.mat).toarray()).max() < 1e-12 * scale
        assert np.abs((l3.mat - m * psi.mat).toarray()).max() < 1e-12 * scale


class TestPsiAssembly:
    def test_scalar_identity(self):
        space = TruncatedFock(6)
        psi = build_psi_jm(0, 0, np.ones(space.n_max + 1), space, PARAMS)
        assert np.allclose(psi.mat.toarray(), np.eye(space.dim))

    def test_stretched_state_pattern(self):
        # Psi_11 is proportional to lam a1+ R(rho) (-a2)
        space = TruncatedFock(6)
        rvals = np.array([0.5 + 0.1 * n for n in range(space.n_max + 1)])
        psi = build_psi_jm(1, 1, rvals, space, PARAMS)
        lad = build_ladder(space)
        rdiag = sparse.diags(rvals[space.levels].astype(complex))
        hand = PARAMS.lam * (lad.a1_dag @ rdiag @ (-lad.a2))
        assert np.abs((psi.mat - hand).toarray()).max() < 1e-14

    @pytest.mark.parametrize("j,m", [(1, 0), (2, 2), (3, -1)])
    def test_annihilates_low_levels(self, j, m):
        space = TruncatedFock(8)
        psi = build_psi_jm(j, m, np.ones(space.n_max + 1), space, PARAMS)
        dense = psi.mat.toarray()
        low = space.levels < j
        assert np.abs(dense[:, low]).max() == 0.0

    def test_rejects_bad_m(self):
        space = TruncatedFock(4)
        with pytest.raises(ValueError):
            build_psi_jm(1, 2, np.ones(space.n_max + 1), space, PARAMS)


class TestLaplacian:
    def test_constant_is_harmonic(self):
        space = TruncatedFock(8)
        psi = build_psi_jm(0, 0, np.ones(space.n_max + 1), space, PARAMS)
        lap = laplacian_apply(psi, PARAMS)
        keep = space.levels <= lap.trusted_level_max()
        assert np.abs(lap.mat.toarray()[np.ix_(keep, keep)]).max() < 1e-13

    def test_linear_symbol_gives_two_over_r(self):
        # R(rho) = rho: Delta R = 2/r exactly, the commutative value
        space = TruncatedFock(10)
        rho = PARAMS.lam * np.arange(space.n_max + 1)
        psi = build_psi_jm(0, 0, rho, space, PARAMS)
        lap = laplacian_apply(psi, PARAMS)
        expect = np.diag(2.0 / (PARAMS.lam * (space.levels + 1.0)))
        keep = space.levels <= lap.trusted_level_max()
        dev = np.abs((lap.mat.toarray() - expect)[np.ix_(keep, keep)]).max()
        assert dev < 1e-13

    def test_potential_is_harmonic_away_from_source(self):
        space = TruncatedFock(12)
        vvals = laplace_potential(space, PARAMS)
        psi = build_psi_jm(0, 0, vvals, space, PARAMS)
        lap = laplacian_apply(psi, PARAMS)
        keep = (space.levels <= lap.trusted_level_max()) & (space.levels >= 1)
        assert np.abs(lap.mat.toarray()[np.ix_(keep, keep)]).max() < 1e-12
        # level 0 carries the point source q / lam^3
        assert abs(lap.mat[0, 0].real - PARAMS.alpha / PARAMS.lam ** 3) < 1e-12


class TestLaplacePotential:
    def test_unrolled_values(self):
        params = Params(lam=1.0, alpha=1.0)
        space = TruncatedFock(4)
        vals = laplace_potential(space, params)
        # oracle: unroll the recurrence by hand from V(0) = -1, c = 0
        v0 = -1.0
        v1 = (0.0 + v0) / 2
        v2 = (2 * 2 * v1 - 1 * v0) / 3
        assert np.allclose(vals[:3], [v0, v1, v2])
        assert np.allclose(vals[:3], [-1.0, -0.5, -1.0 / 3.0])

    def test_constant_shift(self):
        space = TruncatedFock(6)
        base = laplace_potential(space, Params(lam=0.7, alpha=1.3))
        shifted = laplace_potential(space, Params(lam=0.7, alpha=1.3, q0=2.5))
        assert np.allclose(shifted - base, 2.5)

    def test_exact_rational_closed_form(self):
        space = TruncatedFock(100)
        params = Params(lam=Fraction(3), alpha=Fraction(2), q0=Fraction(1, 5))
        vals = laplace_potential(space, params, exact=True)
        for n, v in enumerate(vals):
            assert v == -Fraction(2) / (Fraction(3) * (n + 1)) + Fraction(1, 5)


class TestHamiltonian:
    def test_free_constant(self):
        params = Params(lam=0.3, alpha=0.0)
        space = TruncatedFock(8)
        psi = build_psi_jm(0, 0, np.ones(space.n_max + 1), space, params)
        h = hamiltonian_apply(psi, params)
        keep = space.levels <= h.trusted_level_max()
        assert np.abs(h.mat.toarray()[np.ix_(keep, keep)]).max() < 1e-13

    def test_linearity(self):
        space = TruncatedFock(8)
        r1 = np.array([1.0 / (n + 1) for n in range(space.n_max + 1)])
        r2 = np.array([math.sin(n + 1.0) for n in range(space.n_max + 1)])
        p1 = build_psi_jm(1, 1, r1, space, PARAMS)
        p2 = build_psi_jm(1, 1, r2, space, PARAMS)
        p12 = build_psi_jm(1, 1, 2.0 * r1 - 0.5 * r2, space, PARAMS)
        lhs = hamiltonian_apply(p12, PARAMS).mat
        rhs = 2.0 * hamiltonian_apply(p1, PARAMS).mat \
            - 0.5 * hamiltonian_apply(p2, PARAMS).mat
        assert np.abs((lhs - rhs).toarray()).max() < 1e-12

    def test_bound_state_eigen_residual(self):
        params = Params(lam=0.2, alpha=1.0)
        level = spectrum.bound_energies_I(params, 1, 1)[0]
        seq = spectrum.bound_wavefunction(level, 25)
        psi = build_psi_jm(1, 1, seq, TruncatedFock(25), params)
        assert relative_eigen_residual(psi, params, level.E) < 1e-12


class TestNorms:
    def test_zero(self):
        space = TruncatedFock(6)
        psi = build_psi_jm(0, 0, np.zeros(space.n_max + 1), space, PARAMS)
        assert hs_norm_sq(psi, PARAMS).value == 0.0

    def test_ground_level_delta(self):
        space = TruncatedFock(6)
        rvals = np.zeros(space.n_max + 1)
        rvals[0] = 1.0
        psi = build_psi_jm(0, 0, rvals, space, PARAMS)
        got = hs_norm_sq(psi, PARAMS)
        assert abs(got.value - 4 * math.pi * PARAMS.lam ** 3) < 1e-15
        assert got.last_level == 0.0

    @pytest.mark.parametrize("j,m", [(0, 0), (1, 0), (2, -1), (3, 2)])
    def test_trace_matches_reduced_sum(self, j, m):
        space = TruncatedFock(14)
        nl = space.n_max + 1
        rvals = np.array([1.0 / (n + 1) + 0.15 * math.cos(n) for n in range(nl)])
        psi = build_psi_jm(j, m, rvals, space, PARAMS)
        hs = hs_norm_sq(psi, PARAMS).value
        reduced = spectrum.radial_norm_sq(j, rvals[: nl - j], PARAMS).value
        assert abs(hs - reduced) < 1e-12 * reduced


class TestNormalOrdering:
    def test_power_values_against_ladder_oracle(self):
        space = TruncatedFock(7)
        mat = normal_power_matrix(2, space).toarray()
        idx = space.index(2, 1)  # level 3
        assert abs(mat[idx, idx] - 6.0) < 1e-12
        assert normal_power_apply(2, 3) == 6
        assert normal_power_apply(4, 3) == 0
        assert normal_power_apply(0, 5) == 1
        off_diag = mat - np.diag(mat.diagonal())
        assert np.abs(off_diag).max() < 1e-12

    def test_negative_power_convention(self):
        # :N^-k: acts as N! / (N+k)!
        assert normal_power_apply(-2, 3) == Fraction(1, 20)
        assert normal_power_apply(-1, 0) == Fraction(1, 1)

    def test_exp_closed_form_values(self):
        space = TruncatedFock(10)
        op = normal_ordered_exp(0.0, space, PARAMS)
        assert np.allclose(op.mat.toarray(), np.eye(space.dim))
        flip = normal_ordered_exp(-2.0 / PARAMS.lam, space, PARAMS)
        expect = np.diag((-1.0) ** space.levels)
        assert np.abs(flip.mat.toarray() - expect).max() < 1e-14

    def test_exp_series_oracle(self):
        params = Params(lam=0.3, alpha=1.0)
        space = TruncatedFock(20)
        closed = normal_ordered_exp(0.7, space, params).mat.toarray()
        series = np.zeros_like(closed)
        for k in range(space.n_max + 1):
            series += (0.7 ** k / math.factorial(k)) \
                * normal_rho_power_matrix(k, space, params).toarray()
        assert np.abs(closed - series).max() < 1e-13


class TestBallVolume:
    def test_small_values(self):
        params = Params(lam=0.5, alpha=1.0)
        assert abs(ball_volume(0, params) - 4 * math.pi * params.lam ** 3) < 1e-15
        assert abs(ball_volume(1, params) - 20 * math.pi * params.lam ** 3) < 1e-14

    def test_continuum_ratio(self):
        params = Params(lam=0.5, alpha=1.0)
        n = 1000
        r = params.lam * (n + 1)
        ratio = ball_volume(n, params) / (4 * math.pi / 3 * r ** 3)
        assert abs(ratio - 1.0) < 2.0 * params.lam / r


def test_combinatorial_reduction_identity():
    for j in range(7):
        for n in range(j, 41):
            lhs = sum(math.comb(k + j, j) * math.comb(n - k, j)
                      for k in range(n - j + 1))
            assert lhs == math.comb(n + j + 1, 2 * j + 1)


def test_wave_operators_commute_with_r():
    # level-preserving wave operators commute with the level-diagonal r
    space = TruncatedFock(10)
    r_op = coordinates(space, PARAMS)[3]
    for j, m in ((0, 0), (2, 1)):
        rvals = np.array([1.0 / (n + 1) for n in range(space.n_max + 1)])
        psi = build_psi_jm(j, m, rvals, space, PARAMS)
        comm = (r_op.mat @ psi.mat - psi.mat @ r_op.mat).toarray()
        assert np.abs(comm).max() < 1e-14


def test_double_commutator_pollution_flag():
    space = TruncatedFock(8)
    psi = build_psi_jm(0, 0, np.ones(space.n_max + 1), space, PARAMS)
    assert psi.polluted == 0
    assert double_commutator(psi).polluted == 2
    assert laplacian_apply(psi, PARAMS).trusted_level_max() == space.n_max - 2
