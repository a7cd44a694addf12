"""Scattering tests: the conformal momentum map and its branch bookkeeping,
S-matrix properties, the in/out decomposition closure, and the mirror
across the band midpoint."""

import math

import numpy as np
import pytest

from nccoulomb import radial, scattering, spectrum
from nccoulomb.fuzzy import Params
from nccoulomb.scattering import (
    EDGE_LOWER,
    EDGE_OFF_CUT,
    EDGE_UPPER,
    E_of_p,
    SMatrixPole,
    asymptotic_decomposition,
    mirror_momenta,
    p_of_E,
    phase_shift_sweep,
    prefactor_via_lngamma,
    scattering_mirror_check,
    smatrix_from_decomposition,
    smatrix_nc,
    smatrix_qm,
)
from nccoulomb.special import DivergenceError

PARAMS = Params(lam=0.4, alpha=1.0)


def band_energy(lam: float, lam_p: float) -> float:
    """Upper-edge energy with the requested lam * p."""
    return (1.0 - math.sqrt(1.0 - lam_p ** 2)) / lam ** 2


class TestMomentumMap:
    def test_cut_endpoint(self):
        mid = 1.0 / PARAMS.lam ** 2
        mom = p_of_E(mid, PARAMS)
        assert abs(mom.p - 1.0 / PARAMS.lam) < 1e-14

    def test_small_energy_dispersion(self):
        # p = sqrt(2E) (1 - lam^2 E / 4 + ...) recovers the free dispersion
        e = 1e-6
        mom = p_of_E(e, PARAMS)
        assert mom.edge == EDGE_UPPER
        assert abs(mom.p - math.sqrt(2 * e)) < PARAMS.lam ** 2 * e * math.sqrt(2 * e)

    def test_mirror_energies_share_p_with_opposite_edges(self):
        e = 0.3 / PARAMS.lam ** 2
        lo = p_of_E(e, PARAMS)
        hi = p_of_E(2.0 / PARAMS.lam ** 2 - e, PARAMS)
        assert lo.edge == EDGE_UPPER and hi.edge == EDGE_LOWER
        assert abs(lo.p - hi.p) < 1e-13

    def test_off_band_sides(self):
        below = p_of_E(-1.0, PARAMS)
        above = p_of_E(3.0 / PARAMS.lam ** 2, PARAMS)
        assert below.edge == above.edge == EDGE_OFF_CUT
        assert below.p.imag > 0 and below.p.real == 0
        assert above.p.imag < 0 and above.p.real == 0

    def test_matches_upper_half_plane_limit(self):
        # the analytic edge rules agree with the E + i eps prescription
        eps = 1e-10 * 2.0 / PARAMS.lam ** 2
        for e in (-0.7, 0.2 / PARAMS.lam ** 2, 1.6 / PARAMS.lam ** 2,
                  2.9 / PARAMS.lam ** 2):
            exact = p_of_E(e, PARAMS).p
            limit = p_of_E(complex(e, eps), PARAMS).p
            assert abs(exact - limit) < 1e-5 * max(abs(exact), 1e-5)

    def test_inverse_map_and_round_trips(self):
        assert abs(E_of_p(1.0 / PARAMS.lam, PARAMS) - 1.0 / PARAMS.lam ** 2) < 1e-13
        for p in (0.3 / PARAMS.lam, 2.4 / PARAMS.lam, (1.1 + 0.4j) / PARAMS.lam):
            energy = E_of_p(p, PARAMS)
            assert abs(p_of_E(energy, PARAMS).p - p) < 1e-13 * abs(p)

    def test_pole_position_maps_to_branch_one_energy(self):
        params = Params(lam=0.2, alpha=1.0)
        level = spectrum.bound_energies_I(params, 0, 2)[-1]
        assert abs(E_of_p(1j * params.alpha / level.n, params) - level.E) \
            < 1e-12 * abs(level.E)

    def test_second_sheet(self):
        params = Params(lam=0.2, alpha=1.0)
        p = 1j * 0.5
        one = E_of_p(p, params, sheet=1)
        two = E_of_p(p, params, sheet=2)
        assert abs(one + two - 2.0 / params.lam ** 2) < 1e-12
        with pytest.raises(ValueError):
            E_of_p(p, params, sheet=3)


class TestSMatrix:
    def test_free_theory(self):
        params = Params(lam=0.4, alpha=0.0)
        val = smatrix_nc(2, 0.7 * params.e_crit, params)
        assert val.S == 1.0 + 0.0j and val.phase_shift == 0.0
        assert smatrix_qm(2, 1.3, 0.0).S == 1.0 + 0.0j

    def test_unitarity_on_grid(self):
        grid = np.linspace(0.02, 0.98, 100) * PARAMS.e_crit
        for j in range(5):
            for energy in grid:
                assert abs(abs(smatrix_nc(j, energy, PARAMS).S) - 1.0) < 1e-12

    def test_band_endpoints_rejected(self):
        with pytest.raises(ValueError):
            smatrix_nc(0, 0.0, PARAMS)

    def test_pole_flag_at_bound_energies(self):
        for alpha in (1.0, -1.0):
            params = Params(lam=0.2, alpha=alpha)
            branch = (spectrum.bound_energies_I if alpha > 0
                      else spectrum.bound_energies_II)
            for level in branch(params, 1, 2):
                with pytest.raises(SMatrixPole):
                    smatrix_nc(1, level.E, params)

    def test_qm_poles_live_below_the_domain(self):
        # the ordinary S-matrix is defined for E > 0 only; its poles at
        # k = i alpha / n sit at the Bohr energies, reached here through the
        # fuzzy S-matrix at negligible fuzziness
        alpha, n = 1.0, 2
        with pytest.raises(ValueError):
            smatrix_qm(0, -0.5 * alpha ** 2 / n ** 2, alpha)
        with pytest.raises(SMatrixPole):
            smatrix_nc(0, -0.5 * alpha ** 2 / n ** 2,
                       Params(lam=1e-8, alpha=alpha))

    def test_high_energy_phase_decay(self):
        alpha = 1.0
        deltas = [abs(smatrix_qm(0, e, alpha).phase_shift)
                  for e in (10.0, 100.0, 1000.0)]
        assert deltas[0] > deltas[1] > deltas[2]

    def test_commutative_order_of_phase(self):
        energy, alpha = 1.0, 1.0
        for j in (0, 1, 3):
            ref = smatrix_qm(j, energy, alpha).phase_shift
            devs = [abs(smatrix_nc(j, energy, Params(lam=lam, alpha=alpha))
                        .phase_shift - ref) for lam in (1e-1, 1e-2, 1e-3)]
            orders = [math.log10(devs[i] / devs[i + 1]) for i in range(2)]
            assert all(1.8 <= o <= 2.2 for o in orders)

    def test_sweep_continuity(self):
        grid = np.linspace(0.05, 0.95, 200) * PARAMS.e_crit
        deltas, flags = phase_shift_sweep(0, grid, params=PARAMS)
        assert not flags.any()
        assert np.abs(np.diff(deltas)).max() < 0.3

    def test_sweep_argument_validation(self):
        with pytest.raises(ValueError):
            phase_shift_sweep(0, [1.0])
        with pytest.raises(ValueError):
            phase_shift_sweep(0, [1.0], params=PARAMS, alpha=1.0)


class TestDecomposition:
    @pytest.mark.parametrize("lam_p", [0.6, 0.75, 0.9])
    @pytest.mark.parametrize("j", [0, 1, 2])
    def test_closure_against_direct_values(self, j, lam_p):
        lam = 1.0
        energy = band_energy(lam, lam_p)
        params = Params(lam=lam, alpha=1.0)
        direct = radial.scattering_values(j, lam_p / lam, energy, params.alpha,
                                          lam, 40)
        for level in (20, 30, 40):
            dec = asymptotic_decomposition(j, energy, params, level)
            total = dec.term_in + dec.term_out
            assert abs(total - direct[level]) < 1e-8 * abs(direct[level])

    def test_terms_are_conjugate_pair(self):
        params = Params(lam=1.0, alpha=1.0)
        energy = band_energy(1.0, 0.75)
        for level in (10, 25):
            dec = asymptotic_decomposition(1, energy, params, level)
            assert abs(dec.term_in - dec.term_out.conjugate()) \
                < 1e-10 * abs(dec.term_out)

    def test_free_limit_prefactor_ratio(self):
        # alpha = 0: S = 1, so the prefactor ratio collapses to the pure
        # kinematical redistribution factors
        lam = 1.0
        energy = band_energy(lam, 0.75)
        params = Params(lam=lam, alpha=0.0)
        p = scattering.p_of_E(energy, params).p.real
        rho = (p + 1j * lam * energy) / (p - 1j * lam * energy)
        for j in (0, 1):
            dec = asymptotic_decomposition(j, energy, params, 12)
            expect = (-1.0) ** (j + 1) * rho ** (2 * j + 2)
            assert abs(dec.prefactor_out / dec.prefactor_in - expect) \
                < 1e-12 * abs(expect)
            total = dec.term_in + dec.term_out
            direct = radial.scattering_values(j, p, energy, 0.0, lam, 12)[12]
            assert abs(total - direct) < 1e-10 * abs(direct)

    def test_smatrix_recovered_from_prefactors(self):
        lam = 1.0
        energy = band_energy(lam, 0.75)
        params = Params(lam=lam, alpha=1.0)
        for j in (0, 1, 2):
            direct = smatrix_nc(j, energy, params).S
            assert abs(smatrix_from_decomposition(j, energy, params) - direct) \
                < 1e-10

    def test_out_of_domain_fails_loudly(self):
        # lam p < 1/2 puts the Gauss argument outside the unit disk
        lam = 1.0
        energy = band_energy(lam, 0.3)
        with pytest.raises(DivergenceError):
            asymptotic_decomposition(0, energy, Params(lam=lam, alpha=1.0), 10)

    def test_needs_band_interior(self):
        with pytest.raises(ValueError):
            asymptotic_decomposition(0, -1.0, PARAMS, 10)


class TestPrefactorForms:
    def test_two_path_agreement(self):
        lam = 1.0
        energy = band_energy(lam, 0.5)
        params = Params(lam=lam, alpha=1.0)
        for conjugate in (False, True):
            forms = prefactor_via_lngamma(0, energy, params, 50, terms=10,
                                          conjugate=conjugate)
            assert abs(forms.bernoulli_form - forms.gamma_form) \
                < 1e-8 * abs(forms.gamma_form)

    def test_free_coupling_is_exact(self):
        # alpha = 0, j = 0: a = 1 and every correction term
        # B_{m+1}(1) - B_{m+1}(0) = (m+1) 0^m vanishes
        lam = 1.0
        energy = band_energy(lam, 0.5)
        forms = prefactor_via_lngamma(0, energy, Params(lam=lam, alpha=0.0),
                                      50, terms=10)
        assert forms.truncation_estimate == 0.0
        assert abs(forms.bernoulli_form - forms.gamma_form) \
            < 1e-13 * abs(forms.gamma_form)

    def test_zero_terms_is_pure_stirling(self):
        lam = 1.0
        energy = band_energy(lam, 0.5)
        params = Params(lam=lam, alpha=1.0)
        forms = prefactor_via_lngamma(1, energy, params, 30, terms=0)
        p = scattering.p_of_E(energy, params).p.real
        a = 2 - 1j * params.alpha / p
        expect = 31.0 ** (-a)
        assert abs(forms.bernoulli_form - expect) < 1e-14 * abs(expect)


class TestScatteringMirror:
    def test_level_deviation(self):
        params = Params(lam=0.5, alpha=1.1)
        eps = 0.3 / params.lam ** 2
        for j in (0, 1, 2):
            assert scattering_mirror_check(j, eps, params, 40) < 1e-11

    def test_prefactor_identity(self):
        params = Params(lam=0.5, alpha=1.1)
        (e1, p1), (e2, p2) = mirror_momenta(0.3 / params.lam ** 2, params)
        lhs = (p1 + 1j * params.lam * e1) / (p1 - 1j * params.lam * e1)
        rhs = -(p2 + 1j * params.lam * e2) / (p2 - 1j * params.lam * e2)
        assert abs(lhs - rhs) < 1e-14

    def test_midpoint_continuity(self):
        # eps -> 0: both mirror energies collapse onto the eta = sqrt(2)/2
        # midpoint state
        params = Params(lam=0.5, alpha=1.1)
        mid = 1.0 / params.lam ** 2
        ref = radial.radial_closed_form(0, mid, params, 20).values
        devs = []
        for eps in (1e-2 * mid, 1e-4 * mid):
            seq = radial.radial_closed_form(0, mid - eps, params, 20).values
            devs.append(np.max(np.abs(seq - ref)))
        assert devs[1] < devs[0] < 0.1

    def test_eps_range_validation(self):
        with pytest.raises(ValueError):
            mirror_momenta(0.0, PARAMS)
        with pytest.raises(ValueError):
            mirror_momenta(2.0 / PARAMS.lam ** 2, PARAMS)


class TestComplexEnergy:
    def test_pole_growth_off_axis(self):
        # |S| grows like 1/eps approaching a bound-state pole from above
        params = Params(lam=0.2, alpha=1.0)
        level = spectrum.bound_energies_I(params, 0, 1)[0]
        mags = [abs(smatrix_nc(0, complex(level.E, eps), params).S)
                for eps in (1e-2, 1e-4, 1e-6)]
        assert mags[0] < mags[1] < mags[2]
        assert mags[2] / mags[1] == pytest.approx(100.0, rel=1e-2)

    def test_negative_partial_wave_rejected(self):
        with pytest.raises(ValueError):
            smatrix_nc(-1, 1.0, PARAMS)
        with pytest.raises(ValueError):
            smatrix_qm(-1, 1.0, 1.0)
