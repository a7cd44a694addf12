"""A finite electron self-energy and the scale it fixes.

On the fuzzy space the electrostatic energy of a point charge is a finite
trace (no short-distance cutoff needed): it telescopes to (3/8) q^2 / lam.
Equating it to the electron rest energy fixes the fuzziness length at
(3/8) of the classical electron radius, about 1.06 fm, which puts hydrogen
level shifts some ten orders of magnitude below current spectroscopy.
"""

from nccoulomb import spectrum
from nccoulomb.fuzzy import Params

params = Params(lam=1.0, alpha=1.0)
print("truncated self-energy trace vs the analytic value (q = lam = 1):")
print(f"{'n_max':>7} {'trace':>14} {'target':>9} {'tail bound':>12}")
for n_max in (10, 100, 1000, 2000, 10000):
    res = spectrum.self_energy_trace(n_max, params)
    print(f"{n_max:7d} {res.value:14.10f} {res.target:9.6f} {res.tail_bound:12.3e}")

print()
est = spectrum.lambda0_estimate()
print(f"lambda0 = (3/8) e^2 / (m c^2) = {est.lambda0_m:.6e} m")
print(f"        = {est.lambda0_over_r0} x classical electron radius")
print(f"fine structure constant used: alpha0 = {est.alpha0:.9f} "
      f"(1/{1 / est.alpha0:.3f})")
print(f"lambda0 / a0 = (3/8) alpha0^2 = {est.lambda0_over_a0:.6e}")
print(f"hydrogen level-shift scale (lambda0 / a0)^2 = {est.correction_scale:.6e}")
print("\nconstants come from a key = value file; override with --constants on")
print("the CLI or the NCCOULOMB_CONSTANTS environment variable.")
