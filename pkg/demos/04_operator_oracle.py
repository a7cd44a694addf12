"""The brute-force oracle: everything re-checked on truncated Fock matrices.

The configuration space is generated by two bosonic modes; coordinates are
x_j = lam a^+ sigma_j a and wave functions are level-preserving matrices.
Nothing here knows about hypergeometric functions: the Hamiltonian is a
literal double commutator, and the closed-form bound states must pass
through it as numerical eigenvectors.  This is the machinery behind the
`nccoulomb verify` command.
"""

import numpy as np

from nccoulomb import fuzzy, spectrum
from nccoulomb.fuzzy import Params, TruncatedFock

params = Params(lam=0.2, alpha=1.0)
space = TruncatedFock(40)
print(f"truncated Fock space: levels 0..{space.n_max}, dimension {space.dim}\n")

x1, x2, x3, r = fuzzy.coordinates(space, params)
keep = space.levels <= space.n_max - 1
comm = (x1.mat @ x2.mat - x2.mat @ x1.mat - 2j * params.lam * x3.mat).toarray()
cas = (r.mat @ r.mat - (x1.mat @ x1.mat + x2.mat @ x2.mat
                        + x3.mat @ x3.mat)).toarray()
print("coordinate algebra on unpolluted levels:")
print(f"  max |[x1, x2] - 2 i lam x3|      = "
      f"{np.abs(comm[np.ix_(keep, keep)]).max():.2e}")
print(f"  max |r^2 - x^2 - lam^2|          = "
      f"{np.abs((cas - params.lam**2 * np.eye(space.dim))[np.ix_(keep, keep)]).max():.2e}")

vvals = fuzzy.laplace_potential(space, params)
psi_v = fuzzy.build_psi_jm(0, 0, vvals, space, params)
lap = fuzzy.laplacian_apply(psi_v, params)
away = (space.levels >= 1) & (space.levels <= lap.trusted_level_max())
print("\nthe Coulomb potential is the harmonic function of the fuzzy Laplacian:")
print(f"  max |Delta V| away from origin   = "
      f"{np.abs(lap.mat.toarray()[np.ix_(away, away)]).max():.2e}")
print(f"  Delta V at the origin            = {lap.mat[0, 0].real:.6f}  "
      f"(the point source q / lam^3 = {params.alpha / params.lam**3})")

print("\nclosed-form bound states through the matrix Hamiltonian:")
for j in (0, 1, 2):
    for level in spectrum.bound_energies_I(params, j, 2):
        seq = spectrum.bound_wavefunction(level, space.n_max)
        psi = fuzzy.build_psi_jm(j, j, seq, space, params)
        res = fuzzy.relative_eigen_residual(psi, params, level.E)
        print(f"  j = {j}, n = {level.n}: ||H Psi - E Psi|| / ||Psi|| = {res:.2e}")

print("\nnorms two ways (operator trace vs reduced radial sum):")
rvals = np.array([1.0 / (n + 1) for n in range(space.n_max + 1)])
for j, m in ((0, 0), (2, 1), (3, -3)):
    psi = fuzzy.build_psi_jm(j, m, rvals, space, params)
    hs = fuzzy.hs_norm_sq(psi, params).value
    reduced = spectrum.radial_norm_sq(j, rvals[: space.n_max + 1 - j], params).value
    print(f"  (j, m) = ({j}, {m:+d}): trace {hs:.10e}  reduced {reduced:.10e}")
