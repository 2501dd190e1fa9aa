#pragma once

#include <array>
#include <vector>

#include "qerg/mat2.hpp"
#include "qerg/thermo.hpp"

// Brute-force reference implementations. These power the derived expected
// values and the property tests; production paths never call into them, and
// they trade speed for independence from the closed forms they check.
namespace qerg::oracle {

/// A validated density matrix: Hermitian, unit trace (1e-12), eigenvalues
/// >= -1e-12.
struct DensityMatrix {
  Mat2 m;
};

DensityMatrix density_matrix(const Mat2& m);
DensityMatrix density_matrix(BlochVector b);

/// Spectral decomposition of a Hermitian 2x2 matrix. Eigenvalues sorted
/// descending; each eigenvector is phase-fixed so that its first component
/// of magnitude above 1e-12 is real and positive (a continuous gauge for
/// differencing along a trajectory).
struct EigenSystem {
  std::array<double, 2> values;
  std::array<std::array<complexd, 2>, 2> vectors;  ///< vectors[n] pairs values[n]
};

EigenSystem eig_hermitian(const Mat2& m);

/// Ergotropy from the spectral definition: sort the eigenvalues of rho
/// descending, pair them with the H eigenvalues (-1, +1) ascending, and
/// subtract the passive energy from tr(rho H).
double ergotropy_spectral(const DensityMatrix& rho);

/// Spectral ergotropy of the dephased state (off-diagonals zeroed).
double ergotropy_incoherent_spectral(const DensityMatrix& rho);

/// Composite trapezoid evaluation of Q(t) with central-difference dr/dt
/// (second-order one-sided stencils at the endpoints). Converges with
/// order 2 to the adaptive-quadrature heat.
double heat_trapezoid(const ChannelSpec& spec, BlochVector b0, double t,
                      int n_steps);

/// Antiderivative of the equator heat rate for the Markovian AD channel
/// started from the pure equator state, in the variable u = e^{-t}:
///
///   F(u) = -u + (1/4) ln(u^2 - u + 1) + (sqrt(3)/2) arctan((2u - 1)/sqrt(3)),
///
/// obtained by partial fractions of (1-u)(2u-1) / (2(u^2 - u + 1)); then
/// Q(t) = F(1) - F(e^{-t}). F has its unique interior minimum at u = 1/2,
/// so F(u) = F(1) has exactly one root in (0, 1/2).
double equator_antiderivative(double u);

struct EquatorAdiabaticPoint {
  double u_c;              ///< root of F(u) = F(1) in (0, 1/2)
  double t_c;              ///< -ln(u_c)
  double work_env;         ///< u_c - 1
  double passive_delta;    ///< 1 - sqrt(u_c^2 - u_c + 1)
  double ergotropy_delta;  ///< work_env - passive_delta
};

/// Bisection of F(u) = F(1) on (0, 1/2) and the closed-form thermodynamic
/// values at that point.
EquatorAdiabaticPoint equator_adiabatic_point();

/// W*(t) accumulated term by term from the spectral definition
/// sum_n r_n (<r_n|H|dr_n> + h.c.) with eigenvectors of the reconstructed
/// density matrices on the given grid (midpoint weights, central
/// differences, phase-fixed gauge). Independent of the thermo module's
/// evaluation routes. Steps with r < 1e-9 fall back to the closed-form
/// work rate.
double work_env_eigendiff(const ChannelSpec& spec, BlochVector b0,
                          const std::vector<double>& t_grid);

}  // namespace qerg::oracle
