#pragma once

#include <cmath>

#include "qerg/errors.hpp"

namespace qerg {

/// Tolerance for physicality checks. States whose squared Bloch radius
/// exceeds 1 by at most this amount are clamped back onto the unit ball;
/// anything further out is rejected as unphysical.
inline constexpr double kBallTol = 1e-12;

/// Qubit state as a Bloch vector (x, y, z), x^2 + y^2 + z^2 <= 1.
///
/// The Hamiltonian is fixed to H = -sigma_z (eigenvalues -1 and +1), so
/// every observable in this library is a closed form in (x, y, z). All
/// times elsewhere are dimensionless (gamma * t).
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double radius_sq() const { return x * x + y * y + z * z; }
  double radius() const { return std::sqrt(radius_sq()); }
  double coherence() const { return std::sqrt(x * x + y * y); }
};

/// Returns b scaled onto the unit ball if it overshoots by less than
/// kBallTol; throws DomainError if it is further outside (or not finite).
BlochVector clamp_to_ball(BlochVector b);

/// State from spherical coordinates: radius r0 in [0,1], polar angle
/// theta0 in [0,pi], azimuth phi0 in [0,2pi). The azimuth never enters any
/// thermodynamic scalar; it is kept for completeness of the parameterization.
BlochVector polar_init(double r0, double theta0, double phi0 = 0.0);

/// Scalar snapshot of a state under H = -sigma_z.
struct Observables {
  double coherence;             ///< C = sqrt(x^2 + y^2), in [0,1]
  double energy;                ///< U = -z, in [-1,1]
  double radius;                ///< r = |(x,y,z)|, in [0,1]
  double ergotropy;             ///< E = sqrt(C^2 + U^2) + U, in [0,2]
  double ergotropy_incoherent;  ///< E_I = 2 max{0, U}
  double ergotropy_coherent;    ///< E_C = sqrt(C^2 + U^2) - |U|
  double passive_energy;        ///< U_pi = -r
};

/// All closed-form observables of a state. The input is clamped onto the
/// unit ball first (see kBallTol). E = E_I + E_C holds exactly as computed.
Observables observables(BlochVector b);

/// Ergotropy as a function of coherence and energy alone.
/// Requires coherence >= 0 and coherence^2 + energy^2 <= 1 (within kBallTol).
double ergotropy(double coherence, double energy);

}  // namespace qerg
