#pragma once

#include <vector>

#include "qerg/channels.hpp"

namespace qerg {

/// Radius floor used inside heat/work integrands; |z| <= r always, so the
/// clamped ratio z/r stays bounded by 1.
inline constexpr double kRadiusFloor = 1e-12;

/// Closed-form scalar trajectory of one (channel, initial state) pair.
///
/// Every thermodynamic scalar depends on the initial state only through
/// C0^2 = x0^2 + y0^2 and z0, so the azimuth never enters. Radial
/// derivatives come from the analytic dq/dt of the kernel.
class Trajectory {
 public:
  Trajectory(const ChannelSpec& spec, BlochVector b0);

  /// Builds the trajectory from (r0, theta0) without ever forming Cartesian
  /// components, so scans over polar grids are bit-exactly independent of
  /// the azimuth.
  static Trajectory from_polar(const ChannelSpec& spec, double r0,
                               double theta0);

  /// All scalar data of the trajectory at one time, from a single kernel
  /// evaluation.
  struct State {
    double coherence_sq;
    double z;
    double dz_dt;
    double radius;
    double dradius_sq_dt;
  };
  State at(double t) const;

  double coherence_sq(double t) const { return at(t).coherence_sq; }
  double z(double t) const { return at(t).z; }
  double dz_dt(double t) const { return at(t).dz_dt; }
  double radius(double t) const { return at(t).radius; }
  double dradius_dt(double t) const;
  double ergotropy(double t) const;             ///< E = r - z
  double ergotropy_incoherent(double t) const;  ///< E_I = 2 max{0, -z}

  /// Entropy-based heat rate -(z/r) dr/dt (r clamped by kRadiusFloor).
  double heat_rate(double t) const;
  /// Environment-induced work rate -dz/dt + (z/r) dr/dt.
  double work_rate(double t) const;

  const ChannelSpec& spec() const { return spec_; }
  double initial_coherence_sq() const { return c0_sq_; }
  double initial_z() const { return z0_; }
  double initial_radius() const { return r0_; }

 private:
  Trajectory() = default;

  ChannelSpec spec_;
  double c0_sq_ = 0.0;
  double z0_ = 0.0;
  double r0_ = 0.0;
};

/// Exchanged heat Q(t) = -int_0^t (z/r) dr/ds ds by adaptive quadrature
/// (absolute tolerance 1e-10, max depth 40).
double heat(const Trajectory& traj, double t);
double heat(const ChannelSpec& spec, BlochVector b0, double t);

/// Environment-induced work W*(t) = dU(t) - Q(t) = -dz(t) - Q(t).
double work_env(const Trajectory& traj, double t);
double work_env(const ChannelSpec& spec, BlochVector b0, double t);

/// W*(t) evaluated through its own integral form int_0^t [-dz/ds + (z/r)
/// dr/ds] ds; numerically independent of heat(), used for the first-law
/// residuals.
double work_env_integral(const ChannelSpec& spec, BlochVector b0, double t);

/// Passive energy variation dU_pi(t) = -(r(t) - r(0)).
double passive_variation(const Trajectory& traj, double t);
double passive_variation(const ChannelSpec& spec, BlochVector b0, double t);

struct ErgotropyVariation {
  double total;       ///< dE = E(t) - E(0)
  double incoherent;  ///< dE_I
  double coherent;    ///< dE_C = dE - dE_I
};

/// Ergotropy variation with its incoherent/coherent split.
ErgotropyVariation ergotropy_variation(const Trajectory& traj, double t);
ErgotropyVariation ergotropy_variation(const ChannelSpec& spec, BlochVector b0,
                                       double t);

/// First-law bookkeeping accumulated along a time grid in a single pass.
///
/// heat and work_env come from independent cumulative quadratures; the
/// residual columns measure the honest gap between the analytic deltas and
/// those integrals. The conventional work is identically zero (constant H)
/// and carried explicitly.
struct ThermoLedger {
  std::vector<double> times;
  std::vector<double> energy;          ///< U(t)
  std::vector<double> heat;            ///< Q(t)
  std::vector<double> work_env;        ///< W*(t)
  std::vector<double> passive_energy;  ///< U_pi(t)
  std::vector<double> ergotropy;       ///< E(t)
  std::vector<double> residual_first_law;  ///< |dU - Q - W*|
  std::vector<double> residual_ergotropy;  ///< |dE - Q - W* + dU_pi|
  double work_conventional = 0.0;
  double max_quadrature_estimate = 0.0;  ///< largest per-interval Richardson estimate
};

/// Cumulative evaluation on t_grid (nonempty, strictly increasing, >= 0).
ThermoLedger ledger(const ChannelSpec& spec, BlochVector b0,
                    const std::vector<double>& t_grid);

struct SpectralWork {
  double value = 0.0;
  bool used_fallback = false;  ///< closed-form integrand was substituted where r < 1e-9
};

/// W*(t) accumulated from the spectral decomposition of the density matrix:
/// sum_n r_n d<r_n|H|r_n> with eigenvalue weights at interval midpoints and
/// central differences of step h (O(h^2) per step). Near eigenvalue
/// degeneracy (r < 1e-9) the closed-form integrand is substituted and
/// flagged.
SpectralWork work_env_spectral(const ChannelSpec& spec, BlochVector b0,
                               double t, double h);

}  // namespace qerg
