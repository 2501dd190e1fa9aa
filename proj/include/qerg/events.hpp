#pragma once

#include <optional>
#include <vector>

#include "qerg/thermo.hpp"

namespace qerg {

/// Outcome of a root search along a trajectory.
enum class RootStatus {
  Root,        ///< at least one isolated root found
  None,        ///< the tracked quantity is one-signed; no positive root
  Degenerate,  ///< the tracked quantity vanishes identically; no isolated roots
  Error,       ///< a per-cell numerical failure (scan bookkeeping only)
};

double default_horizon(const ChannelSpec& spec);    ///< 50 Markovian, 600 otherwise
double default_grid_step(const ChannelSpec& spec);  ///< 1e-3 Markovian, 1e-2 otherwise

struct SuddenChangeTimes {
  /// Roots of q(t) = 1/(1 + U0), strictly increasing. With 1-based
  /// indexing, odd entries are sudden deaths and even entries are births.
  std::vector<double> times;
  /// Grazing contacts of q with the threshold (double roots), reported
  /// separately: the death/birth labeling breaks down at a tangency.
  std::vector<double> tangencies;
};

/// All sudden-change times of an AD channel in (0, horizon] for initial
/// energy u0 in (0, 1], found by uniform bracketing at grid_step followed
/// by bisection to |dt| < 1e-10. Pass grid_step <= 0 for the channel default.
SuddenChangeTimes sudden_change_times(const ChannelSpec& spec, double u0,
                                      double horizon, double grid_step = 0.0);

/// Largest sudden-change time, validated by checking that the kernel stays
/// below threshold through the horizon (on a grid finer than the kernel
/// oscillation). Empty root set yields nullopt; a validation failure means
/// the bracketing grid missed a crossing and raises NumericalError.
std::optional<double> eternal_death_time(const ChannelSpec& spec, double u0,
                                         double horizon,
                                         double grid_step = 0.0);

struct FreezingVerdict {
  bool frozen = false;
  double value = 0.0;          ///< E(0); the frozen value when frozen is true
  double max_deviation = 0.0;  ///< max |E(t) - E(0)| over the sample grid
  bool analytic = false;       ///< PD with C0 = 0 and U0 > 0 (closed-form criterion)
};

/// Numeric freezing detector: frozen iff max_t |E(t) - E(0)| < tol over
/// samples points on [0, horizon]. The analytic criterion is reported
/// alongside for cross-validation.
FreezingVerdict detect_freezing(const ChannelSpec& spec, BlochVector b0,
                                double horizon, double tol,
                                int samples = 5001);

struct CharacteristicTimes {
  std::vector<double> times;  ///< strictly increasing, all > 10 * grid_step
  RootStatus status = RootStatus::None;
};

/// Characteristic adiabatic times: the strict sign changes of Q(t) on
/// (10 * grid_step, horizon], each refined on the cumulative-quadrature Q
/// until |Q| < 1e-10. Trajectories with Q identically zero are flagged
/// Degenerate; a one-signed Q yields an empty list with status None.
CharacteristicTimes characteristic_times(const Trajectory& traj,
                                         double horizon,
                                         double grid_step = 0.0);
CharacteristicTimes characteristic_times(const ChannelSpec& spec,
                                         BlochVector b0, double horizon,
                                         double grid_step = 0.0);

/// Last characteristic time, or nullopt.
std::optional<double> largest_characteristic(const ChannelSpec& spec,
                                             BlochVector b0, double horizon,
                                             double grid_step = 0.0);

/// Everything the event analysis can say about one trajectory. The sudden
/// part applies only to AD channels started at C0 = 0 with U0 > 0 and is
/// left empty otherwise.
struct EventReport {
  std::vector<double> sudden_times;
  std::vector<double> sudden_tangencies;
  std::optional<double> eternal_death;
  bool frozen = false;
  double frozen_value = 0.0;
  bool frozen_incoherent = false;
  double frozen_incoherent_value = 0.0;
  std::vector<double> characteristic_times;
  std::optional<double> largest_characteristic;
  RootStatus characteristic_status = RootStatus::None;
  double horizon = 0.0;
  double grid_step = 0.0;
};

EventReport report(const ChannelSpec& spec, BlochVector b0, double horizon = 0.0,
                   double grid_step = 0.0, double freeze_tol = 1e-9);

}  // namespace qerg
