#pragma once

#include <cstddef>
#include <vector>

#include "qerg/events.hpp"

namespace qerg {

/// Per-cell outcome of a characteristic-time scan. Cells without a root
/// (status None or Degenerate) carry zeros, matching the figure convention
/// tau_c = 0; the status keeps the cases distinguishable.
struct ScanCell {
  double tau_c = 0.0;
  double work_env = 0.0;         ///< W*(t_c)
  double ergotropy_delta = 0.0;  ///< dE(t_c)
  double passive_delta = 0.0;    ///< dU_pi(t_c)
  RootStatus status = RootStatus::None;
};

/// Grid scan over initial states (r0, theta0) for one channel. Fill in the
/// axes and channel, then call grid_scan; cells are row-major with r0 as
/// the slow index. horizon/grid_step <= 0 select the channel defaults.
struct ScanGrid {
  std::vector<double> r0_values;
  std::vector<double> theta0_values;
  ChannelSpec channel;
  double phi0 = 0.0;
  double horizon = 0.0;
  double grid_step = 0.0;
  std::vector<ScanCell> cells;

  const ScanCell& at(std::size_t i_r0, std::size_t i_theta) const {
    return cells[i_r0 * theta0_values.size() + i_theta];
  }
};

/// Evaluates every cell: the largest characteristic time of the cell's
/// trajectory, then W*, dE, dU_pi at that time. Per-cell numerical failures
/// are recorded in the status flag and never abort the scan. Output is
/// deterministic and independent of evaluation order.
ScanGrid grid_scan(ScanGrid grid);

/// One row of a Markovian / non-Markovian comparison line.
struct LineRow {
  double parameter = 0.0;  ///< r0 or theta0
  ScanCell markovian;
  ScanCell non_markovian;  ///< evaluated at the largest characteristic time
};

/// AD comparison along the equator (theta0 = pi/2) as a function of r0.
std::vector<LineRow> line_scan_equator(const std::vector<double>& r0_values,
                                       double gamma_ratio);

/// AD comparison along pure states (r0 = 1) as a function of theta0.
std::vector<LineRow> line_scan_pure(const std::vector<double>& theta0_values,
                                    double gamma_ratio);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace qerg
