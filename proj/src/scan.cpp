#include "qerg/scan.hpp"

#include <cmath>

namespace qerg {

namespace {

// Cells are evaluated on the polar trajectory directly, so the scan output
// cannot depend on the azimuth even at the bit level.
ScanCell evaluate_cell(const Trajectory& traj, double horizon,
                       double grid_step) {
  ScanCell cell;
  try {
    CharacteristicTimes ct = characteristic_times(traj, horizon, grid_step);
    cell.status = ct.status;
    if (ct.status != RootStatus::Root) return cell;  // figure convention: zeros
    const double tc = ct.times.back();
    cell.tau_c = tc;
    cell.work_env = qerg::work_env(traj, tc);
    cell.ergotropy_delta = ergotropy_variation(traj, tc).total;
    cell.passive_delta = passive_variation(traj, tc);
  } catch (const NumericalError&) {
    cell = ScanCell{};
    cell.status = RootStatus::Error;
  }
  return cell;
}

}  // namespace

ScanGrid grid_scan(ScanGrid grid) {
  if (grid.r0_values.empty() || grid.theta0_values.empty()) {
    throw DomainError("grid_scan: value lists must be nonempty");
  }
  if (!(grid.phi0 >= -kBallTol && grid.phi0 < 2.0 * std::acos(-1.0))) {
    throw DomainError("grid_scan: phi0 outside [0,2pi)");
  }
  const double horizon =
      grid.horizon > 0.0 ? grid.horizon : default_horizon(grid.channel);
  const double step =
      grid.grid_step > 0.0 ? grid.grid_step : default_grid_step(grid.channel);
  grid.horizon = horizon;
  grid.grid_step = step;

  grid.cells.assign(grid.r0_values.size() * grid.theta0_values.size(),
                    ScanCell{});
  for (std::size_t i = 0; i < grid.r0_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.theta0_values.size(); ++j) {
      const Trajectory traj = Trajectory::from_polar(
          grid.channel, grid.r0_values[i], grid.theta0_values[j]);
      grid.cells[i * grid.theta0_values.size() + j] =
          evaluate_cell(traj, horizon, step);
    }
  }
  return grid;
}

namespace {

std::vector<LineRow> line_scan(const std::vector<double>& parameters,
                               double gamma_ratio, bool equator) {
  if (parameters.empty()) {
    throw DomainError("line scan: parameter list must be nonempty");
  }
  const ChannelSpec markov = ChannelSpec::ad_markovian();
  const ChannelSpec non_markov = ChannelSpec::ad_non_markovian(gamma_ratio);
  const double half_pi = 0.5 * std::acos(-1.0);

  std::vector<LineRow> rows;
  rows.reserve(parameters.size());
  for (const double p : parameters) {
    const double r0 = equator ? p : 1.0;
    const double theta0 = equator ? half_pi : p;
    LineRow row;
    row.parameter = p;
    row.markovian =
        evaluate_cell(Trajectory::from_polar(markov, r0, theta0),
                      default_horizon(markov), default_grid_step(markov));
    row.non_markovian = evaluate_cell(
        Trajectory::from_polar(non_markov, r0, theta0),
        default_horizon(non_markov), default_grid_step(non_markov));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<LineRow> line_scan_equator(const std::vector<double>& r0_values,
                                       double gamma_ratio) {
  return line_scan(r0_values, gamma_ratio, true);
}

std::vector<LineRow> line_scan_pure(const std::vector<double>& theta0_values,
                                    double gamma_ratio) {
  return line_scan(theta0_values, gamma_ratio, false);
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw DomainError("linspace: need at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace qerg
