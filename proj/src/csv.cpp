#include "qerg/csv.hpp"

#include <cmath>
#include <cstdio>

namespace qerg {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* to_string(RootStatus status) {
  switch (status) {
    case RootStatus::Root:
      return "root";
    case RootStatus::None:
      return "none";
    case RootStatus::Degenerate:
      return "degenerate";
    case RootStatus::Error:
      return "error";
  }
  return "unknown";
}

std::string trajectory_csv(const ChannelSpec& spec, BlochVector b0,
                           const ThermoLedger& ledger) {
  const Trajectory traj(spec, b0);
  std::string out = "gt,C,U,r,E,E_I,E_C,Q,Wstar,Upi\n";
  for (std::size_t i = 0; i < ledger.times.size(); ++i) {
    const double t = ledger.times[i];
    const double coherence = std::sqrt(traj.coherence_sq(t));
    const double energy = ledger.energy[i];
    const double radius = -ledger.passive_energy[i];
    const double erg = ledger.ergotropy[i];
    const double erg_i = traj.ergotropy_incoherent(t);
    out += format_double(t);
    out += ',';
    out += format_double(coherence);
    out += ',';
    out += format_double(energy);
    out += ',';
    out += format_double(radius);
    out += ',';
    out += format_double(erg);
    out += ',';
    out += format_double(erg_i);
    out += ',';
    out += format_double(erg - erg_i);
    out += ',';
    out += format_double(ledger.heat[i]);
    out += ',';
    out += format_double(ledger.work_env[i]);
    out += ',';
    out += format_double(ledger.passive_energy[i]);
    out += '\n';
  }
  return out;
}

std::string grid_csv(const ScanGrid& grid) {
  std::string out = "r0,theta0,tau_c,Wstar,dE,dUpi,status\n";
  for (std::size_t i = 0; i < grid.r0_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.theta0_values.size(); ++j) {
      const ScanCell& cell = grid.at(i, j);
      out += format_double(grid.r0_values[i]);
      out += ',';
      out += format_double(grid.theta0_values[j]);
      out += ',';
      out += format_double(cell.tau_c);
      out += ',';
      out += format_double(cell.work_env);
      out += ',';
      out += format_double(cell.ergotropy_delta);
      out += ',';
      out += format_double(cell.passive_delta);
      out += ',';
      out += to_string(cell.status);
      out += '\n';
    }
  }
  return out;
}

std::string line_csv(const std::vector<LineRow>& rows,
                     const std::string& param_name) {
  std::string out = param_name + ",Wstar,dE,dUpi,Wstar_n,dE_n,dUpi_n\n";
  for (const LineRow& row : rows) {
    out += format_double(row.parameter);
    out += ',';
    out += format_double(row.markovian.work_env);
    out += ',';
    out += format_double(row.markovian.ergotropy_delta);
    out += ',';
    out += format_double(row.markovian.passive_delta);
    out += ',';
    out += format_double(row.non_markovian.work_env);
    out += ',';
    out += format_double(row.non_markovian.ergotropy_delta);
    out += ',';
    out += format_double(row.non_markovian.passive_delta);
    out += '\n';
  }
  return out;
}

}  // namespace qerg
