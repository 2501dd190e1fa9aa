#pragma once

#include <string>
#include <vector>

#include "qerg/scan.hpp"
#include "qerg/thermo.hpp"

namespace qerg {

/// Full-precision float formatting (17 significant digits), so CSV output
/// round-trips bit-exactly through strtod.
std::string format_double(double v);

const char* to_string(RootStatus status);

/// Columns: gt,C,U,r,E,E_I,E_C,Q,Wstar,Upi. One row per ledger time,
/// comma-separated, LF line endings.
std::string trajectory_csv(const ChannelSpec& spec, BlochVector b0,
                           const ThermoLedger& ledger);

/// Columns: r0,theta0,tau_c,Wstar,dE,dUpi,status. Row-major, r0 slow.
std::string grid_csv(const ScanGrid& grid);

/// Columns: <param>,Wstar,dE,dUpi,Wstar_n,dE_n,dUpi_n.
std::string line_csv(const std::vector<LineRow>& rows,
                     const std::string& param_name);

}  // namespace qerg
