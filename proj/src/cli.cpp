#include "qerg/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qerg/csv.hpp"
#include "qerg/events.hpp"
#include "qerg/oracle.hpp"
#include "qerg/scan.hpp"
#include "qerg/version.hpp"

namespace qerg {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSelfTest = 4;

struct ChannelFlags {
  std::string channel;
  std::string regime;
  double gamma_ratio = -1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--channel", channel, "Channel kind: pd or ad")
        ->required()
        ->check(CLI::IsMember({"pd", "ad"}));
    cmd->add_option("--regime", regime, "Regime: markov or nm")
        ->required()
        ->check(CLI::IsMember({"markov", "nm"}));
    cmd->add_option("--gamma-ratio", gamma_ratio,
                    "Gamma/gamma for the non-Markovian regime");
  }

  ChannelSpec build() const {
    const bool markov = regime == "markov";
    if (markov && gamma_ratio >= 0.0) {
      throw DomainError("--gamma-ratio requires --regime nm");
    }
    if (!markov && !(gamma_ratio > 0.0)) {
      throw DomainError("--regime nm requires --gamma-ratio > 0");
    }
    if (channel == "pd") {
      return markov ? ChannelSpec::pd_markovian()
                    : ChannelSpec::pd_non_markovian(gamma_ratio);
    }
    return markov ? ChannelSpec::ad_markovian()
                  : ChannelSpec::ad_non_markovian(gamma_ratio);
  }

  void record(std::map<std::string, std::string>& params) const {
    params["channel"] = channel;
    params["regime"] = regime;
    if (regime == "nm") params["gamma-ratio"] = format_double(gamma_ratio);
  }
};

struct StateFlags {
  double c0 = 0.0, u0 = 0.0;
  double r0 = 0.0, theta0 = 0.0, phi0 = 0.0;
  CLI::Option* c0_opt = nullptr;
  CLI::Option* u0_opt = nullptr;
  CLI::Option* r0_opt = nullptr;
  CLI::Option* theta0_opt = nullptr;
  CLI::Option* phi0_opt = nullptr;

  void attach(CLI::App* cmd) {
    c0_opt = cmd->add_option("--c0", c0, "Initial coherence (azimuth 0)");
    u0_opt = cmd->add_option("--u0", u0, "Initial energy");
    r0_opt = cmd->add_option("--r0", r0, "Initial Bloch radius");
    theta0_opt = cmd->add_option("--theta0", theta0, "Initial polar angle");
    phi0_opt = cmd->add_option("--phi0", phi0, "Initial azimuth (default 0)");
  }

  bool uses_cu() const { return c0_opt->count() > 0 || u0_opt->count() > 0; }
  bool uses_polar() const {
    return r0_opt->count() > 0 || theta0_opt->count() > 0 ||
           phi0_opt->count() > 0;
  }

  BlochVector build() const {
    if (uses_cu() && uses_polar()) {
      throw DomainError("give either --c0/--u0 or --r0/--theta0, not both");
    }
    if (uses_cu()) {
      if (c0_opt->count() == 0 || u0_opt->count() == 0) {
        throw DomainError("--c0 and --u0 must be given together");
      }
      if (!(c0 >= 0.0)) throw DomainError("--c0 must be >= 0");
      return clamp_to_ball({c0, 0.0, -u0});
    }
    if (r0_opt->count() == 0 || theta0_opt->count() == 0) {
      throw DomainError(
          "initial state required: --c0/--u0 or --r0/--theta0 [--phi0]");
    }
    return polar_init(r0, theta0, phi0);
  }

  void record(std::map<std::string, std::string>& params) const {
    if (uses_cu()) {
      params["c0"] = format_double(c0);
      params["u0"] = format_double(u0);
    } else {
      params["r0"] = format_double(r0);
      params["theta0"] = format_double(theta0);
      params["phi0"] = format_double(phi0);
    }
  }
};

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << data;
}

/// Emits the payload (stdout or --out) and, for file output, the paired
/// <out>.manifest.json.
void emit(const std::string& out_path, const std::string& data,
          const std::string& subcommand,
          const std::map<std::string, std::string>& params,
          double duration_seconds) {
  if (out_path.empty()) {
    std::cout << data;
    return;
  }
  write_file(out_path, data);
  RunManifest manifest;
  manifest.subcommand = subcommand;
  manifest.parameters = params;
  manifest.tool_version = kVersion;
  manifest.duration_seconds = duration_seconds;

  json j;
  j["subcommand"] = manifest.subcommand;
  j["parameters"] = manifest.parameters;
  j["tool_version"] = manifest.tool_version;
  j["duration_seconds"] = manifest.duration_seconds;
  j["output"] = out_path;
  write_file(out_path + ".manifest.json", j.dump(2) + "\n");
}

std::string regime_label(const ChannelSpec& spec) {
  return spec.is_markovian() ? "markov" : "nm";
}

json report_json(const ChannelSpec& spec, const EventReport& rep) {
  json j;
  j["channel"] = spec.is_pd() ? "pd" : "ad";
  j["regime"] = regime_label(spec);
  if (!spec.is_markovian()) j["gamma_ratio"] = spec.gamma_ratio;
  j["sudden_times"] = rep.sudden_times;
  j["sudden_tangencies"] = rep.sudden_tangencies;
  j["eternal_death"] =
      rep.eternal_death ? json(*rep.eternal_death) : json(nullptr);
  j["frozen"] = rep.frozen;
  j["frozen_value"] = rep.frozen_value;
  j["frozen_incoherent"] = rep.frozen_incoherent;
  j["frozen_incoherent_value"] = rep.frozen_incoherent_value;
  j["characteristic_times"] = rep.characteristic_times;
  j["characteristic_status"] = to_string(rep.characteristic_status);
  j["largest_characteristic"] = rep.largest_characteristic
                                    ? json(*rep.largest_characteristic)
                                    : json(nullptr);
  j["horizon"] = rep.horizon;
  j["grid_step"] = rep.grid_step;
  return j;
}

std::string report_text(const ChannelSpec& spec, const EventReport& rep) {
  std::ostringstream out;
  out << "channel: " << (spec.is_pd() ? "pd" : "ad")
      << "  regime: " << regime_label(spec);
  if (!spec.is_markovian()) out << "  gamma_ratio: " << spec.gamma_ratio;
  out << "\n";
  out << "sudden_times:";
  if (rep.sudden_times.empty()) {
    out << " (none)";
  } else {
    for (std::size_t i = 0; i < rep.sudden_times.size(); ++i) {
      out << ' ' << format_double(rep.sudden_times[i])
          << (i % 2 == 0 ? " (death)" : " (birth)");
    }
  }
  out << "\n";
  if (!rep.sudden_tangencies.empty()) {
    out << "tangencies:";
    for (const double t : rep.sudden_tangencies) out << ' ' << format_double(t);
    out << "\n";
  }
  out << "eternal_death: "
      << (rep.eternal_death ? format_double(*rep.eternal_death) : "(none)")
      << "\n";
  out << "frozen: " << (rep.frozen ? "yes" : "no")
      << "  value: " << format_double(rep.frozen_value) << "\n";
  out << "frozen_incoherent: " << (rep.frozen_incoherent ? "yes" : "no")
      << "  value: " << format_double(rep.frozen_incoherent_value) << "\n";
  out << "characteristic_status: " << to_string(rep.characteristic_status)
      << "\n";
  out << "characteristic_times:";
  if (rep.characteristic_times.empty()) {
    out << " (none)";
  } else {
    for (const double t : rep.characteristic_times) {
      out << ' ' << format_double(t);
    }
  }
  out << "\n";
  out << "largest_characteristic: "
      << (rep.largest_characteristic
              ? format_double(*rep.largest_characteristic)
              : "(none)")
      << "\n";
  out << "horizon: " << format_double(rep.horizon)
      << "  grid_step: " << format_double(rep.grid_step) << "\n";
  return out.str();
}

int run_selftest();

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"qubit ergotropy dynamics and entropy-based thermodynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);

  // trajectory
  auto* traj_cmd = app.add_subcommand(
      "trajectory", "Dump C, U, r, ergotropies and the thermodynamic ledger "
                    "along gamma*t as CSV");
  ChannelFlags traj_channel;
  StateFlags traj_state;
  traj_channel.attach(traj_cmd);
  traj_state.attach(traj_cmd);
  double tmax = 0.0;
  int steps = 1000;
  std::string traj_out;
  std::string traj_format = "csv";
  traj_cmd->add_option("--tmax", tmax, "Final gamma*t")->required();
  traj_cmd->add_option("--steps", steps, "Number of grid intervals");
  traj_cmd->add_option("--out", traj_out, "Output file (default stdout)");
  traj_cmd->add_option("--format", traj_format, "Output format")
      ->check(CLI::IsMember({"csv"}));

  // events
  auto* events_cmd = app.add_subcommand(
      "events", "Sudden-change times, eternal death, freezing verdicts and "
                "characteristic times");
  ChannelFlags events_channel;
  StateFlags events_state;
  events_channel.attach(events_cmd);
  events_state.attach(events_cmd);
  double events_horizon = 0.0;
  double events_step = 0.0;
  double events_tol = 1e-9;
  std::string events_out;
  std::string events_format = "text";
  events_cmd->add_option("--horizon", events_horizon,
                         "Scan horizon in gamma*t (default per regime)");
  events_cmd->add_option("--grid-step", events_step,
                         "Bracketing step (default per regime)");
  events_cmd->add_option("--tol", events_tol, "Freezing tolerance");
  events_cmd->add_option("--out", events_out, "Output file (default stdout)");
  events_cmd->add_option("--format", events_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  // adiabatic
  auto* adia_cmd = app.add_subcommand(
      "adiabatic",
      "Characteristic (heat-zero) times and W*, dE, dU_pi at each");
  ChannelFlags adia_channel;
  StateFlags adia_state;
  adia_channel.attach(adia_cmd);
  adia_state.attach(adia_cmd);
  double adia_horizon = 0.0;
  double adia_step = 0.0;
  bool adia_largest = false;
  std::string adia_out;
  std::string adia_format = "text";
  adia_cmd->add_option("--horizon", adia_horizon, "Scan horizon in gamma*t");
  adia_cmd->add_option("--grid-step", adia_step, "Bracketing step");
  adia_cmd->add_flag("--largest", adia_largest,
                     "Report only the largest characteristic time");
  adia_cmd->add_option("--out", adia_out, "Output file (default stdout)");
  adia_cmd->add_option("--format", adia_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  // scan
  auto* scan_cmd = app.add_subcommand(
      "scan", "Initial-state grid and line scans (figure presets 3-6)");
  int figure = 0;
  int points = 0;
  double scan_ratio = 0.01;
  std::string scan_regime = "markov";
  bool full_theta = false;
  double scan_horizon = 0.0;
  double scan_step = 0.0;
  std::string scan_out;
  scan_cmd->add_option("--figure", figure, "Preset: 3, 4, 5 or 6")
      ->required()
      ->check(CLI::IsMember({3, 4, 5, 6}));
  scan_cmd->add_option("--points", points,
                       "Axis resolution (default 50 for grids, 101 for lines)");
  scan_cmd->add_option("--gamma-ratio", scan_ratio,
                       "Gamma/gamma of the non-Markovian side (default 0.01)");
  scan_cmd->add_option("--regime", scan_regime,
                       "Grid presets only: markov or nm")
      ->check(CLI::IsMember({"markov", "nm"}));
  scan_cmd->add_flag("--full-theta", full_theta,
                     "Grid presets: span theta0 up to pi even when "
                     "non-Markovian");
  scan_cmd->add_option("--horizon", scan_horizon, "Override scan horizon");
  scan_cmd->add_option("--grid-step", scan_step, "Override bracketing step");
  scan_cmd->add_option("--out", scan_out, "Output file (default stdout)");

  // selftest
  auto* selftest_cmd = app.add_subcommand(
      "selftest", "Run the oracle-equivalence and identity suites");

  std::vector<std::string> argv_like;
  argv_like.reserve(args.size() + 1);
  argv_like.push_back(kToolName);
  argv_like.insert(argv_like.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_like.size());
  for (auto& s : argv_like) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  const auto started = std::chrono::steady_clock::now();
  const auto elapsed = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         started)
        .count();
  };

  try {
    if (traj_cmd->parsed()) {
      if (!(tmax > 0.0)) throw DomainError("--tmax must be > 0");
      if (steps < 1) throw DomainError("--steps must be >= 1");
      const ChannelSpec spec = traj_channel.build();
      const BlochVector b0 = traj_state.build();
      std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = tmax * static_cast<double>(i) / static_cast<double>(steps);
      }
      const ThermoLedger led = ledger(spec, b0, grid);
      std::map<std::string, std::string> params;
      traj_channel.record(params);
      traj_state.record(params);
      params["tmax"] = format_double(tmax);
      params["steps"] = std::to_string(steps);
      params["format"] = traj_format;
      emit(traj_out, trajectory_csv(spec, b0, led), "trajectory", params,
           elapsed());
      return kExitOk;
    }

    if (events_cmd->parsed()) {
      const ChannelSpec spec = events_channel.build();
      const BlochVector b0 = events_state.build();
      const EventReport rep =
          report(spec, b0, events_horizon, events_step, events_tol);
      std::map<std::string, std::string> params;
      events_channel.record(params);
      events_state.record(params);
      params["horizon"] = format_double(rep.horizon);
      params["grid-step"] = format_double(rep.grid_step);
      params["tol"] = format_double(events_tol);
      params["format"] = events_format;
      const std::string data = events_format == "json"
                                   ? report_json(spec, rep).dump(2) + "\n"
                                   : report_text(spec, rep);
      emit(events_out, data, "events", params, elapsed());
      return kExitOk;
    }

    if (adia_cmd->parsed()) {
      const ChannelSpec spec = adia_channel.build();
      const BlochVector b0 = adia_state.build();
      const double horizon =
          adia_horizon > 0.0 ? adia_horizon : default_horizon(spec);
      const double step =
          adia_step > 0.0 ? adia_step : default_grid_step(spec);
      CharacteristicTimes ct = characteristic_times(spec, b0, horizon, step);
      std::vector<double> times = ct.times;
      if (adia_largest && !times.empty()) times = {times.back()};

      json rows = json::array();
      std::ostringstream text;
      text << "characteristic_status: " << to_string(ct.status) << "\n";
      for (const double t : times) {
        const double w = work_env(spec, b0, t);
        const double de = ergotropy_variation(spec, b0, t).total;
        const double dupi = passive_variation(spec, b0, t);
        rows.push_back({{"t", t}, {"Wstar", w}, {"dE", de}, {"dUpi", dupi}});
        text << "t: " << format_double(t) << "  Wstar: " << format_double(w)
             << "  dE: " << format_double(de)
             << "  dUpi: " << format_double(dupi) << "\n";
      }
      std::map<std::string, std::string> params;
      adia_channel.record(params);
      adia_state.record(params);
      params["horizon"] = format_double(horizon);
      params["grid-step"] = format_double(step);
      params["largest"] = adia_largest ? "true" : "false";
      params["format"] = adia_format;
      std::string data;
      if (adia_format == "json") {
        json j;
        j["characteristic_status"] = to_string(ct.status);
        j["characteristic_times"] = ct.times;
        j["rows"] = rows;
        data = j.dump(2) + "\n";
      } else {
        data = text.str();
      }
      emit(adia_out, data, "adiabatic", params, elapsed());
      return kExitOk;
    }

    if (scan_cmd->parsed()) {
      std::map<std::string, std::string> params;
      params["figure"] = std::to_string(figure);
      std::string data;
      if (figure == 3 || figure == 4) {
        const int n = points > 0 ? points : 50;
        if (n < 2) throw DomainError("--points must be >= 2");
        const bool markov = scan_regime == "markov";
        ScanGrid grid;
        grid.channel = markov ? ChannelSpec::ad_markovian()
                              : ChannelSpec::ad_non_markovian(scan_ratio);
        grid.r0_values = linspace(0.0, 1.0, n);
        const double pi = std::acos(-1.0);
        const double theta_max = (!markov && !full_theta) ? 0.5 * pi : pi;
        grid.theta0_values = linspace(0.0, theta_max, n);
        grid.horizon = scan_horizon;
        grid.grid_step = scan_step;
        grid = grid_scan(std::move(grid));
        params["points"] = std::to_string(n);
        params["regime"] = scan_regime;
        if (!markov) {
          params["gamma-ratio"] = format_double(scan_ratio);
          params["full-theta"] = full_theta ? "true" : "false";
        }
        params["horizon"] = format_double(grid.horizon);
        params["grid-step"] = format_double(grid.grid_step);
        data = grid_csv(grid);
      } else {
        const int n = points > 0 ? points : 101;
        if (n < 2) throw DomainError("--points must be >= 2");
        if (!(scan_ratio > 0.0)) {
          throw DomainError("--gamma-ratio must be > 0");
        }
        params["points"] = std::to_string(n);
        params["gamma-ratio"] = format_double(scan_ratio);
        if (figure == 5) {
          const auto rows = line_scan_equator(linspace(0.0, 1.0, n), scan_ratio);
          data = line_csv(rows, "r0");
        } else {
          const double pi = std::acos(-1.0);
          const auto rows =
              line_scan_pure(linspace(0.0, 0.5 * pi, n), scan_ratio);
          data = line_csv(rows, "theta0");
        }
      }
      emit(scan_out, data, "scan", params, elapsed());
      return kExitOk;
    }

    if (selftest_cmd->parsed()) {
      return run_selftest();
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

namespace {

int run_selftest() {
  int failures = 0;
  const auto check = [&](bool ok, const std::string& label) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << label << "\n";
    if (!ok) ++failures;
  };

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto random_state = [&]() {
    while (true) {
      BlochVector b{unit(rng), unit(rng), unit(rng)};
      if (b.radius_sq() <= 1.0) return b;
    }
  };

  {
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const BlochVector b = random_state();
      const Observables obs = observables(b);
      const auto rho = oracle::density_matrix(b);
      worst = std::fmax(worst, std::fabs(obs.ergotropy -
                                         oracle::ergotropy_spectral(rho)));
      worst = std::fmax(
          worst, std::fabs(obs.ergotropy_incoherent -
                           oracle::ergotropy_incoherent_spectral(rho)));
    }
    check(worst < 1e-12, "closed-form vs spectral ergotropy (2000 states)");
  }

  const std::vector<ChannelSpec> specs = {
      ChannelSpec::pd_markovian(), ChannelSpec::pd_non_markovian(0.01),
      ChannelSpec::ad_markovian(), ChannelSpec::ad_non_markovian(0.01)};
  {
    double worst = 0.0;
    for (const auto& spec : specs) {
      for (int i = 0; i <= 100; ++i) {
        const double t = 20.0 * i / 100.0;
        const KrausPair kp = kraus(spec, t);
        const Mat2 defect = adjoint(kp.k0) * kp.k0 + adjoint(kp.k1) * kp.k1 -
                            Mat2::identity();
        worst = std::fmax(worst, frobenius_norm(defect));
      }
    }
    check(worst < 1e-12, "Kraus completeness (4 channels x 101 times)");
  }

  {
    double worst = 0.0;
    for (const auto& spec : specs) {
      for (int i = 0; i < 100; ++i) {
        const BlochVector b0 = random_state();
        const double t = 10.0 * (i + 1) / 100.0;
        const KrausPair kp = kraus(spec, t);
        const Mat2 rho0 = density_from_bloch(b0);
        const Mat2 rho1 =
            kp.k0 * rho0 * adjoint(kp.k0) + kp.k1 * rho0 * adjoint(kp.k1);
        const BlochVector via_kraus = bloch_from_density(rho1);
        const BlochVector via_closed = evolve(spec, b0, t);
        worst = std::fmax(worst,
                          std::fabs(via_kraus.x - via_closed.x) +
                              std::fabs(via_kraus.y - via_closed.y) +
                              std::fabs(via_kraus.z - via_closed.z));
      }
    }
    check(worst < 1e-12, "Kraus conjugation matches closed-form evolve");
  }

  {
    const auto point = oracle::equator_adiabatic_point();
    const ChannelSpec spec = ChannelSpec::ad_markovian();
    const BlochVector b0{1.0, 0.0, 0.0};
    const auto ct = characteristic_times(spec, b0, 0.0, 0.0);
    bool ok = ct.times.size() == 1;
    if (ok) {
      const double tc = ct.times.front();
      ok = std::fabs(tc - point.t_c) < 1e-6 &&
           std::fabs(work_env(spec, b0, tc) - point.work_env) < 1e-6 &&
           std::fabs(passive_variation(spec, b0, tc) - point.passive_delta) <
               1e-6 &&
           std::fabs(ergotropy_variation(spec, b0, tc).total -
                     point.ergotropy_delta) < 1e-6;
    }
    check(ok, "equator adiabatic point matches the antiderivative oracle");
  }

  {
    double worst = 0.0;
    std::uniform_real_distribution<double> tdist(0.0, 10.0);
    std::uniform_int_distribution<int> sdist(0, 3);
    for (int i = 0; i < 50; ++i) {
      const ChannelSpec spec = specs[static_cast<std::size_t>(sdist(rng))];
      const BlochVector b0 = random_state();
      const double t = tdist(rng);
      const Trajectory traj(spec, b0);
      const double du = -(traj.z(t) - traj.initial_z());
      const double residual =
          std::fabs(du - heat(spec, b0, t) - work_env_integral(spec, b0, t));
      worst = std::fmax(worst, residual);
    }
    check(worst < 1e-8, "first law dU = Q + W* (50 random trajectories)");
  }

  {
    double worst = 0.0;
    const BlochVector b0{0.6, -0.3, 0.4};
    for (int i = 1; i <= 10; ++i) {
      const double t = static_cast<double>(i);
      const BlochVector a = evolve_master(b0, t, 1e-3);
      const BlochVector b = markovian_solution(b0, t);
      worst = std::fmax(worst, std::fabs(a.x - b.x));
      worst = std::fmax(worst, std::fabs(a.y - b.y));
      worst = std::fmax(worst, std::fabs(a.z - b.z));
    }
    check(worst < 1e-8, "RK4 master equation vs closed-form solution");
  }

  if (failures > 0) {
    std::cout << failures << " self-test failure(s)\n";
    return kExitSelfTest;
  }
  std::cout << "all self-tests passed\n";
  return kExitOk;
}

}  // namespace

}  // namespace qerg
