#include "qerg/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "qerg/quadrature.hpp"

namespace qerg {

namespace {

constexpr double kRootWidth = 1e-11;      // bisection width for kernel roots
constexpr double kTangencyTol = 1e-7;     // |q - threshold| at a grazing extremum
constexpr double kDegenerateQ = 1e-14;    // max |Q| for a degenerate trajectory
constexpr double kCharQTarget = 1e-10;    // |Q| at a refined characteristic time
constexpr double kCharQLimit = 1e-9;      // hard bound from the root contract
constexpr double kSegmentTol = 1e-13;     // adaptive tolerance inside a bracket

double resolve_horizon(const ChannelSpec& spec, double horizon) {
  return horizon > 0.0 ? horizon : default_horizon(spec);
}

double resolve_step(const ChannelSpec& spec, double step) {
  return step > 0.0 ? step : default_grid_step(spec);
}

struct UniformGrid {
  double h;
  std::size_t n;
  double node(std::size_t i) const { return static_cast<double>(i) * h; }
};

UniformGrid make_grid(double horizon, double step) {
  if (!(horizon > 0.0)) throw DomainError("horizon must be > 0");
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  const auto n = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  return {horizon / static_cast<double>(std::max<std::size_t>(n, 1)),
          std::max<std::size_t>(n, 1)};
}

// Oscillation period of the non-Markovian AD kernel, or +inf when the
// kernel is monotone (Markovian and hyperbolic-branch channels).
double kernel_period(const ChannelSpec& spec) {
  if (!spec.is_ad() || spec.is_markovian()) {
    return std::numeric_limits<double>::infinity();
  }
  const double d_sq = spec.gamma_ratio * (2.0 - spec.gamma_ratio);
  if (!(d_sq > 0.0)) return std::numeric_limits<double>::infinity();
  return 4.0 * std::acos(-1.0) / std::sqrt(d_sq);
}

template <class F>
double bisect(const F& f, double a, double b, double fa, double width) {
  for (int iter = 0; iter < 200 && (b - a) > width; ++iter) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double default_horizon(const ChannelSpec& spec) {
  return spec.is_markovian() ? 50.0 : 600.0;
}

double default_grid_step(const ChannelSpec& spec) {
  return spec.is_markovian() ? 1e-3 : 1e-2;
}

SuddenChangeTimes sudden_change_times(const ChannelSpec& spec, double u0,
                                      double horizon, double grid_step) {
  if (!spec.is_ad()) {
    throw DomainError("sudden-change times are defined for the AD channel");
  }
  if (!(u0 > 0.0 && u0 <= 1.0)) {
    std::ostringstream msg;
    msg << "sudden death requires initial energy in (0,1] (got " << u0 << ")";
    throw DomainError(msg.str());
  }
  horizon = resolve_horizon(spec, horizon);
  const UniformGrid grid = make_grid(horizon, resolve_step(spec, grid_step));

  const double threshold = 1.0 / (1.0 + u0);
  const auto f = [&](double t) { return kernel(spec, t) - threshold; };
  const auto fd = [&](double t) { return kernel_derivative(spec, t); };

  std::vector<double> fs(grid.n + 1);
  std::vector<double> fds(grid.n + 1);
  for (std::size_t i = 0; i <= grid.n; ++i) {
    fs[i] = f(grid.node(i));
    fds[i] = fd(grid.node(i));
  }

  SuddenChangeTimes out;
  // Grazing contacts first: refine every extremum of the kernel and treat
  // near-zero values of f there as tangencies, not root pairs.
  std::vector<std::pair<double, double>> suppressed;
  for (std::size_t i = 0; i + 1 <= grid.n; ++i) {
    if (fds[i] * fds[i + 1] < 0.0) {
      const double t_e =
          bisect(fd, grid.node(i), grid.node(i + 1), fds[i], kRootWidth);
      if (std::fabs(f(t_e)) < kTangencyTol) {
        out.tangencies.push_back(t_e);
        suppressed.emplace_back(t_e - grid.h, t_e + grid.h);
      }
    }
  }

  for (std::size_t i = 0; i + 1 <= grid.n; ++i) {
    const double a = grid.node(i);
    const double b = grid.node(i + 1);
    bool inside_tangency = false;
    for (const auto& range : suppressed) {
      if (b > range.first && a < range.second) inside_tangency = true;
    }
    if (inside_tangency) continue;
    double root = -1.0;
    if (fs[i] == 0.0 && i > 0) {
      root = a;
    } else if (fs[i] * fs[i + 1] < 0.0) {
      root = bisect(f, a, b, fs[i], kRootWidth);
    }
    if (root > 0.0) out.times.push_back(root);
  }
  return out;
}

std::optional<double> eternal_death_time(const ChannelSpec& spec, double u0,
                                         double horizon, double grid_step) {
  horizon = resolve_horizon(spec, horizon);
  grid_step = resolve_step(spec, grid_step);
  const SuddenChangeTimes roots = sudden_change_times(spec, u0, horizon,
                                                      grid_step);
  if (roots.times.empty()) return std::nullopt;
  const double t_last = roots.times.back();
  const double threshold = 1.0 / (1.0 + u0);

  // Validate on a grid finer than the kernel oscillation so a crossing the
  // bracketing grid missed cannot slip through.
  const double fine = std::fmin(grid_step, kernel_period(spec) / 64.0);
  const auto f = [&](double t) { return kernel(spec, t) - threshold; };
  const auto fd = [&](double t) { return kernel_derivative(spec, t); };
  double prev_t = t_last;
  double prev_fd = fd(prev_t);
  for (double t = t_last + fine; t <= horizon + 0.5 * fine;
       t += fine) {
    const double tt = std::fmin(t, horizon);
    if (f(tt) >= kTangencyTol) {
      std::ostringstream msg;
      msg << "eternal-death validation failed: kernel re-crosses the "
             "threshold at t = "
          << tt << "; refine grid_step";
      throw NumericalError(msg.str());
    }
    const double cur_fd = fd(tt);
    if (prev_fd * cur_fd < 0.0) {
      const double t_e = bisect(fd, prev_t, tt, prev_fd, kRootWidth);
      if (f(t_e) >= kTangencyTol) {
        std::ostringstream msg;
        msg << "eternal-death validation failed: kernel extremum above the "
               "threshold at t = "
            << t_e << "; refine grid_step";
        throw NumericalError(msg.str());
      }
    }
    prev_t = tt;
    prev_fd = cur_fd;
  }
  return t_last;
}

FreezingVerdict detect_freezing(const ChannelSpec& spec, BlochVector b0,
                                double horizon, double tol, int samples) {
  horizon = resolve_horizon(spec, horizon);
  if (samples < 2) throw DomainError("detect_freezing: samples must be >= 2");
  const Trajectory traj(spec, b0);
  const double e0 = traj.ergotropy(0.0);
  double dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = horizon * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    dev = std::fmax(dev, std::fabs(traj.ergotropy(t) - e0));
  }
  FreezingVerdict verdict;
  verdict.frozen = dev < tol;
  verdict.value = e0;
  verdict.max_deviation = dev;
  verdict.analytic = spec.is_pd() &&
                     traj.initial_coherence_sq() <= kBallTol * kBallTol &&
                     traj.initial_z() < 0.0;
  return verdict;
}

CharacteristicTimes characteristic_times(const Trajectory& traj,
                                         double horizon, double grid_step) {
  horizon = resolve_horizon(traj.spec(), horizon);
  grid_step = resolve_step(traj.spec(), grid_step);
  const UniformGrid grid = make_grid(horizon, grid_step);
  const double t_min = 10.0 * grid_step;

  CharacteristicTimes out;
  double q_prev = 0.0;
  double rate_prev = traj.heat_rate(0.0);
  double max_abs_q = 0.0;
  for (std::size_t i = 1; i <= grid.n; ++i) {
    const double a = grid.node(i - 1);
    const double b = grid.node(i);
    const double rate_mid = traj.heat_rate(0.5 * (a + b));
    const double rate_b = traj.heat_rate(b);
    const double q_b =
        q_prev + (b - a) / 6.0 * (rate_prev + 4.0 * rate_mid + rate_b);
    max_abs_q = std::fmax(max_abs_q, std::fabs(q_b));

    if (b > t_min && q_prev * q_b < 0.0) {
      // Refine on the cumulative Q anchored at the bracket start.
      double lo = a;
      double hi = b;
      double q_lo = q_prev;
      double root = -1.0;
      for (int iter = 0; iter < 200; ++iter) {
        const double m = 0.5 * (lo + hi);
        const double q_m =
            q_lo + adaptive_simpson([&](double s) { return traj.heat_rate(s); },
                                    lo, m, kSegmentTol, 40);
        if (std::fabs(q_m) < kCharQTarget || (hi - lo) < 1e-12 * std::fmax(1.0, m)) {
          if (std::fabs(q_m) > kCharQLimit) {
            std::ostringstream msg;
            msg << "characteristic-time refinement stalled at t = " << m
                << " with |Q| = " << std::fabs(q_m);
            throw NumericalError(msg.str());
          }
          root = m;
          break;
        }
        if ((q_m < 0.0) == (q_lo < 0.0)) {
          lo = m;
          q_lo = q_m;
        } else {
          hi = m;
        }
      }
      if (root > t_min) out.times.push_back(root);
    }
    q_prev = q_b;
    rate_prev = rate_b;
  }

  if (out.times.empty()) {
    out.status =
        max_abs_q < kDegenerateQ ? RootStatus::Degenerate : RootStatus::None;
  } else {
    out.status = RootStatus::Root;
  }
  return out;
}

CharacteristicTimes characteristic_times(const ChannelSpec& spec,
                                         BlochVector b0, double horizon,
                                         double grid_step) {
  return characteristic_times(Trajectory(spec, b0), horizon, grid_step);
}

std::optional<double> largest_characteristic(const ChannelSpec& spec,
                                             BlochVector b0, double horizon,
                                             double grid_step) {
  const CharacteristicTimes ct =
      characteristic_times(spec, b0, horizon, grid_step);
  if (ct.times.empty()) return std::nullopt;
  return ct.times.back();
}

EventReport report(const ChannelSpec& spec, BlochVector b0, double horizon,
                   double grid_step, double freeze_tol) {
  horizon = resolve_horizon(spec, horizon);
  grid_step = resolve_step(spec, grid_step);
  b0 = clamp_to_ball(b0);

  EventReport rep;
  rep.horizon = horizon;
  rep.grid_step = grid_step;

  const Trajectory traj(spec, b0);
  const double u0 = -traj.initial_z();
  const bool incoherent_start =
      traj.initial_coherence_sq() <= kBallTol * kBallTol;
  if (spec.is_ad() && incoherent_start && u0 > 0.0) {
    SuddenChangeTimes sct = sudden_change_times(spec, u0, horizon, grid_step);
    rep.sudden_times = std::move(sct.times);
    rep.sudden_tangencies = std::move(sct.tangencies);
    rep.eternal_death = eternal_death_time(spec, u0, horizon, grid_step);
  }

  const FreezingVerdict fv = detect_freezing(spec, b0, horizon, freeze_tol);
  rep.frozen = fv.frozen;
  rep.frozen_value = fv.value;

  // Same sampling verdict for the incoherent component.
  {
    const double e0 = traj.ergotropy_incoherent(0.0);
    double dev = 0.0;
    const int samples = 5001;
    for (int i = 0; i < samples; ++i) {
      const double t = horizon * static_cast<double>(i) /
                       static_cast<double>(samples - 1);
      dev = std::fmax(dev, std::fabs(traj.ergotropy_incoherent(t) - e0));
    }
    rep.frozen_incoherent = dev < freeze_tol;
    rep.frozen_incoherent_value = e0;
  }

  CharacteristicTimes ct = characteristic_times(spec, b0, horizon, grid_step);
  rep.characteristic_status = ct.status;
  rep.characteristic_times = std::move(ct.times);
  if (!rep.characteristic_times.empty()) {
    rep.largest_characteristic = rep.characteristic_times.back();
  }
  return rep;
}

}  // namespace qerg
