#include "qerg/thermo.hpp"

#include <cmath>
#include <sstream>

#include "qerg/quadrature.hpp"

namespace qerg {

namespace {

constexpr double kHeatTol = 1e-10;
constexpr int kMaxDepth = 40;
constexpr double kDegenerateRadius = 1e-9;

void check_time(double t) {
  if (!(t >= 0.0)) {
    std::ostringstream msg;
    msg << "time must be >= 0 (got " << t << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

Trajectory::Trajectory(const ChannelSpec& spec, BlochVector b0) : spec_(spec) {
  b0 = clamp_to_ball(b0);
  c0_sq_ = b0.x * b0.x + b0.y * b0.y;
  z0_ = b0.z;
  r0_ = std::sqrt(c0_sq_ + z0_ * z0_);
}

Trajectory Trajectory::from_polar(const ChannelSpec& spec, double r0,
                                  double theta0) {
  if (!(r0 >= -kBallTol && r0 <= 1.0 + kBallTol)) {
    throw DomainError("from_polar: r0 outside [0,1]");
  }
  const double pi = std::acos(-1.0);
  if (!(theta0 >= -kBallTol && theta0 <= pi + kBallTol)) {
    throw DomainError("from_polar: theta0 outside [0,pi]");
  }
  r0 = std::fmin(std::fmax(r0, 0.0), 1.0);
  theta0 = std::fmin(std::fmax(theta0, 0.0), pi);
  Trajectory traj;
  traj.spec_ = spec;
  const double ct = r0 * std::sin(theta0);
  traj.c0_sq_ = ct * ct;
  traj.z0_ = r0 * std::cos(theta0);
  traj.r0_ = r0;
  return traj;
}

Trajectory::State Trajectory::at(double t) const {
  const double q = kernel(spec_, t);
  const double qd = kernel_derivative(spec_, t);
  State s{};
  if (spec_.is_pd()) {
    const double e2q = std::exp(-2.0 * q);
    s.coherence_sq = c0_sq_ * e2q;
    s.z = z0_;
    s.dz_dt = 0.0;
    s.dradius_sq_dt = -2.0 * qd * e2q * c0_sq_;
  } else {
    s.coherence_sq = c0_sq_ * q;
    s.z = 1.0 - q * (1.0 - z0_);
    s.dz_dt = -qd * (1.0 - z0_);
    s.dradius_sq_dt = qd * (c0_sq_ - 2.0 * (1.0 - z0_) * s.z);
  }
  s.radius = std::sqrt(s.coherence_sq + s.z * s.z);
  return s;
}

double Trajectory::dradius_dt(double t) const {
  const State s = at(t);
  return s.dradius_sq_dt / (2.0 * std::fmax(s.radius, kRadiusFloor));
}

double Trajectory::ergotropy(double t) const {
  const State s = at(t);
  return s.radius - s.z;
}

double Trajectory::ergotropy_incoherent(double t) const {
  return 2.0 * std::fmax(0.0, -z(t));
}

double Trajectory::heat_rate(double t) const {
  const State s = at(t);
  const double r = std::fmax(s.radius, kRadiusFloor);
  return -(s.z / r) * (s.dradius_sq_dt / (2.0 * r));
}

double Trajectory::work_rate(double t) const {
  const State s = at(t);
  const double r = std::fmax(s.radius, kRadiusFloor);
  return -s.dz_dt + (s.z / r) * (s.dradius_sq_dt / (2.0 * r));
}

double heat(const Trajectory& traj, double t) {
  check_time(t);
  return adaptive_simpson([&](double s) { return traj.heat_rate(s); }, 0.0, t,
                          kHeatTol, kMaxDepth);
}

double heat(const ChannelSpec& spec, BlochVector b0, double t) {
  return heat(Trajectory(spec, b0), t);
}

double work_env(const Trajectory& traj, double t) {
  check_time(t);
  const double dz = traj.z(t) - traj.initial_z();
  return -dz - heat(traj, t);
}

double work_env(const ChannelSpec& spec, BlochVector b0, double t) {
  return work_env(Trajectory(spec, b0), t);
}

double work_env_integral(const ChannelSpec& spec, BlochVector b0, double t) {
  check_time(t);
  const Trajectory traj(spec, b0);
  return adaptive_simpson([&](double s) { return traj.work_rate(s); }, 0.0, t,
                          kHeatTol, kMaxDepth);
}

double passive_variation(const Trajectory& traj, double t) {
  check_time(t);
  return traj.initial_radius() - traj.radius(t);
}

double passive_variation(const ChannelSpec& spec, BlochVector b0, double t) {
  return passive_variation(Trajectory(spec, b0), t);
}

ErgotropyVariation ergotropy_variation(const Trajectory& traj, double t) {
  check_time(t);
  ErgotropyVariation out{};
  out.total = traj.ergotropy(t) - traj.ergotropy(0.0);
  out.incoherent = traj.ergotropy_incoherent(t) - traj.ergotropy_incoherent(0.0);
  out.coherent = out.total - out.incoherent;
  return out;
}

ErgotropyVariation ergotropy_variation(const ChannelSpec& spec, BlochVector b0,
                                       double t) {
  return ergotropy_variation(Trajectory(spec, b0), t);
}

ThermoLedger ledger(const ChannelSpec& spec, BlochVector b0,
                    const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw DomainError("ledger: empty time grid");
  if (!(t_grid.front() >= 0.0)) throw DomainError("ledger: negative grid time");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("ledger: grid must be strictly increasing");
    }
  }

  const Trajectory traj(spec, b0);
  // Keep the accumulated quadrature error of the longest admissible grid
  // within the 1e-8 residual budget.
  const double interval_tol =
      std::fmin(1e-12, 2.5e-9 / static_cast<double>(t_grid.size() + 1));

  ThermoLedger led;
  led.times = t_grid;
  const std::size_t n = t_grid.size();
  led.energy.resize(n);
  led.heat.resize(n);
  led.work_env.resize(n);
  led.passive_energy.resize(n);
  led.ergotropy.resize(n);
  led.residual_first_law.resize(n);
  led.residual_ergotropy.resize(n);

  const double z0 = traj.initial_z();
  const double r0 = traj.initial_radius();
  const double e0 = traj.ergotropy(0.0);

  double q_acc = 0.0;
  double w_acc = 0.0;
  double prev_t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_grid[i];
    if (t > prev_t) {
      const double q_seg = adaptive_simpson(
          [&](double s) { return traj.heat_rate(s); }, prev_t, t, interval_tol,
          kMaxDepth);
      const double w_seg = adaptive_simpson(
          [&](double s) { return traj.work_rate(s); }, prev_t, t, interval_tol,
          kMaxDepth);
      // Richardson consistency check on the interval: one halving of the
      // heat segment bounds the local error estimate.
      const double mid = 0.5 * (prev_t + t);
      const double q_half =
          adaptive_simpson([&](double s) { return traj.heat_rate(s); }, prev_t,
                           mid, interval_tol, kMaxDepth) +
          adaptive_simpson([&](double s) { return traj.heat_rate(s); }, mid, t,
                           interval_tol, kMaxDepth);
      led.max_quadrature_estimate =
          std::fmax(led.max_quadrature_estimate, std::fabs(q_half - q_seg));
      q_acc += q_seg;
      w_acc += w_seg;
      prev_t = t;
    }
    const double zt = traj.z(t);
    const double rt = traj.radius(t);
    led.energy[i] = -zt;
    led.heat[i] = q_acc;
    led.work_env[i] = w_acc;
    led.passive_energy[i] = -rt;
    led.ergotropy[i] = rt - zt;
    const double du = -(zt - z0);
    const double de = (rt - zt) - e0;
    const double dupi = r0 - rt;
    led.residual_first_law[i] = std::fabs(du - q_acc - w_acc);
    led.residual_ergotropy[i] = std::fabs(de - q_acc - w_acc + dupi);
  }
  return led;
}

SpectralWork work_env_spectral(const ChannelSpec& spec, BlochVector b0,
                               double t, double h) {
  check_time(t);
  if (!(h > 0.0)) throw DomainError("work_env_spectral: h must be > 0");
  const Trajectory traj(spec, b0);

  // <r_+|H|r_+> = -z/r for the eigenvalue (1+r)/2, +z/r for (1-r)/2; the
  // eigenvalue weights are taken at the interval midpoint, giving the
  // midpoint rule for -r d(z/r).
  const auto ratio = [&](double s) {
    return traj.z(s) / std::fmax(traj.radius(s), kRadiusFloor);
  };

  SpectralWork out;
  double s0 = 0.0;
  while (s0 < t) {
    const double s1 = std::fmin(s0 + h, t);
    const double sm = 0.5 * (s0 + s1);
    const double r0 = traj.radius(s0);
    const double rm = traj.radius(sm);
    const double r1 = traj.radius(s1);
    if (r0 < kDegenerateRadius || rm < kDegenerateRadius ||
        r1 < kDegenerateRadius) {
      out.value += traj.work_rate(sm) * (s1 - s0);
      out.used_fallback = true;
    } else {
      const double p_plus = 0.5 * (1.0 + rm);
      const double p_minus = 0.5 * (1.0 - rm);
      const double d_ratio = ratio(s1) - ratio(s0);
      out.value += p_plus * (-d_ratio) + p_minus * d_ratio;
    }
    s0 = s1;
  }
  return out;
}

}  // namespace qerg
