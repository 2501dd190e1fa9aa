#include "qerg/channels.hpp"

#include <cmath>
#include <sstream>

#include "qerg/errors.hpp"

namespace qerg {

namespace {

void check_time(double t) {
  if (!(t >= 0.0)) {
    std::ostringstream msg;
    msg << "time must be >= 0 (got " << t << ")";
    throw DomainError(msg.str());
  }
}

void check_spec(const ChannelSpec& spec) {
  if (spec.regime == Regime::NonMarkovian && !(spec.gamma_ratio > 0.0)) {
    throw DomainError("non-Markovian channel requires gamma_ratio > 0");
  }
}

// Amplitude-damping amplitude G(t) and its derivative; q = G^2. For
// Gamma < 2 the amplitude oscillates with d = sqrt(Gamma (2 - Gamma));
// for Gamma > 2 the same expression continues onto its hyperbolic branch,
// evaluated as a sum of decaying exponentials so large Gamma t cannot
// overflow. Exactly at Gamma = 2 the d -> 0 limit applies.
struct AdAmplitude {
  double g;
  double g_dot;
};

AdAmplitude ad_amplitude(double gamma_ratio, double t) {
  const double G = gamma_ratio;
  const double d_sq = G * (2.0 - G);
  if (d_sq > 0.0) {
    const double d = std::sqrt(d_sq);
    const double decay = std::exp(-0.5 * G * t);
    const double c = std::cos(0.5 * d * t);
    const double s = std::sin(0.5 * d * t);
    return {decay * (c + (G / d) * s), -(G / d) * decay * s};
  }
  if (d_sq == 0.0) {
    const double decay = std::exp(-0.5 * G * t);
    return {decay * (1.0 + 0.5 * G * t), -0.25 * G * G * t * decay};
  }
  const double dd = std::sqrt(-d_sq);
  const double ep = std::exp(0.5 * (dd - G) * t);   // exponent <= 0
  const double em = std::exp(-0.5 * (dd + G) * t);
  const double k = G / dd;
  return {0.5 * ((1.0 + k) * ep + (1.0 - k) * em), -0.5 * k * (ep - em)};
}

}  // namespace

ChannelSpec ChannelSpec::pd_markovian() {
  return {ChannelKind::PhaseDamping, Regime::Markovian, 0.0};
}

ChannelSpec ChannelSpec::pd_non_markovian(double gamma_ratio) {
  ChannelSpec spec{ChannelKind::PhaseDamping, Regime::NonMarkovian, gamma_ratio};
  check_spec(spec);
  return spec;
}

ChannelSpec ChannelSpec::ad_markovian() {
  return {ChannelKind::AmplitudeDamping, Regime::Markovian, 0.0};
}

ChannelSpec ChannelSpec::ad_non_markovian(double gamma_ratio) {
  ChannelSpec spec{ChannelKind::AmplitudeDamping, Regime::NonMarkovian,
                   gamma_ratio};
  check_spec(spec);
  return spec;
}

double kernel(const ChannelSpec& spec, double t) {
  check_time(t);
  check_spec(spec);
  if (spec.is_pd()) {
    if (spec.is_markovian()) return 0.5 * t;
    // expm1 keeps the small-t limit q ~ Gamma t^2 / 4 free of cancellation.
    return 0.5 * (t + std::expm1(-spec.gamma_ratio * t) / spec.gamma_ratio);
  }
  if (spec.is_markovian()) return std::exp(-t);
  const AdAmplitude amp = ad_amplitude(spec.gamma_ratio, t);
  return amp.g * amp.g;
}

double kernel_derivative(const ChannelSpec& spec, double t) {
  check_time(t);
  check_spec(spec);
  if (spec.is_pd()) {
    if (spec.is_markovian()) return 0.5;
    return -0.5 * std::expm1(-spec.gamma_ratio * t);
  }
  if (spec.is_markovian()) return -std::exp(-t);
  const AdAmplitude amp = ad_amplitude(spec.gamma_ratio, t);
  return 2.0 * amp.g * amp.g_dot;
}

KrausPair kraus(const ChannelSpec& spec, double t) {
  const double q = kernel(spec, t);
  KrausPair pair;
  if (spec.is_pd()) {
    const double e = std::exp(-q);
    const complexd c0{std::sqrt(0.5 * (1.0 + e)), 0.0};
    const complexd c1{std::sqrt(0.5 * (1.0 - e)), 0.0};
    pair.k0 = c0 * Mat2::identity();
    pair.k1 = c1 * pauli_z();
    return pair;
  }
  pair.k0 = Mat2::identity();
  pair.k0(1, 1) = complexd{std::sqrt(q), 0.0};
  pair.k1 = Mat2::zero();
  pair.k1(0, 1) = complexd{std::sqrt(std::fmax(0.0, 1.0 - q)), 0.0};
  return pair;
}

BlochVector evolve(const ChannelSpec& spec, BlochVector b0, double t) {
  b0 = clamp_to_ball(b0);
  const double q = kernel(spec, t);
  if (spec.is_pd()) {
    const double e = std::exp(-q);
    return {e * b0.x, e * b0.y, b0.z};
  }
  const double sq = std::sqrt(q);
  return {sq * b0.x, sq * b0.y, 1.0 - q * (1.0 - b0.z)};
}

BlochVector markovian_solution(BlochVector b0, double t) {
  b0 = clamp_to_ball(b0);
  check_time(t);
  const double eh = std::exp(-0.5 * t);
  const double c = std::cos(2.0 * t);
  const double s = std::sin(2.0 * t);
  return {eh * (b0.x * c + b0.y * s), eh * (b0.y * c - b0.x * s),
          1.0 + std::exp(-t) * (b0.z - 1.0)};
}

BlochVector evolve_master(BlochVector b0, double t, double step) {
  b0 = clamp_to_ball(b0);
  check_time(t);
  if (!(step > 0.0)) {
    std::ostringstream msg;
    msg << "integrator step must be > 0 (got " << step << ")";
    throw DomainError(msg.str());
  }

  const Mat2 sz = pauli_z();
  const Mat2 sm = Mat2::of(0.0, 1.0, 0.0, 0.0);  // |0><1|
  const Mat2 sp = adjoint(sm);
  const Mat2 number = sp * sm;                          // |1><1|
  const complexd i{0.0, 1.0};
  const complexd half{0.5, 0.0};

  const auto rhs = [&](const Mat2& rho) {
    return i * (sz * rho - rho * sz) + sm * rho * sp -
           half * (number * rho + rho * number);
  };

  Mat2 rho = density_from_bloch(b0);
  double s = 0.0;
  while (s < t) {
    const double h = std::fmin(step, t - s);
    const complexd hh{h, 0.0};
    const Mat2 k1 = rhs(rho);
    const Mat2 k2 = rhs(rho + complexd{0.5 * h, 0.0} * k1);
    const Mat2 k3 = rhs(rho + complexd{0.5 * h, 0.0} * k2);
    const Mat2 k4 = rhs(rho + hh * k3);
    rho = rho + complexd{h / 6.0, 0.0} *
                    (k1 + complexd{2, 0} * k2 + complexd{2, 0} * k3 + k4);
    s += h;
  }
  return bloch_from_density(rho);
}

}  // namespace qerg
