#pragma once

#include "qerg/bloch.hpp"
#include "qerg/mat2.hpp"

namespace qerg {

enum class ChannelKind { PhaseDamping, AmplitudeDamping };
enum class Regime { Markovian, NonMarkovian };

/// A single-qubit decoherence channel. All times are dimensionless gamma*t
/// (the coupling rate gamma sets the time unit and never appears on its
/// own); the non-Markovian memory is controlled by gamma_ratio = Gamma/gamma,
/// the inverse reservoir correlation time in the same units.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::PhaseDamping;
  Regime regime = Regime::Markovian;
  double gamma_ratio = 0.0;  ///< Gamma/gamma > 0; used only when non-Markovian

  static ChannelSpec pd_markovian();
  static ChannelSpec pd_non_markovian(double gamma_ratio);
  static ChannelSpec ad_markovian();
  static ChannelSpec ad_non_markovian(double gamma_ratio);

  bool is_pd() const { return kind == ChannelKind::PhaseDamping; }
  bool is_ad() const { return kind == ChannelKind::AmplitudeDamping; }
  bool is_markovian() const { return regime == Regime::Markovian; }
};

/// Memory kernel at dimensionless time t >= 0.
///
/// Phase damping returns the exponent q(t) >= 0 of the coherence decay
/// e^{-q(t)} (Markovian limit q = t/2). Amplitude damping returns
/// q(t) in [0,1] that drives the population (Markovian limit q = e^{-t}).
/// For Gamma/gamma > 2 the AD kernel is evaluated on its hyperbolic branch,
/// the analytic continuation of the trigonometric expression; exactly at
/// Gamma/gamma = 2 the d -> 0 limit q = e^{-Gamma t} (1 + Gamma t / 2)^2
/// is used.
double kernel(const ChannelSpec& spec, double t);

/// dq/dt of the kernel above, in closed form.
double kernel_derivative(const ChannelSpec& spec, double t);

struct KrausPair {
  Mat2 k0;
  Mat2 k1;
};

/// Kraus operators of the channel at time t; K0^dag K0 + K1^dag K1 = I.
KrausPair kraus(const ChannelSpec& spec, double t);

/// Closed-form Bloch trajectory of the Kraus map (no Hamiltonian rotation).
/// PD: (e^{-q} x0, e^{-q} y0, z0). AD: (sqrt(q) x0, sqrt(q) y0, 1 - q(1-z0)).
BlochVector evolve(const ChannelSpec& spec, BlochVector b0, double t);

/// Closed form of the Markovian amplitude-damping master equation with the
/// Hamiltonian rotation included:
///   x = e^{-t/2} (x0 cos 2t + y0 sin 2t),
///   y = e^{-t/2} (y0 cos 2t - x0 sin 2t),
///   z = 1 + e^{-t} (z0 - 1).
/// C, U and r coincide with evolve() under the Markovian AD channel.
BlochVector markovian_solution(BlochVector b0, double t);

/// Fixed-step fourth-order (RK4) integration of the same master equation on
/// the density matrix; cross-check for markovian_solution. step > 0.
BlochVector evolve_master(BlochVector b0, double t, double step);

}  // namespace qerg
