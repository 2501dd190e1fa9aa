#include "qerg/bloch.hpp"

#include <cmath>
#include <sstream>

namespace qerg {

namespace {

[[noreturn]] void reject(const char* what, double value) {
  std::ostringstream msg;
  msg << what << " (got " << value << ")";
  throw DomainError(msg.str());
}

// Range check with a kBallTol-sized slack, clamping round-off back inside.
double checked_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo - kBallTol && v <= hi + kBallTol)) reject(name, v);
  return std::fmin(std::fmax(v, lo), hi);
}

}  // namespace

BlochVector clamp_to_ball(BlochVector b) {
  const double n2 = b.radius_sq();
  if (!(n2 <= 1.0 + kBallTol)) reject("Bloch vector outside the unit ball", n2);
  if (n2 > 1.0) {
    const double s = 1.0 / std::sqrt(n2);
    b.x *= s;
    b.y *= s;
    b.z *= s;
  }
  return b;
}

BlochVector polar_init(double r0, double theta0, double phi0) {
  r0 = checked_range(r0, 0.0, 1.0, "r0 outside [0,1]");
  theta0 = checked_range(theta0, 0.0, std::acos(-1.0), "theta0 outside [0,pi]");
  if (!(phi0 >= -kBallTol && phi0 < 2.0 * std::acos(-1.0))) {
    reject("phi0 outside [0,2pi)", phi0);
  }
  phi0 = std::fmax(phi0, 0.0);
  const double st = std::sin(theta0);
  return {r0 * st * std::cos(phi0), r0 * st * std::sin(phi0),
          r0 * std::cos(theta0)};
}

Observables observables(BlochVector b) {
  b = clamp_to_ball(b);
  Observables obs{};
  obs.coherence = b.coherence();
  obs.energy = -b.z;
  obs.radius = std::sqrt(obs.coherence * obs.coherence + b.z * b.z);
  obs.ergotropy = obs.radius + obs.energy;
  obs.ergotropy_incoherent = 2.0 * std::fmax(0.0, obs.energy);
  obs.ergotropy_coherent = obs.radius - std::fabs(obs.energy);
  obs.passive_energy = -obs.radius;
  return obs;
}

double ergotropy(double coherence, double energy) {
  if (!(coherence >= 0.0)) reject("coherence must be >= 0", coherence);
  const double s = coherence * coherence + energy * energy;
  if (!(s <= 1.0 + kBallTol)) reject("coherence^2 + energy^2 > 1", s);
  return std::sqrt(std::fmin(s, 1.0)) + energy;
}

}  // namespace qerg
