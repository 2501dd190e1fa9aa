#include "qerg/oracle.hpp"

#include <cmath>
#include <sstream>

namespace qerg::oracle {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kEigFloor = -1e-12;
constexpr double kPhaseFloor = 1e-12;
constexpr double kDegenerateRadius = 1e-9;

void phase_fix(std::array<complexd, 2>& v) {
  for (const complexd& c : v) {
    const double mag = std::abs(c);
    if (mag > kPhaseFloor) {
      const complexd u = std::conj(c) / mag;
      v[0] *= u;
      v[1] *= u;
      return;
    }
  }
}

}  // namespace

DensityMatrix density_matrix(const Mat2& m) {
  const double herm_defect = frobenius_norm(m - adjoint(m));
  if (herm_defect > kTraceTol) {
    throw DomainError("density matrix must be Hermitian");
  }
  if (std::fabs(trace(m).real() - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix must have unit trace (got " << trace(m).real()
        << ")";
    throw DomainError(msg.str());
  }
  const EigenSystem eig = eig_hermitian(m);
  if (eig.values[1] < kEigFloor) {
    std::ostringstream msg;
    msg << "density matrix must be positive semidefinite (lowest eigenvalue "
        << eig.values[1] << ")";
    throw DomainError(msg.str());
  }
  return {m};
}

DensityMatrix density_matrix(BlochVector b) {
  return density_matrix(density_from_bloch(clamp_to_ball(b)));
}

EigenSystem eig_hermitian(const Mat2& m) {
  const double a = m(0, 0).real();
  const double c = m(1, 1).real();
  const complexd b = m(0, 1);
  const double delta = 0.5 * (a - c);
  const double disc = std::hypot(delta, std::abs(b));
  const double mean = 0.5 * (a + c);

  EigenSystem eig;
  eig.values = {mean + disc, mean - disc};

  if (std::abs(b) < 1e-300) {
    const bool first_is_a = a >= c;
    eig.vectors[0] = first_is_a ? std::array<complexd, 2>{1.0, 0.0}
                                : std::array<complexd, 2>{0.0, 1.0};
    eig.vectors[1] = first_is_a ? std::array<complexd, 2>{0.0, 1.0}
                                : std::array<complexd, 2>{1.0, 0.0};
    return eig;
  }

  // (b, lambda_+ - a) is an eigenvector; rationalize lambda_+ - a to avoid
  // the cancellation when a dominates.
  const double lp_minus_a =
      delta > 0.0 ? std::norm(b) / (disc + delta) : disc - delta;
  std::array<complexd, 2> v0{b, complexd{lp_minus_a, 0.0}};
  const double n0 = std::sqrt(std::norm(v0[0]) + std::norm(v0[1]));
  v0[0] /= n0;
  v0[1] /= n0;
  std::array<complexd, 2> v1{-std::conj(v0[1]), std::conj(v0[0])};
  phase_fix(v0);
  phase_fix(v1);
  eig.vectors = {v0, v1};
  return eig;
}

double ergotropy_spectral(const DensityMatrix& rho) {
  const EigenSystem eig = eig_hermitian(rho.m);
  const double internal = (trace(rho.m * hamiltonian())).real();
  // Passive energy: descending populations against ascending H levels -1, +1.
  const double passive = -eig.values[0] + eig.values[1];
  return internal - passive;
}

double ergotropy_incoherent_spectral(const DensityMatrix& rho) {
  Mat2 dephased = rho.m;
  dephased(0, 1) = complexd{};
  dephased(1, 0) = complexd{};
  return ergotropy_spectral(DensityMatrix{dephased});
}

double heat_trapezoid(const ChannelSpec& spec, BlochVector b0, double t,
                      int n_steps) {
  if (!(t >= 0.0)) throw DomainError("heat_trapezoid: time must be >= 0");
  if (n_steps < 2) throw DomainError("heat_trapezoid: need n_steps >= 2");
  if (t == 0.0) return 0.0;
  const Trajectory traj(spec, b0);
  const double h = t / n_steps;

  // Central-difference dr/dt; one-sided second-order stencils at the ends.
  const auto rdot = [&](int i) {
    const double s = i * h;
    if (i == 0) {
      return (-3.0 * traj.radius(0.0) + 4.0 * traj.radius(h) -
              traj.radius(2.0 * h)) /
             (2.0 * h);
    }
    if (i == n_steps) {
      return (3.0 * traj.radius(s) - 4.0 * traj.radius(s - h) +
              traj.radius(s - 2.0 * h)) /
             (2.0 * h);
    }
    return (traj.radius(s + h) - traj.radius(s - h)) / (2.0 * h);
  };
  const auto integrand = [&](int i) {
    const double s = i * h;
    return (traj.z(s) / std::fmax(traj.radius(s), kRadiusFloor)) * rdot(i);
  };

  double sum = 0.5 * (integrand(0) + integrand(n_steps));
  for (int i = 1; i < n_steps; ++i) sum += integrand(i);
  return -h * sum;
}

double equator_antiderivative(double u) {
  if (!(u > 0.0 && u <= 1.0 + kBallTol)) {
    std::ostringstream msg;
    msg << "equator_antiderivative: u must be in (0,1] (got " << u << ")";
    throw DomainError(msg.str());
  }
  u = std::fmin(u, 1.0);
  const double sqrt3 = std::sqrt(3.0);
  return -u + 0.25 * std::log(u * u - u + 1.0) +
         0.5 * sqrt3 * std::atan((2.0 * u - 1.0) / sqrt3);
}

EquatorAdiabaticPoint equator_adiabatic_point() {
  const double f1 = equator_antiderivative(1.0);
  const auto g = [&](double u) { return equator_antiderivative(u) - f1; };
  double lo = 1e-12;  // g > 0 here: F decreases from F(0) toward the minimum
  double hi = 0.5;    // unique interior minimum of F, g < 0 here
  double g_lo = g(lo);
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-16; ++iter) {
    const double m = 0.5 * (lo + hi);
    const double gm = g(m);
    if (gm == 0.0) {
      lo = hi = m;
      break;
    }
    if ((gm < 0.0) == (g_lo < 0.0)) {
      lo = m;
      g_lo = gm;
    } else {
      hi = m;
    }
  }
  EquatorAdiabaticPoint point{};
  point.u_c = 0.5 * (lo + hi);
  point.t_c = -std::log(point.u_c);
  point.work_env = point.u_c - 1.0;
  point.passive_delta =
      1.0 - std::sqrt(point.u_c * point.u_c - point.u_c + 1.0);
  point.ergotropy_delta = point.work_env - point.passive_delta;
  return point;
}

double work_env_eigendiff(const ChannelSpec& spec, BlochVector b0,
                          const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) {
    throw DomainError("work_env_eigendiff: need at least two grid times");
  }
  const Trajectory traj(spec, b0);
  const Mat2 h_op = hamiltonian();

  const auto eig_at = [&](double t) {
    return eig_hermitian(density_from_bloch(evolve(spec, b0, t)));
  };

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < t_grid.size(); ++k) {
    const double t0 = t_grid[k];
    const double t1 = t_grid[k + 1];
    if (!(t1 > t0)) {
      throw DomainError("work_env_eigendiff: grid must be strictly increasing");
    }
    const double tm = 0.5 * (t0 + t1);
    if (traj.radius(t0) < kDegenerateRadius ||
        traj.radius(tm) < kDegenerateRadius ||
        traj.radius(t1) < kDegenerateRadius) {
      total += traj.work_rate(tm) * (t1 - t0);
      continue;
    }
    const EigenSystem e0 = eig_at(t0);
    const EigenSystem em = eig_at(tm);
    const EigenSystem e1 = eig_at(t1);
    for (int n = 0; n < 2; ++n) {
      // r_n (<r_n|H|dr_n> + h.c.) with midpoint weight and gauge-fixed
      // eigenvectors at the interval ends.
      const std::array<complexd, 2>& vm = em.vectors[n];
      std::array<complexd, 2> dv{e1.vectors[n][0] - e0.vectors[n][0],
                                 e1.vectors[n][1] - e0.vectors[n][1]};
      const complexd h_dv0 = h_op(0, 0) * dv[0] + h_op(0, 1) * dv[1];
      const complexd h_dv1 = h_op(1, 0) * dv[0] + h_op(1, 1) * dv[1];
      const complexd braket = std::conj(vm[0]) * h_dv0 + std::conj(vm[1]) * h_dv1;
      total += em.values[n] * 2.0 * braket.real();
    }
  }
  return total;
}

}  // namespace qerg::oracle
