#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qerg/oracle.hpp"

using namespace qerg;

namespace {

// Values produced by oracle::equator_adiabatic_point (and cross-checked
// with 30-digit arithmetic) are frozen here so any regression in the
// oracle itself is caught.
constexpr double kUc = 0.25551857236134150;
constexpr double kTc = 1.3644601817205332;
constexpr double kWstar = -0.74448142763865850;
constexpr double kPassive = 0.10012713761318671;
constexpr double kErgDelta = -0.84460856525184521;

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(oracle::density_matrix(BlochVector{0.3, 0.2, -0.4}));
  Mat2 bad_trace = Mat2::of(0.7, 0.0, 0.0, 0.7);
  CHECK_THROWS_AS(oracle::density_matrix(bad_trace), DomainError);
  Mat2 not_hermitian = Mat2::of(0.5, complexd{0.1, 0.2}, complexd{0.1, 0.2}, 0.5);
  CHECK_THROWS_AS(oracle::density_matrix(not_hermitian), DomainError);
  Mat2 not_psd = Mat2::of(1.2, 0.0, 0.0, -0.2);
  CHECK_THROWS_AS(oracle::density_matrix(not_psd), DomainError);
}

TEST_CASE("hermitian eigensystem") {
  std::mt19937_64 rng(0xE16ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = unit(rng);
    const double c = unit(rng);
    const complexd b{unit(rng), unit(rng)};
    const Mat2 m = Mat2::of(a, b, std::conj(b), c);
    const auto eig = oracle::eig_hermitian(m);
    CHECK(eig.values[0] >= eig.values[1]);
    for (int n = 0; n < 2; ++n) {
      const auto& v = eig.vectors[n];
      // Residual ||M v - lambda v||.
      const complexd r0 = m(0, 0) * v[0] + m(0, 1) * v[1] - eig.values[n] * v[0];
      const complexd r1 = m(1, 0) * v[0] + m(1, 1) * v[1] - eig.values[n] * v[1];
      CHECK(std::abs(r0) < 1e-12);
      CHECK(std::abs(r1) < 1e-12);
      CHECK(std::abs(std::norm(v[0]) + std::norm(v[1]) - 1.0) < 1e-12);
      // Phase gauge: first component of size > 1e-12 is real positive.
      if (std::abs(v[0]) > 1e-12) {
        CHECK(v[0].imag() == doctest::Approx(0.0).scale(1).epsilon(1e-12));
        CHECK(v[0].real() > 0.0);
      }
    }
  }
}

TEST_CASE("spectral ergotropy reference states") {
  // Pure excited state |1><1| (south pole): everything is extractable.
  CHECK(oracle::ergotropy_spectral(oracle::density_matrix(
            BlochVector{0.0, 0.0, -1.0})) == doctest::Approx(2.0));

  // rho00 = 0.25, |rho01| = 0.25 corresponds to C = 0.5, U = 0.5.
  const Mat2 m = Mat2::of(0.25, 0.25, 0.25, 0.75);
  const double e = oracle::ergotropy_spectral(oracle::density_matrix(m));
  CHECK(e == doctest::Approx(ergotropy(0.5, 0.5)).epsilon(1e-14));

  // A complex off-diagonal phase changes nothing.
  const Mat2 rotated =
      Mat2::of(0.25, complexd{0.15, 0.2}, complexd{0.15, -0.2}, 0.75);
  CHECK(oracle::ergotropy_spectral(oracle::density_matrix(rotated)) ==
        doctest::Approx(ergotropy(0.5, 0.5)).epsilon(1e-14));
}

TEST_CASE("equator antiderivative shape") {
  const double f1 = oracle::equator_antiderivative(1.0);
  CHECK(f1 == doctest::Approx(-1.0 + std::acos(-1.0) * std::sqrt(3.0) / 12.0)
                  .epsilon(1e-15));
  // Unique interior minimum at u = 1/2.
  const double fmin = oracle::equator_antiderivative(0.5);
  for (const double u : {0.05, 0.2, 0.4, 0.45, 0.55, 0.7, 0.9, 1.0}) {
    CHECK(oracle::equator_antiderivative(u) > fmin);
  }
  CHECK_THROWS_AS(oracle::equator_antiderivative(0.0), DomainError);
  CHECK_THROWS_AS(oracle::equator_antiderivative(1.5), DomainError);
}

TEST_CASE("equator adiabatic point matches the frozen constants") {
  const auto point = oracle::equator_adiabatic_point();
  CHECK(point.u_c == doctest::Approx(kUc).epsilon(1e-12));
  CHECK(point.t_c == doctest::Approx(kTc).epsilon(1e-12));
  CHECK(point.work_env == doctest::Approx(kWstar).epsilon(1e-12));
  CHECK(point.passive_delta == doctest::Approx(kPassive).epsilon(1e-12));
  CHECK(point.ergotropy_delta == doctest::Approx(kErgDelta).epsilon(1e-12));
  // The root really is a zero of F(u) - F(1).
  CHECK(std::fabs(oracle::equator_antiderivative(point.u_c) -
                  oracle::equator_antiderivative(1.0)) < 1e-14);
}

TEST_CASE("antiderivative matches the trapezoid heat on the equator") {
  const ChannelSpec spec = ChannelSpec::ad_markovian();
  const BlochVector b0{1.0, 0.0, 0.0};
  const double f1 = oracle::equator_antiderivative(1.0);
  for (int k = 1; k <= 20; ++k) {
    const double t = 0.2 * k;
    const double via_f = f1 - oracle::equator_antiderivative(std::exp(-t));
    const double via_trapezoid = oracle::heat_trapezoid(spec, b0, t, 20000);
    CHECK(via_f == doctest::Approx(via_trapezoid).scale(1).epsilon(1e-8));
  }
}

TEST_CASE("trapezoid heat converges with order >= 2") {
  const std::vector<std::pair<ChannelSpec, BlochVector>> cases = {
      {ChannelSpec::ad_markovian(), {1.0, 0.0, 0.0}},
      {ChannelSpec::ad_non_markovian(0.01), {1.0, 0.0, 0.0}},
      {ChannelSpec::ad_non_markovian(0.1), {0.8, 0.0, -0.2}},
  };
  for (const auto& [spec, b0] : cases) {
    const double t = 3.0;
    const double exact = heat(spec, b0, t);
    double prev_err = -1.0;
    int n = 250;
    for (int round = 0; round < 5; ++round, n *= 2) {
      const double err =
          std::fabs(oracle::heat_trapezoid(spec, b0, t, n) - exact);
      if (prev_err > 0.0) {
        const double order = std::log2(prev_err / err);
        CHECK(order >= 2.0);
      }
      prev_err = err;
    }
  }
}

TEST_CASE("eigendifferenced work matches the quadrature work") {
  const std::vector<std::pair<ChannelSpec, BlochVector>> cases = {
      {ChannelSpec::ad_markovian(), {1.0, 0.0, 0.0}},
      {ChannelSpec::ad_markovian(), {0.3, 0.4, 0.5}},
      {ChannelSpec::ad_non_markovian(0.01), {0.6, 0.0, 0.4}},
  };
  for (const auto& [spec, b0] : cases) {
    const double t = 3.0;
    std::vector<double> grid;
    const int n = 30000;
    grid.reserve(n + 1);
    for (int i = 0; i <= n; ++i) grid.push_back(t * i / n);
    const double via_eig = oracle::work_env_eigendiff(spec, b0, grid);
    const double via_quad = work_env(spec, b0, t);
    CHECK(via_eig == doctest::Approx(via_quad).scale(1).epsilon(1e-6));
  }
}
