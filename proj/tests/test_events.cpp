#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qerg/events.hpp"
#include "qerg/oracle.hpp"

using namespace qerg;

namespace {

const double kPi = std::acos(-1.0);

// Non-Markovian AD, Gamma/gamma = 0.001, U0 = 0.5: root set of
// q(t) = 2/3 computed independently with 25-digit arithmetic.
const std::vector<double> kNmRoots = {27.655298, 118.10288, 163.13188,
                                      265.49317, 296.71446};

}  // namespace

TEST_CASE("sudden-change domain errors") {
  CHECK_THROWS_AS(sudden_change_times(ChannelSpec::pd_markovian(), 0.5, 50.0),
                  DomainError);
  CHECK_THROWS_AS(sudden_change_times(ChannelSpec::ad_markovian(), 0.0, 50.0),
                  DomainError);
  CHECK_THROWS_AS(sudden_change_times(ChannelSpec::ad_markovian(), -0.2, 50.0),
                  DomainError);
  CHECK_THROWS_AS(sudden_change_times(ChannelSpec::ad_markovian(), 1.2, 50.0),
                  DomainError);
}

TEST_CASE("Markovian sudden death matches ln(1 + U0)") {
  const ChannelSpec ad = ChannelSpec::ad_markovian();
  for (const double u0 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const SuddenChangeTimes roots = sudden_change_times(ad, u0, 50.0);
    REQUIRE(roots.times.size() == 1);
    CHECK(roots.tangencies.empty());
    const double expected = std::log(1.0 + u0);
    CHECK(std::fabs(roots.times[0] - expected) / expected < 1e-6);
    const auto death = eternal_death_time(ad, u0, 50.0);
    REQUIRE(death.has_value());
    CHECK(*death == roots.times[0]);
  }
  // The U0 = 0.5 value quoted to six digits.
  const auto death = eternal_death_time(ad, 0.5, 50.0);
  CHECK(std::fabs(*death - 0.405465) < 5e-7);
  // U0 -> 0+ pushes the root toward zero.
  const SuddenChangeTimes small = sudden_change_times(ad, 1e-4, 50.0);
  REQUIRE(small.times.size() == 1);
  CHECK(small.times[0] < 1.1e-4);
}

TEST_CASE("non-Markovian collapse/revival sequence and eternal death") {
  const ChannelSpec spec = ChannelSpec::ad_non_markovian(0.001);
  const SuddenChangeTimes roots = sudden_change_times(spec, 0.5, 600.0);
  REQUIRE(roots.times.size() == kNmRoots.size());
  for (std::size_t i = 0; i < kNmRoots.size(); ++i) {
    CHECK(roots.times[i] == doctest::Approx(kNmRoots[i]).epsilon(1e-6));
  }
  CHECK(roots.times.size() % 2 == 1);  // the sequence ends in a death
  // Every root satisfies the threshold equation.
  const double threshold = 1.0 / 1.5;
  for (const double t : roots.times) {
    CHECK(std::fabs(kernel(spec, t) - threshold) < 1e-9);
  }
  // Deaths see the kernel falling, births see it rising.
  for (std::size_t i = 0; i < roots.times.size(); ++i) {
    const double slope = kernel_derivative(spec, roots.times[i]);
    if (i % 2 == 0) {
      CHECK(slope < 0.0);
    } else {
      CHECK(slope > 0.0);
    }
  }

  const auto death = eternal_death_time(spec, 0.5, 600.0);
  REQUIRE(death.has_value());
  CHECK(*death == doctest::Approx(296.71445633641792).epsilon(1e-9));
  CHECK(*death > 290.0);
  CHECK(*death < 305.0);
  // The kernel stays below threshold through the horizon.
  for (int i = 0; i <= 2000; ++i) {
    const double t = *death + (600.0 - *death) * i / 2000.0;
    CHECK(kernel(spec, t) < threshold + 1e-12);
  }
}

TEST_CASE("eternal death validation catches a too-coarse bracketing grid") {
  const ChannelSpec spec = ChannelSpec::ad_non_markovian(0.001);
  CHECK_THROWS_AS(eternal_death_time(spec, 0.5, 600.0, 50.0), NumericalError);
}

TEST_CASE("tangent thresholds are flagged, not split into root pairs") {
  const ChannelSpec spec = ChannelSpec::ad_non_markovian(0.01);
  const double d = std::sqrt(0.01 * (2.0 - 0.01));
  const double t_peak = 2.0 * kPi / d;
  const double q_peak = kernel(spec, t_peak);
  CHECK(q_peak == doctest::Approx(0.64056594957026935).epsilon(1e-12));

  // Exactly grazing: one clean early root plus a tangency at the revival.
  const double u0_tangent = 1.0 / q_peak - 1.0;
  const SuddenChangeTimes grazing =
      sudden_change_times(spec, u0_tangent, 100.0);
  REQUIRE(grazing.tangencies.size() == 1);
  CHECK(grazing.tangencies[0] == doctest::Approx(t_peak).epsilon(1e-6));
  CHECK(grazing.times.size() == 1);

  // Threshold above the revival peak: single death, nothing else.
  const SuddenChangeTimes above =
      sudden_change_times(spec, u0_tangent - 0.01, 100.0);
  CHECK(above.times.size() == 1);
  CHECK(above.tangencies.empty());

  // Threshold below the peak: death, revival, death.
  const SuddenChangeTimes below =
      sudden_change_times(spec, u0_tangent + 0.01, 100.0);
  CHECK(below.times.size() == 3);
  CHECK(below.tangencies.empty());
}

TEST_CASE("freezing detection") {
  const ChannelSpec pd = ChannelSpec::pd_non_markovian(0.01);
  const FreezingVerdict frozen = detect_freezing(pd, {0.0, 0.0, -0.5}, 50.0, 1e-9);
  CHECK(frozen.frozen);
  CHECK(frozen.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(frozen.analytic);

  const FreezingVerdict coherent =
      detect_freezing(pd, {0.5, 0.0, -0.5}, 50.0, 1e-9);
  CHECK_FALSE(coherent.frozen);
  CHECK_FALSE(coherent.analytic);

  const FreezingVerdict ad_case = detect_freezing(
      ChannelSpec::ad_non_markovian(0.01), {0.0, 0.0, -0.5}, 50.0, 1e-9);
  CHECK_FALSE(ad_case.frozen);
}

TEST_CASE("incoherent component freezes for PD regardless of coherence") {
  const ChannelSpec pd = ChannelSpec::pd_non_markovian(0.01);
  const EventReport rep = report(pd, {0.5, 0.0, -0.5}, 50.0, 1e-2, 1e-9);
  CHECK_FALSE(rep.frozen);
  CHECK(rep.frozen_incoherent);
  CHECK(rep.frozen_incoherent_value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("characteristic times: degenerate and one-signed trajectories") {
  const ChannelSpec ad = ChannelSpec::ad_markovian();
  // Stationary state: Q identically zero.
  const CharacteristicTimes stationary =
      characteristic_times(ad, {0.0, 0.0, 1.0}, 50.0);
  CHECK(stationary.status == RootStatus::Degenerate);
  CHECK(stationary.times.empty());

  // Incoherent states off the pole: Q is one-signed.
  const CharacteristicTimes axis =
      characteristic_times(ad, {0.0, 0.0, 0.6}, 50.0);
  CHECK(axis.status == RootStatus::None);
  CHECK(axis.times.empty());

  // Equatorial PD: the integrand is proportional to z = 0.
  const ChannelSpec pd = ChannelSpec::pd_non_markovian(0.01);
  const CharacteristicTimes equatorial =
      characteristic_times(pd, {0.7, 0.0, 0.0}, 50.0);
  CHECK(equatorial.status == RootStatus::Degenerate);

  // PD with both C0 and z0 nonzero: Q is one-signed, no positive zero.
  const CharacteristicTimes tilted =
      characteristic_times(pd, {0.5, 0.0, 0.6}, 50.0);
  CHECK(tilted.status == RootStatus::None);
  CHECK_FALSE(largest_characteristic(pd, {0.5, 0.0, 0.6}, 50.0).has_value());
}

TEST_CASE("Markovian equator characteristic time matches the oracle") {
  const ChannelSpec ad = ChannelSpec::ad_markovian();
  const BlochVector b0{1.0, 0.0, 0.0};
  const CharacteristicTimes ct = characteristic_times(ad, b0, 50.0);
  REQUIRE(ct.status == RootStatus::Root);
  REQUIRE(ct.times.size() == 1);
  const auto point = oracle::equator_adiabatic_point();
  CHECK(ct.times[0] == doctest::Approx(point.t_c).epsilon(1e-7));
  CHECK(std::fabs(heat(ad, b0, ct.times[0])) < 1e-9);
  CHECK(largest_characteristic(ad, b0, 50.0).has_value());
}

TEST_CASE("non-Markovian characteristic times sit on the Markovian level set") {
  // Q is a state function of the kernel, so every heat zero of the
  // oscillating trajectory revisits the same kernel level u_c.
  const ChannelSpec spec = ChannelSpec::ad_non_markovian(0.01);
  const BlochVector b0{1.0, 0.0, 0.0};
  const CharacteristicTimes ct = characteristic_times(spec, b0, 600.0);
  REQUIRE(ct.status == RootStatus::Root);
  CHECK(ct.times.size() >= 4);
  const auto point = oracle::equator_adiabatic_point();
  for (const double t : ct.times) {
    CHECK(std::fabs(heat(spec, b0, t)) < 1e-9);
    CHECK(kernel(spec, t) == doctest::Approx(point.u_c).epsilon(1e-6));
  }
  for (std::size_t i = 1; i < ct.times.size(); ++i) {
    CHECK(ct.times[i] > ct.times[i - 1]);
  }
}

TEST_CASE("halving the grid step never loses a root") {
  const std::vector<std::pair<ChannelSpec, BlochVector>> cases = {
      {ChannelSpec::ad_markovian(), {1.0, 0.0, 0.0}},
      {ChannelSpec::ad_non_markovian(0.01), {1.0, 0.0, 0.0}},
      {ChannelSpec::ad_non_markovian(0.01), {0.8, 0.0, 0.4}},
  };
  for (const auto& [spec, b0] : cases) {
    const double horizon = spec.is_markovian() ? 50.0 : 300.0;
    const double step = default_grid_step(spec);
    const CharacteristicTimes coarse =
        characteristic_times(spec, b0, horizon, step);
    const CharacteristicTimes fine =
        characteristic_times(spec, b0, horizon, 0.5 * step);
    for (const double t : coarse.times) {
      // Roots below the fine scan's exclusion window cannot be compared.
      if (t <= 10.0 * 0.5 * step) continue;
      bool found = false;
      for (const double s : fine.times) {
        if (std::fabs(s - t) < 1e-6) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("passive cost is nonnegative at characteristic times (z0 >= 0)") {
  const ChannelSpec ad = ChannelSpec::ad_markovian();
  for (const double r0 : {0.25, 0.5, 0.75, 1.0}) {
    for (const double frac : {0.2, 0.5, 0.8, 1.0}) {
      const BlochVector b0 = polar_init(r0, frac * 0.5 * kPi);
      const auto tc = largest_characteristic(ad, b0, 50.0);
      if (!tc) continue;
      CHECK(passive_variation(ad, b0, *tc) >= -1e-9);
    }
  }
}

TEST_CASE("event report for the collapse/revival trajectory") {
  const ChannelSpec spec = ChannelSpec::ad_non_markovian(0.001);
  const EventReport rep = report(spec, {0.0, 0.0, -0.5});
  CHECK(rep.horizon == 600.0);
  CHECK(rep.grid_step == 1e-2);
  CHECK(rep.sudden_times.size() == 5);
  REQUIRE(rep.eternal_death.has_value());
  CHECK(*rep.eternal_death == doctest::Approx(296.71445633641792).epsilon(1e-9));
  CHECK_FALSE(rep.frozen);
  // On the z axis the heat is one-signed: no characteristic times.
  CHECK(rep.characteristic_status == RootStatus::None);
  CHECK_FALSE(rep.largest_characteristic.has_value());
}

TEST_CASE("defaults per regime") {
  CHECK(default_horizon(ChannelSpec::ad_markovian()) == 50.0);
  CHECK(default_horizon(ChannelSpec::ad_non_markovian(0.01)) == 600.0);
  CHECK(default_grid_step(ChannelSpec::pd_markovian()) == 1e-3);
  CHECK(default_grid_step(ChannelSpec::pd_non_markovian(0.01)) == 1e-2);
}
