#include "doctest.h"

#include <fstream>

#include "droneplan/errors.hpp"
#include "droneplan/scenario.hpp"
#include "droneplan/scenario_io.hpp"
#include "test_helpers.hpp"
#include "test_rng.hpp"

using namespace droneplan;
using testkit::ScenarioBuilder;

namespace {

WindDomain random_domain(std::mt19937_64& rng, double max_speed) {
  const double hi = testrng::uniform(rng, 0.0, max_speed);
  const double lo = testrng::uniform(rng, 0.0, hi);
  const double theta = testrng::uniform(rng, -kPi, kPi);
  const double width = testrng::uniform(rng, 0.0, 2.0 * kPi);
  return {lo, hi, theta, theta + width};
}

Vec2 sample_wind(std::mt19937_64& rng, const WindDomain& w) {
  const double mag = testrng::uniform(rng, w.speed_min_mps, w.speed_max_mps);
  const double theta =
      testrng::uniform(rng, w.theta_min_rad, w.theta_max_rad);
  return unit_from_angle(theta) * mag;
}

}  // namespace

TEST_CASE("co-located site and station validate with alpha zero") {
  auto s = ScenarioBuilder()
               .site("s1", 500.0, 0.0)
               .station("c1", 500.0, 0.0)
               .build();
  CHECK(validate(s).alpha == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("alpha is the worst site's share of half the usable range") {
  // One site 500 m from its station; capacity chosen so that distance is
  // exactly 0.4 of half the usable range. A second, closer site is noise.
  const double energy_wh = 85.254 * 500.0 / 3600.0;
  const double b_max = 2.0 * energy_wh / 0.4;
  auto s = ScenarioBuilder()
               .battery(0.0, b_max)
               .site("s1", 500.0, 0.0)
               .site("s2", 80.0, 0.0)
               .station("c1", 0.0, 0.0)
               .build();
  const auto vr = validate(s);
  CHECK(vr.alpha == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(s.loc(vr.worst_site).id == "s1");
}

TEST_CASE("sites beyond half the usable range are rejected by name") {
  const double energy_wh = 85.254 * 500.0 / 3600.0;
  auto s = ScenarioBuilder()
               .battery(0.0, energy_wh / 0.6)  // site sits at 0.6 U
               .site("far", 500.0, 0.0)
               .station("c1", 0.0, 0.0)
               .build();
  CHECK_THROWS_AS(validate(s), InfeasibleSiteError);
  try {
    validate(s);
  } catch (const InfeasibleSiteError& e) {
    CHECK(e.site_id == "far");
  }
}

TEST_CASE("degenerate pairs cost nothing") {
  auto s = ScenarioBuilder().site("s1", 100.0, 0.0).build();
  const EdgeCost c = edge_cost(s, 1, 1, 5.0);
  CHECK(c.distance_m == 0.0);
  CHECK(c.tau_s == 0.0);
  CHECK(c.energy_wh == 0.0);
}

TEST_CASE("calm wind reduces the edge rate to the cruise model") {
  auto s = ScenarioBuilder().site("s1", 300.0, 400.0).build();
  const EdgeCost c = edge_cost(s, 0, 1, 5.0);
  CruiseState cruise;
  cruise.speed_mps = 5.0;
  cruise.heading = {0.6, 0.8};
  CHECK(c.cf_j_per_m ==
        doctest::Approx(cruise_energy_rate(solo_preset(), cruise)).epsilon(1e-12));
}

TEST_CASE("a kilometre at five metres per second needs 23.68 Wh") {
  auto s = ScenarioBuilder().site("s1", 1000.0, 0.0).build();
  const EdgeCost c = edge_cost(s, 0, 1, 5.0);
  CHECK(c.distance_m == doctest::Approx(1000.0));
  CHECK(c.tau_s == doctest::Approx(200.0));
  CHECK(c.energy_wh == doctest::Approx(85254.0 / 3600.0).epsilon(1e-12));
}

TEST_CASE("point domains evaluate the rate at that wind") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 wind = unit_from_angle(testrng::uniform(rng, 0.0, 2 * kPi)) *
                      testrng::uniform(rng, 0.0, 6.0);
    const Vec2 heading = unit_from_angle(testrng::uniform(rng, 0.0, 2 * kPi));
    CruiseState c;
    c.speed_mps = 5.0;
    c.heading = heading;
    c.wind_xy = wind;
    CHECK(worst_case_cf(solo_preset(), 5.0, heading, WindDomain::point(wind), 0.0) ==
          doctest::Approx(cruise_energy_rate(solo_preset(), c)).epsilon(1e-12));
  }
}

TEST_CASE("a full-circle domain aligns the worst wind with the heading") {
  const WindDomain full{1.0, 7.0, 0.0, 2.0 * kPi};
  const Vec2 heading = unit_from_angle(0.9);
  CruiseState aligned;
  aligned.speed_mps = 5.0;
  aligned.heading = heading;
  aligned.wind_xy = heading * 7.0;
  CHECK(worst_case_cf(solo_preset(), 5.0, heading, full, 0.0) ==
        doctest::Approx(cruise_energy_rate(solo_preset(), aligned)).epsilon(1e-12));
}

TEST_CASE("the analytic worst case dominates sampled winds") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const WindDomain w = random_domain(rng, 8.0);
    const Vec2 heading = unit_from_angle(testrng::uniform(rng, -kPi, kPi));
    const double bound = worst_case_cf(solo_preset(), 5.0, heading, w, 200.0);
    for (int inner = 0; inner < 1000; ++inner) {
      CruiseState c;
      c.speed_mps = 5.0;
      c.heading = heading;
      c.wind_xy = sample_wind(rng, w);
      c.payload_mass_g = 200.0;
      CHECK(bound >= cruise_energy_rate(solo_preset(), c) - 1e-9);
    }
  }
}

TEST_CASE("shrinking the wind domain never raises the worst case") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const WindDomain outer = random_domain(rng, 8.0);
    // Nested inner domain.
    const double lo = testrng::uniform(rng, outer.speed_min_mps, outer.speed_max_mps);
    const double hi = testrng::uniform(rng, lo, outer.speed_max_mps);
    const double t1 = testrng::uniform(rng, outer.theta_min_rad, outer.theta_max_rad);
    const double t2 = testrng::uniform(rng, t1, outer.theta_max_rad);
    const WindDomain inner{lo, hi, t1, t2};
    const Vec2 heading = unit_from_angle(testrng::uniform(rng, -kPi, kPi));
    CHECK(worst_case_cf(solo_preset(), 5.0, heading, inner, 0.0) <=
          worst_case_cf(solo_preset(), 5.0, heading, outer, 0.0) + 1e-12);
  }
}

TEST_CASE("cost matrices are bit-identical across rebuilds") {
  auto s = ScenarioBuilder()
               .site("s1", 400.0, 100.0)
               .site("s2", -300.0, 700.0)
               .station("c1", 100.0, 300.0)
               .wind({1.0, 4.0, 0.3, 2.1})
               .payload(250.0)
               .build();
  const CostMatrix a = CostMatrix::build(s, 5.0);
  const CostMatrix b = CostMatrix::build(s, 5.0);
  for (int u = 0; u < s.size(); ++u) {
    for (int v = 0; v < s.size(); ++v) {
      CHECK(a.energy_wh(u, v) == b.energy_wh(u, v));
      CHECK(a.sym_energy_wh(u, v) == b.sym_energy_wh(u, v));
      CHECK(a.distance_m(u, v) == b.distance_m(u, v));
    }
  }
  CHECK(a.cf_lo_j_per_m() == b.cf_lo_j_per_m());
  CHECK(a.cf_hi_j_per_m() == b.cf_hi_j_per_m());
}

TEST_CASE("per-edge rates stay inside the scenario-wide extrema") {
  auto s = ScenarioBuilder()
               .site("s1", 400.0, 100.0)
               .site("s2", -300.0, 700.0)
               .site("s3", 150.0, -450.0)
               .station("c1", 100.0, 300.0)
               .wind({0.5, 5.0, -0.4, 1.8})
               .build();
  const CostMatrix m = CostMatrix::build(s, 5.0);
  for (int u = 0; u < s.size(); ++u) {
    for (int v = 0; v < s.size(); ++v) {
      if (u == v) continue;
      CHECK(m.cf_j_per_m(u, v) >= m.cf_lo_j_per_m() - 1e-12);
      CHECK(m.cf_j_per_m(u, v) <= m.cf_hi_j_per_m() + 1e-12);
      CHECK(m.sym_energy_wh(u, v) ==
            std::max(m.energy_wh(u, v), m.energy_wh(v, u)));
    }
  }
}

TEST_CASE("structural invariants are enforced") {
  Scenario s = ScenarioBuilder().site("s1", 10, 10).build();
  Scenario dup = s;
  dup.locations.push_back({"s1", LocationKind::kSite, {5, 5}});
  CHECK_THROWS_AS(dup.validate_structure(), MalformedInputError);

  Scenario nobase = s;
  nobase.locations.erase(nobase.locations.begin());
  CHECK_THROWS_AS(nobase.validate_structure(), MalformedInputError);

  Scenario badbat = s;
  badbat.battery.b_min_wh = 200.0;
  CHECK_THROWS_AS(badbat.validate_structure(), MalformedInputError);

  Scenario badeta = s;
  badeta.battery.eta_c = 1.2;
  CHECK_THROWS_AS(badeta.validate_structure(), MalformedInputError);

  Scenario badspeed = s;
  badspeed.speeds_mps = {5.0, 4.0};
  CHECK_THROWS_AS(badspeed.validate_structure(), MalformedInputError);

  Scenario badwind = s;
  badwind.wind = {3.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(badwind.validate_structure(), MalformedInputError);
}

TEST_CASE("scenario JSON round-trips byte for byte") {
  auto s = ScenarioBuilder()
               .site("s1", 400.0, 100.0)
               .station("c1", 100.0, 300.0)
               .wind({1.0, 4.0, 0.3, 2.1})
               .payload(250.0)
               .build();
  const std::string once = scenario_to_json(s);
  const Scenario back = scenario_from_json(once);
  CHECK(scenario_to_json(back) == once);
  CHECK(back.locations.size() == s.locations.size());
  CHECK(back.battery.b_max_wh == s.battery.b_max_wh);
  CHECK(back.payload_g == s.payload_g);
}

TEST_CASE("unknown fields are rejected at every level") {
  auto s = ScenarioBuilder().site("s1", 10, 10).station("c1", 0, 0).build();
  const std::string good = scenario_to_json(s);
  auto inject = [&](const std::string& needle, const std::string& extra) {
    std::string text = good;
    const auto at = text.find(needle);
    REQUIRE(at != std::string::npos);
    text.insert(at, extra);
    return text;
  };
  CHECK_THROWS_AS(scenario_from_json(inject("\"locations\"", "\"bogus\": 1,")),
                  MalformedInputError);
  CHECK_THROWS_AS(scenario_from_json(inject("\"b_min_wh\"", "\"bogus\": 1,")),
                  MalformedInputError);
  CHECK_THROWS_AS(scenario_from_json(inject("\"speed_min\"", "\"bogus\": 1,")),
                  MalformedInputError);
  CHECK_THROWS_AS(scenario_from_json(inject("\"id\"", "\"bogus\": 1,")),
                  MalformedInputError);
}

TEST_CASE("drone section needs exactly one coefficient source") {
  const std::string both = R"({
    "locations": [{"id": "base", "kind": "base", "x_m": 0, "y_m": 0}],
    "battery": {"b_min_wh": 0, "b_max_wh": 50, "eta_c": 1, "eta_d": 1},
    "drone": {"preset": "3dr-solo", "coefficients": [1,2,3,4,5,6,7,8,9], "payload_g": 0},
    "wind": {"speed_min": 0, "speed_max": 0, "theta_min_deg": 0, "theta_max_deg": 0},
    "speeds_mps": [5]
  })";
  CHECK_THROWS_AS(scenario_from_json(both), MalformedInputError);
  const std::string raw = R"({
    "locations": [{"id": "base", "kind": "base", "x_m": 0, "y_m": 0}],
    "battery": {"b_min_wh": 0, "b_max_wh": 50, "eta_c": 1, "eta_d": 1},
    "drone": {"coefficients": [1,2,3,4,5,6,7,8,433.9], "payload_g": 0},
    "wind": {"speed_min": 0, "speed_max": 0, "theta_min_deg": 0, "theta_max_deg": 0},
    "speeds_mps": [5]
  })";
  // Raw coefficients demand an explicit charge rate.
  CHECK_THROWS_AS(scenario_from_json(raw), MalformedInputError);
}

TEST_CASE("telemetry CSV round-trips through the parser") {
  std::mt19937_64 rng(44);
  std::vector<MotionSample> samples;
  for (int i = 0; i < 25; ++i) {
    MotionSample m;
    m.v_xy = {testrng::uniform(rng, -10, 10), testrng::uniform(rng, -10, 10)};
    m.a_xy = {testrng::uniform(rng, -2, 2), testrng::uniform(rng, -2, 2)};
    m.v_z = testrng::uniform(rng, 0, 3);
    m.a_z = testrng::uniform(rng, 0, 1);
    m.payload_mass_g = testrng::uniform(rng, 0, 500);
    m.wind_xy = {testrng::uniform(rng, -5, 5), testrng::uniform(rng, -5, 5)};
    m.measured_power_w = estimate_power(solo_preset(), m);
    samples.push_back(m);
  }
  const auto dir = std::filesystem::temp_directory_path() / "droneplan_test_csv";
  std::filesystem::create_directories(dir);
  const auto path = dir / "telemetry.csv";
  {
    std::ofstream out(path);
    out << telemetry_to_csv(samples);
  }
  const auto back = load_telemetry_csv(path);
  REQUIRE(back.size() == samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].v_xy.x == doctest::Approx(samples[i].v_xy.x).epsilon(1e-12));
    CHECK(*back[i].measured_power_w ==
          doctest::Approx(*samples[i].measured_power_w).epsilon(1e-12));
  }
  CHECK_THROWS_AS(load_telemetry_csv(dir / "missing.csv"), MalformedInputError);
}
