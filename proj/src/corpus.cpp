#include "droneplan/corpus.hpp"

#include <cmath>
#include <random>

#include "droneplan/errors.hpp"
#include "droneplan/planner.hpp"

namespace droneplan {

namespace {

// Uniform draws assembled from raw generator bits; identical output on every
// platform, unlike the standard distributions.
double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform(rng);
}
int pick_index(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

/// Worst energy rate over all headings for sizing batteries, Wh per meter.
double rate_bound_wh_per_m(const PowerCoefficients& coeffs, double speed,
                           const WindDomain& wind, double payload_g) {
  CruiseState level;
  level.speed_mps = speed;
  level.heading = {1.0, 0.0};
  level.payload_mass_g = payload_g;
  const double calm = cruise_energy_rate(coeffs, level);
  return (calm + std::abs(coeffs.beta[7]) * wind.speed_max_mps) * kJToWh;
}

Scenario generate_one(const CorpusParams& params, uint64_t index, int attempt) {
  std::mt19937_64 rng(params.seed + 0x9E3779B97F4A7C15ull * (index + 1) +
                      0xD1B54A32D192ED03ull * static_cast<uint64_t>(attempt));
  const auto coeffs = preset_by_id(params.preset);
  if (!coeffs) throw GenerationError("unknown preset '" + params.preset + "'");
  const double speed = params.preset == "dji-matrice-100" ? 10.0 : 5.0;

  Scenario s;
  s.preset_id = params.preset;
  s.coefficients = *coeffs;
  s.speeds_mps = {speed};
  s.charge_seconds_per_wh = *preset_charge_seconds_per_wh(params.preset);
  const double payloads[] = {0.0, 250.0, 500.0};
  s.payload_g = payloads[pick_index(rng, 3)];

  // Wind: calm, steady, or an uncertainty box, cycling deterministically.
  switch (index % 3) {
    case 0:
      s.wind = WindDomain::calm();
      break;
    case 1: {
      const double mag = uniform(rng, 0.5, 0.35 * speed);
      const double theta = uniform(rng, 0.0, 2.0 * kPi);
      s.wind = {mag, mag, theta, theta};
      break;
    }
    default: {
      const double hi = uniform(rng, 1.0, 0.5 * speed);
      const double lo = uniform(rng, 0.0, hi);
      const double theta = uniform(rng, 0.0, 2.0 * kPi);
      const double width = uniform(rng, 0.1, kPi);
      s.wind = {lo, hi, theta, theta + width};
      break;
    }
  }

  // Battery sized so tours of roughly the layout span need recharging:
  // usable range between 0.8x and 1.6x the station-field side.
  const double rate = rate_bound_wh_per_m(s.coefficients, speed, s.wind, s.payload_g);
  const double usable_wh = rate * params.span_m * uniform(rng, 0.8, 1.6);
  s.battery.eta_c = uniform(rng, 0.85, 1.0);
  s.battery.eta_d = uniform(rng, 1.0, 1.15);
  s.battery.b_max_wh = usable_wh * s.battery.eta_d / 0.9;
  s.battery.b_min_wh = 0.1 * s.battery.b_max_wh;

  // Stations mark the site clusters; every station gets at least one site
  // round-robin so none of them sits far off the eventual tour, and each
  // site stays well inside half the usable range of its station even at the
  // worst heading.
  std::vector<Vec2> stations;
  for (int i = 0; i < params.stations; ++i) {
    stations.push_back({uniform(rng, 0.0, params.span_m),
                        uniform(rng, 0.0, params.span_m)});
  }
  const double reach_m = 0.5 * usable_wh / rate;
  for (int i = 0; i < params.stations; ++i) {
    s.locations.push_back({"c" + std::to_string(i + 1), LocationKind::kStation,
                           stations[static_cast<size_t>(i)]});
  }
  for (int i = 0; i < params.sites; ++i) {
    const Vec2 anchor = stations[static_cast<size_t>(i % params.stations)];
    const double radius = uniform(rng, 0.05, 0.8) * reach_m;
    const double theta = uniform(rng, 0.0, 2.0 * kPi);
    s.locations.push_back({"s" + std::to_string(i + 1), LocationKind::kSite,
                           anchor + unit_from_angle(theta) * radius});
  }
  const Vec2 base_anchor = stations[static_cast<size_t>(pick_index(rng, params.stations))];
  const double base_r = uniform(rng, 0.05, 0.6) * reach_m;
  s.locations.insert(s.locations.begin(),
                     {"base", LocationKind::kBase,
                      base_anchor + unit_from_angle(uniform(rng, 0.0, 2.0 * kPi)) *
                                        base_r});
  return s;
}

bool fully_connected(const Scenario& s) {
  const CostMatrix cost = CostMatrix::build(s, s.speeds_mps.front());
  const auto paths = graphkit::all_pairs_shortest(cost.energy_graph());
  const MetaDistances meta = init_distances(s, paths);
  for (int u = 0; u < s.size(); ++u) {
    for (int v = u + 1; v < s.size(); ++v) {
      if (!std::isfinite(meta.dt(u, v))) return false;
    }
  }
  return true;
}

Scenario study_case(const std::string& preset, double battery_wh, double payload_g,
                    const WindDomain& wind) {
  Scenario s = demo_scenario();
  s.preset_id = preset;
  s.coefficients = *preset_by_id(preset);
  s.charge_seconds_per_wh = *preset_charge_seconds_per_wh(preset);
  s.speeds_mps = {preset == "dji-matrice-100" ? 10.0 : 5.0};
  s.battery.b_max_wh = battery_wh;
  s.battery.b_min_wh = 0.1 * battery_wh;
  s.payload_g = payload_g;
  s.wind = wind;
  return s;
}

}  // namespace

std::vector<Scenario> generate_corpus(const CorpusParams& params) {
  if (params.count < 1) throw GenerationError("corpus count must be >= 1");
  if (params.sites < 1 || params.stations < 1) {
    throw GenerationError("corpus scenarios need at least one site and one station");
  }
  std::vector<Scenario> out;
  out.reserve(static_cast<size_t>(params.count));
  for (int i = 0; i < params.count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
      Scenario s = generate_one(params, static_cast<uint64_t>(i), attempt);
      s.validate_structure();
      validate(s);  // construction guarantees the reachability assumption
      // Widely separated stations can leave pairs unreachable within one
      // charge; such layouts are resampled.
      if (!fully_connected(s)) continue;
      out.push_back(std::move(s));
      placed = true;
    }
    if (!placed) {
      throw GenerationError("could not place a connected scenario for index " +
                            std::to_string(i));
    }
  }
  return out;
}

Scenario demo_scenario() {
  Scenario s;
  s.preset_id = "3dr-solo";
  s.coefficients = solo_preset();
  s.charge_seconds_per_wh = *preset_charge_seconds_per_wh("3dr-solo");
  s.speeds_mps = {5.0};
  s.battery = {7.0, 70.0, 0.95, 1.05};
  s.payload_g = 0.0;
  s.wind = WindDomain::calm();
  // Two rows of sites along a road with the base at the western corner;
  // stations sit on the natural loop so detours to them stay short.
  s.locations = {
      {"base", LocationKind::kBase, {0.0, 0.0}},
      {"s1", LocationKind::kSite, {800.0, 0.0}},
      {"s2", LocationKind::kSite, {1700.0, 0.0}},
      {"s3", LocationKind::kSite, {520.0, 620.0}},
      {"s4", LocationKind::kSite, {1071.0, 620.0}},
      {"c1", LocationKind::kStation, {400.0, 0.0}},
      {"c2", LocationKind::kStation, {1156.0, 0.0}},
      {"c3", LocationKind::kStation, {1411.0, 310.0}},
      {"c4", LocationKind::kStation, {180.0, 310.0}},
  };
  return s;
}

std::vector<NamedScenario> study1_family() {
  // 20 km/h winds; "south" and "north-east" name the direction the wind
  // comes from, so the movement vectors point north and south-west.
  const double w = 20.0 / 3.6;
  const WindDomain south{w, w, 90.0 * kDegToRad, 90.0 * kDegToRad};
  const WindDomain north_east{w, w, 225.0 * kDegToRad, 225.0 * kDegToRad};
  std::vector<NamedScenario> cases;
  cases.push_back({"s1c1", study_case("3dr-solo", 70.0, 0.0, south)});
  cases.push_back({"s1c2", study_case("3dr-solo", 70.0, 0.0, north_east)});
  cases.push_back({"s1c3", study_case("3dr-solo", 140.0, 500.0, south)});
  cases.push_back({"s1c4", study_case("3dr-solo", 140.0, 500.0, north_east)});
  cases.push_back({"s1c5", study_case("dji-matrice-100", 130.0, 0.0, south)});
  cases.push_back({"s1c6", study_case("dji-matrice-100", 130.0, 0.0, north_east)});
  cases.push_back({"s1c7", study_case("dji-matrice-100", 260.0, 600.0, south)});
  cases.push_back({"s1c8", study_case("dji-matrice-100", 260.0, 600.0, north_east)});
  return cases;
}

std::vector<NamedScenario> study2_ladder() {
  // Widening speed and orientation uncertainty around a wind from the south,
  // from a narrow quarter-turn band up to the full circle.
  auto level = [](int i) {
    const double lo[] = {9.0, 6.0, 3.0, 0.0};
    const double hi[] = {12.0, 15.0, 18.0, 21.0};
    const double half_width[] = {45.0, 90.0, 135.0, 180.0};
    return WindDomain{lo[i] / 3.6, hi[i] / 3.6,
                      (90.0 - half_width[i]) * kDegToRad,
                      (90.0 + half_width[i]) * kDegToRad};
  };
  std::vector<NamedScenario> cases;
  for (int i = 0; i < 4; ++i) {
    cases.push_back({"s2c" + std::to_string(i + 1),
                     study_case("3dr-solo", 70.0, 0.0, level(i))});
  }
  for (int i = 0; i < 4; ++i) {
    cases.push_back({"s2c" + std::to_string(i + 5),
                     study_case("dji-matrice-100", 260.0, 600.0, level(i))});
  }
  return cases;
}

}  // namespace droneplan
