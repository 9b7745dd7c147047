#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "droneplan/scenario.hpp"

namespace droneplan {

struct CorpusParams {
  uint64_t seed = 0;
  int count = 1;
  int sites = 4;
  int stations = 3;
  std::string preset = "3dr-solo";
  double span_m = 1200.0;  ///< side of the square the stations are scattered in
};

/// Reproducible random scenarios. Stations are scattered first and every
/// site is placed inside a disk around one of them sized well below half the
/// usable range, so the reachability assumption holds by construction.
std::vector<Scenario> generate_corpus(const CorpusParams& params);

struct NamedScenario {
  std::string name;
  Scenario scenario;
};

/// Four sites, four stations and a base over a few square kilometres,
/// suburban-community scale; the default demo input.
Scenario demo_scenario();

/// Eight demo cases: both drone presets, single/double battery (with the
/// extra pack carried as payload), and a steady 20 km/h wind from the south
/// or the north-east.
std::vector<NamedScenario> study1_family();

/// Two four-step ladders of widening wind uncertainty (speed and orientation
/// ranges), one per drone preset, over the demo topology.
std::vector<NamedScenario> study2_ladder();

}  // namespace droneplan
