#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "droneplan/model.hpp"
#include "droneplan/scenario.hpp"

namespace droneplan {

/// Parses a scenario from its JSON form. Parsing is strict: unknown fields
/// and missing required fields are MalformedInputError.
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario; stable field order, byte-identical across runs.
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Telemetry CSV with the header
/// vx,vy,ax,ay,vz,az,mass_g,wx,wy,power_w (one sample per row).
std::vector<MotionSample> load_telemetry_csv(const std::filesystem::path& path);
std::string telemetry_to_csv(std::span<const MotionSample> samples);

/// Coefficients JSON: {"beta": [...], "residual_norm_w": r}.
std::string fit_result_to_json(const FitResult& fit);

}  // namespace droneplan
