#include "droneplan/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "droneplan/errors.hpp"
#include "json.hpp"

namespace droneplan {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw MalformedInputError("unknown field '" + key + "' in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw MalformedInputError("missing numeric field '" + key + "' in " + where);
  }
  return obj[key].get<double>();
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw MalformedInputError("missing string field '" + key + "' in " + where);
  }
  return obj[key].get<std::string>();
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedInputError("scenario must be a JSON object");
  reject_unknown(doc,
                 {"locations", "battery", "drone", "wind", "speeds_mps",
                  "charge_seconds_per_wh"},
                 "scenario");

  Scenario s;
  if (!doc.contains("locations") || !doc["locations"].is_array()) {
    throw MalformedInputError("scenario needs a 'locations' array");
  }
  for (const auto& item : doc["locations"]) {
    if (!item.is_object()) throw MalformedInputError("locations must be objects");
    reject_unknown(item, {"id", "kind", "x_m", "y_m"}, "location");
    Location l;
    l.id = require_string(item, "id", "location");
    l.kind = location_kind_from_string(require_string(item, "kind", "location"));
    l.position_m = {require_number(item, "x_m", "location '" + l.id + "'"),
                    require_number(item, "y_m", "location '" + l.id + "'")};
    s.locations.push_back(std::move(l));
  }

  if (!doc.contains("battery") || !doc["battery"].is_object()) {
    throw MalformedInputError("scenario needs a 'battery' object");
  }
  const json& bat = doc["battery"];
  reject_unknown(bat, {"b_min_wh", "b_max_wh", "eta_c", "eta_d"}, "battery");
  s.battery.b_min_wh = require_number(bat, "b_min_wh", "battery");
  s.battery.b_max_wh = require_number(bat, "b_max_wh", "battery");
  s.battery.eta_c = require_number(bat, "eta_c", "battery");
  s.battery.eta_d = require_number(bat, "eta_d", "battery");

  if (!doc.contains("drone") || !doc["drone"].is_object()) {
    throw MalformedInputError("scenario needs a 'drone' object");
  }
  const json& drone = doc["drone"];
  reject_unknown(drone, {"preset", "coefficients", "payload_g"}, "drone");
  const bool has_preset = drone.contains("preset");
  const bool has_coeffs = drone.contains("coefficients");
  if (has_preset == has_coeffs) {
    throw MalformedInputError(
        "drone needs exactly one of 'preset' or 'coefficients'");
  }
  if (has_preset) {
    s.preset_id = require_string(drone, "preset", "drone");
    const auto coeffs = preset_by_id(s.preset_id);
    if (!coeffs) {
      std::string known;
      for (const auto& id : preset_ids()) known += " " + id;
      throw MalformedInputError("unknown drone preset '" + s.preset_id +
                                "'; known presets:" + known);
    }
    s.coefficients = *coeffs;
  } else {
    const json& arr = drone["coefficients"];
    if (!arr.is_array() || arr.size() != kNumCoefficients) {
      throw MalformedInputError("drone coefficients must be an array of 9 numbers");
    }
    for (int i = 0; i < kNumCoefficients; ++i) {
      if (!arr[static_cast<size_t>(i)].is_number()) {
        throw MalformedInputError("drone coefficients must be numbers");
      }
      s.coefficients.beta[static_cast<size_t>(i)] =
          arr[static_cast<size_t>(i)].get<double>();
    }
  }
  s.payload_g = require_number(drone, "payload_g", "drone");

  if (!doc.contains("wind") || !doc["wind"].is_object()) {
    throw MalformedInputError("scenario needs a 'wind' object");
  }
  const json& wind = doc["wind"];
  reject_unknown(wind, {"speed_min", "speed_max", "theta_min_deg", "theta_max_deg"},
                 "wind");
  s.wind.speed_min_mps = require_number(wind, "speed_min", "wind");
  s.wind.speed_max_mps = require_number(wind, "speed_max", "wind");
  s.wind.theta_min_rad = require_number(wind, "theta_min_deg", "wind") * kDegToRad;
  s.wind.theta_max_rad = require_number(wind, "theta_max_deg", "wind") * kDegToRad;

  if (!doc.contains("speeds_mps") || !doc["speeds_mps"].is_array() ||
      doc["speeds_mps"].empty()) {
    throw MalformedInputError("scenario needs a nonempty 'speeds_mps' array");
  }
  for (const auto& v : doc["speeds_mps"]) {
    if (!v.is_number()) throw MalformedInputError("speeds_mps must be numbers");
    s.speeds_mps.push_back(v.get<double>());
  }

  if (doc.contains("charge_seconds_per_wh")) {
    s.charge_seconds_per_wh = require_number(doc, "charge_seconds_per_wh", "scenario");
  } else if (!s.preset_id.empty()) {
    s.charge_seconds_per_wh = *preset_charge_seconds_per_wh(s.preset_id);
  } else {
    throw MalformedInputError(
        "'charge_seconds_per_wh' is required when raw coefficients are used");
  }

  s.validate_structure();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["locations"] = json::array();
  for (const auto& l : s.locations) {
    doc["locations"].push_back({{"id", l.id},
                                {"kind", to_string(l.kind)},
                                {"x_m", l.position_m.x},
                                {"y_m", l.position_m.y}});
  }
  doc["battery"] = {{"b_min_wh", s.battery.b_min_wh},
                    {"b_max_wh", s.battery.b_max_wh},
                    {"eta_c", s.battery.eta_c},
                    {"eta_d", s.battery.eta_d}};
  if (!s.preset_id.empty()) {
    doc["drone"] = {{"preset", s.preset_id}, {"payload_g", s.payload_g}};
  } else {
    doc["drone"] = {{"coefficients", s.coefficients.beta},
                    {"payload_g", s.payload_g}};
  }
  doc["wind"] = {{"speed_min", s.wind.speed_min_mps},
                 {"speed_max", s.wind.speed_max_mps},
                 {"theta_min_deg", s.wind.theta_min_rad * kRadToDeg},
                 {"theta_max_deg", s.wind.theta_max_rad * kRadToDeg}};
  doc["speeds_mps"] = s.speeds_mps;
  doc["charge_seconds_per_wh"] = s.charge_seconds_per_wh;
  return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedInputError("cannot write " + path.string());
  out << scenario_to_json(s);
}

std::vector<MotionSample> load_telemetry_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot open telemetry file " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw MalformedInputError("telemetry file is empty");
  }
  if (line != "vx,vy,ax,ay,vz,az,mass_g,wx,wy,power_w") {
    throw MalformedInputError(
        "telemetry header must be vx,vy,ax,ay,vz,az,mass_g,wx,wy,power_w");
  }
  std::vector<MotionSample> samples;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw MalformedInputError("telemetry row " + std::to_string(row) +
                                  " has a non-numeric cell '" + cell + "'");
      }
    }
    if (vals.size() != 10) {
      throw MalformedInputError("telemetry row " + std::to_string(row) +
                                " must have 10 columns");
    }
    MotionSample s;
    s.v_xy = {vals[0], vals[1]};
    s.a_xy = {vals[2], vals[3]};
    s.v_z = vals[4];
    s.a_z = vals[5];
    s.payload_mass_g = vals[6];
    s.wind_xy = {vals[7], vals[8]};
    s.measured_power_w = vals[9];
    s.validate();
    samples.push_back(s);
  }
  return samples;
}

std::string telemetry_to_csv(std::span<const MotionSample> samples) {
  std::ostringstream out;
  out << "vx,vy,ax,ay,vz,az,mass_g,wx,wy,power_w\n";
  out.precision(17);
  for (const auto& s : samples) {
    out << s.v_xy.x << ',' << s.v_xy.y << ',' << s.a_xy.x << ',' << s.a_xy.y
        << ',' << s.v_z << ',' << s.a_z << ',' << s.payload_mass_g << ','
        << s.wind_xy.x << ',' << s.wind_xy.y << ','
        << (s.measured_power_w ? *s.measured_power_w : 0.0) << '\n';
  }
  return out.str();
}

std::string fit_result_to_json(const FitResult& fit) {
  json doc;
  doc["beta"] = fit.coefficients.beta;
  doc["residual_norm_w"] = fit.residual_norm_w;
  return doc.dump(2) + "\n";
}

}  // namespace droneplan
