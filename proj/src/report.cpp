#include "droneplan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "droneplan/errors.hpp"
#include "json.hpp"

namespace droneplan {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

std::string plan_to_json(const Scenario& s, const FlightPlan& plan,
                         const PlanReport& report) {
  json doc;
  doc["stops"] = json::array();
  for (size_t k = 0; k < plan.stops.size(); ++k) {
    const Location& l = s.loc(plan.stops[k]);
    doc["stops"].push_back({{"id", l.id},
                            {"kind", to_string(l.kind)},
                            {"soc_wh", plan.soc_wh[k]},
                            {"charge_wh", plan.charge_wh[k]}});
  }
  doc["speed_mps"] = plan.speed_mps;
  doc["totals"] = {{"flight_s", plan.totals.flight_s},
                   {"charge_s", plan.totals.charge_s},
                   {"distance_m", plan.totals.distance_m},
                   {"energy_wh", plan.totals.energy_wh}};
  doc["flags"] = {{"matching_exact", report.matching_exact},
                  {"ratio_vs_oracle", report.ratio_vs_oracle
                                          ? json(*report.ratio_vs_oracle)
                                          : json(nullptr)}};
  return doc.dump(2) + "\n";
}

LoadedPlan plan_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInputError(std::string("plan is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("stops") || !doc["stops"].is_array()) {
    throw MalformedInputError("plan needs a 'stops' array");
  }
  LoadedPlan plan;
  for (const auto& stop : doc["stops"]) {
    if (!stop.is_object() || !stop.contains("id") || !stop.contains("charge_wh")) {
      throw MalformedInputError("plan stops need 'id' and 'charge_wh'");
    }
    plan.stop_ids.push_back(stop["id"].get<std::string>());
    plan.charge_wh.push_back(stop["charge_wh"].get<double>());
  }
  if (doc.contains("speed_mps")) plan.speed_mps = doc["speed_mps"].get<double>();
  return plan;
}

std::string soc_trace_to_csv(const Scenario& s, const CostMatrix& cost,
                             const FlightPlan& plan) {
  std::ostringstream out;
  out << "stop_index,id,soc_wh,cum_time_s\n";
  double clock_s = 0.0;
  for (size_t k = 0; k < plan.stops.size(); ++k) {
    if (k > 0) {
      clock_s += cost.seconds_per_wh() * plan.charge_wh[k - 1];
      clock_s += cost.tau_s(plan.stops[k - 1], plan.stops[k]);
    }
    out << k << ',' << s.loc(plan.stops[k]).id << ','
        << fmt("%.6f", plan.soc_wh[k]) << ',' << fmt("%.3f", clock_s) << '\n';
  }
  return out.str();
}

std::string plan_to_svg(const Scenario& s, const FlightPlan& plan) {
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& l : s.locations) {
    if (first) {
      min_x = max_x = l.position_m.x;
      min_y = max_y = l.position_m.y;
      first = false;
    }
    min_x = std::min(min_x, l.position_m.x);
    max_x = std::max(max_x, l.position_m.x);
    min_y = std::min(min_y, l.position_m.y);
    max_y = std::max(max_y, l.position_m.y);
  }
  const double pad = std::max(60.0, 0.05 * std::max(max_x - min_x, max_y - min_y));
  min_x -= pad;
  max_x += pad;
  min_y -= pad;
  max_y += pad;
  const double width = 800.0;
  const double scale = width / (max_x - min_x);
  const double height = (max_y - min_y) * scale;
  auto X = [&](double x) { return (x - min_x) * scale; };
  auto Y = [&](double y) { return height - (y - min_y) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", width)
      << "\" height=\"" << fmt("%.0f", height) << "\" viewBox=\"0 0 "
      << fmt("%.0f", width) << ' ' << fmt("%.0f", height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Hops coloured by SoC at departure, from green (full) to red (floor).
  const double span = std::max(1e-9, s.battery.b_max_wh - s.battery.b_min_wh);
  for (size_t k = 0; k + 1 < plan.stops.size(); ++k) {
    const Vec2 a = s.loc(plan.stops[k]).position_m;
    const Vec2 b = s.loc(plan.stops[k + 1]).position_m;
    const double depart =
        plan.soc_wh[k] + s.battery.eta_c * plan.charge_wh[k];
    const double f = std::clamp((depart - s.battery.b_min_wh) / span, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(220.0 * (1.0 - f)));
    const int g = static_cast<int>(std::lround(170.0 * f));
    svg << "<line x1=\"" << fmt("%.2f", X(a.x)) << "\" y1=\"" << fmt("%.2f", Y(a.y))
        << "\" x2=\"" << fmt("%.2f", X(b.x)) << "\" y2=\"" << fmt("%.2f", Y(b.y))
        << "\" stroke=\"rgb(" << r << ',' << g << ",40)\" stroke-width=\"2\"/>\n";
    const double mx = (X(a.x) + X(b.x)) / 2.0;
    const double my = (Y(a.y) + Y(b.y)) / 2.0;
    svg << "<text x=\"" << fmt("%.2f", mx + 4) << "\" y=\"" << fmt("%.2f", my - 4)
        << "\" font-size=\"11\" fill=\"#444\">" << (k + 1) << "</text>\n";
  }

  for (const auto& l : s.locations) {
    const double x = X(l.position_m.x);
    const double y = Y(l.position_m.y);
    switch (l.kind) {
      case LocationKind::kSite:
        svg << "<circle cx=\"" << fmt("%.2f", x) << "\" cy=\"" << fmt("%.2f", y)
            << "\" r=\"6\" fill=\"black\"/>\n";
        break;
      case LocationKind::kStation:
        svg << "<rect x=\"" << fmt("%.2f", x - 6) << "\" y=\"" << fmt("%.2f", y - 6)
            << "\" width=\"12\" height=\"12\" fill=\"#1f77b4\"/>\n";
        break;
      case LocationKind::kBase:
        svg << "<polygon points=\"" << fmt("%.2f", x) << ',' << fmt("%.2f", y - 8)
            << ' ' << fmt("%.2f", x - 7) << ',' << fmt("%.2f", y + 6) << ' '
            << fmt("%.2f", x + 7) << ',' << fmt("%.2f", y + 6)
            << "\" fill=\"magenta\"/>\n";
        break;
    }
    svg << "<text x=\"" << fmt("%.2f", x + 8) << "\" y=\"" << fmt("%.2f", y + 12)
        << "\" font-size=\"12\" fill=\"#222\">" << l.id << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "case_id,algorithm,status,trip_time_s,charge_time_s,energy_wh,ratio_vs_ours\n";
  for (const auto& row : rows) {
    out << row.case_id << ',' << row.algorithm << ','
        << (row.ok ? "ok" : "failed") << ',';
    if (row.ok) {
      out << fmt("%.3f", row.trip_time_s) << ',' << fmt("%.3f", row.charge_time_s)
          << ',' << fmt("%.4f", row.energy_wh) << ',';
      if (row.ratio_vs_ours) out << fmt("%.6f", *row.ratio_vs_ours);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedInputError("cannot write " + path.string());
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace droneplan
