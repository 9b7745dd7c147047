#include "droneplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "droneplan/errors.hpp"

namespace droneplan {

std::string to_string(LocationKind kind) {
  switch (kind) {
    case LocationKind::kSite: return "site";
    case LocationKind::kStation: return "station";
    case LocationKind::kBase: return "base";
  }
  return "?";
}

LocationKind location_kind_from_string(const std::string& s) {
  if (s == "site") return LocationKind::kSite;
  if (s == "station") return LocationKind::kStation;
  if (s == "base") return LocationKind::kBase;
  throw MalformedInputError("unknown location kind '" + s + "'");
}

void BatteryEnvelope::validate() const {
  if (!(b_min_wh >= 0.0) || !(b_max_wh > b_min_wh) || !std::isfinite(b_max_wh)) {
    throw MalformedInputError("battery bounds must satisfy 0 <= b_min < b_max");
  }
  if (!(eta_c > 0.0) || !(eta_c <= 1.0)) {
    throw MalformedInputError("charging efficiency must be in (0, 1]");
  }
  if (!(eta_d >= 1.0) || !std::isfinite(eta_d)) {
    throw MalformedInputError("discharging efficiency must be >= 1");
  }
}

WindDomain WindDomain::point(Vec2 wind) {
  const double mag = wind.norm();
  const double theta = mag > 0.0 ? wind.angle() : 0.0;
  return {mag, mag, theta, theta};
}

bool WindDomain::is_point() const {
  return speed_min_mps == speed_max_mps &&
         (width_rad() == 0.0 || speed_max_mps == 0.0);
}

bool WindDomain::contains_angle(double theta_rad) const {
  return wrap_angle(theta_rad - theta_min_rad) <= width_rad() ||
         width_rad() >= 2.0 * kPi;
}

void WindDomain::validate() const {
  if (!(speed_min_mps >= 0.0) || !(speed_max_mps >= speed_min_mps) ||
      !std::isfinite(speed_max_mps)) {
    throw MalformedInputError("wind speeds must satisfy 0 <= min <= max");
  }
  if (!std::isfinite(theta_min_rad) || !std::isfinite(theta_max_rad) ||
      width_rad() < 0.0 || width_rad() > 2.0 * kPi + 1e-12) {
    throw MalformedInputError("wind orientation interval must span [0, 2*pi] at most");
  }
}

int Scenario::base_index() const {
  for (int i = 0; i < size(); ++i) {
    if (loc(i).kind == LocationKind::kBase) return i;
  }
  return -1;
}

std::vector<int> Scenario::site_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (loc(i).kind == LocationKind::kSite) out.push_back(i);
  }
  return out;
}

std::vector<int> Scenario::station_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (loc(i).kind == LocationKind::kStation) out.push_back(i);
  }
  return out;
}

int Scenario::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i) {
    if (loc(i).id == id) return i;
  }
  return -1;
}

void Scenario::validate_structure() const {
  if (locations.empty()) throw MalformedInputError("scenario has no locations");
  std::set<std::string> ids;
  int bases = 0;
  for (const auto& l : locations) {
    if (l.id.empty()) throw MalformedInputError("location ids must be nonempty");
    if (!ids.insert(l.id).second) {
      throw MalformedInputError("duplicate location id '" + l.id + "'");
    }
    if (!std::isfinite(l.position_m.x) || !std::isfinite(l.position_m.y)) {
      throw MalformedInputError("location '" + l.id + "' has non-finite coordinates");
    }
    if (l.kind == LocationKind::kBase) ++bases;
  }
  if (bases != 1) {
    throw MalformedInputError("scenario must contain exactly one base, found " +
                              std::to_string(bases));
  }
  battery.validate();
  coefficients.validate();
  wind.validate();
  if (!(payload_g >= 0.0) || !std::isfinite(payload_g)) {
    throw MalformedInputError("payload mass must be >= 0");
  }
  if (speeds_mps.empty()) throw MalformedInputError("at least one cruise speed required");
  double prev = 0.0;
  for (double v : speeds_mps) {
    if (!(v > prev) || !std::isfinite(v)) {
      throw MalformedInputError("cruise speeds must be positive, ascending and distinct");
    }
    prev = v;
  }
  if (!(charge_seconds_per_wh > 0.0) || !std::isfinite(charge_seconds_per_wh)) {
    throw MalformedInputError("charge_seconds_per_wh must be > 0");
  }
}

double worst_case_cf(const PowerCoefficients& coeffs, double speed_mps,
                     Vec2 heading, const WindDomain& wind, double payload_g) {
  wind.validate();
  const double heading_angle = heading.angle();
  // Candidate orientations: interval endpoints plus, where they fall inside
  // the interval, the heading itself and its opposite (cos = +-1).
  double candidates[4];
  int count = 0;
  candidates[count++] = wind.theta_min_rad;
  candidates[count++] = wind.theta_max_rad;
  if (wind.contains_angle(heading_angle)) candidates[count++] = heading_angle;
  if (wind.contains_angle(heading_angle + kPi)) {
    candidates[count++] = heading_angle + kPi;
  }

  bool have = false;
  CruiseState best;
  double best_rate = 0.0;
  for (double mag : {wind.speed_min_mps, wind.speed_max_mps}) {
    for (int i = 0; i < count; ++i) {
      CruiseState c;
      c.speed_mps = speed_mps;
      c.heading = heading;
      c.wind_xy = unit_from_angle(candidates[i]) * mag;
      c.payload_mass_g = payload_g;
      const double rate = cruise_energy_rate(coeffs, c);
      if (!have || rate > best_rate) {
        have = true;
        best = c;
        best_rate = rate;
      }
    }
  }
  return best_rate;
}

EdgeCost edge_cost(const Scenario& s, int u, int v, double speed_mps) {
  if (u == v) return EdgeCost{};
  EdgeCost c;
  c.distance_m = distance(s.loc(u).position_m, s.loc(v).position_m);
  if (c.distance_m == 0.0) return EdgeCost{};
  const Vec2 heading = (s.loc(v).position_m - s.loc(u).position_m) *
                       (1.0 / c.distance_m);
  c.cf_j_per_m = worst_case_cf(s.coefficients, speed_mps, heading, s.wind,
                               s.payload_g);
  c.tau_s = c.distance_m / speed_mps;
  c.energy_wh = c.cf_j_per_m * c.distance_m * kJToWh;
  return c;
}

CostMatrix CostMatrix::build(const Scenario& s, double speed_mps) {
  s.validate_structure();
  if (!(speed_mps > 0.0)) throw MalformedInputError("speed must be > 0");
  CostMatrix m;
  m.n_ = s.size();
  m.speed_ = speed_mps;
  m.seconds_per_wh_ = s.charge_seconds_per_wh;
  const size_t nn = static_cast<size_t>(m.n_) * m.n_;
  m.dist_m_.assign(nn, 0.0);
  m.cf_.assign(nn, 0.0);
  m.energy_wh_.assign(nn, 0.0);
  m.sym_energy_wh_.assign(nn, 0.0);
  bool any = false;
  for (int u = 0; u < m.n_; ++u) {
    for (int v = 0; v < m.n_; ++v) {
      if (u == v) continue;
      const EdgeCost c = edge_cost(s, u, v, speed_mps);
      const size_t idx = static_cast<size_t>(u) * m.n_ + v;
      m.dist_m_[idx] = c.distance_m;
      m.cf_[idx] = c.cf_j_per_m;
      m.energy_wh_[idx] = c.energy_wh;
      if (c.distance_m > 0.0) {
        if (!any) {
          m.cf_lo_ = m.cf_hi_ = c.cf_j_per_m;
          any = true;
        } else {
          m.cf_lo_ = std::min(m.cf_lo_, c.cf_j_per_m);
          m.cf_hi_ = std::max(m.cf_hi_, c.cf_j_per_m);
        }
      }
    }
  }
  for (int u = 0; u < m.n_; ++u) {
    for (int v = 0; v < m.n_; ++v) {
      const size_t idx = static_cast<size_t>(u) * m.n_ + v;
      const size_t rev = static_cast<size_t>(v) * m.n_ + u;
      m.sym_energy_wh_[idx] = std::max(m.energy_wh_[idx], m.energy_wh_[rev]);
    }
  }
  return m;
}

graphkit::WeightedGraph CostMatrix::energy_graph() const {
  graphkit::WeightedGraph g(n_, 0.0);
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      g.set_weight(u, v, sym_energy_wh(u, v));
    }
  }
  return g;
}

ValidationResult validate(const Scenario& s, double speed_mps) {
  const CostMatrix cost = CostMatrix::build(s, speed_mps);
  const graphkit::PathTable paths = graphkit::all_pairs_shortest(cost.energy_graph());
  ValidationResult r;
  r.usable_wh = s.battery.usable_range_wh();
  const auto stations = s.station_indices();
  if (stations.empty()) return r;  // alpha = 0 by convention, no stations to reach
  const double half_range = r.usable_wh / 2.0;
  for (int site : s.site_indices()) {
    double nearest = graphkit::kInf;
    for (int st : stations) nearest = std::min(nearest, paths.d(site, st));
    const double a = nearest / half_range;
    if (a > r.alpha) {
      r.alpha = a;
      r.worst_site = site;
    }
  }
  if (r.alpha >= 1.0) {
    const std::string id = s.loc(r.worst_site).id;
    throw InfeasibleSiteError(
        "site '" + id + "' lies beyond half the usable range of every station",
        id);
  }
  return r;
}

ValidationResult validate(const Scenario& s) {
  s.validate_structure();
  return validate(s, s.speeds_mps.front());
}

}  // namespace droneplan
