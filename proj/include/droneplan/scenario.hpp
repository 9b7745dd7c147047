#pragma once

#include <string>
#include <vector>

#include "droneplan/geometry.hpp"
#include "droneplan/graphkit.hpp"
#include "droneplan/model.hpp"

namespace droneplan {

enum class LocationKind { kSite, kStation, kBase };

std::string to_string(LocationKind kind);
LocationKind location_kind_from_string(const std::string& s);

struct Location {
  std::string id;
  LocationKind kind = LocationKind::kSite;
  Vec2 position_m;
};

/// Battery operating envelope. Missions always start with a full battery.
struct BatteryEnvelope {
  double b_min_wh = 0.0;  ///< reserve floor the SoC may never cross
  double b_max_wh = 0.0;  ///< pack capacity
  double eta_c = 1.0;     ///< charging efficiency, (0,1]
  double eta_d = 1.0;     ///< discharging efficiency, >= 1

  double initial_soc_wh() const { return b_max_wh; }
  /// Usable energy per full charge, (b_max - b_min) / eta_d, in Wh.
  double usable_range_wh() const { return (b_max_wh - b_min_wh) / eta_d; }

  void validate() const;
};

/// Linear trip-time constants: flight seconds per meter and charging seconds
/// per commanded Wh.
struct CostConstants {
  double seconds_per_meter = 0.0;
  double seconds_per_wh = 0.0;
};

/// Uncertain wind: magnitude in [speed_min, speed_max] m/s and direction
/// (the bearing the air moves toward) in [theta_min, theta_max], where the
/// interval may wrap and spans at most a full turn.
struct WindDomain {
  double speed_min_mps = 0.0;
  double speed_max_mps = 0.0;
  double theta_min_rad = 0.0;
  double theta_max_rad = 0.0;

  static WindDomain point(Vec2 wind);
  static WindDomain calm() { return {}; }

  double width_rad() const { return theta_max_rad - theta_min_rad; }
  bool is_point() const;
  bool contains_angle(double theta_rad) const;
  void validate() const;
};

struct Scenario {
  std::vector<Location> locations;
  BatteryEnvelope battery;
  PowerCoefficients coefficients;
  std::string preset_id;  ///< empty when raw coefficients were supplied
  double payload_g = 0.0;
  WindDomain wind;
  std::vector<double> speeds_mps;        ///< ascending cruise speed options
  double charge_seconds_per_wh = 0.0;

  int size() const { return static_cast<int>(locations.size()); }
  const Location& loc(int i) const { return locations[static_cast<size_t>(i)]; }
  int base_index() const;
  std::vector<int> site_indices() const;
  std::vector<int> station_indices() const;
  /// Index of a location id, or -1.
  int index_of(const std::string& id) const;
  bool is_station(int i) const { return loc(i).kind == LocationKind::kStation; }

  /// Structural invariants: unique ids, exactly one base, valid battery,
  /// wind and speed options. Throws MalformedInputError.
  void validate_structure() const;
};

/// Largest cruise energy rate (J/m) over the wind domain for a given heading.
/// The rate is affine in the speed-wind inner product, so the maximum sits at
/// a corner of the magnitude interval and one of at most four critical
/// orientations; no sampling involved.
double worst_case_cf(const PowerCoefficients& coeffs, double speed_mps,
                     Vec2 heading, const WindDomain& wind, double payload_g);

struct EdgeCost {
  double distance_m = 0.0;
  double tau_s = 0.0;
  double cf_j_per_m = 0.0;
  double energy_wh = 0.0;
};

/// Directed edge cost under worst-case wind. u == v yields all zeros.
EdgeCost edge_cost(const Scenario& s, int u, int v, double speed_mps);

/// Dense per-pair cost structure for one cruise speed. Directional energies
/// feed SoC accounting; the max-symmetrized energies feed the undirected
/// tour pipeline. Construction is pure arithmetic, so rebuilding from the
/// same scenario is bit-identical.
class CostMatrix {
public:
  static CostMatrix build(const Scenario& s, double speed_mps);

  int size() const { return n_; }
  double speed_mps() const { return speed_; }
  double seconds_per_meter() const { return 1.0 / speed_; }
  double seconds_per_wh() const { return seconds_per_wh_; }

  double distance_m(int u, int v) const { return at(dist_m_, u, v); }
  double tau_s(int u, int v) const { return at(dist_m_, u, v) / speed_; }
  /// Worst-case energy rate along u->v, J/m.
  double cf_j_per_m(int u, int v) const { return at(cf_, u, v); }
  /// Worst-case energy to fly u->v, Wh.
  double energy_wh(int u, int v) const { return at(energy_wh_, u, v); }
  /// max(energy(u,v), energy(v,u)), the undirected planning weight, Wh.
  double sym_energy_wh(int u, int v) const { return at(sym_energy_wh_, u, v); }

  double cf_lo_j_per_m() const { return cf_lo_; }
  double cf_hi_j_per_m() const { return cf_hi_; }
  double cf_lo_wh_per_m() const { return cf_lo_ * kJToWh; }
  double cf_hi_wh_per_m() const { return cf_hi_ * kJToWh; }

  /// Undirected graph over all locations weighted by symmetrized energy.
  graphkit::WeightedGraph energy_graph() const;

private:
  double at(const std::vector<double>& m, int u, int v) const {
    return m[static_cast<size_t>(u) * n_ + v];
  }
  int n_ = 0;
  double speed_ = 1.0;
  double seconds_per_wh_ = 0.0;
  double cf_lo_ = 0.0;
  double cf_hi_ = 0.0;
  std::vector<double> dist_m_, cf_, energy_wh_, sym_energy_wh_;
};

struct ValidationResult {
  double alpha = 0.0;     ///< max over sites of (station distance) / (U/2)
  int worst_site = -1;    ///< location index attaining alpha, -1 if no sites
  double usable_wh = 0.0; ///< U, Wh
};

/// Checks the reachability assumption at one cruise speed: every site must
/// lie within alpha * U/2 of some charging station, alpha < 1, measured in
/// shortest-path energy. Throws InfeasibleSiteError naming the first site
/// beyond U/2. Scenarios without stations validate with alpha = 0; battery
/// limits are then enforced by the planner alone.
ValidationResult validate(const Scenario& s, double speed_mps);

/// Same check at the scenario's lowest speed option.
ValidationResult validate(const Scenario& s);

}  // namespace droneplan
