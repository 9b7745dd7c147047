#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "droneplan/geometry.hpp"

namespace droneplan {

/// Number of regression coefficients of the cruise power model.
inline constexpr int kNumCoefficients = 9;

/// Names of the feature columns, used in diagnostics for degenerate fits.
std::span<const std::string_view> feature_names();

/// Coefficients of the multivariate power-consumption model. Units are such
/// that the predicted power is in watts when speeds are m/s, accelerations
/// m/s^2 and masses grams.
struct PowerCoefficients {
  std::array<double, kNumCoefficients> beta{};

  /// Throws InvalidSampleError if any entry is non-finite.
  void validate() const;

  bool operator==(const PowerCoefficients&) const = default;
};

/// Calibrated preset for the 3DR Solo quadcopter.
PowerCoefficients solo_preset();
/// Calibrated preset for the DJI Matrice 100 quadcopter.
PowerCoefficients dji_matrice_preset();

/// Looks a preset up by its registry id ("3dr-solo", "dji-matrice-100").
std::optional<PowerCoefficients> preset_by_id(std::string_view id);
/// Default battery-charge duration per Wh for a preset, seconds.
std::optional<double> preset_charge_seconds_per_wh(std::string_view id);
/// All registered preset ids, for diagnostics.
std::vector<std::string> preset_ids();

/// One observed (or hypothetical) instant of drone motion.
struct MotionSample {
  Vec2 v_xy;                  ///< horizontal velocity, m/s
  Vec2 a_xy;                  ///< horizontal acceleration, m/s^2
  double v_z = 0.0;           ///< vertical speed magnitude, m/s, >= 0
  double a_z = 0.0;           ///< vertical acceleration magnitude, m/s^2, >= 0
  double payload_mass_g = 0.0;
  Vec2 wind_xy;               ///< wind movement vector, m/s
  std::optional<double> measured_power_w;  ///< present in fitting samples

  void validate() const;
};

/// Steady level flight at constant speed, used to derive per-edge energy rates.
struct CruiseState {
  double speed_mps = 0.0;
  Vec2 heading;  ///< unit vector
  Vec2 wind_xy;
  double payload_mass_g = 0.0;

  void validate() const;
};

/// The nine-entry feature vector the power model is linear in.
std::array<double, kNumCoefficients> feature_vector(const MotionSample& s);

/// Inner product of coefficients with an explicit feature vector.
double power_from_features(const PowerCoefficients& coeffs,
                           const std::array<double, kNumCoefficients>& phi);

/// Predicted battery power draw in watts for one motion sample.
double estimate_power(const PowerCoefficients& coeffs, const MotionSample& s);

/// Energy in joules for holding a motion state over a duration.
double estimate_energy(const PowerCoefficients& coeffs, const MotionSample& s,
                       double duration_s);

struct FitResult {
  PowerCoefficients coefficients;
  double residual_norm_w = 0.0;  ///< 2-norm of the fit residuals, watts
};

/// Ordinary least squares over samples that carry measured_power_w. Solved by
/// Householder QR; the feature columns of flight telemetry are poorly
/// conditioned, so normal equations are avoided.
FitResult fit_coefficients(std::span<const MotionSample> samples);

/// Energy per meter of travel (J/m) in steady level cruise. Throws
/// NonPhysicalRateError when the model predicts a non-positive rate, since
/// the planner requires strictly positive edge rates.
double cruise_energy_rate(const PowerCoefficients& coeffs, const CruiseState& c);

}  // namespace droneplan
