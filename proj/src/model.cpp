#include "droneplan/model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "droneplan/errors.hpp"

namespace droneplan {

namespace {

constexpr std::array<std::string_view, kNumCoefficients> kFeatureNames = {
    "h_speed",  "h_accel", "h_speed*h_accel", "v_speed", "v_accel",
    "v_speed*v_accel", "payload_mass", "speed.wind", "const"};

bool finite(double v) { return std::isfinite(v); }
bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

}  // namespace

std::span<const std::string_view> feature_names() { return kFeatureNames; }

void PowerCoefficients::validate() const {
  for (double b : beta) {
    if (!finite(b)) throw InvalidSampleError("power coefficients must be finite");
  }
}

PowerCoefficients solo_preset() {
  return PowerCoefficients{{-1.526, 3.934, 0.968, 18.125, 96.613, -1.085,
                            0.220, 1.332, 433.9}};
}

PowerCoefficients dji_matrice_preset() {
  return PowerCoefficients{{-2.595, 0.116, 0.824, 18.321, 31.745, 13.282,
                            0.197, 1.43, 251.7}};
}

std::optional<PowerCoefficients> preset_by_id(std::string_view id) {
  if (id == "3dr-solo") return solo_preset();
  if (id == "dji-matrice-100") return dji_matrice_preset();
  return std::nullopt;
}

std::optional<double> preset_charge_seconds_per_wh(std::string_view id) {
  // Charging duration divided by pack capacity (Ah * V) from the vendor specs.
  if (id == "3dr-solo") return 90.0 * 60.0 / (5.2 * 14.8);
  if (id == "dji-matrice-100") return 180.0 * 60.0 / (5.7 * 22.8);
  return std::nullopt;
}

std::vector<std::string> preset_ids() { return {"3dr-solo", "dji-matrice-100"}; }

void MotionSample::validate() const {
  if (!finite(v_xy) || !finite(a_xy) || !finite(v_z) || !finite(a_z) ||
      !finite(payload_mass_g) || !finite(wind_xy)) {
    throw InvalidSampleError("motion sample contains non-finite values");
  }
  if (v_z < 0.0 || a_z < 0.0) {
    throw InvalidSampleError("vertical speed/acceleration magnitudes must be >= 0");
  }
  if (payload_mass_g < 0.0) {
    throw InvalidSampleError("payload mass must be >= 0");
  }
  if (measured_power_w && !finite(*measured_power_w)) {
    throw InvalidSampleError("measured power must be finite");
  }
}

void CruiseState::validate() const {
  if (!finite(speed_mps) || !finite(heading) || !finite(wind_xy) ||
      !finite(payload_mass_g)) {
    throw InvalidSampleError("cruise state contains non-finite values");
  }
  if (speed_mps <= 0.0) throw InvalidSampleError("cruise speed must be > 0");
  if (std::abs(heading.norm() - 1.0) > 1e-9) {
    throw InvalidSampleError("cruise heading must be a unit vector");
  }
  if (payload_mass_g < 0.0) throw InvalidSampleError("payload mass must be >= 0");
}

std::array<double, kNumCoefficients> feature_vector(const MotionSample& s) {
  const double vh = s.v_xy.norm();
  const double ah = s.a_xy.norm();
  return {vh,
          ah,
          vh * ah,
          s.v_z,
          s.a_z,
          s.v_z * s.a_z,
          s.payload_mass_g,
          s.v_xy.dot(s.wind_xy),
          1.0};
}

double power_from_features(const PowerCoefficients& coeffs,
                           const std::array<double, kNumCoefficients>& phi) {
  double p = 0.0;
  for (int i = 0; i < kNumCoefficients; ++i) p += coeffs.beta[i] * phi[i];
  return p;
}

double estimate_power(const PowerCoefficients& coeffs, const MotionSample& s) {
  coeffs.validate();
  s.validate();
  return power_from_features(coeffs, feature_vector(s));
}

double estimate_energy(const PowerCoefficients& coeffs, const MotionSample& s,
                       double duration_s) {
  if (!std::isfinite(duration_s) || duration_s < 0.0) {
    throw InvalidDurationError("duration must be finite and >= 0");
  }
  return estimate_power(coeffs, s) * duration_s;
}

FitResult fit_coefficients(std::span<const MotionSample> samples) {
  if (samples.size() < static_cast<size_t>(kNumCoefficients)) {
    throw InsufficientDataError("need at least 9 samples with measured power, got " +
                                std::to_string(samples.size()));
  }
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, kNumCoefficients);
  Eigen::VectorXd target(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const MotionSample& s = samples[static_cast<size_t>(r)];
    s.validate();
    if (!s.measured_power_w) {
      throw InvalidSampleError("fitting sample " + std::to_string(r) +
                               " lacks a measured power value");
    }
    const auto phi = feature_vector(s);
    for (int c = 0; c < kNumCoefficients; ++c) design(r, c) = phi[c];
    target(r) = *s.measured_power_w;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < kNumCoefficients) {
    // The trailing pivot columns are the ones expressible from the others.
    std::vector<std::string> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < kNumCoefficients; ++i) {
      dependent.emplace_back(kFeatureNames[static_cast<size_t>(perm(i))]);
    }
    std::ostringstream msg;
    msg << "design matrix is rank deficient (rank " << qr.rank()
        << " of " << kNumCoefficients << "); dependent columns:";
    for (const auto& name : dependent) msg << ' ' << name;
    throw DegenerateDesignError(msg.str(), std::move(dependent));
  }

  Eigen::VectorXd beta = qr.solve(target);
  FitResult result;
  for (int i = 0; i < kNumCoefficients; ++i) result.coefficients.beta[i] = beta(i);
  result.residual_norm_w = (design * beta - target).norm();
  return result;
}

double cruise_energy_rate(const PowerCoefficients& coeffs, const CruiseState& c) {
  c.validate();
  MotionSample level;
  level.v_xy = c.heading * c.speed_mps;
  level.wind_xy = c.wind_xy;
  level.payload_mass_g = c.payload_mass_g;
  const double watts = estimate_power(coeffs, level);
  const double rate = watts / c.speed_mps;
  if (!(rate > 0.0)) {
    std::ostringstream msg;
    msg << "cruise energy rate " << rate << " J/m at " << c.speed_mps
        << " m/s is not positive; scenario must be rejected";
    throw NonPhysicalRateError(msg.str());
  }
  return rate;
}

}  // namespace droneplan
