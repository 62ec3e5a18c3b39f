#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leeyang/ising_model.hpp"
#include "leeyang/zero_finder.hpp"

namespace leeyang {

/// Thermal ensemble of the bath as a mixture of magnetization sectors m,
/// each weighted by C(N, N/2 - m) exp(beta J m^2 / 2) z^{-m} / A.
/// Sectors are keyed by the integer 2m in {-N, -N+2, ..., N}.
struct EnsembleWeights {
  std::vector<double> weights;  // index (2m + N) / 2
  IsingParams params;

  [[nodiscard]] double weight(int twice_m) const;
  /// L(theta) = sum_m w_m exp(-i m theta).
  [[nodiscard]] std::complex<double> coherence(double theta) const;
};

/// State-preparation deviations, T2* decay and per-sample measurement noise.
struct NoiseModel {
  std::map<int, double> delta_x;  // keyed by 2m
  std::map<int, double> delta_y;
  double t2_star = std::numeric_limits<double>::infinity();  // s
  double eta = 0.0;
  std::uint64_t seed = 0;

  /// All deltas zero over every sector of an N-spin bath, no decay, no noise.
  static NoiseModel noiseless(unsigned n_spins);

  /// |delta| <= 0.05, t2_star > 0, eta >= 0.
  void validate() const;
  /// Additionally requires a delta pair for every sector of an N-spin bath.
  void validate_for(unsigned n_spins) const;
};

inline constexpr double kMaxStateDeviation = 0.05;

/// Synthetic FID-like record of the probe coherence.
struct MeasuredTrace {
  std::vector<double> times;
  std::vector<double> observed;                   // Re[e^{-t/T2*}(L + dL)] + noise
  std::vector<std::complex<double>> true_trace;   // noiseless L
  NoiseModel noise;
  IsingParams params;
};

struct ExtractionOptions {
  /// Half width, in samples, of the local cubic fit around a sign change.
  int half_window = 7;
};

/// Midpoint estimate for a degenerate cluster of zeros.
struct DegenerateZero {
  double angle = 0.0;
  double half_width = 0.0;  // half the length of the |L| < eta interval, rad
};

EnsembleWeights ensemble_weights(const IsingParams& params);

/// dL(theta) = sum_m (delta_x_m - i delta_y_m) exp(-i m theta).
std::complex<double> state_preparation_error(const NoiseModel& noise, unsigned n_spins,
                                             double theta);

/// Requires h = 0 and a noise model covering every sector.
MeasuredTrace synthesize_measurement(const IsingParams& params, const NoiseModel& noise,
                                     std::span<const double> times);

/// Divides out the known T2* envelope, brackets sign changes, merges sign
/// changes closer than one fit window (noise-induced chatter) and fits a
/// local cubic around each group. The result carries a diagnostic when the
/// number of zeros found differs from N.
ZeroSet extract_zeros(const MeasuredTrace& trace, const ExtractionOptions& options = {});

/// theta at the midpoint between the first and the last sample with
/// |L| < eta (envelope removed). Empty when the signal never dips below eta.
std::optional<DegenerateZero> extract_degenerate_zero(const MeasuredTrace& trace, double eta);

/// delta theta_n = eta / |dL/dtheta(theta_n)|; +inf where the slope vanishes.
ZeroSet zero_uncertainty(const IsingParams& params, ZeroSet zeros, double eta);

/// Noise presets bundled with the library, keyed by temperature label
/// ("inf", "15J/8", "9J/40").
std::map<std::string, NoiseModel> load_noise_presets(const std::filesystem::path& path);

}  // namespace leeyang
