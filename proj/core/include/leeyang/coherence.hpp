#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "leeyang/ising_model.hpp"

namespace leeyang {

/// Default resolution of a coherence trace over one period 2 pi / lambda.
inline constexpr std::size_t kDefaultSamplesPerPeriod = 2048;

/// Probe-spin coherence sampled on a uniform time grid.
struct CoherenceTrace {
  std::vector<double> times;   // s
  std::vector<double> angles;  // theta = lambda t
  std::vector<std::complex<double>> values;
  IsingParams params;
};

/// Evaluates L(theta) = Xi(beta, h + i theta / beta) / Xi(beta, h) for one
/// fixed polynomial. Weights are normalized by the largest coefficient so
/// that N = 500 and large beta J stay representable.
class CoherenceKernel {
 public:
  explicit CoherenceKernel(const PartitionPolynomial& poly);
  explicit CoherenceKernel(const IsingParams& params);

  [[nodiscard]] std::complex<double> value(double theta) const;
  [[nodiscard]] std::complex<double> derivative(double theta) const;

 private:
  std::vector<double> weights_;  // p_n z^n / max
  std::vector<double> orders_;   // N/2 - n
  double weight_sum_ = 0.0;
};

std::complex<double> coherence_at(const IsingParams& params, double theta);

/// dL/dtheta, differentiated term by term.
std::complex<double> coherence_sensitivity(const IsingParams& params,
                                           double theta);

/// 2 pi / lambda.
double coherence_period(const IsingParams& params);

/// Uniform grid of n_samples points on [t_start, t_end], both ends included.
CoherenceTrace coherence_trace(const IsingParams& params, double t_start,
                               double t_end, std::size_t n_samples);

/// One full period [0, 2 pi / lambda].
CoherenceTrace coherence_trace(const IsingParams& params,
                               std::size_t n_samples = kDefaultSamplesPerPeriod);

std::vector<double> uniform_grid(double start, double end, std::size_t n_samples);

}  // namespace leeyang
