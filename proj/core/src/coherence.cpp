#include "leeyang/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "leeyang/error.hpp"

namespace leeyang {

CoherenceKernel::CoherenceKernel(const PartitionPolynomial& poly) {
  const std::size_t count = poly.log_coeffs.size();
  const double log_z = poly.log_z();
  const double half_n = 0.5 * poly.degree();

  std::vector<double> exponents(count);
  for (std::size_t n = 0; n < count; ++n)
    exponents[n] = poly.log_coeffs[n] + static_cast<double>(n) * log_z;
  const double max_exponent = *std::max_element(exponents.begin(), exponents.end());

  weights_.resize(count);
  orders_.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    weights_[n] = std::exp(exponents[n] - max_exponent);
    orders_[n] = half_n - static_cast<double>(n);
    weight_sum_ += weights_[n];
  }
}

CoherenceKernel::CoherenceKernel(const IsingParams& params)
    : CoherenceKernel(build_polynomial(params)) {}

std::complex<double> CoherenceKernel::value(double theta) const {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t n = 0; n < weights_.size(); ++n) {
    const double phase = orders_[n] * theta;
    re += weights_[n] * std::cos(phase);
    im += weights_[n] * std::sin(phase);
  }
  return {re / weight_sum_, im / weight_sum_};
}

std::complex<double> CoherenceKernel::derivative(double theta) const {
  // d/dtheta of w e^{i m theta} is i m w e^{i m theta}
  double re = 0.0;
  double im = 0.0;
  for (std::size_t n = 0; n < weights_.size(); ++n) {
    const double phase = orders_[n] * theta;
    const double scale = weights_[n] * orders_[n];
    re -= scale * std::sin(phase);
    im += scale * std::cos(phase);
  }
  return {re / weight_sum_, im / weight_sum_};
}

std::complex<double> coherence_at(const IsingParams& params, double theta) {
  return CoherenceKernel(params).value(theta);
}

std::complex<double> coherence_sensitivity(const IsingParams& params, double theta) {
  return CoherenceKernel(params).derivative(theta);
}

namespace {

void require_probe_coupling(const IsingParams& params) {
  if (!(params.probe_coupling > 0.0) || !std::isfinite(params.probe_coupling))
    throw InvalidArgument("probe coupling lambda must be positive and finite");
}

}  // namespace

double coherence_period(const IsingParams& params) {
  require_probe_coupling(params);
  return 2.0 * std::numbers::pi / params.probe_coupling;
}

std::vector<double> uniform_grid(double start, double end, std::size_t n_samples) {
  if (!std::isfinite(start) || !std::isfinite(end))
    throw InvalidArgument("grid bounds must be finite");
  if (!(end > start)) throw InvalidArgument("grid end must exceed grid start");
  if (n_samples < 2) throw InvalidArgument("a grid needs at least two samples");
  std::vector<double> grid(n_samples);
  const double step = (end - start) / static_cast<double>(n_samples - 1);
  for (std::size_t k = 0; k < n_samples; ++k) grid[k] = start + step * static_cast<double>(k);
  grid.back() = end;
  return grid;
}

CoherenceTrace coherence_trace(const IsingParams& params, double t_start,
                               double t_end, std::size_t n_samples) {
  require_probe_coupling(params);
  CoherenceTrace trace;
  trace.params = params;
  trace.times = uniform_grid(t_start, t_end, n_samples);
  const CoherenceKernel kernel(params);
  trace.angles.resize(n_samples);
  trace.values.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    trace.angles[k] = params.probe_coupling * trace.times[k];
    trace.values[k] = kernel.value(trace.angles[k]);
  }
  return trace;
}

CoherenceTrace coherence_trace(const IsingParams& params, std::size_t n_samples) {
  return coherence_trace(params, 0.0, coherence_period(params), n_samples);
}

}  // namespace leeyang
