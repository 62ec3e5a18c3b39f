#include "leeyang/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leeyang/error.hpp"
#include "leeyang/parallel.hpp"

namespace leeyang {

namespace {

FreeEnergyResult make_result(const IsingParams& params, double log_partition,
                             FreeEnergySource source) {
  FreeEnergyResult r;
  r.log_partition = log_partition;
  r.free_energy = -log_partition / params.beta;
  r.per_spin = r.free_energy / params.n_spins;
  r.beta = params.beta;
  r.field = params.field;
  r.n_spins = params.n_spins;
  r.source = source;
  return r;
}

void require_finite_temperature(const IsingParams& params) {
  params.validate();
  if (params.beta == 0.0)
    throw InvalidArgument("free energy is undefined at infinite temperature (beta = 0)");
}

}  // namespace

std::string_view to_string(FreeEnergySource source) noexcept {
  switch (source) {
    case FreeEnergySource::direct: return "direct";
    case FreeEnergySource::from_zeros: return "from_zeros";
    case FreeEnergySource::saddle_large_n: return "saddle_large_n";
  }
  return "direct";
}

FreeEnergySource parse_free_energy_source(std::string_view name) {
  if (name == "direct") return FreeEnergySource::direct;
  if (name == "from_zeros") return FreeEnergySource::from_zeros;
  if (name == "saddle_large_n") return FreeEnergySource::saddle_large_n;
  throw InvalidArgument("unknown free energy source '" + std::string(name) + "'");
}

FreeEnergyResult free_energy_direct(const IsingParams& params) {
  require_finite_temperature(params);
  return make_result(params, partition_direct(params), FreeEnergySource::direct);
}

FreeEnergyResult free_energy_from_zeros(const ZeroSet& zeros) {
  const IsingParams& p = zeros.params;
  require_finite_temperature(p);
  if (zeros.total_multiplicity() != p.n_spins)
    throw InvalidArgument("zero set is incomplete: " + std::to_string(zeros.total_multiplicity()) +
                          " of " + std::to_string(p.n_spins) + " zeros");

  const double nn = p.n_spins;
  const double z = std::exp(-p.beta_h());
  double log_product = 0.0;
  for (std::size_t k = 0; k < zeros.angles.size(); ++k) {
    const double r = k < zeros.radii.size() ? zeros.radii[k] : 1.0;
    const double theta = zeros.angles[k];
    double log_distance;
    if (z == 1.0 && r == 1.0) {
      log_distance = std::log(2.0 * std::abs(std::sin(0.5 * theta)));
    } else {
      const double dx = z - r * std::cos(theta);
      const double dy = r * std::sin(theta);
      log_distance = 0.5 * std::log(dx * dx + dy * dy);
    }
    log_product += zeros.multiplicities[k] * log_distance;
  }
  const double log_partition = nn * (nn - 1.0) * p.beta_j() / 8.0 + nn * p.beta_h() / 2.0 + log_product;
  return make_result(p, log_partition, FreeEnergySource::from_zeros);
}

FreeEnergyResult free_energy_saddle(const IsingParams& params) {
  require_finite_temperature(params);
  const SaddlePointResult saddle = saddle_point(params);
  const double nn = params.n_spins;
  const double log_partition = -nn * params.beta_j() / 8.0 - nn * saddle.phi_at_saddle;
  return make_result(params, log_partition, FreeEnergySource::saddle_large_n);
}

EdgeCurve edge_scan(unsigned n_spins, double coupling, std::span<const double> temperatures,
                    const EdgeScanOptions& options) {
  if (n_spins == 0) throw InvalidArgument("n_spins must be at least 1");
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw InvalidArgument("coupling J must be positive and finite");
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] > 0.0) || std::isnan(temperatures[i]))
      throw InvalidArgument("edge_scan temperatures must be positive");
    if (i > 0 && !(temperatures[i] > temperatures[i - 1]))
      throw InvalidArgument("edge_scan temperatures must be strictly ascending");
  }

  EdgeCurve curve;
  curve.n_spins = n_spins;
  curve.coupling = coupling;
  curve.samples.resize(temperatures.size());
  const double scale = n_spins * coupling;

  parallel_for(temperatures.size(), options.threads, [&](std::size_t i) {
    const double t = temperatures[i];
    IsingParams params;
    params.n_spins = n_spins;
    params.coupling = coupling;
    params.beta = std::isinf(t) ? 0.0 : 1.0 / t;
    const std::optional<double> theta1 = first_zero_real(params, options.scan);
    if (!theta1)
      throw NumericalError("no Yang-Lee edge located at T = " + std::to_string(t));
    curve.samples[i] = {t / scale, *theta1};
  });

  const TcEstimate estimate = estimate_tc(curve);
  curve.estimated_tc = estimate.temperature;
  curve.tc_method = estimate.temperature ? estimate.method : "none: " + estimate.reason;
  return curve;
}

TcEstimate estimate_tc(const EdgeCurve& curve) {
  TcEstimate est;
  const double scale = curve.n_spins * curve.coupling;
  est.analytic = critical_temperature(curve.n_spins, curve.coupling);
  est.method = "maximum second difference of theta1(T)";

  std::vector<EdgeSample> s;
  for (const EdgeSample& e : curve.samples)
    if (std::isfinite(e.temperature_over_nj)) s.push_back(e);

  if (s.size() < 8) {
    est.reason = "fewer than 8 finite samples";
    return est;
  }
  if (!(s.front().temperature_over_nj < 0.25 && s.back().temperature_over_nj > 0.25)) {
    est.reason = "samples do not bracket N J / 4";
    return est;
  }

  double theta_scale = 0.0;
  for (const EdgeSample& e : s) theta_scale = std::max(theta_scale, std::abs(e.theta1));
  const double span = s.back().temperature_over_nj - s.front().temperature_over_nj;

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double h1 = s[i].temperature_over_nj - s[i - 1].temperature_over_nj;
    const double h2 = s[i + 1].temperature_over_nj - s[i].temperature_over_nj;
    const double d2 = 2.0 * ((s[i + 1].theta1 - s[i].theta1) / h2 - (s[i].theta1 - s[i - 1].theta1) / h1) /
                      (h1 + h2);
    if (d2 > best) {
      best = d2;
      best_index = i;
    }
  }
  if (!(best > 1e-6 * theta_scale / (span * span))) {
    est.reason = "theta1(T) has no curvature knee";
    return est;
  }
  est.temperature = s[best_index].temperature_over_nj * scale;
  return est;
}

}  // namespace leeyang
