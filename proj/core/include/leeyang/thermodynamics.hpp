#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leeyang/ising_model.hpp"
#include "leeyang/zero_finder.hpp"

namespace leeyang {

enum class FreeEnergySource { direct, from_zeros, saddle_large_n };

std::string_view to_string(FreeEnergySource source) noexcept;
/// Accepts "direct", "from_zeros" and "saddle_large_n".
FreeEnergySource parse_free_energy_source(std::string_view name);

/// F = -T ln Xi, total and per spin.
struct FreeEnergyResult {
  double log_partition = 0.0;
  double free_energy = 0.0;
  double per_spin = 0.0;
  double beta = 0.0;
  double field = 0.0;
  unsigned n_spins = 0;
  FreeEnergySource source = FreeEnergySource::direct;
};

FreeEnergyResult free_energy_direct(const IsingParams& params);

/// Rebuilds Xi = exp(N(N-1) beta J / 8 + N beta h / 2) prod_n (z - z_n)^{m_n}
/// from a complete zero set; the leading coefficient p_N is 1.
FreeEnergyResult free_energy_from_zeros(const ZeroSet& zeros);

/// Large-N saddle-point estimate, log Xi ~ -N beta J / 8 - N phi(x*).
FreeEnergyResult free_energy_saddle(const IsingParams& params);

struct EdgeSample {
  double temperature_over_nj = 0.0;
  double theta1 = 0.0;  // smallest zero angle, rad
};

/// Yang-Lee edge theta_1 as a function of temperature.
struct EdgeCurve {
  std::vector<EdgeSample> samples;  // sorted by temperature
  unsigned n_spins = 0;
  double coupling = 1.0;
  std::optional<double> estimated_tc;  // absolute temperature
  std::string tc_method;
};

struct TcEstimate {
  std::optional<double> temperature;  // absolute; empty when no knee is found
  double analytic = 0.0;              // N J / 4
  std::string method;
  std::string reason;                 // why no estimate was produced
};

struct EdgeScanOptions {
  unsigned threads = 0;
  RealScanOptions scan;
};

/// theta_1 at each absolute temperature (positive, strictly ascending;
/// +inf is accepted and gives pi). The curve's Tc fields are filled from
/// estimate_tc.
EdgeCurve edge_scan(unsigned n_spins, double coupling,
                    std::span<const double> temperatures,
                    const EdgeScanOptions& options = {});

/// Temperature of maximum curvature of theta_1(T), i.e. the largest second
/// difference on the sample grid: the knee between the low-temperature
/// plateau and the rise. Needs at least 8 finite samples on both sides of
/// N J / 4.
TcEstimate estimate_tc(const EdgeCurve& curve);

}  // namespace leeyang
