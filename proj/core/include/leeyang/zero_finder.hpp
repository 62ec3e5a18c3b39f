#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leeyang/ising_model.hpp"

namespace leeyang {

/// Lee-Yang zeros z_n = r_n exp(-i theta_n) of one partition polynomial.
///
/// Angles are sorted ascending in (0, 2 pi). Zeros located directly on the
/// circle (the zero-field coherence path) have r_n = 1; the polynomial root
/// path records the radius it actually converged to.
struct ZeroSet {
  std::vector<double> angles;
  std::vector<unsigned> multiplicities;
  std::optional<std::vector<double>> uncertainties;  // delta theta_n, +inf when unbounded
  std::vector<double> radii;
  IsingParams params;
  /// Set when the located zeros (with multiplicity) do not add up to N or
  /// a root solver misbehaved.
  std::optional<std::string> diagnostic;

  [[nodiscard]] std::size_t size() const noexcept { return angles.size(); }
  [[nodiscard]] unsigned total_multiplicity() const noexcept;
  /// Multiplicities add up to N and no diagnostic was raised.
  [[nodiscard]] bool complete() const noexcept;
  [[nodiscard]] std::vector<std::complex<double>> z_values() const;
  /// t_n = theta_n / lambda.
  [[nodiscard]] std::vector<double> times() const;
};

struct RealScanOptions {
  std::size_t min_grid = 4096;
  std::size_t points_per_zero = 64;
  double bisection_tolerance = 1e-12;
  double cluster_tolerance = 1e-9;
  /// Grid multiplier for one retry when the first scan misses zeros.
  std::size_t refinement_factor = 16;
};

struct PolynomialRootOptions {
  int max_iterations = 500;
  double tolerance = 1e-13;
  double cluster_tolerance = 1e-9;
  double circle_tolerance = 1e-8;
};

/// Largest degree accepted by find_zeros_polynomial.
inline constexpr unsigned kMaxPolynomialDegree = 64;

/// Zeros of the zero-field coherence L(theta), which is real on the unit
/// circle. Sign changes are bracketed on a grid of max(4096, 64 N) points
/// and refined by bisection; conjugate pairing theta <-> 2 pi - theta is
/// used so only (0, pi] is scanned. Requires h = 0 and beta J >= 0.
ZeroSet find_zeros_real(const IsingParams& params, const RealScanOptions& options = {});

/// Smallest zero angle (the Yang-Lee edge) on the same grid as
/// find_zeros_real, stopping at the first bracket.
std::optional<double> first_zero_real(const IsingParams& params,
                                      const RealScanOptions& options = {});

/// All complex roots of sum_n p_n z^n by Aberth-Ehrlich simultaneous
/// iteration on the max-normalized coefficients, started on the unit circle.
ZeroSet find_zeros_polynomial(const PartitionPolynomial& poly,
                              const PolynomialRootOptions& options = {});

struct CircleReport {
  double max_deviation = 0.0;  // max | |z_n| - 1 |
  bool pass = true;
};

CircleReport verify_circle_theorem(const ZeroSet& zeros, double tolerance = 1e-8);

}  // namespace leeyang
