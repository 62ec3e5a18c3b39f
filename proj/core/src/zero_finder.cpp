#include "leeyang/zero_finder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "leeyang/error.hpp"
#include "real_coherence.hpp"

namespace leeyang {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegenerateBetaJ = 1e-12;

struct Root {
  double angle;
  unsigned multiplicity;
  double radius;
};

void check_real_path(const IsingParams& params) {
  params.validate();
  if (params.field != 0.0)
    throw InvalidArgument("find_zeros_real needs h = 0; use find_zeros_polynomial for a real field");
  if (params.beta_j() < 0.0)
    throw InvalidArgument("the zero finder assumes ferromagnetic coupling (beta J >= 0)");
}

ZeroSet degenerate_set(const IsingParams& params) {
  ZeroSet set;
  set.params = params;
  set.angles = {kPi};
  set.multiplicities = {params.n_spins};
  set.radii = {1.0};
  return set;
}

std::size_t grid_size(const RealScanOptions& options, unsigned n_spins) {
  std::size_t g = std::max(options.min_grid, options.points_per_zero * n_spins);
  return g + (g % 2);
}

double bisect(detail::RealCoherence& f, double lo, double hi, double lo_value,
              double tolerance) {
  const bool lo_positive = lo_value > 0.0;
  for (int it = 0; it < 200 && hi - lo > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = f.certified(mid);
    if (v == 0.0) return mid;
    ((v > 0.0) == lo_positive ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Zeros in (0, pi) (and at pi for even N) located from sign changes.
// With stop_at_first only the lowest bracket is refined.
std::vector<double> scan_lower_half(detail::RealCoherence& f, std::size_t grid,
                                    const RealScanOptions& options, bool stop_at_first) {
  std::vector<double> roots;
  const std::size_t half = grid / 2;
  const double step = kTwoPi / static_cast<double>(grid);
  const bool include_pi = f.n_spins() % 2 == 0;

  double prev_theta = 0.0;
  double prev_value = 1.0;  // L(0) = 1
  const std::size_t last = include_pi ? half : half - 1;
  for (std::size_t k = 1; k <= last; ++k) {
    const double theta = k == half ? kPi : step * static_cast<double>(k);
    const double v = f.certified(theta);
    if (v == 0.0) {
      roots.push_back(theta);
      if (stop_at_first) return roots;
    } else if (prev_value != 0.0 && (v > 0.0) != (prev_value > 0.0)) {
      roots.push_back(bisect(f, prev_theta, theta, prev_value, options.bisection_tolerance));
      if (stop_at_first) return roots;
    }
    prev_theta = theta;
    prev_value = v;
  }
  return roots;
}

std::vector<Root> cluster(std::vector<Root> roots, double tolerance) {
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.angle < b.angle; });
  std::vector<Root> merged;
  for (const Root& r : roots) {
    if (!merged.empty() && r.angle - merged.back().angle < tolerance) {
      Root& m = merged.back();
      if (std::abs(r.radius - 1.0) > std::abs(m.radius - 1.0)) m.radius = r.radius;
      m.multiplicity += r.multiplicity;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

ZeroSet assemble(const IsingParams& params, const std::vector<Root>& roots) {
  ZeroSet set;
  set.params = params;
  for (const Root& r : roots) {
    set.angles.push_back(r.angle);
    set.multiplicities.push_back(r.multiplicity);
    set.radii.push_back(r.radius);
  }
  if (set.total_multiplicity() != params.n_spins) {
    std::ostringstream msg;
    msg << "located " << set.total_multiplicity() << " zeros (with multiplicity) but N = "
        << params.n_spins << "; the grid may alias a tight cluster";
    set.diagnostic = msg.str();
  }
  return set;
}

ZeroSet scan_real(const IsingParams& params, std::size_t grid, const RealScanOptions& options) {
  detail::RealCoherence f(params);
  const std::vector<double> half = scan_lower_half(f, grid, options, false);

  std::vector<Root> roots;
  for (double theta : half) {
    if (theta == kPi) {
      roots.push_back({kPi, 2, 1.0});  // even N: a zero at pi is self-paired
    } else {
      roots.push_back({theta, 1, 1.0});
      roots.push_back({kTwoPi - theta, 1, 1.0});
    }
  }
  // Odd N: the alternating sum vanishes identically at pi.
  if (params.n_spins % 2 == 1) roots.push_back({kPi, 1, 1.0});
  return assemble(params, cluster(std::move(roots), options.cluster_tolerance));
}

std::complex<long double> horner(const std::vector<long double>& coeffs,
                                 std::complex<long double> z,
                                 std::complex<long double>& derivative) {
  std::complex<long double> p = 0.0L;
  derivative = 0.0L;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    derivative = derivative * z + p;
    p = p * z + *it;
  }
  return p;
}

}  // namespace

unsigned ZeroSet::total_multiplicity() const noexcept {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0U);
}

bool ZeroSet::complete() const noexcept {
  return !diagnostic && total_multiplicity() == params.n_spins;
}

std::vector<std::complex<double>> ZeroSet::z_values() const {
  std::vector<std::complex<double>> z(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double r = k < radii.size() ? radii[k] : 1.0;
    z[k] = std::polar(r, -angles[k]);
  }
  return z;
}

std::vector<double> ZeroSet::times() const {
  std::vector<double> t(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) t[k] = angles[k] / params.probe_coupling;
  return t;
}

ZeroSet find_zeros_real(const IsingParams& params, const RealScanOptions& options) {
  check_real_path(params);
  if (params.beta_j() < kDegenerateBetaJ) return degenerate_set(params);

  const std::size_t grid = grid_size(options, params.n_spins);
  ZeroSet set = scan_real(params, grid, options);
  if (set.complete() || options.refinement_factor <= 1) return set;
  ZeroSet refined = scan_real(params, grid * options.refinement_factor, options);
  return refined;
}

std::optional<double> first_zero_real(const IsingParams& params,
                                      const RealScanOptions& options) {
  check_real_path(params);
  if (params.beta_j() < kDegenerateBetaJ) return kPi;

  detail::RealCoherence f(params);
  const std::vector<double> roots =
      scan_lower_half(f, grid_size(options, params.n_spins), options, true);
  if (!roots.empty()) return roots.front();
  if (params.n_spins % 2 == 1) return kPi;
  return std::nullopt;
}

ZeroSet find_zeros_polynomial(const PartitionPolynomial& poly,
                              const PolynomialRootOptions& options) {
  const unsigned degree = poly.degree();
  if (degree == 0 || poly.log_coeffs.size() != degree + 1)
    throw InvalidArgument("malformed partition polynomial");
  if (degree > kMaxPolynomialDegree)
    throw InvalidArgument("find_zeros_polynomial supports degree <= " +
                          std::to_string(kMaxPolynomialDegree) +
                          "; use find_zeros_real at zero field");

  const double max_log = *std::max_element(poly.log_coeffs.begin(), poly.log_coeffs.end());
  std::vector<long double> coeffs(degree + 1);
  for (unsigned n = 0; n <= degree; ++n)
    coeffs[n] = std::exp(static_cast<long double>(poly.log_coeffs[n]) - max_log);

  std::vector<std::complex<long double>> z(degree);
  for (unsigned k = 0; k < degree; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * (k + 0.3L) / degree;
    z[k] = std::polar(1.0L, angle);
  }

  long double max_update = 0.0L;
  int iteration = 0;
  bool converged = false;
  for (; iteration < options.max_iterations && !converged; ++iteration) {
    max_update = 0.0L;
    for (unsigned k = 0; k < degree; ++k) {
      std::complex<long double> dp;
      const std::complex<long double> p = horner(coeffs, z[k], dp);
      if (p == std::complex<long double>(0.0L)) continue;
      const std::complex<long double> ratio = p / dp;
      std::complex<long double> repulsion = 0.0L;
      for (unsigned j = 0; j < degree; ++j)
        if (j != k) repulsion += 1.0L / (z[k] - z[j]);
      const std::complex<long double> update = ratio / (1.0L - ratio * repulsion);
      z[k] -= update;
      max_update = std::max(max_update, std::abs(update));
    }
    converged = max_update < options.tolerance;
  }

  std::vector<Root> roots;
  roots.reserve(degree);
  for (const auto& root : z) {
    double angle = -std::atan2(static_cast<double>(root.imag()), static_cast<double>(root.real()));
    if (angle < 0.0) angle += kTwoPi;
    roots.push_back({angle, 1, static_cast<double>(std::abs(root))});
  }
  ZeroSet set = assemble(poly.params, cluster(std::move(roots), options.cluster_tolerance));

  std::ostringstream msg;
  if (!converged)
    msg << "root iteration did not converge after " << iteration
        << " iterations (max update " << static_cast<double>(max_update) << ")";
  const CircleReport circle = verify_circle_theorem(set, options.circle_tolerance);
  if (!circle.pass) {
    if (!msg.str().empty()) msg << "; ";
    msg << "roots leave the unit circle by up to " << circle.max_deviation;
  }
  if (!msg.str().empty())
    set.diagnostic = set.diagnostic ? *set.diagnostic + "; " + msg.str() : msg.str();
  return set;
}

CircleReport verify_circle_theorem(const ZeroSet& zeros, double tolerance) {
  CircleReport report;
  for (double r : zeros.radii) report.max_deviation = std::max(report.max_deviation, std::abs(r - 1.0));
  report.pass = report.max_deviation <= tolerance;
  return report;
}

}  // namespace leeyang
