#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace leeyang {

/// Coupling constants of the trimethylphosphite probe-bath system (rad/s).
namespace tmp {
inline constexpr double kBathCoupling = 2.0 * std::numbers::pi * 16.75;
inline constexpr double kProbeCoupling = 2.0 * std::numbers::pi * 10.57;
}  // namespace tmp

/// Long-range (all-to-all) Ising model with spins s_j = ±1/2:
///
///   H = -J sum_{i<j} s_i s_j - h sum_j s_j
///
/// Units are fixed at k_B = hbar = 1. J, h and the probe coupling lambda are
/// angular frequencies (rad/s), beta is their inverse, and temperatures are
/// only ever meaningful as the ratio T/J.
struct IsingParams {
  unsigned n_spins = 1;
  double coupling = 1.0;        // J
  double field = 0.0;           // h
  double beta = 0.0;            // 1/T
  double probe_coupling = tmp::kProbeCoupling;  // lambda

  [[nodiscard]] double beta_j() const noexcept { return beta * coupling; }
  [[nodiscard]] double beta_h() const noexcept { return beta * field; }
  [[nodiscard]] double temperature() const noexcept;

  /// Throws InvalidArgument unless n_spins >= 1, beta >= 0 and J, h, beta
  /// are finite.
  void validate() const;

  /// Builds parameters from the dimensionless beta*J. `coupling` must be
  /// positive.
  static IsingParams from_beta_j(unsigned n_spins, double beta_j,
                                 double coupling = 1.0, double field = 0.0,
                                 double probe_coupling = tmp::kProbeCoupling);

  friend bool operator==(const IsingParams&, const IsingParams&) = default;
};

/// Xi(beta, h) = exp(log_prefactor) * sum_n p_n z^n with z = exp(-beta h).
///
/// p_n = C(N, n) exp(beta J (n^2 - N n) / 2) is the zero-field partition
/// function restricted to n spins pointing down. All p_n are positive, so
/// the coefficients are carried as natural logarithms.
struct PartitionPolynomial {
  std::vector<double> log_coeffs;  // log p_n, n = 0..N
  double log_prefactor = 0.0;      // N(N-1) beta J / 8 + N beta h / 2
  IsingParams params;

  [[nodiscard]] unsigned degree() const noexcept { return params.n_spins; }
  [[nodiscard]] double log_z() const noexcept { return -params.beta_h(); }
};

struct SaddlePointResult {
  double magnetization_x = 0.0;  // x = n/N - 1/2 at the saddle, in [0, 1/2)
  double phi_at_saddle = 0.0;
  double intensive_free_energy = 0.0;  // F/N in the large-N limit
  bool is_ordered = false;
};

/// Dense symmetric coupling matrix J_ij for the enumeration oracle.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(unsigned n);
  static CouplingMatrix uniform(unsigned n, double coupling);

  [[nodiscard]] unsigned size() const noexcept { return n_; }
  [[nodiscard]] double operator()(unsigned i, unsigned j) const;
  /// Sets J_ij and J_ji.
  void set(unsigned i, unsigned j, double value);

 private:
  unsigned n_;
  std::vector<double> values_;
};

inline constexpr unsigned kMaxEnumerationSpins = 20;

PartitionPolynomial build_polynomial(const IsingParams& params);

/// log Xi for real field, reduced by log-sum-exp.
double partition_direct(const IsingParams& params);
double partition_direct(const PartitionPolynomial& poly);

/// log Xi at a complex field h. The imaginary part of the result is only
/// defined modulo 2 pi.
std::complex<double> log_partition_complex(const PartitionPolynomial& poly,
                                           std::complex<double> field);

/// Exact log Xi by enumerating all 2^N spin configurations of
/// H = -sum_{i<j} J_ij s_i s_j - h sum_j s_j. Rejects N > 20.
double brute_force_partition(const CouplingMatrix& couplings, double field,
                             double beta);

/// Degeneracy D(S) of the total-spin-S subspace of N spin-1/2s, with S
/// passed as the integer 2S.
std::uint64_t degeneracy(unsigned n_spins, unsigned twice_total_spin);

/// Exact binomial coefficient; throws NumericalError on uint64 overflow.
std::uint64_t binomial(unsigned n, unsigned k);

/// phi(x) = (1/2+x)ln(1/2+x) + (1/2-x)ln(1/2-x) - N beta J x^2 / 2
double saddle_phi(double x, double n_beta_j);
double saddle_phi_derivative(double x, double n_beta_j);

/// Zero-field saddle point of the large-N integral representation.
SaddlePointResult saddle_point(const IsingParams& params);

/// T_c = N J / 4.
double critical_temperature(unsigned n_spins, double coupling);

}  // namespace leeyang
