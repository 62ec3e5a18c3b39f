#include "leeyang/ising_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <string>

#include "leeyang/error.hpp"

namespace leeyang {

namespace {

// Online log-sum-exp accumulator.
class LogSumExp {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  [[nodiscard]] double value() const { return max_ + std::log(sum_); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace

double IsingParams::temperature() const noexcept {
  return beta == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / beta;
}

void IsingParams::validate() const {
  if (n_spins == 0) throw InvalidArgument("n_spins must be at least 1");
  if (!std::isfinite(beta) || beta < 0.0)
    throw InvalidArgument("beta must be finite and non-negative");
  if (!std::isfinite(coupling)) throw InvalidArgument("coupling J must be finite");
  if (!std::isfinite(field)) throw InvalidArgument("field h must be finite");
  if (!std::isfinite(beta_j())) throw InvalidArgument("beta*J must be finite");
}

IsingParams IsingParams::from_beta_j(unsigned n_spins, double beta_j,
                                     double coupling, double field,
                                     double probe_coupling) {
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw InvalidArgument("coupling J must be positive and finite");
  IsingParams p;
  p.n_spins = n_spins;
  p.coupling = coupling;
  p.field = field;
  p.beta = beta_j / coupling;
  p.probe_coupling = probe_coupling;
  p.validate();
  return p;
}

CouplingMatrix::CouplingMatrix(unsigned n) : n_(n), values_(std::size_t{n} * n, 0.0) {}

CouplingMatrix CouplingMatrix::uniform(unsigned n, double coupling) {
  CouplingMatrix m(n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) m.set(i, j, coupling);
  return m;
}

double CouplingMatrix::operator()(unsigned i, unsigned j) const {
  return values_.at(std::size_t{i} * n_ + j);
}

void CouplingMatrix::set(unsigned i, unsigned j, double value) {
  if (i >= n_ || j >= n_) throw InvalidArgument("coupling index out of range");
  values_[std::size_t{i} * n_ + j] = value;
  values_[std::size_t{j} * n_ + i] = value;
}

PartitionPolynomial build_polynomial(const IsingParams& params) {
  params.validate();
  const unsigned n_spins = params.n_spins;
  const double nn = n_spins;
  const double beta_j = params.beta_j();
  const double log_n_factorial = std::lgamma(nn + 1.0);

  PartitionPolynomial poly;
  poly.params = params;
  poly.log_coeffs.resize(n_spins + 1);
  // Fill the lower half and mirror it so that log p_n == log p_{N-n} holds
  // bit for bit.
  for (unsigned n = 0; n <= n_spins / 2; ++n) {
    const double k = n;
    const double log_binom =
        n == 0 ? 0.0 : log_n_factorial - std::lgamma(k + 1.0) - std::lgamma(nn - k + 1.0);
    const double value = log_binom + 0.5 * beta_j * (k * (k - nn));
    poly.log_coeffs[n] = value;
    poly.log_coeffs[n_spins - n] = value;
  }
  poly.log_prefactor = nn * (nn - 1.0) * beta_j / 8.0 + nn * params.beta_h() / 2.0;
  return poly;
}

double partition_direct(const PartitionPolynomial& poly) {
  const double log_z = poly.log_z();
  LogSumExp acc;
  for (std::size_t n = 0; n < poly.log_coeffs.size(); ++n)
    acc.add(poly.log_coeffs[n] + static_cast<double>(n) * log_z);
  return poly.log_prefactor + acc.value();
}

double partition_direct(const IsingParams& params) {
  return partition_direct(build_polynomial(params));
}

std::complex<double> log_partition_complex(const PartitionPolynomial& poly,
                                           std::complex<double> field) {
  const IsingParams& p = poly.params;
  const double nn = p.n_spins;
  const std::complex<double> beta_field = p.beta * field;
  const std::complex<double> log_z = -beta_field;

  std::vector<std::complex<double>> exponents(poly.log_coeffs.size());
  double max_re = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < exponents.size(); ++n) {
    exponents[n] = poly.log_coeffs[n] + static_cast<double>(n) * log_z;
    max_re = std::max(max_re, exponents[n].real());
  }
  std::complex<double> sum = 0.0;
  for (const auto& e : exponents) sum += std::exp(e - max_re);

  const std::complex<double> prefactor =
      nn * (nn - 1.0) * p.beta_j() / 8.0 + nn * beta_field / 2.0;
  return prefactor + max_re + std::log(sum);
}

double brute_force_partition(const CouplingMatrix& couplings, double field,
                             double beta) {
  const unsigned n = couplings.size();
  if (n == 0) throw InvalidArgument("brute_force_partition needs at least one spin");
  if (n > kMaxEnumerationSpins)
    throw InvalidArgument("brute_force_partition enumerates 2^N states; N = " +
                          std::to_string(n) + " exceeds the limit of " +
                          std::to_string(kMaxEnumerationSpins));
  if (!std::isfinite(field) || !std::isfinite(beta))
    throw InvalidArgument("field and beta must be finite");

  std::vector<double> spins(n);
  LogSumExp acc;
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    for (unsigned i = 0; i < n; ++i) spins[i] = (mask >> i) & 1U ? 0.5 : -0.5;
    double energy = 0.0;
    for (unsigned i = 0; i < n; ++i) {
      energy -= field * spins[i];
      for (unsigned j = i + 1; j < n; ++j) energy -= couplings(i, j) * spins[i] * spins[j];
    }
    acc.add(-beta * energy);
  }
  return acc.value();
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (unsigned i = 0; i < k; ++i) {
    // result * (n - i) / (i + 1) is an integer; cancel the common factor first.
    const std::uint64_t g = std::gcd(result, std::uint64_t{i + 1});
    const std::uint64_t factor = (n - i) / ((i + 1) / g);
    if (__builtin_mul_overflow(result / g, factor, &result))
      throw NumericalError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                           ") overflows 64 bits");
  }
  return result;
}

std::uint64_t degeneracy(unsigned n_spins, unsigned twice_total_spin) {
  if (twice_total_spin > n_spins || (n_spins - twice_total_spin) % 2 != 0)
    throw InvalidArgument("total spin S = " + std::to_string(twice_total_spin) +
                          "/2 is not admissible for N = " + std::to_string(n_spins));
  const unsigned k = (n_spins - twice_total_spin) / 2;  // N/2 - S
  const std::uint64_t upper = binomial(n_spins, k);
  const std::uint64_t lower = k == 0 ? 0 : binomial(n_spins, k - 1);
  return upper - lower;
}

double saddle_phi(double x, double n_beta_j) {
  const auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  return xlogx(0.5 + x) + xlogx(0.5 - x) - 0.5 * n_beta_j * x * x;
}

double saddle_phi_derivative(double x, double n_beta_j) {
  return std::log((0.5 + x) / (0.5 - x)) - n_beta_j * x;
}

SaddlePointResult saddle_point(const IsingParams& params) {
  params.validate();
  if (params.field != 0.0)
    throw InvalidArgument("saddle_point is defined at zero field only");

  const double n_beta_j = params.n_spins * params.beta_j();
  SaddlePointResult result;
  if (n_beta_j / 4.0 > 1.0) {
    double lo = 1e-15;
    double hi = 0.5 - 1e-15;
    // phi' < 0 just above zero and -> +inf at 1/2.
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      const double d = saddle_phi_derivative(mid, n_beta_j);
      if (std::abs(d) < 1e-13 || mid == lo || mid == hi) break;
      (d < 0.0 ? lo : hi) = mid;
    }
    result.magnetization_x = mid;
    result.is_ordered = true;
  }
  result.phi_at_saddle = saddle_phi(result.magnetization_x, n_beta_j);
  // log Xi / N ~ -beta J / 8 - phi(x*)
  result.intensive_free_energy =
      params.beta == 0.0 ? -std::numeric_limits<double>::infinity()
                         : params.coupling / 8.0 + result.phi_at_saddle / params.beta;
  return result;
}

double critical_temperature(unsigned n_spins, double coupling) {
  return n_spins * coupling / 4.0;
}

}  // namespace leeyang
