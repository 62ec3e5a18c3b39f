#include "real_coherence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "leeyang/error.hpp"

namespace leeyang::detail {

struct RealCoherence::Table {
  explicit Table(mpfr_prec_t p)
      : precision(p), sum(p), x(p), cos_theta(p), prev(p), curr(p), next(p),
        acc(p), scratch(p), threshold(p) {}

  mpfr_prec_t precision;
  std::vector<MpReal> coeffs;
  MpReal sum;
  MpReal x, cos_theta, prev, curr, next, acc, scratch, threshold;
};

RealCoherence::RealCoherence(const IsingParams& params)
    : n_spins_(params.n_spins), beta_j_(params.beta_j()) {
  if (params.field != 0.0)
    throw InvalidArgument("real-axis coherence requires zero field");
  const PartitionPolynomial poly = build_polynomial(params);
  const auto& a = poly.log_coeffs;
  const auto argmax = std::max_element(a.begin(), a.end()) - a.begin();
  const double a_max = a[static_cast<std::size_t>(argmax)];

  const double nn = n_spins_;
  const double log_n_fact = std::lgamma(nn + 1.0);
  const auto magnitude = [&](double n) {
    return log_n_fact + 0.5 * std::abs(beta_j_) * n * (nn - n) + 1.0;
  };
  const double mag_max = magnitude(static_cast<double>(argmax));

  for (unsigned n = 0; 2 * n <= n_spins_; ++n) {
    const bool center = 2 * n == n_spins_;
    const double w = std::exp(a[n] - a_max);
    coeffs_.push_back(center ? w : 2.0 * w);
    orders_.push_back(static_cast<double>(n_spins_ - 2 * n));
    log_magnitudes_.push_back(magnitude(n) + mag_max);
    coeff_sum_ += coeffs_.back();
  }
  guard_bits_ = 2 * static_cast<mpfr_prec_t>(std::bit_width(n_spins_ + 1U)) + 24;
}

RealCoherence::~RealCoherence() = default;

double RealCoherence::evaluate_double(double theta, bool& certain) const {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double value = 0.0;
  double bound = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const double phase = 0.5 * orders_[j] * theta;
    value += coeffs_[j] * std::cos(phase);
    bound += coeffs_[j] * (4.0 * log_magnitudes_[j] + std::abs(phase) + 2.0);
  }
  bound = eps * (bound + static_cast<double>(coeffs_.size() + 2) * coeff_sum_);
  certain = std::abs(value) > 4.0 * bound;
  return value / coeff_sum_;
}

RealCoherence::Table& RealCoherence::table_for(mpfr_prec_t precision) {
  auto& slot = tables_[precision];
  if (slot) return *slot;
  slot = std::make_unique<Table>(precision);
  Table& t = *slot;

  MpReal binom(precision);
  MpReal weight(precision);
  mpfr_set_ui(binom.get(), 1, MPFR_RNDN);
  mpfr_set_zero(t.sum.get(), 1);
  for (unsigned n = 0; 2 * n <= n_spins_; ++n) {
    // p_n = C(N, n) exp(beta J n (n - N) / 2), exact exponent argument
    mpfr_set_d(weight.get(), beta_j_, MPFR_RNDN);
    mpfr_mul_si(weight.get(), weight.get(),
                static_cast<long>(n) * (static_cast<long>(n) - static_cast<long>(n_spins_)),
                MPFR_RNDN);
    mpfr_div_2ui(weight.get(), weight.get(), 1, MPFR_RNDN);
    mpfr_exp(weight.get(), weight.get(), MPFR_RNDN);
    mpfr_mul(weight.get(), weight.get(), binom.get(), MPFR_RNDN);
    if (2 * n != n_spins_) mpfr_mul_2ui(weight.get(), weight.get(), 1, MPFR_RNDN);
    mpfr_add(t.sum.get(), t.sum.get(), weight.get(), MPFR_RNDN);
    t.coeffs.emplace_back(precision);
    mpfr_set(t.coeffs.back().get(), weight.get(), MPFR_RNDN);

    mpfr_mul_ui(binom.get(), binom.get(), n_spins_ - n, MPFR_RNDN);
    mpfr_div_ui(binom.get(), binom.get(), n + 1, MPFR_RNDN);
  }
  return t;
}

double RealCoherence::evaluate_mp(double theta, Table& t, bool& certain) {
  // Chebyshev recurrence in steps of two: T_{k+2} = 2 cos(2x) T_k - T_{k-2}
  // with x = theta / 2, visiting k = N mod 2, ..., N.
  mpfr_set_d(t.x.get(), theta, MPFR_RNDN);
  mpfr_div_2ui(t.x.get(), t.x.get(), 1, MPFR_RNDN);
  mpfr_set_d(t.scratch.get(), theta, MPFR_RNDN);
  mpfr_cos(t.cos_theta.get(), t.scratch.get(), MPFR_RNDN);

  unsigned k = n_spins_ % 2;
  if (k == 1) {
    mpfr_cos(t.curr.get(), t.x.get(), MPFR_RNDN);
    mpfr_set(t.prev.get(), t.curr.get(), MPFR_RNDN);
  } else {
    mpfr_set_ui(t.curr.get(), 1, MPFR_RNDN);
    mpfr_set(t.prev.get(), t.cos_theta.get(), MPFR_RNDN);
  }
  mpfr_set_zero(t.acc.get(), 1);
  for (;;) {
    const unsigned index = (n_spins_ - k) / 2;
    mpfr_mul(t.scratch.get(), t.coeffs[index].get(), t.curr.get(), MPFR_RNDN);
    mpfr_add(t.acc.get(), t.acc.get(), t.scratch.get(), MPFR_RNDN);
    if (k + 2 > n_spins_) break;
    mpfr_mul(t.next.get(), t.cos_theta.get(), t.curr.get(), MPFR_RNDN);
    mpfr_mul_2ui(t.next.get(), t.next.get(), 1, MPFR_RNDN);
    mpfr_sub(t.next.get(), t.next.get(), t.prev.get(), MPFR_RNDN);
    mpfr_swap(t.prev.get(), t.curr.get());
    mpfr_swap(t.curr.get(), t.next.get());
    k += 2;
  }
  mpfr_div(t.acc.get(), t.acc.get(), t.sum.get(), MPFR_RNDN);

  mpfr_set_ui_2exp(t.threshold.get(), 1, -(t.precision - guard_bits_), MPFR_RNDN);
  certain = mpfr_cmpabs(t.acc.get(), t.threshold.get()) > 0;

  const double value = mpfr_get_d(t.acc.get(), MPFR_RNDN);
  if (value == 0.0 && certain)
    return std::copysign(std::numeric_limits<double>::denorm_min(),
                         mpfr_sgn(t.acc.get()) > 0 ? 1.0 : -1.0);
  return value;
}

double RealCoherence::certified(double theta) {
  bool certain = false;
  const double fast = evaluate_double(theta, certain);
  if (certain) return fast;

  ++mp_calls_;
  const mpfr_prec_t start = std::max(kMinPrecision, last_precision_ / 2);
  for (mpfr_prec_t p = start; p <= kMaxPrecision; p *= 2) {
    const double value = evaluate_mp(theta, table_for(p), certain);
    if (certain) {
      last_precision_ = p;
      return value;
    }
  }
  last_precision_ = kMaxPrecision;
  return 0.0;
}

}  // namespace leeyang::detail
