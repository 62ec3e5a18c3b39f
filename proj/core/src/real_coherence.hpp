#pragma once

#include <mpfr.h>

#include <map>
#include <memory>
#include <vector>

#include "leeyang/ising_model.hpp"

namespace leeyang::detail {

// Owning wrapper around an mpfr_t.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~MpReal() { mpfr_clear(value_); }
  MpReal(MpReal&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }
  MpReal& operator=(MpReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  MpReal(const MpReal&) = delete;
  MpReal& operator=(const MpReal&) = delete;

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

 private:
  mpfr_t value_;
};

/// Zero-field coherence on the real axis,
///
///   f(theta) = sum_n p_n cos((N - 2n) theta / 2) / sum_n p_n ,
///
/// with a certified sign. At high temperature and large N the oscillation of
/// f sinks far below double rounding error (|f| ~ 1e-700 near theta = pi for
/// N = 500), so evaluation starts in double precision and falls back to
/// MPFR with a doubling precision ladder whenever the double result is
/// inside its error bound. Not thread-safe: it caches per-precision tables.
class RealCoherence {
 public:
  explicit RealCoherence(const IsingParams& params);
  ~RealCoherence();
  RealCoherence(const RealCoherence&) = delete;
  RealCoherence& operator=(const RealCoherence&) = delete;

  /// A value whose sign is that of f(theta). The magnitude is accurate to
  /// double precision but clamped away from zero at the smallest
  /// subnormal. Returns exactly 0 only when the sign is unresolved at the
  /// largest precision tried.
  double certified(double theta);

  [[nodiscard]] unsigned n_spins() const noexcept { return n_spins_; }
  /// Number of evaluations that needed multiprecision (diagnostics/tests).
  [[nodiscard]] std::size_t multiprecision_calls() const noexcept { return mp_calls_; }

  static constexpr mpfr_prec_t kMinPrecision = 128;
  static constexpr mpfr_prec_t kMaxPrecision = 1 << 16;

 private:
  struct Table;

  double evaluate_double(double theta, bool& certain) const;
  double evaluate_mp(double theta, Table& table, bool& certain);
  Table& table_for(mpfr_prec_t precision);

  unsigned n_spins_;
  double beta_j_;
  // Terms are paired as n and N - n; order k = N - 2n, phase k theta / 2.
  std::vector<double> coeffs_;
  std::vector<double> orders_;
  std::vector<double> log_magnitudes_;
  double coeff_sum_ = 0.0;
  mpfr_prec_t guard_bits_;
  std::map<mpfr_prec_t, std::unique_ptr<Table>> tables_;
  mpfr_prec_t last_precision_ = 0;
  std::size_t mp_calls_ = 0;
};

}  // namespace leeyang::detail
