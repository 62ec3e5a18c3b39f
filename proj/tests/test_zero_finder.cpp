#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "leeyang/error.hpp"
#include "leeyang/zero_finder.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace leeyang;
using testing::kPi;
using testing::model;

namespace {

void check_angles(const ZeroSet& z, std::span<const double> expected, double tol) {
  REQUIRE(z.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CAPTURE(k);
    CHECK(std::abs(z.angles[k] - expected[k]) < tol);
  }
}

void check_pairing(const ZeroSet& z) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    const std::size_t mirror = z.size() - 1 - k;
    CHECK(z.angles[k] + z.angles[mirror] == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(z.multiplicities[k] == z.multiplicities[mirror]);
  }
}

}  // namespace

TEST_CASE("real-axis zeros against high-precision polynomial roots") {
  check_angles(find_zeros_real(model(9, 8.0 / 15.0)), oracle::kZeros_n9_bj8_15, 1e-10);
  check_angles(find_zeros_real(model(9, 40.0 / 9.0)), oracle::kZeros_n9_bj40_9, 1e-10);
  check_angles(find_zeros_real(model(9, 1.0)), oracle::kZeros_n9_bj1, 1e-10);
  check_angles(find_zeros_real(model(12, 0.3)), oracle::kZeros_n12_bj0_3, 1e-10);
  check_angles(find_zeros_real(model(6, 2.0)), oracle::kZeros_n6_bj2, 1e-10);
  check_angles(find_zeros_real(model(2, 1.3863)), oracle::kZeros_n2_bj1_3863, 1e-10);
}

TEST_CASE("N = 2 at beta J = ln 4 sits at the cube roots of unity") {
  const ZeroSet z = find_zeros_real(model(2, std::log(4.0)));
  REQUIRE(z.size() == 2);
  CHECK(z.angles[0] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
  CHECK(z.angles[1] == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
  const ZeroSet poly = find_zeros_polynomial(build_polynomial(model(2, std::log(4.0))));
  CHECK(verify_circle_theorem(poly).max_deviation < 1e-15);
}

TEST_CASE("infinite temperature is fully degenerate at -1") {
  for (unsigned n : {1u, 2u, 9u, 500u}) {
    const ZeroSet z = find_zeros_real(model(n, 0.0));
    REQUIRE(z.size() == 1);
    CHECK(z.angles[0] == kPi);
    CHECK(z.multiplicities[0] == n);
    CHECK(z.complete());
  }
  const ZeroSet single = find_zeros_real(model(1, 3.0));
  REQUIRE(single.size() == 1);
  CHECK(single.angles[0] == kPi);
  const ZeroSet single_poly = find_zeros_polynomial(build_polynomial(model(1, 3.0)));
  CHECK(single_poly.angles[0] == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("low-temperature limit (2k - 1) pi / N") {
  for (unsigned n : {9u, 12u, 500u}) {
    const ZeroSet z = find_zeros_real(model(n, 50.0));
    REQUIRE(z.size() == n);
    for (unsigned k = 1; k <= n; ++k) CHECK(std::abs(z.angles[k - 1] - (2.0 * k - 1.0) * kPi / n) < 1e-6);
  }
}

TEST_CASE("zero-set invariants over a sweep") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (double bj : {0.0, 1e-3, 0.05, 0.3, 1.0, 3.0, 10.0}) {
      CAPTURE(n);
      CAPTURE(bj);
      const ZeroSet z = find_zeros_real(model(n, bj));
      CHECK_FALSE(z.diagnostic);
      CHECK(z.total_multiplicity() == n);
      CHECK(std::is_sorted(z.angles.begin(), z.angles.end()));
      check_pairing(z);
      if (n % 2 == 1) CHECK(std::find(z.angles.begin(), z.angles.end(), kPi) != z.angles.end());
      for (double a : z.angles) CHECK((a > 0.0 && a < 2.0 * kPi));
    }
  }
}

TEST_CASE("real path and polynomial path agree at zero field") {
  for (unsigned n = 2; n <= 20; ++n) {
    for (double bj : {0.1, 0.5, 8.0 / 15.0, 2.0, 5.0}) {
      CAPTURE(n);
      CAPTURE(bj);
      const ZeroSet real = find_zeros_real(model(n, bj));
      const ZeroSet poly = find_zeros_polynomial(build_polynomial(model(n, bj)));
      CHECK_FALSE(poly.diagnostic);
      REQUIRE(real.size() == poly.size());
      for (std::size_t k = 0; k < real.size(); ++k) CHECK(std::abs(real.angles[k] - poly.angles[k]) < 1e-9);
    }
  }
}

TEST_CASE("circle theorem in a real field") {
  const ZeroSet z = find_zeros_polynomial(build_polynomial(model(9, 8.0 / 15.0, 0.1)));
  CHECK(z.total_multiplicity() == 9);
  CHECK(verify_circle_theorem(z).pass);
  CHECK(verify_circle_theorem(z).max_deviation < 1e-8);

  ZeroSet bad = z;
  bad.radii[0] = 1.1;
  const CircleReport report = verify_circle_theorem(bad);
  CHECK_FALSE(report.pass);
  CHECK(report.max_deviation == doctest::Approx(0.1));
}

TEST_CASE("z = 1 is never a zero and the product over zeros is positive") {
  for (unsigned n : {3u, 8u, 13u}) {
    const ZeroSet z = find_zeros_real(model(n, 0.7));
    std::complex<double> product = 1.0;
    const auto values = z.z_values();
    for (std::size_t k = 0; k < values.size(); ++k)
      product *= std::pow(1.0 - values[k], static_cast<double>(z.multiplicities[k]));
    CHECK(product.real() > 0.0);
    CHECK(std::abs(product.imag()) < 1e-12 * product.real());
  }
}

TEST_CASE("first zero and derived quantities") {
  const IsingParams p = model(9, 40.0 / 9.0);
  const ZeroSet z = find_zeros_real(p);
  CHECK(first_zero_real(p).value() == z.angles.front());
  CHECK(first_zero_real(model(9, 0.0)).value() == kPi);
  const auto t = z.times();
  CHECK(t[0] == doctest::Approx(z.angles[0] / p.probe_coupling));
  const auto values = z.z_values();
  CHECK(values[0].imag() < 0.0);  // z_n = exp(-i theta_n)
  CHECK(std::abs(values[0]) == doctest::Approx(1.0));
}

TEST_CASE("Yang-Lee edge of a 500-spin bath against high-precision references") {
  for (const auto& c : oracle::kEdgeN500) {
    CAPTURE(c.t_over_nj);
    IsingParams p;
    p.n_spins = 500;
    p.beta = 1.0 / (c.t_over_nj * 500.0);
    const auto theta1 = first_zero_real(p);
    REQUIRE(theta1);
    CHECK(std::abs(*theta1 - c.theta1) < 1e-10);
  }
}

TEST_CASE("zero count at large N") {
  for (unsigned n : {100u, 500u}) {
    for (double t_over_nj : {0.01, 0.1, 0.2, 0.25, 0.3}) {
      CAPTURE(n);
      CAPTURE(t_over_nj);
      IsingParams p;
      p.n_spins = n;
      p.beta = 1.0 / (t_over_nj * n);
      const ZeroSet z = find_zeros_real(p);
      CHECK(z.total_multiplicity() == n);
      CHECK_FALSE(z.diagnostic);
    }
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(find_zeros_real(model(9, 1.0, 0.1)), InvalidArgument);
  IsingParams anti = model(9, 1.0);
  anti.coupling = -1.0;
  CHECK_THROWS_AS(find_zeros_real(anti), InvalidArgument);
  CHECK_THROWS_AS(find_zeros_polynomial(build_polynomial(model(65, 1.0))), InvalidArgument);
}
