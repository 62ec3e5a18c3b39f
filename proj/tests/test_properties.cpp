// Randomized and grid sweeps over the model invariants.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "leeyang/coherence.hpp"
#include "leeyang/experiment_sim.hpp"
#include "leeyang/thermodynamics.hpp"
#include "leeyang/zero_finder.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace leeyang;
using testing::kPi;
using testing::model;

TEST_CASE("collapsed partition sum equals enumeration on the (beta J, beta h) grid") {
  // beta = 1, so J and h carry beta J and beta h directly.
  for (unsigned n = 1; n <= 12; ++n) {
    for (double bj = 0.0; bj <= 3.0 + 1e-12; bj += 0.5) {
      for (double bh = -1.0; bh <= 1.0 + 1e-12; bh += 0.25) {
        IsingParams p;
        p.n_spins = n;
        p.beta = 1.0;
        p.coupling = bj;
        p.field = bh;
        CAPTURE(n);
        CAPTURE(bj);
        CAPTURE(bh);
        CHECK(std::abs(partition_direct(p) - brute_force_partition(CouplingMatrix::uniform(n, bj), bh, 1.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Lee-Yang circle theorem in real fields") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> bj(0.05, 8.0), bh(-2.0, 2.0);
  std::uniform_int_distribution<unsigned> nn(1, 40);
  for (int trial = 0; trial < 150; ++trial) {
    const unsigned n = nn(rng);
    const ZeroSet z = find_zeros_polynomial(build_polynomial(model(n, bj(rng), bh(rng))));
    CAPTURE(n);
    CHECK(z.total_multiplicity() == n);
    CHECK(verify_circle_theorem(z).max_deviation < 1e-8);
  }
}

TEST_CASE("zero count equals N over beta J in [0, 10]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> bj(0.0, 10.0);
  for (unsigned n = 1; n <= 12; ++n)
    for (int trial = 0; trial < 10; ++trial) CHECK(find_zeros_real(model(n, bj(rng))).total_multiplicity() == n);
  for (unsigned n : {100u, 500u}) {
    for (double b : {0.0, 0.02, 0.1, 0.5, 2.0, 10.0}) {
      CAPTURE(n);
      CAPTURE(b);
      const ZeroSet z = find_zeros_real(model(n, b));
      CHECK(z.total_multiplicity() == n);
      CHECK_FALSE(z.diagnostic);
    }
  }
}

TEST_CASE("reconstruction closes for random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> bj(0.05, 6.0);
  std::uniform_int_distribution<unsigned> nn(1, 60);
  for (int trial = 0; trial < 40; ++trial) {
    const IsingParams p = model(nn(rng), bj(rng));
    CHECK(std::abs(free_energy_from_zeros(find_zeros_real(p)).log_partition - partition_direct(p)) <
          1e-9 * std::max(1.0, partition_direct(p)));
  }
}

TEST_CASE("coherence stays in the unit disk") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> bj(0.0, 5.0), bh(-1.0, 1.0), th(-20.0, 20.0);
  std::uniform_int_distribution<unsigned> nn(1, 500);
  for (int trial = 0; trial < 300; ++trial) {
    const IsingParams p = model(nn(rng), bj(rng), bh(rng));
    CHECK(std::abs(coherence_at(p, th(rng))) <= 1.0 + 1e-12);
  }
}

TEST_CASE("extraction spread follows eta / |dL/dtheta|") {
  const IsingParams p = model(9, 40.0 / 9.0);
  NoiseModel n = load_noise_presets(LEEYANG_PRESETS_FILE).at("9J/40");
  const auto times = uniform_grid(0.0, coherence_period(p), kDefaultSamplesPerPeriod);
  constexpr int kSeeds = 60;
  std::vector<double> sum(9, 0.0), sum_sq(9, 0.0);
  for (int s = 0; s < kSeeds; ++s) {
    n.seed = 1000 + s;
    const ZeroSet z = extract_zeros(synthesize_measurement(p, n, times));
    REQUIRE(z.size() == 9);
    for (std::size_t k = 0; k < 9; ++k) {
      sum[k] += z.angles[k];
      sum_sq[k] += z.angles[k] * z.angles[k];
    }
  }
  const ZeroSet predicted = zero_uncertainty(p, find_zeros_real(p), n.eta);
  for (std::size_t k = 0; k < 9; ++k) {
    const double mean = sum[k] / kSeeds;
    const double spread = std::sqrt(std::max(0.0, sum_sq[k] / kSeeds - mean * mean) * kSeeds / (kSeeds - 1));
    const double ratio = spread / predicted.uncertainties->at(k);
    CAPTURE(k);
    CHECK(ratio > 1.0 / 3.0);
    CHECK(ratio < 3.0);
  }
}
