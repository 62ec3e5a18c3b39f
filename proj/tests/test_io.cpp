#include <doctest.h>

#include <limits>
#include <sstream>
#include <string>

#include "leeyang/coherence.hpp"
#include "leeyang/io.hpp"
#include "test_support.hpp"

using namespace leeyang;
using nlohmann::json;
using testing::model;

namespace {

template <class T>
T round_trip(const T& value) {
  return json::parse(json(value).dump()).get<T>();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("number formatting is shortest round-trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  const double x = 0.5572375057330925;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("params round trip") {
  const IsingParams p = IsingParams::from_beta_j(9, 8.0 / 15.0, 2.0, 0.1, 17.0);
  CHECK(round_trip(p) == p);
}

TEST_CASE("zero set round trip, with unbounded uncertainty as null") {
  ZeroSet z = find_zeros_real(model(9, 8.0 / 15.0));
  z.uncertainties = std::vector<double>(9, 0.004);
  (*z.uncertainties)[4] = std::numeric_limits<double>::infinity();
  z.diagnostic = "note";
  const json j = z;
  CHECK(j.at("uncertainties")[4].is_null());
  const ZeroSet back = round_trip(z);
  CHECK(back.angles == z.angles);
  CHECK(back.multiplicities == z.multiplicities);
  CHECK(back.radii == z.radii);
  CHECK(*back.uncertainties == *z.uncertainties);
  CHECK(back.params == z.params);
  CHECK(back.diagnostic == z.diagnostic);

  ZeroSet plain = find_zeros_real(model(9, 0.0));
  CHECK_FALSE(round_trip(plain).uncertainties);

  json broken = plain;
  broken["multiplicities"] = json::array({1, 2});
  CHECK_THROWS(broken.get<ZeroSet>());
}

TEST_CASE("zero set CSV") {
  ZeroSet z = find_zeros_real(model(9, 0.0));
  std::ostringstream os;
  write_csv(os, z);
  CHECK(first_line(os.str()) == "n,theta,t,re_z,im_z,delta_theta,multiplicity");
  CHECK(os.str().find("\n1,3.141592653589793,") != std::string::npos);
  CHECK(os.str().ends_with(",,9\n"));

  z.uncertainties = std::vector<double>{std::numeric_limits<double>::infinity()};
  std::ostringstream os2;
  write_csv(os2, z);
  CHECK(os2.str().ends_with(",inf,9\n"));
}

TEST_CASE("coherence trace round trip") {
  const CoherenceTrace t = coherence_trace(model(5, 0.7, 0.2), 64);
  const CoherenceTrace back = round_trip(t);
  CHECK(back.times == t.times);
  CHECK(back.angles == t.angles);
  CHECK(back.values == t.values);
  CHECK(back.params == t.params);
  std::ostringstream os;
  write_csv(os, t);
  CHECK(first_line(os.str()) == "t,theta,re_L,im_L");
  CHECK(line_count(os.str()) == 65);
}

TEST_CASE("free energy round trip") {
  const std::vector<FreeEnergyResult> rows = {free_energy_direct(model(9, 1.0)),
                                              free_energy_from_zeros(find_zeros_real(model(9, 1.0))),
                                              free_energy_saddle(model(9, 1.0))};
  const auto back = json::parse(json(rows).dump()).get<std::vector<FreeEnergyResult>>();
  REQUIRE(back.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(back[k].log_partition == rows[k].log_partition);
    CHECK(back[k].free_energy == rows[k].free_energy);
    CHECK(back[k].source == rows[k].source);
    CHECK(back[k].n_spins == 9);
  }
  std::ostringstream os;
  write_csv(os, rows);
  CHECK(first_line(os.str()) == "beta,logZ,F,F_per_spin,source");
  CHECK(os.str().find(",from_zeros\n") != std::string::npos);
}

TEST_CASE("edge curve round trip") {
  const std::vector<double> t = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  const EdgeCurve c = edge_scan(9, 1.0, t);
  const EdgeCurve back = round_trip(c);
  REQUIRE(back.samples.size() == 3);
  CHECK(back.samples[2].temperature_over_nj == std::numeric_limits<double>::infinity());
  CHECK(back.samples[1].theta1 == c.samples[1].theta1);
  CHECK(back.estimated_tc == c.estimated_tc);
  CHECK(back.tc_method == c.tc_method);
  std::ostringstream os;
  write_csv(os, c);
  CHECK(first_line(os.str()) == "T_over_NJ,theta1");
}

TEST_CASE("noise model schema") {
  const json j = json::parse(R"({"t2_star_s": 0.5, "eta": 0.022, "seed": 7,
      "delta": [{"two_m": -1, "dx": 0.01, "dy": -0.02}, {"two_m": 1, "dx": 0.0, "dy": 0.03}]})");
  const NoiseModel n = j.get<NoiseModel>();
  CHECK(n.t2_star == 0.5);
  CHECK(n.seed == 7);
  CHECK(n.delta_y.at(-1) == -0.02);
  CHECK_NOTHROW(n.validate_for(1));

  const NoiseModel back = round_trip(n);
  CHECK(back.delta_x == n.delta_x);
  CHECK(back.delta_y == n.delta_y);
  CHECK(back.eta == n.eta);

  NoiseModel forever = NoiseModel::noiseless(3);
  CHECK(json(forever).at("t2_star_s").is_null());
  CHECK(std::isinf(round_trip(forever).t2_star));

  json too_big = j;
  too_big["delta"][0]["dx"] = 0.2;
  CHECK_THROWS(too_big.get<NoiseModel>());
  json duplicate = j;
  duplicate["delta"][1]["two_m"] = -1;
  CHECK_THROWS(duplicate.get<NoiseModel>());
}

TEST_CASE("measured trace round trip") {
  const IsingParams p = model(9, 40.0 / 9.0);
  NoiseModel n = NoiseModel::noiseless(9);
  n.eta = 0.01;
  n.seed = 3;
  const MeasuredTrace t = synthesize_measurement(p, n, uniform_grid(0.0, coherence_period(p), 128));
  const MeasuredTrace back = round_trip(t);
  CHECK(back.observed == t.observed);
  CHECK(back.true_trace == t.true_trace);
  CHECK(back.noise.seed == 3);
  std::ostringstream os;
  write_csv(os, t);
  CHECK(first_line(os.str()) == "t,observed,true_re_L");
  CHECK(line_count(os.str()) == 129);
}
