#include "leeyang/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "leeyang/error.hpp"

namespace leeyang {

using nlohmann::json;

namespace {

json number_or_null(double v) {
  if (std::isinf(v) && v > 0.0) return nullptr;
  return v;
}

double number_or_inf(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

json complex_parts(const std::vector<std::complex<double>>& values, bool imaginary) {
  json out = json::array();
  for (const auto& v : values) out.push_back(imaginary ? v.imag() : v.real());
  return out;
}

std::vector<std::complex<double>> complex_from(const json& re, const json& im) {
  if (re.size() != im.size()) throw InvalidArgument("real and imaginary arrays differ in length");
  std::vector<std::complex<double>> out(re.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {re[k].get<double>(), im[k].get<double>()};
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

void to_json(json& j, const IsingParams& p) {
  j = json{{"n_spins", p.n_spins}, {"coupling", p.coupling}, {"field", p.field},
           {"beta", p.beta}, {"probe_coupling", p.probe_coupling}};
}

void from_json(const json& j, IsingParams& p) {
  p = IsingParams{};
  j.at("n_spins").get_to(p.n_spins);
  j.at("coupling").get_to(p.coupling);
  j.at("field").get_to(p.field);
  j.at("beta").get_to(p.beta);
  if (j.contains("probe_coupling")) j.at("probe_coupling").get_to(p.probe_coupling);
}

void to_json(json& j, const ZeroSet& z) {
  j = json{{"angles", z.angles}, {"multiplicities", z.multiplicities}, {"radii", z.radii},
           {"params", z.params}};
  if (z.uncertainties) {
    json u = json::array();
    for (double d : *z.uncertainties) u.push_back(number_or_null(d));
    j["uncertainties"] = std::move(u);
  } else {
    j["uncertainties"] = nullptr;
  }
  j["diagnostic"] = z.diagnostic ? json(*z.diagnostic) : json(nullptr);
}

void from_json(const json& j, ZeroSet& z) {
  z = ZeroSet{};
  j.at("angles").get_to(z.angles);
  j.at("multiplicities").get_to(z.multiplicities);
  if (j.contains("radii")) j.at("radii").get_to(z.radii);
  else z.radii.assign(z.angles.size(), 1.0);
  j.at("params").get_to(z.params);
  if (j.contains("uncertainties") && !j.at("uncertainties").is_null()) {
    std::vector<double> u;
    for (const json& d : j.at("uncertainties")) u.push_back(number_or_inf(d));
    z.uncertainties = std::move(u);
  }
  if (j.contains("diagnostic") && !j.at("diagnostic").is_null())
    z.diagnostic = j.at("diagnostic").get<std::string>();
  if (z.multiplicities.size() != z.angles.size() || z.radii.size() != z.angles.size() ||
      (z.uncertainties && z.uncertainties->size() != z.angles.size()))
    throw InvalidArgument("zero set arrays differ in length");
}

void to_json(json& j, const CoherenceTrace& t) {
  j = json{{"times", t.times}, {"angles", t.angles}, {"re", complex_parts(t.values, false)},
           {"im", complex_parts(t.values, true)}, {"params", t.params}};
}

void from_json(const json& j, CoherenceTrace& t) {
  t = CoherenceTrace{};
  j.at("times").get_to(t.times);
  j.at("angles").get_to(t.angles);
  t.values = complex_from(j.at("re"), j.at("im"));
  j.at("params").get_to(t.params);
}

void to_json(json& j, const FreeEnergyResult& r) {
  j = json{{"log_partition", r.log_partition}, {"free_energy", r.free_energy},
           {"per_spin", r.per_spin}, {"beta", r.beta}, {"field", r.field},
           {"n_spins", r.n_spins}, {"source", std::string(to_string(r.source))}};
}

void from_json(const json& j, FreeEnergyResult& r) {
  j.at("log_partition").get_to(r.log_partition);
  j.at("free_energy").get_to(r.free_energy);
  j.at("per_spin").get_to(r.per_spin);
  j.at("beta").get_to(r.beta);
  j.at("field").get_to(r.field);
  j.at("n_spins").get_to(r.n_spins);
  r.source = parse_free_energy_source(j.at("source").get<std::string>());
}

void to_json(json& j, const EdgeSample& s) {
  j = json{{"T_over_NJ", number_or_null(s.temperature_over_nj)}, {"theta1", s.theta1}};
}

void from_json(const json& j, EdgeSample& s) {
  s.temperature_over_nj = number_or_inf(j.at("T_over_NJ"));
  j.at("theta1").get_to(s.theta1);
}

void to_json(json& j, const EdgeCurve& c) {
  j = json{{"samples", c.samples}, {"n_spins", c.n_spins}, {"coupling", c.coupling},
           {"estimated_tc", c.estimated_tc ? json(*c.estimated_tc) : json(nullptr)},
           {"analytic_tc", critical_temperature(c.n_spins, c.coupling)},
           {"tc_method", c.tc_method}};
}

void from_json(const json& j, EdgeCurve& c) {
  c = EdgeCurve{};
  j.at("samples").get_to(c.samples);
  j.at("n_spins").get_to(c.n_spins);
  j.at("coupling").get_to(c.coupling);
  if (!j.at("estimated_tc").is_null()) c.estimated_tc = j.at("estimated_tc").get<double>();
  j.at("tc_method").get_to(c.tc_method);
}

void to_json(json& j, const NoiseModel& n) {
  json delta = json::array();
  auto keys = n.delta_x;
  for (const auto& entry : n.delta_y) keys.try_emplace(entry.first, 0.0);
  for (const auto& entry : keys) {
    const int two_m = entry.first;
    const auto x = n.delta_x.find(two_m);
    const auto y = n.delta_y.find(two_m);
    delta.push_back({{"two_m", two_m},
                     {"dx", x == n.delta_x.end() ? 0.0 : x->second},
                     {"dy", y == n.delta_y.end() ? 0.0 : y->second}});
  }
  j = json{{"t2_star_s", number_or_null(n.t2_star)}, {"eta", n.eta}, {"seed", n.seed},
           {"delta", std::move(delta)}};
}

void from_json(const json& j, NoiseModel& n) {
  n = NoiseModel{};
  n.t2_star = j.contains("t2_star_s") ? number_or_inf(j.at("t2_star_s"))
                                      : std::numeric_limits<double>::infinity();
  if (j.contains("eta")) j.at("eta").get_to(n.eta);
  if (j.contains("seed")) j.at("seed").get_to(n.seed);
  if (j.contains("delta")) {
    for (const json& d : j.at("delta")) {
      const int two_m = d.at("two_m").get<int>();
      if (n.delta_x.contains(two_m)) throw InvalidArgument("duplicate delta entry for 2m = " + std::to_string(two_m));
      n.delta_x[two_m] = d.at("dx").get<double>();
      n.delta_y[two_m] = d.at("dy").get<double>();
    }
  }
  n.validate();
}

void to_json(json& j, const MeasuredTrace& t) {
  j = json{{"times", t.times}, {"observed", t.observed},
           {"true_re", complex_parts(t.true_trace, false)},
           {"true_im", complex_parts(t.true_trace, true)},
           {"noise", t.noise}, {"params", t.params}};
}

void from_json(const json& j, MeasuredTrace& t) {
  t = MeasuredTrace{};
  j.at("times").get_to(t.times);
  j.at("observed").get_to(t.observed);
  t.true_trace = complex_from(j.at("true_re"), j.at("true_im"));
  j.at("noise").get_to(t.noise);
  j.at("params").get_to(t.params);
}

void write_csv(std::ostream& os, const ZeroSet& zeros) {
  os << "n,theta,t,re_z,im_z,delta_theta,multiplicity\n";
  const auto z = zeros.z_values();
  const auto t = zeros.times();
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    os << k + 1 << ',' << format_number(zeros.angles[k]) << ',' << format_number(t[k]) << ','
       << format_number(z[k].real()) << ',' << format_number(z[k].imag()) << ',';
    if (zeros.uncertainties) os << format_number((*zeros.uncertainties)[k]);
    os << ',' << zeros.multiplicities[k] << '\n';
  }
}

void write_csv(std::ostream& os, const CoherenceTrace& trace) {
  os << "t,theta,re_L,im_L\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    os << format_number(trace.times[k]) << ',' << format_number(trace.angles[k]) << ','
       << format_number(trace.values[k].real()) << ',' << format_number(trace.values[k].imag())
       << '\n';
}

void write_csv(std::ostream& os, const EdgeCurve& curve) {
  os << "T_over_NJ,theta1\n";
  for (const EdgeSample& s : curve.samples)
    os << format_number(s.temperature_over_nj) << ',' << format_number(s.theta1) << '\n';
}

void write_csv(std::ostream& os, std::span<const FreeEnergyResult> rows) {
  os << "beta,logZ,F,F_per_spin,source\n";
  for (const FreeEnergyResult& r : rows)
    os << format_number(r.beta) << ',' << format_number(r.log_partition) << ','
       << format_number(r.free_energy) << ',' << format_number(r.per_spin) << ','
       << to_string(r.source) << '\n';
}

void write_csv(std::ostream& os, const MeasuredTrace& trace) {
  os << "t,observed,true_re_L\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    os << format_number(trace.times[k]) << ',' << format_number(trace.observed[k]) << ','
       << format_number(trace.true_trace[k].real()) << '\n';
}

}  // namespace leeyang
