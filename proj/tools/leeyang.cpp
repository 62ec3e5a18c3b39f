// leeyang: command-line front end for the Lee-Yang zero toolkit.
//
//   leeyang zeros        --n 9 --beta-j 0.5333
//   leeyang coherence    --n 9 --beta-j 4.4444 --lambda-hz 10.57
//   leeyang free-energy  --n 9 --beta-j-range 0.1 5 50 --source direct --source from_zeros
//   leeyang edge-scan    --n 500 --t-range 0.02 0.6 59
//   leeyang simulate     --preset 9J/40 --seed 7
//
// Exit codes: 0 ok, 2 usage, 3 numerical diagnostic, 4 I/O.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "leeyang/coherence.hpp"
#include "leeyang/error.hpp"
#include "leeyang/experiment_sim.hpp"
#include "leeyang/io.hpp"
#include "leeyang/ising_model.hpp"
#include "leeyang/thermodynamics.hpp"
#include "leeyang/zero_finder.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kNumerical = 3, kIo = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised after the artifact was written, to report a non-fatal diagnostic.
struct Diagnostic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned n = 0;
  double beta_j = 0.0;
  double field = 0.0;
  double coupling = 1.0;
  std::optional<double> lambda;
  std::optional<double> lambda_hz;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;

  [[nodiscard]] double probe() const {
    if (lambda) return *lambda;
    if (lambda_hz) return 2.0 * std::numbers::pi * *lambda_hz;
    return leeyang::tmp::kProbeCoupling;
  }
  [[nodiscard]] leeyang::IsingParams params(double bj) const {
    return leeyang::IsingParams::from_beta_j(n, bj, coupling, field, probe());
  }
};

void add_format_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Write to this file instead of stdout");
}

void add_model_options(CLI::App* cmd, Common& c, bool with_probe) {
  cmd->add_option("--n", c.n, "Number of bath spins N")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--h", c.field, "Real field h (energy units)")->capture_default_str();
  cmd->add_option("--j", c.coupling, "Coupling J")->check(CLI::PositiveNumber)->capture_default_str();
  if (with_probe) {
    auto* rad = cmd->add_option("--lambda", c.lambda, "Probe coupling lambda, rad/s")
                    ->check(CLI::PositiveNumber);
    auto* hz = cmd->add_option("--lambda-hz", c.lambda_hz, "Probe coupling lambda / 2 pi, Hz")
                   ->check(CLI::PositiveNumber);
    rad->excludes(hz);
  }
}

// Output is assembled in memory and written once: stdout, or a temporary
// file renamed over the target.
void emit(const Common& c, const std::function<void(std::ostream&)>& csv, const json& doc) {
  std::ostringstream buffer;
  if (c.format == "json") buffer << doc.dump(2) << '\n';
  else csv(buffer);

  if (c.out.empty()) {
    std::cout << buffer.str() << std::flush;
    if (!std::cout) throw IoError("failed to write to stdout");
    return;
  }
  const fs::path target(c.out);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + tmp.string() + " for writing");
    file << buffer.str();
    file.close();
    if (!file) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + target.string());
  }
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

fs::path default_presets_file() {
  std::error_code ec;
  const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path installed =
        exe.parent_path().parent_path() / LEEYANG_INSTALL_DATADIR / "leeyang" / "state_prep_deltas.json";
    if (fs::exists(installed, ec)) return installed;
  }
  return LEEYANG_SOURCE_PRESETS;
}

void report(const leeyang::ZeroSet& zeros) {
  if (zeros.diagnostic) throw Diagnostic(*zeros.diagnostic);
}

// --- zeros -----------------------------------------------------------------

struct ZerosArgs {
  Common c;
  std::optional<double> eta;
};

void run_zeros(const ZerosArgs& a) {
  const leeyang::IsingParams params = a.c.params(a.c.beta_j);
  leeyang::ZeroSet zeros = params.field == 0.0
                               ? leeyang::find_zeros_real(params)
                               : leeyang::find_zeros_polynomial(leeyang::build_polynomial(params));
  if (a.eta) zeros = leeyang::zero_uncertainty(params, std::move(zeros), *a.eta);
  emit(a.c, [&](std::ostream& os) { leeyang::write_csv(os, zeros); }, zeros);
  report(zeros);
}

// --- coherence ---------------------------------------------------------------

struct CoherenceArgs {
  Common c;
  std::size_t samples = leeyang::kDefaultSamplesPerPeriod;
  double t_start = 0.0;
  std::optional<double> t_end;
};

void run_coherence(const CoherenceArgs& a) {
  const leeyang::IsingParams params = a.c.params(a.c.beta_j);
  const double t_end = a.t_end.value_or(a.t_start + leeyang::coherence_period(params));
  const leeyang::CoherenceTrace trace = leeyang::coherence_trace(params, a.t_start, t_end, a.samples);
  emit(a.c, [&](std::ostream& os) { leeyang::write_csv(os, trace); }, trace);
}

// --- free-energy -------------------------------------------------------------

struct FreeEnergyArgs {
  Common c;
  std::vector<double> beta_js;
  std::vector<double> range;  // lo hi count
  std::vector<std::string> sources{"direct"};
};

void run_free_energy(const FreeEnergyArgs& a) {
  std::vector<double> grid = a.beta_js;
  if (!a.range.empty()) {
    const double count = a.range[2];
    if (!(count >= 1.0) || count != std::floor(count))
      throw leeyang::InvalidArgument("--beta-j-range count must be a positive integer");
    const auto points = leeyang::uniform_grid(a.range[0], a.range[1], static_cast<std::size_t>(count));
    grid.insert(grid.end(), points.begin(), points.end());
  }
  if (grid.empty()) throw leeyang::InvalidArgument("give --beta-j or --beta-j-range");

  std::vector<leeyang::FreeEnergySource> sources;
  for (const auto& s : a.sources) sources.push_back(leeyang::parse_free_energy_source(s));

  std::vector<leeyang::FreeEnergyResult> rows;
  for (double bj : grid) {
    const leeyang::IsingParams params = a.c.params(bj);
    for (auto source : sources) {
      switch (source) {
        case leeyang::FreeEnergySource::direct:
          rows.push_back(leeyang::free_energy_direct(params));
          break;
        case leeyang::FreeEnergySource::from_zeros: {
          const leeyang::ZeroSet zeros =
              params.field == 0.0 ? leeyang::find_zeros_real(params)
                                  : leeyang::find_zeros_polynomial(leeyang::build_polynomial(params));
          if (!zeros.complete())
            throw leeyang::NumericalError("incomplete zero set at beta J = " + leeyang::format_number(bj) +
                                          ": " + zeros.diagnostic.value_or(""));
          rows.push_back(leeyang::free_energy_from_zeros(zeros));
          break;
        }
        case leeyang::FreeEnergySource::saddle_large_n:
          rows.push_back(leeyang::free_energy_saddle(params));
          break;
      }
    }
  }
  emit(a.c, [&](std::ostream& os) { leeyang::write_csv(os, rows); }, json(rows));
}

// --- edge-scan ---------------------------------------------------------------

struct EdgeArgs {
  Common c;
  std::vector<double> t_range{0.02, 0.6, 59};  // T/(NJ): lo hi count
};

void run_edge_scan(const EdgeArgs& a) {
  const double count = a.t_range[2];
  if (!(count >= 1.0) || count != std::floor(count))
    throw leeyang::InvalidArgument("--t-range count must be a positive integer");
  if (!(a.t_range[0] > 0.0)) throw leeyang::InvalidArgument("--t-range must start above T = 0");
  const double scale = a.c.n * a.c.coupling;
  std::vector<double> temperatures;
  for (double x : leeyang::uniform_grid(a.t_range[0], a.t_range[1], static_cast<std::size_t>(count)))
    temperatures.push_back(x * scale);

  leeyang::EdgeScanOptions options;
  options.threads = a.c.threads;
  const leeyang::EdgeCurve curve = leeyang::edge_scan(a.c.n, a.c.coupling, temperatures, options);
  emit(a.c, [&](std::ostream& os) { leeyang::write_csv(os, curve); }, curve);

  const double analytic = leeyang::critical_temperature(a.c.n, a.c.coupling);
  if (curve.estimated_tc)
    std::cerr << "estimated Tc = " << leeyang::format_number(*curve.estimated_tc)
              << " (N J / 4 = " << leeyang::format_number(analytic) << ")\n";
  else
    std::cerr << "no Tc estimate: " << curve.tc_method << '\n';
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
  Common c;
  bool beta_j_given = false;
  std::string noise_file;
  std::string preset;
  std::size_t samples = leeyang::kDefaultSamplesPerPeriod;
  std::optional<std::uint64_t> seed;
  std::optional<double> eta;
  int half_window = 7;
  std::string trace_out;
};

void run_simulate(SimulateArgs a) {
  leeyang::NoiseModel noise;
  std::optional<double> preset_beta_j;
  const bool have_file = !a.noise_file.empty();
  if (have_file || !a.preset.empty()) {
    const json doc = read_json_file(have_file ? fs::path(a.noise_file) : default_presets_file());
    if (doc.contains("presets")) {
      if (a.preset.empty()) throw leeyang::InvalidArgument("preset file given; choose one with --preset");
      if (!doc.at("presets").contains(a.preset))
        throw leeyang::InvalidArgument("unknown preset '" + a.preset + "'");
      const json& entry = doc.at("presets").at(a.preset);
      noise = entry.get<leeyang::NoiseModel>();
      if (entry.contains("beta_j")) preset_beta_j = entry.at("beta_j").get<double>();
    } else {
      if (!a.preset.empty()) throw leeyang::InvalidArgument("--preset needs a preset file, not a single noise model");
      noise = doc.get<leeyang::NoiseModel>();
    }
  } else {
    noise = leeyang::NoiseModel::noiseless(a.c.n);
  }
  if (a.seed) noise.seed = *a.seed;
  if (a.eta) noise.eta = *a.eta;

  double beta_j = a.c.beta_j;
  if (!a.beta_j_given) {
    if (!preset_beta_j) throw leeyang::InvalidArgument("--beta-j is required without a preset");
    beta_j = *preset_beta_j;
  }

  const leeyang::IsingParams params = a.c.params(beta_j);
  const auto times = leeyang::uniform_grid(0.0, leeyang::coherence_period(params), a.samples);
  const leeyang::MeasuredTrace trace = leeyang::synthesize_measurement(params, noise, times);

  leeyang::ZeroSet zeros;
  zeros.params = params;
  if (params.beta_j() < 1e-12) {
    if (!(noise.eta > 0.0))
      throw leeyang::InvalidArgument("the degenerate (beta J = 0) extraction needs eta > 0");
    if (const auto d = leeyang::extract_degenerate_zero(trace, noise.eta)) {
      zeros.angles = {d->angle};
      zeros.multiplicities = {params.n_spins};
      zeros.radii = {1.0};
      zeros.uncertainties = std::vector<double>{d->half_width};
    } else {
      zeros.diagnostic = "signal never drops below eta";
    }
  } else {
    leeyang::ExtractionOptions options;
    options.half_window = a.half_window;
    zeros = leeyang::zero_uncertainty(params, leeyang::extract_zeros(trace, options), noise.eta);
  }

  if (!a.trace_out.empty()) {
    Common trace_target = a.c;
    trace_target.out = a.trace_out;
    emit(trace_target, [&](std::ostream& os) { leeyang::write_csv(os, trace); }, trace);
  }
  emit(a.c, [&](std::ostream& os) { leeyang::write_csv(os, zeros); },
       json{{"zeros", zeros}, {"trace", trace}});
  report(zeros);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lee-Yang zeros of the long-range Ising bath, probed through central-spin coherence"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand
  app.set_help_flag("--help", "Print this help message and exit");  // -h is taken by the field
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  ZerosArgs zeros;
  auto* zeros_cmd = app.add_subcommand("zeros", "Lee-Yang zeros of the partition function");
  add_model_options(zeros_cmd, zeros.c, true);
  zeros_cmd->add_option("--beta-j", zeros.c.beta_j, "Dimensionless beta J")->required()->check(CLI::NonNegativeNumber);
  zeros_cmd->add_option("--eta", zeros.eta, "Coherence noise; fills delta_theta = eta / |dL/dtheta|")
      ->check(CLI::NonNegativeNumber);
  add_format_options(zeros_cmd, zeros.c);

  CoherenceArgs coh;
  auto* coh_cmd = app.add_subcommand("coherence", "Probe-spin coherence trace L(t)");
  add_model_options(coh_cmd, coh.c, true);
  coh_cmd->add_option("--beta-j", coh.c.beta_j, "Dimensionless beta J")->required()->check(CLI::NonNegativeNumber);
  coh_cmd->add_option("--samples", coh.samples, "Number of time samples")->check(CLI::Range(2, 100000000))->capture_default_str();
  coh_cmd->add_option("--t-start", coh.t_start, "First sample time, s")->capture_default_str();
  coh_cmd->add_option("--t-end", coh.t_end, "Last sample time, s (default: one period 2 pi / lambda)");
  add_format_options(coh_cmd, coh.c);

  FreeEnergyArgs fe;
  auto* fe_cmd = app.add_subcommand("free-energy", "Free energy on a grid of beta J");
  add_model_options(fe_cmd, fe.c, false);
  auto* fe_list = fe_cmd->add_option("--beta-j", fe.beta_js, "One or more beta J values")->check(CLI::PositiveNumber);
  auto* fe_range = fe_cmd->add_option("--beta-j-range", fe.range, "lo hi count")->expected(3);
  fe_list->excludes(fe_range);
  fe_cmd->add_option("--source", fe.sources, "direct | from_zeros | saddle_large_n (repeatable)")
      ->check(CLI::IsMember({"direct", "from_zeros", "saddle_large_n"}))
      ->capture_default_str();
  add_format_options(fe_cmd, fe.c);

  EdgeArgs edge;
  auto* edge_cmd = app.add_subcommand("edge-scan", "Yang-Lee edge theta_1 versus temperature, with a Tc estimate");
  edge_cmd->add_option("--n", edge.c.n, "Number of bath spins N")->required()->check(CLI::PositiveNumber);
  edge_cmd->add_option("--j", edge.c.coupling, "Coupling J")->check(CLI::PositiveNumber)->capture_default_str();
  edge_cmd->add_option("--t-range", edge.t_range, "T/(N J) grid: lo hi count")->expected(3)->capture_default_str();
  add_format_options(edge_cmd, edge.c);

  SimulateArgs sim;
  sim.c.n = 9;
  auto* sim_cmd = app.add_subcommand("simulate", "Synthetic measurement, zero extraction and uncertainties");
  sim_cmd->add_option("--n", sim.c.n, "Number of bath spins N")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--j", sim.c.coupling, "Coupling J")->check(CLI::PositiveNumber)->capture_default_str();
  auto* sim_rad = sim_cmd->add_option("--lambda", sim.c.lambda, "Probe coupling lambda, rad/s")->check(CLI::PositiveNumber);
  auto* sim_hz = sim_cmd->add_option("--lambda-hz", sim.c.lambda_hz, "Probe coupling lambda / 2 pi, Hz")->check(CLI::PositiveNumber);
  sim_rad->excludes(sim_hz);
  auto* sim_bj = sim_cmd->add_option("--beta-j", sim.c.beta_j, "Dimensionless beta J (default: the preset's)")
                     ->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--noise", sim.noise_file, "Noise model JSON, or a preset file together with --preset");
  sim_cmd->add_option("--preset", sim.preset, "Bundled preset: inf, 15J/8 or 9J/40");
  sim_cmd->add_option("--samples", sim.samples, "Samples over one period")->check(CLI::Range(16, 100000000))->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Override the noise RNG seed");
  sim_cmd->add_option("--eta", sim.eta, "Override the noise level eta")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--half-window", sim.half_window, "Half width of the local cubic fit, samples")
      ->check(CLI::Range(1, 1000))->capture_default_str();
  sim_cmd->add_option("--trace-out", sim.trace_out, "Also write the measured trace here");
  add_format_options(sim_cmd, sim.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (Common* c : {&zeros.c, &coh.c, &fe.c, &edge.c, &sim.c}) c->threads = threads;
    if (*zeros_cmd) run_zeros(zeros);
    else if (*coh_cmd) run_coherence(coh);
    else if (*fe_cmd) run_free_energy(fe);
    else if (*edge_cmd) run_edge_scan(edge);
    else if (*sim_cmd) {
      sim.beta_j_given = sim_bj->count() > 0;
      run_simulate(sim);
    }
  } catch (const Diagnostic& e) {
    std::cerr << "leeyang: diagnostic: " << e.what() << '\n';
    return kNumerical;
  } catch (const leeyang::InvalidArgument& e) {
    std::cerr << "leeyang: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "leeyang: " << e.what() << '\n';
    return kIo;
  } catch (const json::exception& e) {
    std::cerr << "leeyang: bad input: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "leeyang: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
