#include "leeyang/experiment_sim.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "leeyang/coherence.hpp"
#include "leeyang/error.hpp"
#include "leeyang/io.hpp"

namespace leeyang {

namespace {

constexpr double kFlatSlope = 1e-12;

double envelope(const NoiseModel& noise, double t) {
  return std::isinf(noise.t2_star) ? 1.0 : std::exp(-t / noise.t2_star);
}

std::vector<double> corrected_signal(const MeasuredTrace& trace) {
  std::vector<double> y(trace.observed.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = trace.observed[k] / envelope(trace.noise, trace.times[k]);
  return y;
}

std::vector<double> trace_angles(const MeasuredTrace& trace) {
  std::vector<double> theta(trace.times.size());
  for (std::size_t k = 0; k < theta.size(); ++k) theta[k] = trace.params.probe_coupling * trace.times[k];
  return theta;
}

struct Crossing {
  std::size_t left;   // last sample before the sign flip
  std::size_t right;  // first sample after it
  [[nodiscard]] double position() const { return 0.5 * static_cast<double>(left + right); }
};

// Least-squares polynomial through the window, in the scaled variable
// u = (theta - center) / scale. Coefficients ascending.
Eigen::VectorXd fit_polynomial(std::span<const double> theta, std::span<const double> y,
                               double center, double scale, int degree) {
  const auto rows = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd design(rows, degree + 1);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double u = (theta[static_cast<std::size_t>(i)] - center) / scale;
    double power = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(i, d) = power;
      power *= u;
    }
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  return design.colPivHouseholderQr().solve(rhs);
}

double eval_polynomial(const Eigen::VectorXd& c, double u) {
  double v = 0.0;
  for (Eigen::Index d = c.size() - 1; d >= 0; --d) v = v * u + c(d);
  return v;
}

// Root of the fitted cubic closest to `target` (scaled units) inside
// [lo, hi], or empty if the fit never changes sign there.
std::optional<double> fitted_root(const Eigen::VectorXd& c, double lo, double hi, double target) {
  constexpr int kProbe = 64;
  std::optional<double> best;
  double a = lo;
  double fa = eval_polynomial(c, a);
  for (int i = 1; i <= kProbe; ++i) {
    const double b = lo + (hi - lo) * i / kProbe;
    const double fb = eval_polynomial(c, b);
    if (fa == 0.0 || (fa > 0.0) != (fb > 0.0)) {
      double l = a, h = b, fl = fa;
      for (int it = 0; it < 100 && fl != 0.0; ++it) {
        const double m = 0.5 * (l + h);
        const double fm = eval_polynomial(c, m);
        if (fm == 0.0) { l = h = m; break; }
        if ((fm > 0.0) == (fl > 0.0)) { l = m; fl = fm; } else { h = m; }
      }
      const double root = fl == 0.0 ? l : 0.5 * (l + h);
      if (!best || std::abs(root - target) < std::abs(*best - target)) best = root;
    }
    a = b;
    fa = fb;
  }
  return best;
}

}  // namespace

double EnsembleWeights::weight(int twice_m) const {
  const int n = static_cast<int>(params.n_spins);
  if (twice_m < -n || twice_m > n || (twice_m + n) % 2 != 0)
    throw InvalidArgument("2m = " + std::to_string(twice_m) + " is not a sector of N = " +
                          std::to_string(n));
  return weights[static_cast<std::size_t>((twice_m + n) / 2)];
}

std::complex<double> EnsembleWeights::coherence(double theta) const {
  const int n = static_cast<int>(params.n_spins);
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double m = 0.5 * (2 * static_cast<int>(k) - n);
    sum += weights[k] * std::complex<double>(std::cos(m * theta), -std::sin(m * theta));
  }
  return sum;
}

EnsembleWeights ensemble_weights(const IsingParams& params) {
  params.validate();
  const unsigned n_spins = params.n_spins;
  const double nn = n_spins;
  const double log_n_fact = std::lgamma(nn + 1.0);

  // log C(N, N/2 - m), mirrored so that the zero-field weights are exactly
  // symmetric in m.
  std::vector<double> log_binom(n_spins + 1);
  for (unsigned k = 0; 2 * k <= n_spins; ++k) {
    const double kk = k;
    const double v = k == 0 ? 0.0 : log_n_fact - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
    log_binom[k] = v;
    log_binom[n_spins - k] = v;
  }

  std::vector<double> log_w(n_spins + 1);
  for (unsigned k = 0; k <= n_spins; ++k) {
    const double m = 0.5 * (2.0 * k - nn);  // index k holds 2m = 2k - N
    log_w[k] = log_binom[k] + 0.5 * params.beta_j() * m * m + params.beta_h() * m;
  }
  const double max_log = *std::max_element(log_w.begin(), log_w.end());

  EnsembleWeights result;
  result.params = params;
  result.weights.resize(n_spins + 1);
  double total = 0.0;
  for (unsigned k = 0; k <= n_spins; ++k) {
    result.weights[k] = std::exp(log_w[k] - max_log);
    total += result.weights[k];
  }
  for (double& w : result.weights) w /= total;
  return result;
}

NoiseModel NoiseModel::noiseless(unsigned n_spins) {
  NoiseModel noise;
  const int n = static_cast<int>(n_spins);
  for (int two_m = -n; two_m <= n; two_m += 2) {
    noise.delta_x[two_m] = 0.0;
    noise.delta_y[two_m] = 0.0;
  }
  return noise;
}

void NoiseModel::validate() const {
  for (const auto* deltas : {&delta_x, &delta_y})
    for (const auto& [two_m, d] : *deltas)
      if (!(std::abs(d) <= kMaxStateDeviation))
        throw InvalidArgument("state deviation for 2m = " + std::to_string(two_m) +
                              " exceeds |delta| <= 0.05");
  if (!(t2_star > 0.0)) throw InvalidArgument("t2_star must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta must be finite and non-negative");
}

void NoiseModel::validate_for(unsigned n_spins) const {
  validate();
  const int n = static_cast<int>(n_spins);
  for (int two_m = -n; two_m <= n; two_m += 2)
    if (!delta_x.contains(two_m) || !delta_y.contains(two_m))
      throw InvalidArgument("noise model has no deviation for 2m = " + std::to_string(two_m) +
                            " (N = " + std::to_string(n_spins) + ")");
  for (const auto* deltas : {&delta_x, &delta_y})
    for (const auto& entry : *deltas)
      if (entry.first < -n || entry.first > n || (entry.first + n) % 2 != 0)
        throw InvalidArgument("noise model sector 2m = " + std::to_string(entry.first) +
                              " does not exist for N = " + std::to_string(n_spins));
}

std::complex<double> state_preparation_error(const NoiseModel& noise, unsigned n_spins,
                                             double theta) {
  const int n = static_cast<int>(n_spins);
  std::complex<double> sum = 0.0;
  for (int two_m = -n; two_m <= n; two_m += 2) {
    const double m = 0.5 * two_m;
    const std::complex<double> delta(noise.delta_x.at(two_m), -noise.delta_y.at(two_m));
    sum += delta * std::complex<double>(std::cos(m * theta), -std::sin(m * theta));
  }
  return sum;
}

MeasuredTrace synthesize_measurement(const IsingParams& params, const NoiseModel& noise,
                                     std::span<const double> times) {
  params.validate();
  if (params.field != 0.0) throw InvalidArgument("synthesize_measurement models the h = 0 experiment");
  if (!(params.probe_coupling > 0.0)) throw InvalidArgument("probe coupling lambda must be positive");
  noise.validate_for(params.n_spins);
  for (double t : times)
    if (!std::isfinite(t)) throw InvalidArgument("time grid must be finite");

  const EnsembleWeights weights = ensemble_weights(params);
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  MeasuredTrace trace;
  trace.params = params;
  trace.noise = noise;
  trace.times.assign(times.begin(), times.end());
  trace.observed.resize(times.size());
  trace.true_trace.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double theta = params.probe_coupling * times[k];
    const std::complex<double> ideal = weights.coherence(theta);
    const std::complex<double> deviation = state_preparation_error(noise, params.n_spins, theta);
    const double sample_noise = noise.eta * gauss(rng);
    trace.true_trace[k] = ideal;
    trace.observed[k] = envelope(noise, times[k]) * (ideal + deviation).real() + sample_noise;
  }
  return trace;
}

ZeroSet extract_zeros(const MeasuredTrace& trace, const ExtractionOptions& options) {
  if (trace.times.size() != trace.observed.size() || trace.times.size() < 4)
    throw InvalidArgument("measured trace needs at least four samples");
  if (options.half_window < 1) throw InvalidArgument("fit half window must be at least 1");
  const double period = 2.0 * std::numbers::pi / trace.params.probe_coupling;
  if (trace.times.back() - trace.times.front() < period * (1.0 - 1e-9))
    throw InvalidArgument("measured trace must cover one period 2 pi / lambda");

  const std::vector<double> y = corrected_signal(trace);
  const std::vector<double> theta = trace_angles(trace);
  const std::size_t count = y.size();
  const auto hw = static_cast<std::size_t>(options.half_window);

  std::vector<Crossing> crossings;
  std::optional<std::size_t> last_nonzero;
  for (std::size_t k = 0; k < count; ++k) {
    if (y[k] == 0.0) continue;
    if (last_nonzero && (y[k] > 0.0) != (y[*last_nonzero] > 0.0)) crossings.push_back({*last_nonzero, k});
    last_nonzero = k;
  }

  // Group chatter: sign flips closer than one full window belong together.
  std::vector<std::vector<Crossing>> groups;
  for (const Crossing& c : crossings) {
    if (!groups.empty() && c.position() - groups.back().back().position() <= static_cast<double>(2 * hw + 1))
      groups.back().push_back(c);
    else
      groups.push_back({c});
  }

  std::vector<double> roots;
  std::size_t dropped = 0;
  for (const auto& group : groups) {
    if (group.size() % 2 == 0) {  // no net sign change
      ++dropped;
      continue;
    }
    double mean_pos = 0.0;
    for (const Crossing& c : group) mean_pos += c.position();
    mean_pos /= static_cast<double>(group.size());
    const auto center = static_cast<std::size_t>(std::lround(mean_pos));
    const std::size_t lo = center >= hw ? center - hw : 0;
    const std::size_t hi = std::min(count - 1, center + hw);
    const std::size_t points = hi - lo + 1;
    const int degree = static_cast<int>(std::min<std::size_t>(3, points - 1));

    const double scale = std::max(theta[hi] - theta[center], theta[center] - theta[lo]);
    const std::span<const double> win_theta(theta.data() + lo, points);
    const std::span<const double> win_y(y.data() + lo, points);
    const Eigen::VectorXd coeffs = fit_polynomial(win_theta, win_y, theta[center], scale, degree);

    const Crossing& mid = group[group.size() / 2];
    const double target = (0.5 * (theta[mid.left] + theta[mid.right]) - theta[center]) / scale;
    const double u_lo = (theta[lo] - theta[center]) / scale;
    const double u_hi = (theta[hi] - theta[center]) / scale;
    if (const auto u = fitted_root(coeffs, u_lo, u_hi, target)) {
      roots.push_back(theta[center] + scale * *u);
    } else {
      const double y0 = y[mid.left];
      const double y1 = y[mid.right];
      roots.push_back(theta[mid.left] + (theta[mid.right] - theta[mid.left]) * y0 / (y0 - y1));
    }
  }
  std::sort(roots.begin(), roots.end());

  ZeroSet zeros;
  zeros.params = trace.params;
  zeros.angles = roots;
  zeros.multiplicities.assign(roots.size(), 1U);
  zeros.radii.assign(roots.size(), 1.0);
  if (roots.size() != trace.params.n_spins) {
    zeros.diagnostic = "extracted " + std::to_string(roots.size()) + " of " +
                       std::to_string(trace.params.n_spins) + " zeros (" +
                       std::to_string(dropped) + " sign-change groups without net crossing)";
  }
  return zeros;
}

std::optional<DegenerateZero> extract_degenerate_zero(const MeasuredTrace& trace, double eta) {
  if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
  const std::vector<double> y = corrected_signal(trace);

  std::optional<std::size_t> first;
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (std::abs(y[k]) < eta) {
      if (!first) first = k;
      last = k;
    }
  }
  if (!first) return std::nullopt;
  // Midpoint taken on the time axis, where the samples live; converting each
  // end to an angle first costs an ulp on symmetric input.
  const double lambda = trace.params.probe_coupling;
  const double t_first = trace.times[*first];
  const double t_last = trace.times[*last];
  return DegenerateZero{lambda * (0.5 * (t_first + t_last)), lambda * (0.5 * (t_last - t_first))};
}

ZeroSet zero_uncertainty(const IsingParams& params, ZeroSet zeros, double eta) {
  if (!(eta >= 0.0)) throw InvalidArgument("eta must be non-negative");
  const CoherenceKernel kernel(params);
  std::vector<double> delta(zeros.angles.size());
  for (std::size_t k = 0; k < delta.size(); ++k) {
    const double slope = std::abs(kernel.derivative(zeros.angles[k]));
    delta[k] = slope <= kFlatSlope ? std::numeric_limits<double>::infinity() : eta / slope;
  }
  zeros.uncertainties = std::move(delta);
  return zeros;
}

std::map<std::string, NoiseModel> load_noise_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open noise preset file " + path.string());
  const nlohmann::json doc = nlohmann::json::parse(in);
  std::map<std::string, NoiseModel> presets;
  for (const auto& [label, entry] : doc.at("presets").items()) presets[label] = entry.get<NoiseModel>();
  return presets;
}

}  // namespace leeyang
