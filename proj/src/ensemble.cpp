#include "entdist/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entdist/rng.hpp"

namespace entdist {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated (Kahan) accumulator; the histogram-mass and survival sums must
// agree to 1e-12 regardless of summation order.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

int bin_index(double x, int bins) {
  int b = static_cast<int>(x * bins);
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;
  return b;
}

}  // namespace

double Histogram::mass() const {
  KahanSum total;
  for (double d : density) total.add(d);
  return total.sum * bin_width();
}

std::vector<double> sample_ensemble(const EnsembleSpec& spec) {
  if (spec.size < 1) throw std::invalid_argument("sample_ensemble: size 0");
  switch (spec.family) {
    case EnsembleFamily::delta: {
      if (spec.mean_alpha2 < 0.0 || spec.mean_alpha2 > 1.0)
        throw std::invalid_argument("sample_ensemble: mean outside [0, 1]");
      return std::vector<double>(spec.size, spec.mean_alpha2);
    }
    case EnsembleFamily::custom_samples: {
      if (spec.custom.empty())
        throw std::invalid_argument("sample_ensemble: no custom samples");
      for (double x : spec.custom)
        if (x < 0.0 || x > 1.0)
          throw std::invalid_argument("sample_ensemble: custom sample outside [0, 1]");
      return spec.custom;
    }
    case EnsembleFamily::gaussian_alpha2: {
      if (spec.mean_alpha2 < 0.0 || spec.mean_alpha2 > 1.0)
        throw std::invalid_argument("sample_ensemble: mean outside [0, 1]");
      if (spec.sigma < 0.0)
        throw std::invalid_argument("sample_ensemble: negative sigma");
      Philox rng(spec.seed);
      std::vector<double> samples(spec.size);
      for (std::size_t i = 0; i < spec.size; ++i)
        samples[i] = rng.truncated_gaussian01(spec.mean_alpha2, spec.sigma, i,
                                              kStreamSampling);
      return samples;
    }
  }
  throw std::invalid_argument("sample_ensemble: unknown family");
}

double mean_alpha2_from_entropy(double s_target) {
  if (!(s_target >= 0.0 && s_target <= 1.0))
    throw std::invalid_argument("mean_alpha2_from_entropy: target outside [0, 1]");
  if (s_target == 1.0) return 0.5;
  if (s_target == 0.0) return 1.0;
  // H is strictly decreasing on [0.5, 1].
  double lo = 0.5, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) > s_target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

PairStats pair_distill_stats(double alpha2, const DistillParams& params) {
  // Success operator piecewise in phi: diag(tan phi, 1) or diag(1, cot phi)
  // up to the gamma phase, which cancels for a phase-matched pair.
  double c0, c1;
  if (params.phi <= kPi / 4.0) {
    const double t = std::tan(params.phi);
    c0 = t * t;
    c1 = 1.0;
  } else {
    const double c = std::tan(kPi / 2.0 - params.phi);  // cot phi
    c0 = 1.0;
    c1 = c * c;
  }
  PairStats stats;
  stats.p1_weight = alpha2 * c0 + (1.0 - alpha2) * c1;
  stats.out_alpha2 =
      (stats.p1_weight > 0.0) ? (alpha2 * c0 / stats.p1_weight) : 0.0;
  return stats;
}

EnsembleResult distill_ensemble(const std::vector<double>& samples,
                                const DistillParams& params, SurvivorMode mode,
                                std::uint64_t seed, int bins) {
  if (samples.empty())
    throw std::invalid_argument("distill_ensemble: empty sample list");
  if (bins < 1) throw std::invalid_argument("distill_ensemble: bins < 1");

  const std::size_t n = samples.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  Philox rng(seed);

  EnsembleResult result;
  result.in_histogram.bins = bins;
  result.in_histogram.density.assign(bins, 0.0);
  result.out_histogram.bins = bins;
  result.out_histogram.density.assign(bins, 0.0);

  std::vector<double> weights(n), s_out(n), s_in(n);
  KahanSum sum_w, sum_ws, sum_m;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = samples[i];
    const PairStats stats = pair_distill_stats(a2, params);
    double w = stats.p1_weight;
    if (mode == SurvivorMode::sampled)
      w = rng.bernoulli(w, i, kStreamCoinFlip) ? 1.0 : 0.0;
    weights[i] = w;
    s_in[i] = binary_entropy(a2);
    s_out[i] = binary_entropy(stats.out_alpha2);
    sum_w.add(w);
    sum_ws.add(w * s_out[i]);
    sum_m.add(s_in[i]);

    result.in_histogram.density[bin_index(a2, bins)] += inv_n * bins;
    if (w > 0.0)
      result.out_histogram.density[bin_index(stats.out_alpha2, bins)] +=
          w * inv_n * bins;
  }

  result.survival_fraction = sum_w.sum * inv_n;
  result.mean_s_in = sum_m.sum * inv_n;
  result.mean_s_out = (sum_w.sum > 0.0) ? sum_ws.sum / sum_w.sum : 0.0;
  result.delta_s = result.mean_s_out - result.mean_s_in;

  // Delta-method standard error of delta_s: influence of pair i is
  // w_i (s_out_i - mean_s_out) / mean(w) - (s_in_i - mean_s_in).
  if (n > 1 && sum_w.sum > 0.0) {
    const double w_bar = result.survival_fraction;
    KahanSum var;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = weights[i] * (s_out[i] - result.mean_s_out) / w_bar -
                       (s_in[i] - result.mean_s_in);
      var.add(g * g);
    }
    result.delta_s_stderr =
        std::sqrt(var.sum / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
  return result;
}

SweepGrid sweep_grid(const std::vector<double>& phi_axis,
                     const std::vector<double>& s_in_axis, double sigma,
                     std::size_t size, std::uint64_t seed) {
  if (phi_axis.empty() || s_in_axis.empty())
    throw std::invalid_argument("sweep_grid: empty axis");
  if (!std::is_sorted(phi_axis.begin(), phi_axis.end()) ||
      !std::is_sorted(s_in_axis.begin(), s_in_axis.end()))
    throw std::invalid_argument("sweep_grid: axes must be sorted");

  SweepGrid grid;
  grid.phi_axis = phi_axis;
  grid.s_in_axis = s_in_axis;
  grid.delta_s_matrix.resize(phi_axis.size() * s_in_axis.size());
  grid.survival_matrix.resize(phi_axis.size() * s_in_axis.size());
  grid.optimal_phi_locus.reserve(s_in_axis.size());

  for (std::size_t row = 0; row < s_in_axis.size(); ++row) {
    const double mean = mean_alpha2_from_entropy(s_in_axis[row]);
    // Row-scoped stream so cells are independent of evaluation order.
    Philox rng(seed);
    std::vector<double> samples(size);
    for (std::size_t i = 0; i < size; ++i)
      samples[i] = rng.truncated_gaussian01(
          mean, sigma, i, kStreamSampling + static_cast<std::uint32_t>(row));

    std::size_t best_col = 0;
    double best = -2.0, best_se = 0.0;
    for (std::size_t col = 0; col < phi_axis.size(); ++col) {
      const EnsembleResult cell =
          distill_ensemble(samples, DistillParams(phi_axis[col], 0.0));
      grid.delta_s_matrix[row * phi_axis.size() + col] = cell.delta_s;
      grid.survival_matrix[row * phi_axis.size() + col] = cell.survival_fraction;
      if (cell.delta_s > best) {
        best = cell.delta_s;
        best_se = cell.delta_s_stderr;
        best_col = col;
      }
    }
    grid.optimal_phi_locus.emplace_back(s_in_axis[row], phi_axis[best_col]);
    grid.locus_delta_s.push_back(best);
    grid.locus_stderr.push_back(best_se);
  }
  return grid;
}

std::pair<DistillParams, EnsembleResult> calibrate_and_distill(
    const std::vector<double>& samples, double subset_fraction, double gamma,
    std::uint64_t seed) {
  if (!(subset_fraction > 0.0 && subset_fraction < 1.0))
    throw std::invalid_argument("calibrate_and_distill: fraction outside (0, 1)");
  const std::size_t n = samples.size();
  const std::size_t n_cal = static_cast<std::size_t>(
      std::ceil(subset_fraction * static_cast<double>(n)));
  if (n_cal == 0 || n_cal >= n)
    throw std::invalid_argument(
        "calibrate_and_distill: calibration subset empty or exhausts the ensemble");

  // Single-qubit computational-basis statistics on the consumed pairs.
  Philox rng(seed);
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < n_cal; ++i)
    if (rng.bernoulli(samples[i], i, kStreamCalibration)) ++zeros;
  const double p0_hat = static_cast<double>(zeros) / static_cast<double>(n_cal);

  DistillParams params(std::acos(std::sqrt(p0_hat)), gamma);
  std::vector<double> rest(samples.begin() + static_cast<std::ptrdiff_t>(n_cal),
                           samples.end());
  EnsembleResult result = distill_ensemble(rest, params);
  return {params, std::move(result)};
}

}  // namespace entdist
