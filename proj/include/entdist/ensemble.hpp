#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "entdist/povm.hpp"

namespace entdist {

enum class EnsembleFamily { gaussian_alpha2, delta, custom_samples };

/// Distribution of |alpha|^2 values over the pair ensemble.
struct EnsembleSpec {
  EnsembleFamily family = EnsembleFamily::gaussian_alpha2;
  double mean_alpha2 = 0.5;
  double sigma = 0.01;
  std::size_t size = 10000;
  std::uint64_t seed = 0;
  std::vector<double> custom;  // used by custom_samples only
};

struct Histogram {
  std::vector<double> density;  // uniform bins over [0, 1]
  int bins = 200;

  double bin_width() const { return 1.0 / bins; }
  /// Integral of the density; 1 for the input histogram, the survival
  /// fraction for the (non-normalized) output histogram.
  double mass() const;
};

struct EnsembleResult {
  double mean_s_in = 0.0;        // bits
  double mean_s_out = 0.0;       // bits, probability-weighted over survivors
  double delta_s = 0.0;          // mean_s_out - mean_s_in
  double survival_fraction = 0.0;
  double delta_s_stderr = 0.0;   // standard error of delta_s over the sample
  Histogram in_histogram;
  Histogram out_histogram;
};

struct SweepGrid {
  std::vector<double> phi_axis;
  std::vector<double> s_in_axis;
  // Row-major [s_in][phi].
  std::vector<double> delta_s_matrix;
  std::vector<double> survival_matrix;
  // Per row: (s_in, argmax-phi), plus the max value and its standard error.
  std::vector<std::pair<double, double>> optimal_phi_locus;
  std::vector<double> locus_delta_s;
  std::vector<double> locus_stderr;

  double delta_s(std::size_t row, std::size_t col) const {
    return delta_s_matrix[row * phi_axis.size() + col];
  }
};

/// How p1 survivors enter the ensemble statistics: weighted by their branch
/// probability (variance-free means) or decided by seeded coin flips.
enum class SurvivorMode { weighted, sampled };

/// Draws the |alpha|^2 samples described by `spec`; deterministic given the
/// seed. Gaussian samples are truncated to [0, 1] by rejection (negligible
/// for narrow widths but slightly biased versus clipping; the mean moves
/// inward when the distribution touches a boundary).
std::vector<double> sample_ensemble(const EnsembleSpec& spec);

/// Inverts the binary entropy on the branch |alpha|^2 in [0.5, 1] by
/// bisection (interval narrower than 1e-12).
double mean_alpha2_from_entropy(double s_target);

/// Per-pair distillation statistics for a Schmidt pair with weight a2 and a
/// phase already matched by construction. Closed form of the distill_pair
/// route; equivalence is enforced by tests.
struct PairStats {
  double p1_weight;   // success probability
  double out_alpha2;  // Schmidt weight of the p1 output
};
PairStats pair_distill_stats(double alpha2, const DistillParams& params);

/// Distills every pair (alpha = sqrt(sample), beta bears the params' gamma)
/// and accumulates entropy statistics and |alpha|^2 histograms. Survivors are
/// probability-weighted by default; `SurvivorMode::sampled` uses seeded
/// Bernoulli survival instead.
EnsembleResult distill_ensemble(const std::vector<double>& samples,
                                const DistillParams& params,
                                SurvivorMode mode = SurvivorMode::weighted,
                                std::uint64_t seed = 0, int bins = 200);

/// Gaussian-ensemble sweep over (initial mean entropy) x (POVM angle).
/// Each row draws its own sample set from a position-derived stream, so
/// results do not depend on evaluation order.
SweepGrid sweep_grid(const std::vector<double>& phi_axis,
                     const std::vector<double>& s_in_axis, double sigma,
                     std::size_t size, std::uint64_t seed);

/// Consumes ceil(fraction * N) pairs for a computational-basis estimate of
/// |alpha|^2, sets phi* = arccos(sqrt(p0_hat)), then distills the rest.
std::pair<DistillParams, EnsembleResult> calibrate_and_distill(
    const std::vector<double>& samples, double subset_fraction, double gamma,
    std::uint64_t seed);

}  // namespace entdist
