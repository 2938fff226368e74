#pragma once

#include <cstdint>
#include <utility>

#include "entdist/qubit.hpp"

namespace entdist {

/// Two-parameter description of the distillation measurement. phi is the
/// Schmidt angle of the pair to be distilled (alpha = cos phi,
/// beta = e^{i gamma} sin phi). Canonicalized so phi in [0, pi/2] and
/// gamma in (-pi, pi]; the canonical form describes the same state up to a
/// global phase.
struct DistillParams {
  double phi = 0.0;
  double gamma = 0.0;

  DistillParams() = default;
  DistillParams(double phi_, double gamma_);
};

/// Eight-angle configuration of the two-outcome diagonal POVM:
///   M1 = cos(theta1) e^{i phase1} |0><0| + cos(theta2) e^{i phase2} |1><1|
///   M2 = sin(theta1) e^{i phase3} |0><0| + sin(theta2) e^{i phase4} |1><1|
struct POVMConfig {
  double theta1 = 0.0, theta2 = 0.0;
  double phase1 = 0.0, phase2 = 0.0, phase3 = 0.0, phase4 = 0.0;

  POVMConfig() = default;
  POVMConfig(double t1, double t2, double p1, double p2, double p3, double p4);
};

enum class Branch { p1, p2 };

/// One heralded output branch: the (normalized) post-measurement state and
/// its probability. `state` is absent when the branch probability vanishes.
struct DistillationOutcome {
  Branch branch = Branch::p1;
  std::optional<PureState> state;
  double probability = 0.0;
};

struct MBQCResourceEstimate {
  std::uint64_t ghz_count = 0;
  std::uint64_t bell_count = 0;
  std::uint64_t ensemble_size = 0;
  double alpha = 0.0;
};

/// Extracts (phi, gamma) from pair amplitudes: strips the global phase so
/// alpha is real and nonnegative, then phi = arccos(alpha), gamma = arg(beta)
/// (zero when beta = 0). Throws if |alpha|^2 + |beta|^2 deviates from 1 by
/// more than 1e-9.
DistillParams params_from_state(cplx alpha, cplx beta);

/// Measurement settings matched to the given parameters:
/// theta1 = Re[arccos(tan phi)], theta2 = Re[arccos(cot phi)] with
/// Re[arccos(x)] clamped to 0 for x >= 1 and pi for x <= -1;
/// phase2 = phase3 = -gamma, phase1 = phase4 = 0. This yields the piecewise
/// success operator M1 ~ tan(phi)|0><0| + |1><1| for phi <= pi/4 and
/// M1 ~ |0><0| + cot(phi)|1><1| otherwise.
POVMConfig config_from_params(const DistillParams& params);

/// The two Kraus operators of the configuration. M1†M1 + M2†M2 = I holds by
/// construction.
std::pair<QubitOperator, QubitOperator> kraus_operators(const POVMConfig& config);

/// Applies the measurement to one qubit of a Schmidt-form pair
/// alpha|00> + beta|11| (other amplitudes must vanish within 1e-9).
/// Returns the (p1, p2) branches; branch probabilities sum to one.
std::pair<DistillationOutcome, DistillationOutcome> distill_pair(
    const PureState& state, const DistillParams& params, int target);

/// Distills alpha|0...0> + beta|1...1> (n qubits) with the matched
/// measurement applied to qubit 0. The success probability 1 - |cos 2 phi|
/// does not depend on n.
std::pair<DistillationOutcome, DistillationOutcome> distill_ghz(int n,
                                                                cplx alpha,
                                                                cplx beta);

/// Order-of-magnitude resource count for building cluster states out of
/// distilled 3-qubit GHZ and Bell pairs:
///   ghz_count  = ceil(prefactor * n * k * L^3)
///   bell_count = ghz_count (unit ratio)
///   ensemble_size = ceil((ghz_count + bell_count) / alpha^2)
MBQCResourceEstimate mbqc_resource_estimate(std::uint64_t n_logical,
                                            std::uint64_t depth_k,
                                            std::uint64_t lattice_l,
                                            double alpha,
                                            double prefactor = 1.0);

}  // namespace entdist
