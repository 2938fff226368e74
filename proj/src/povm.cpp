#include "entdist/povm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entdist {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  // into (-pi, pi]
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double re_arccos(double x) {
  if (x >= 1.0) return 0.0;
  if (x <= -1.0) return kPi;
  return std::acos(x);
}

}  // namespace

DistillParams::DistillParams(double phi_, double gamma_) {
  if (!std::isfinite(phi_) || !std::isfinite(gamma_))
    throw std::invalid_argument("DistillParams: non-finite angle");
  // Reduce phi modulo pi, then fold [pi/2, pi) onto [0, pi/2]. The fold flips
  // the sign of cos(phi), which is a global phase once gamma absorbs pi.
  phi = std::fmod(phi_, kPi);
  if (phi < 0.0) phi += kPi;
  gamma = gamma_;
  if (phi > kPi / 2.0) {
    phi = kPi - phi;
    gamma += kPi;
  }
  gamma = wrap_angle(gamma);
}

POVMConfig::POVMConfig(double t1, double t2, double p1, double p2, double p3,
                       double p4)
    : theta1(t1), theta2(t2), phase1(p1), phase2(p2), phase3(p3), phase4(p4) {
  if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(p1) ||
      !std::isfinite(p2) || !std::isfinite(p3) || !std::isfinite(p4))
    throw std::invalid_argument("POVMConfig: non-finite angle");
  if (t1 < 0.0 || t1 > kPi / 2.0 || t2 < 0.0 || t2 > kPi / 2.0)
    throw std::invalid_argument("POVMConfig: theta outside [0, pi/2]");
}

DistillParams params_from_state(cplx alpha, cplx beta) {
  const double total = std::norm(alpha) + std::norm(beta);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("params_from_state: amplitudes not normalized");
  // Strip the global phase so alpha becomes real and nonnegative.
  if (std::abs(alpha) > 0.0) {
    const cplx phase = std::exp(cplx(0.0, -std::arg(alpha)));
    alpha *= phase;
    beta *= phase;
  }
  const double a = std::min(1.0, std::max(0.0, alpha.real()));
  DistillParams params;
  params.phi = std::acos(a);
  params.gamma = (std::abs(beta) > 0.0) ? std::arg(beta) : 0.0;
  return params;
}

POVMConfig config_from_params(const DistillParams& params) {
  const double t = std::tan(params.phi);
  const double c = 1.0 / t;  // cot; +-inf at the interval ends is fine
  POVMConfig config;
  config.theta1 = re_arccos(t);
  config.theta2 = re_arccos(c);
  config.phase1 = 0.0;
  config.phase2 = -params.gamma;
  config.phase3 = -params.gamma;
  config.phase4 = 0.0;
  return config;
}

std::pair<QubitOperator, QubitOperator> kraus_operators(
    const POVMConfig& config) {
  const cplx e1 = std::exp(cplx(0.0, config.phase1));
  const cplx e2 = std::exp(cplx(0.0, config.phase2));
  const cplx e3 = std::exp(cplx(0.0, config.phase3));
  const cplx e4 = std::exp(cplx(0.0, config.phase4));
  QubitOperator m1 = QubitOperator::diagonal(std::cos(config.theta1) * e1,
                                             std::cos(config.theta2) * e2);
  QubitOperator m2 = QubitOperator::diagonal(std::sin(config.theta1) * e3,
                                             std::sin(config.theta2) * e4);
  return {m1, m2};
}

std::pair<DistillationOutcome, DistillationOutcome> distill_pair(
    const PureState& state, const DistillParams& params, int target) {
  if (state.n_qubits() != 2)
    throw std::invalid_argument("distill_pair: need a two-qubit state");
  if (std::abs(state.amplitude(1)) > 1e-9 || std::abs(state.amplitude(2)) > 1e-9)
    throw std::invalid_argument(
        "distill_pair: state not in Schmidt form alpha|00> + beta|11>");

  const auto [m1, m2] = kraus_operators(config_from_params(params));
  ApplyResult r1 = apply_single_qubit_op(state, m1, target);
  ApplyResult r2 = apply_single_qubit_op(state, m2, target);

  DistillationOutcome o1{Branch::p1, std::move(r1.state), r1.weight};
  DistillationOutcome o2{Branch::p2, std::move(r2.state), r2.weight};
  return {std::move(o1), std::move(o2)};
}

std::pair<DistillationOutcome, DistillationOutcome> distill_ghz(int n,
                                                                cplx alpha,
                                                                cplx beta) {
  if (n < 2) throw std::invalid_argument("distill_ghz: need n >= 2");
  const DistillParams params = params_from_state(alpha, beta);
  std::vector<cplx> amps(std::size_t{1} << n, cplx{0.0});
  amps.front() = alpha;
  amps.back() = beta;
  const PureState state(n, std::move(amps));

  const auto [m1, m2] = kraus_operators(config_from_params(params));
  ApplyResult r1 = apply_single_qubit_op(state, m1, 0);
  ApplyResult r2 = apply_single_qubit_op(state, m2, 0);
  DistillationOutcome o1{Branch::p1, std::move(r1.state), r1.weight};
  DistillationOutcome o2{Branch::p2, std::move(r2.state), r2.weight};
  return {std::move(o1), std::move(o2)};
}

MBQCResourceEstimate mbqc_resource_estimate(std::uint64_t n_logical,
                                            std::uint64_t depth_k,
                                            std::uint64_t lattice_l,
                                            double alpha, double prefactor) {
  if (n_logical < 1 || depth_k < 1 || lattice_l < 1)
    throw std::invalid_argument("mbqc_resource_estimate: counts must be >= 1");
  if (!(prefactor > 0.0))
    throw std::invalid_argument("mbqc_resource_estimate: prefactor must be > 0");
  if (!(alpha > 0.0) || alpha > 1.0 / std::sqrt(2.0) + 1e-12)
    throw std::invalid_argument(
        "mbqc_resource_estimate: alpha must lie in (0, 1/sqrt(2)]");

  const double cells = static_cast<double>(n_logical) *
                       static_cast<double>(depth_k) *
                       static_cast<double>(lattice_l) *
                       static_cast<double>(lattice_l) *
                       static_cast<double>(lattice_l);
  const double ghz = std::ceil(prefactor * cells);
  if (ghz > 9e18) throw std::overflow_error("mbqc_resource_estimate: overflow");

  MBQCResourceEstimate est;
  est.ghz_count = static_cast<std::uint64_t>(ghz);
  est.bell_count = est.ghz_count;
  const double pool =
      std::ceil(static_cast<double>(est.ghz_count + est.bell_count) /
                (alpha * alpha));
  if (pool > 9e18) throw std::overflow_error("mbqc_resource_estimate: overflow");
  est.ensemble_size = static_cast<std::uint64_t>(pool);
  est.alpha = alpha;
  return est;
}

}  // namespace entdist
