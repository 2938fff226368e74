#include "entdist/qubit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace entdist {

namespace {

double norm_squared(const std::vector<cplx>& amps) {
  double s = 0.0;
  for (const cplx& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

PureState::PureState(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_ < 1) throw std::invalid_argument("PureState: need at least 1 qubit");
  if (n_ > 24) throw std::invalid_argument("PureState: qubit count too large");
  if (amps_.size() != (std::size_t{1} << n_))
    throw std::invalid_argument("PureState: amplitude count must be 2^n");
  const double s = norm_squared(amps_);
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("PureState: zero or non-finite amplitudes");
  const double inv = 1.0 / std::sqrt(s);
  for (cplx& a : amps_) a *= inv;
}

QubitOperator QubitOperator::gram() const {
  const cplx c00 = std::conj(m00), c01 = std::conj(m01);
  const cplx c10 = std::conj(m10), c11 = std::conj(m11);
  return {c00 * m00 + c10 * m10, c00 * m01 + c10 * m11,
          c01 * m00 + c11 * m10, c01 * m01 + c11 * m11};
}

QubitOperator operator+(const QubitOperator& a, const QubitOperator& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

PureState make_state(int n_qubits, std::vector<cplx> amplitudes) {
  return PureState(n_qubits, std::move(amplitudes));
}

ApplyResult apply_single_qubit_op(const PureState& state,
                                  const QubitOperator& op, int target) {
  const int n = state.n_qubits();
  if (target < 0 || target >= n)
    throw std::out_of_range("apply_single_qubit_op: target out of range");

  const std::size_t dim = state.dim();
  // Bit of `target` inside the amplitude index (qubit 0 is the MSB).
  const std::size_t bit = std::size_t{1} << (n - 1 - target);
  const std::vector<cplx>& in = state.amplitudes();
  std::vector<cplx> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const cplx a0 = in[i];
    const cplx a1 = in[i | bit];
    out[i] = op.m00 * a0 + op.m01 * a1;
    out[i | bit] = op.m10 * a0 + op.m11 * a1;
  }

  const double weight = norm_squared(out);
  ApplyResult result;
  result.weight = weight;
  if (weight > 1e-24) result.state.emplace(n, std::move(out));
  return result;
}

double entropy_of_entanglement(const PureState& state,
                               const std::vector<int>& partition) {
  const int n = state.n_qubits();
  if (partition.empty() || partition.size() >= static_cast<std::size_t>(n))
    throw std::invalid_argument("entropy: partition must be a proper subset");
  std::vector<bool> in_part(n, false);
  for (int q : partition) {
    if (q < 0 || q >= n) throw std::invalid_argument("entropy: bad qubit index");
    if (in_part[q]) throw std::invalid_argument("entropy: repeated qubit index");
    in_part[q] = true;
  }

  const int na = static_cast<int>(partition.size());
  const int nb = n - na;
  const std::size_t da = std::size_t{1} << na;
  const std::size_t db = std::size_t{1} << nb;

  // Masks of the full index for the partition and its complement, ordered so
  // sub-index bits keep their relative qubit order.
  std::vector<std::size_t> a_bits, b_bits;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    (in_part[q] ? a_bits : b_bits).push_back(bit);
  }
  auto full_index = [&](std::size_t a, std::size_t b) {
    std::size_t idx = 0;
    for (int i = 0; i < na; ++i)
      if (a & (std::size_t{1} << (na - 1 - i))) idx |= a_bits[i];
    for (int i = 0; i < nb; ++i)
      if (b & (std::size_t{1} << (nb - 1 - i))) idx |= b_bits[i];
    return idx;
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
  const std::vector<cplx>& amps = state.amplitudes();
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap) {
      cplx acc = 0.0;
      for (std::size_t b = 0; b < db; ++b)
        acc += amps[full_index(a, b)] * std::conj(amps[full_index(ap, b)]);
      rho(a, ap) = acc;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 1e-15) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    overlap += std::conj(a.amplitude(i)) * b.amplitude(i);
  return std::norm(overlap);
}

double binary_entropy(double p) {
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace entdist
