#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace entdist {

using cplx = std::complex<double>;

// Tolerance for exact-tier identities (norms, Kraus completeness, ...).
inline constexpr double kExactTol = 1e-12;

/// Normalized pure state of n qubits (double precision, immutable).
///
/// Amplitude index encodes the computational basis label read as a binary
/// string with qubit 0 in the most significant position, so for n = 2 the
/// order is |00>, |01>, |10>, |11>.
class PureState {
 public:
  /// Normalizes the given amplitudes; the global phase is kept as given.
  /// Throws std::invalid_argument on a length mismatch or an all-zero vector.
  PureState(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::size_t index) const { return amps_[index]; }

 private:
  int n_;
  std::vector<cplx> amps_;
};

/// General single-qubit operator (2x2 complex matrix). No normalization is
/// required: Kraus operators are contractive, not unitary.
struct QubitOperator {
  cplx m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static QubitOperator identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static QubitOperator diagonal(cplx top, cplx bottom) {
    return {top, 0.0, 0.0, bottom};
  }
  /// M^dagger M, useful for POVM completeness checks.
  QubitOperator gram() const;
};

QubitOperator operator+(const QubitOperator& a, const QubitOperator& b);

PureState make_state(int n_qubits, std::vector<cplx> amplitudes);

/// Result of applying a (possibly non-unitary) single-qubit operator.
/// `weight` is <psi|M^dag M|psi>, the branch probability when M is a Kraus
/// operator. When the weight vanishes the post-operation state is absent.
struct ApplyResult {
  std::optional<PureState> state;
  double weight = 0.0;
};

ApplyResult apply_single_qubit_op(const PureState& state,
                                  const QubitOperator& op, int target);

/// Base-2 von Neumann entropy of the reduced state over `partition`
/// (a nonempty proper subset of qubit indices). Computed by an explicit
/// partial trace of the dense outer product; fine for desk-scale n.
double entropy_of_entanglement(const PureState& state,
                               const std::vector<int>& partition);

/// |<a|b>|^2. Symmetric and invariant under global phases.
double fidelity(const PureState& a, const PureState& b);

/// Binary entropy H(p) = -p log2 p - (1-p) log2(1-p), with H(0) = H(1) = 0.
double binary_entropy(double p);

}  // namespace entdist
