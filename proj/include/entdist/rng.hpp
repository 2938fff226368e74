#pragma once

#include <array>
#include <cstdint>

namespace entdist {

/// Identifier recorded in run metadata so outputs can be reproduced.
inline constexpr const char* kRngId = "philox4x32-10/v1";

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
/// Stateless: every 128-bit counter maps to four 32-bit words under a 64-bit
/// key, so draws are addressable by position and independent of evaluation
/// order. Streams are laid out as
///   counter = (seq, index_lo, index_hi, stream)
/// where `index` addresses a logical draw (e.g. a sample), `stream` separates
/// purposes (sampling / calibration / coin flips), and `seq` counts sub-draws
/// such as rejection retries.
class Philox {
 public:
  explicit Philox(std::uint64_t seed) : key_lo_(static_cast<std::uint32_t>(seed)),
                                        key_hi_(static_cast<std::uint32_t>(seed >> 32)) {}

  std::array<std::uint32_t, 4> block(std::uint32_t c0, std::uint32_t c1,
                                     std::uint32_t c2, std::uint32_t c3) const;

  /// Two doubles in (0, 1] from one block.
  std::array<double, 2> uniform_pair(std::uint32_t seq, std::uint64_t index,
                                     std::uint32_t stream) const;

  /// Standard normal via Box-Muller on one block (cosine branch).
  double gaussian(std::uint32_t seq, std::uint64_t index,
                  std::uint32_t stream) const;

  /// Normal(mean, sigma) truncated to [0, 1] by rejection; deterministic in
  /// (seed, index, stream).
  double truncated_gaussian01(double mean, double sigma, std::uint64_t index,
                              std::uint32_t stream) const;

  /// True with probability p.
  bool bernoulli(double p, std::uint64_t index, std::uint32_t stream) const;

 private:
  std::uint32_t key_lo_, key_hi_;
};

/// Stream tags; kept stable because they are part of the reproducibility
/// contract.
enum RngStream : std::uint32_t {
  kStreamSampling = 0x0001'0000u,    // + row index for sweep rows
  kStreamCalibration = 0x0002'0000u,
  kStreamCoinFlip = 0x0003'0000u,
  kStreamPovmProps = 0x0004'0000u,   // test-side property sampling
};

}  // namespace entdist
