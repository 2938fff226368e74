#include "entdist/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entdist {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;
constexpr std::uint32_t kBump1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_unit_open(std::uint32_t w0, std::uint32_t w1) {
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(w1) << 32) | static_cast<std::uint64_t>(w0);
  // 53 significant bits mapped to (0, 1]; never returns 0, so logs are safe.
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> Philox::block(std::uint32_t c0, std::uint32_t c1,
                                           std::uint32_t c2,
                                           std::uint32_t c3) const {
  std::uint32_t k0 = key_lo_, k1 = key_hi_;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c0, hi0, lo0);
    mulhilo(kMul1, c2, hi1, lo1);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kBump0;
    k1 += kBump1;
  }
  return {c0, c1, c2, c3};
}

std::array<double, 2> Philox::uniform_pair(std::uint32_t seq,
                                           std::uint64_t index,
                                           std::uint32_t stream) const {
  const auto w = block(seq, static_cast<std::uint32_t>(index),
                       static_cast<std::uint32_t>(index >> 32), stream);
  return {to_unit_open(w[0], w[1]), to_unit_open(w[2], w[3])};
}

double Philox::gaussian(std::uint32_t seq, std::uint64_t index,
                        std::uint32_t stream) const {
  const auto u = uniform_pair(seq, index, stream);
  return std::sqrt(-2.0 * std::log(u[0])) *
         std::cos(2.0 * std::numbers::pi * u[1]);
}

double Philox::truncated_gaussian01(double mean, double sigma,
                                    std::uint64_t index,
                                    std::uint32_t stream) const {
  if (sigma == 0.0) return mean;
  for (std::uint32_t attempt = 0; attempt < 10000; ++attempt) {
    const double x = mean + sigma * gaussian(attempt, index, stream);
    if (x >= 0.0 && x <= 1.0) return x;
  }
  throw std::runtime_error("truncated_gaussian01: rejection failed to land");
}

bool Philox::bernoulli(double p, std::uint64_t index,
                       std::uint32_t stream) const {
  return uniform_pair(0, index, stream)[0] <= p;
}

}  // namespace entdist
