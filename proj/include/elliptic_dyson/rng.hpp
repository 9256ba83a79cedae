#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace edyson {

/// Philox4x32-10 counter-based generator.
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
  constexpr uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const uint64_t p0 = static_cast<uint64_t>(m0) * ctr[0];
    const uint64_t p1 = static_cast<uint64_t>(m1) * ctr[2];
    ctr = {static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<uint32_t>(p1),
           static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<uint32_t>(p0)};
    key[0] += w0;
    key[1] += w1;
  }
  return ctr;
}

inline std::array<uint32_t, 2> philox_key(uint64_t seed) {
  return {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
}

/// Uniform in the open interval (0, 1) from two 32-bit words.
inline double uniform_open(uint32_t hi, uint32_t lo) {
  const uint64_t bits = ((static_cast<uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Two standard normals from one Philox block (Box-Muller).
inline std::array<double, 2> normal_pair(const std::array<uint32_t, 4>& w) {
  const double u1 = uniform_open(w[0], w[1]);
  const double u2 = uniform_open(w[2], w[3]);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * 3.14159265358979323846 * u2;
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

/// Sequential stream over a fixed (seed, stream id) pair.
class CounterStream {
public:
  CounterStream(uint64_t seed, uint64_t stream, uint32_t tag = 0)
      : key_(philox_key(seed)), stream_(stream), tag_(tag) {}

  double uniform() {
    if (pos_ >= 4) refill();
    const double u = uniform_open(buf_[pos_], buf_[pos_ + 1]);
    pos_ += 2;
    return u;
  }
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    refill();
    pos_ = 4;
    const auto z = normal_pair(buf_);
    spare_ = z[1];
    has_spare_ = true;
    return z[0];
  }

private:
  void refill() {
    buf_ = philox4x32({static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32), tag_, block_++}, key_);
    pos_ = 0;
  }

  std::array<uint32_t, 2> key_;
  uint64_t stream_;
  uint32_t tag_;
  uint32_t block_ = 0;
  std::array<uint32_t, 4> buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace edyson
