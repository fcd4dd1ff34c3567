#include "planar/rng.hpp"

namespace planar {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
  std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
  std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    round_once(c, k);
  }
  return c;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id) {}

RngStream RngStream::split(std::uint64_t slot) const {
  return RngStream(seed_, splitmix64(stream_ + 0x9E3779B97F4A7C15ull * (slot + 1)));
}

void RngStream::refill() {
  std::array<std::uint32_t, 4> ctr = {
      std::uint32_t(pos_), std::uint32_t(pos_ >> 32),
      std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
  std::array<std::uint32_t, 2> key = {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)};
  block_ = philox4x32(ctr, key);
  ++pos_;
  have_ = 4;
}

std::uint32_t RngStream::next_u32() {
  if (have_ == 0) refill();
  return block_[4 - have_--];
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double RngStream::uniform01() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t v = next_u64();
    if (v >= threshold) return v % n;
  }
}

bool RngStream::bernoulli(double p) {
  return uniform01() < p;
}

}  // namespace planar
