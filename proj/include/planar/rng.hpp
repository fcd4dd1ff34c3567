#pragma once

#include <array>
#include <cstdint>

namespace planar {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Chosen over
// the std engines because the acceptance harness and the learners need cheap
// splittable streams: every (seed, stream, position) triple maps to the same
// block on every platform, so trial t / invocation i can be replayed in
// isolation. The algorithm id "philox4x32-10" is recorded in run reports and
// dataset sidecars.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// One logical stream: key = user seed, counter = (position, stream id).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  // Child stream derived from this stream's id and a slot index. Children with
  // distinct slots are independent of each other and of the parent.
  RngStream split(std::uint64_t slot) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double uniform01();                  // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);  // unbiased integer in [0, n)
  bool bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t pos_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int have_ = 0;  // unconsumed u32 lanes remaining in block_
};

}  // namespace planar
