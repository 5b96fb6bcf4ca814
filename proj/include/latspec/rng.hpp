#pragma once

#include <array>
#include <cstdint>

namespace latspec {

// Counter-based Philox4x32-10 stream. Cheap to copy. split() derives an
// independent child stream from (stream, index), so generation stays
// bit-reproducible under any parallel work partition.
class PhiloxRng {
 public:
  PhiloxRng() = default;
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  PhiloxRng split(std::uint64_t index) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal (Box-Muller; second variate cached).
  double normal();

  // One keyed permutation block, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 2> key,
                                            std::array<std::uint32_t, 4> counter);

 private:
  void refill();

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t pos_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  unsigned buf_left_ = 0;
  double spare_normal_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace latspec
