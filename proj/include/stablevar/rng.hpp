#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace stablevar {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
/// Maps a 128-bit counter and 64-bit key to 128 pseudo-random bits.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter encrypt(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Immutable token naming one reproducible random stream.
///
/// The seed is the cipher key; stream_index occupies the upper half of the
/// counter, so distinct indices address disjoint counter ranges and no
/// sequential skipping is ever needed.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  friend constexpr bool operator==(const RandomStream&, const RandomStream&) = default;
};

/// Deterministically derive a new seed from (seed, tag). Used to give
/// independent families of streams (e.g. "paths" vs "reference draws").
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  // splitmix64 finalizer over a mixed input
  std::uint64_t z = seed ^ (tag * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Local, mutable cursor over a RandomStream. Cheap to construct; each
/// thread builds its own from the shared immutable token.
/// Satisfies std::uniform_random_bit_generator.
class StreamEngine {
 public:
  using result_type = std::uint64_t;

  explicit constexpr StreamEngine(RandomStream stream) noexcept
      : key_{static_cast<std::uint32_t>(stream.seed),
             static_cast<std::uint32_t>(stream.seed >> 32)},
        index_(stream.stream_index) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    if (used_ == 4) refill();
    const std::uint64_t hi = buffer_[used_];
    const std::uint64_t lo = buffer_[used_ + 1];
    used_ += 2;
    return (hi << 32) | lo;
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform_open() noexcept {
    const std::uint64_t bits = (*this)() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential variate.
  double exponential() noexcept { return -std::log(uniform_open()); }

  /// Number of 128-bit blocks consumed so far.
  constexpr std::uint64_t blocks_consumed() const noexcept { return block_; }

 private:
  constexpr void refill() noexcept {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(index_),
                                  static_cast<std::uint32_t>(index_ >> 32)};
    buffer_ = Philox4x32::encrypt(ctr, key_);
    ++block_;
    used_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

}  // namespace stablevar
