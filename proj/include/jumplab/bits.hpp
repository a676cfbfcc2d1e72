#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jumplab {

/// Fixed-length bit string over {0,1}^n, packed 64 bits per word.
/// Position p (0-based) lives in word p/64, bit p%64. Textual form puts
/// position 0 first, so parse("10") has bit 0 set and bit 1 clear.
class BitString {
 public:
  explicit BitString(int n);
  static BitString zeros(int n) { return BitString(n); }
  static BitString ones(int n);
  static BitString parse(std::string_view text);

  int size() const { return n_; }
  bool test(int pos) const { return (w_[pos >> 6] >> (pos & 63)) & 1u; }
  void set(int pos, bool value);
  void flip(int pos) { w_[pos >> 6] ^= uint64_t{1} << (pos & 63); }

  int weight() const;
  BitString complemented() const;
  std::string str() const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  bool operator==(const BitString& other) const = default;

  std::span<const uint64_t> words() const { return w_; }
  std::span<uint64_t> words() { return w_; }

  static int words_for(int n) { return (n + 63) / 64; }
  /// Mask selecting the valid bits of the last word.
  static uint64_t tail_mask(int n);

 private:
  int n_;
  std::vector<uint64_t> w_;
};

int weight(const BitString& x);
int distance(const BitString& x, const BitString& y);
BitString xor_combine(const BitString& x, const BitString& y);

/// Deterministic 64-bit generator (splitmix64). Streams are derived by
/// mixing seed and stream_id through the splitmix finalizer:
///   state0 = fmix64(seed + 0x9e3779b97f4a7c15 * stream_id)
/// Same (seed, stream_id) always reproduces the same sequence; distinct
/// stream_ids give streams safe to hand to independent runs.
class RngStream {
 public:
  explicit RngStream(uint64_t seed, uint64_t stream_id = 0);

  uint64_t next();
  /// Uniform integer in [0, bound), bound > 0. Unbiased (rejection).
  uint64_t below(uint64_t bound);
  /// Uniform double in [0, 1).
  double real01() { return (next() >> 11) * 0x1.0p-53; }
  bool coin() { return next() >> 63; }

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_; }

 private:
  uint64_t state_;
  uint64_t seed_;
  uint64_t stream_;
};

BitString random_bits(RngStream& rng, int n);

}  // namespace jumplab
