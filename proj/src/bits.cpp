#include "jumplab/bits.hpp"

#include <bit>
#include <stdexcept>

namespace jumplab {

BitString::BitString(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("BitString: length must be >= 1");
  w_.assign(words_for(n), 0);
}

uint64_t BitString::tail_mask(int n) {
  int rem = n & 63;
  return rem == 0 ? ~uint64_t{0} : (uint64_t{1} << rem) - 1;
}

BitString BitString::ones(int n) {
  BitString x(n);
  for (auto& w : x.w_) w = ~uint64_t{0};
  x.w_.back() &= tail_mask(n);
  return x;
}

BitString BitString::parse(std::string_view text) {
  BitString x(static_cast<int>(text.size()));
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x.flip(static_cast<int>(i));
    } else if (text[i] != '0') {
      throw std::invalid_argument("BitString::parse: expected '0'/'1'");
    }
  }
  return x;
}

void BitString::set(int pos, bool value) {
  uint64_t bit = uint64_t{1} << (pos & 63);
  if (value)
    w_[pos >> 6] |= bit;
  else
    w_[pos >> 6] &= ~bit;
}

int BitString::weight() const {
  int w = 0;
  for (uint64_t word : w_) w += std::popcount(word);
  return w;
}

BitString BitString::complemented() const {
  BitString x = *this;
  for (auto& w : x.w_) w = ~w;
  x.w_.back() &= tail_mask(n_);
  return x;
}

std::string BitString::str() const {
  std::string s(static_cast<size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if (test(i)) s[static_cast<size_t>(i)] = '1';
  return s;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.n_ != n_) throw std::invalid_argument("BitString: length mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
  return *this;
}

int weight(const BitString& x) { return x.weight(); }

int distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance: length mismatch");
  auto xs = x.words(), ys = y.words();
  int d = 0;
  for (size_t i = 0; i < xs.size(); ++i) d += std::popcount(xs[i] ^ ys[i]);
  return d;
}

BitString xor_combine(const BitString& x, const BitString& y) { return x ^ y; }

namespace {
inline uint64_t splitmix_fmix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : state_(splitmix_fmix(seed + 0x9e3779b97f4a7c15ULL * stream_id)),
      seed_(seed),
      stream_(stream_id) {}

uint64_t RngStream::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return splitmix_fmix(state_);
}

uint64_t RngStream::below(uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased residue.
  uint64_t x = next();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto lo = static_cast<uint64_t>(m);
  if (lo < bound) {
    uint64_t t = -bound % bound;
    while (lo < t) {
      x = next();
      m = static_cast<__uint128_t>(x) * bound;
      lo = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

BitString random_bits(RngStream& rng, int n) {
  BitString x(n);
  auto ws = x.words();
  for (auto& w : ws) w = rng.next();
  ws.back() &= BitString::tail_mask(n);
  return x;
}

}  // namespace jumplab
