#include "jumplab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace jumplab {

BigUint::BigUint(uint64_t v) {
  if (v) limbs_.push_back(static_cast<uint32_t>(v));
  if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

int BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  return static_cast<int>(limbs_.size()) * 32 - std::countl_zero(limbs_.back());
}

bool BigUint::bit(int i) const {
  size_t limb = static_cast<size_t>(i) / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

int BigUint::cmp(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUint& BigUint::operator+=(const BigUint& b) {
  limbs_.resize(std::max(limbs_.size(), b.limbs_.size()), 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t sum = carry + limbs_[i] + (i < b.limbs_.size() ? b.limbs_[i] : 0);
    limbs_[i] = static_cast<uint32_t>(sum);
    carry = sum >> 32;
  }
  if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& b) {
  if (*this < b) throw std::underflow_error("BigUint: negative result");
  int64_t borrow = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    int64_t diff = static_cast<int64_t>(limbs_[i]) - borrow -
                   (i < b.limbs_.size() ? static_cast<int64_t>(b.limbs_[i]) : 0);
    borrow = diff < 0;
    limbs_[i] = static_cast<uint32_t>(diff + (borrow << 32));
  }
  trim();
  return *this;
}

BigUint BigUint::operator*(const BigUint& b) const {
  BigUint out;
  if (is_zero() || b.is_zero()) return out;
  out.limbs_.assign(limbs_.size() + b.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.limbs_.size(); ++j) {
      uint64_t cur = out.limbs_[i + j] + carry +
                     static_cast<uint64_t>(limbs_[i]) * b.limbs_[j];
      out.limbs_[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    out.limbs_[i + b.limbs_.size()] += static_cast<uint32_t>(carry);
  }
  out.trim();
  return out;
}

BigUint& BigUint::mul_small(uint32_t m) {
  uint64_t carry = 0;
  for (auto& limb : limbs_) {
    uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
    limb = static_cast<uint32_t>(cur);
    carry = cur >> 32;
  }
  if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  trim();
  return *this;
}

uint32_t BigUint::divmod_small(uint32_t d) {
  if (d == 0) throw std::domain_error("BigUint: division by zero");
  uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<uint32_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<uint32_t>(rem);
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& num, const BigUint& den) {
  if (den.is_zero()) throw std::domain_error("BigUint: division by zero");
  if (num < den) return {BigUint{}, num};
  int shift = num.bit_length() - den.bit_length();
  BigUint rem = num;
  BigUint d = den;
  d <<= shift;
  BigUint q;
  q.limbs_.assign(static_cast<size_t>(shift) / 32 + 1, 0);
  for (int s = shift; s >= 0; --s) {
    if (cmp(rem, d) >= 0) {
      rem -= d;
      q.limbs_[static_cast<size_t>(s) / 32] |= uint32_t{1} << (s % 32);
    }
    d >>= 1;
  }
  q.trim();
  return {q, rem};
}

BigUint& BigUint::operator<<=(int bits) {
  if (is_zero() || bits == 0) return *this;
  int limb_shift = bits / 32, bit_shift = bits % 32;
  size_t old = limbs_.size();
  limbs_.resize(old + static_cast<size_t>(limb_shift) + 1, 0);
  for (size_t i = old; i-- > 0;) {
    uint64_t v = static_cast<uint64_t>(limbs_[i]) << bit_shift;
    limbs_[i + static_cast<size_t>(limb_shift) + 1] |= static_cast<uint32_t>(v >> 32);
    limbs_[i + static_cast<size_t>(limb_shift)] = static_cast<uint32_t>(v);
  }
  for (int i = 0; i < limb_shift; ++i) limbs_[static_cast<size_t>(i)] = 0;
  trim();
  return *this;
}

BigUint& BigUint::operator>>=(int bits) {
  if (is_zero() || bits == 0) return *this;
  int limb_shift = bits / 32, bit_shift = bits % 32;
  if (static_cast<size_t>(limb_shift) >= limbs_.size()) {
    limbs_.clear();
    return *this;
  }
  for (size_t i = 0; i + static_cast<size_t>(limb_shift) < limbs_.size(); ++i) {
    uint64_t hi = (i + static_cast<size_t>(limb_shift) + 1 < limbs_.size())
                      ? limbs_[i + static_cast<size_t>(limb_shift) + 1]
                      : 0;
    uint64_t v = (hi << 32) | limbs_[i + static_cast<size_t>(limb_shift)];
    limbs_[i] = static_cast<uint32_t>(v >> bit_shift);
  }
  limbs_.resize(limbs_.size() - static_cast<size_t>(limb_shift));
  trim();
  return *this;
}

double BigUint::to_double() const {
  double out = 0;
  for (size_t i = limbs_.size(); i-- > 0;) out = out * 4294967296.0 + limbs_[i];
  return out;
}

double BigUint::log2() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  int bl = bit_length();
  // top (up to) 64 bits as an integer m, so value = m * 2^(bl - width)
  int width = std::min(bl, 64);
  BigUint top = *this;
  top >>= bl - width;
  return std::log2(static_cast<double>(top.low_u64())) + (bl - width);
}

uint64_t BigUint::low_u64() const {
  uint64_t v = limbs_.empty() ? 0 : limbs_[0];
  if (limbs_.size() > 1) v |= static_cast<uint64_t>(limbs_[1]) << 32;
  return v;
}

std::string BigUint::str() const {
  if (is_zero()) return "0";
  BigUint tmp = *this;
  std::string out;
  while (!tmp.is_zero()) {
    uint32_t chunk = tmp.divmod_small(1000000000u);
    std::string part = std::to_string(chunk);
    if (!tmp.is_zero()) part.insert(0, 9 - part.size(), '0');
    out.insert(0, part);
  }
  return out;
}

BigUint gcd(BigUint a, BigUint b) {
  while (!b.is_zero()) {
    auto [q, r] = BigUint::divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace jumplab
