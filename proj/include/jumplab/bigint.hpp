#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jumplab {

/// Unsigned arbitrary-precision integer, base 2^32 limbs, little-endian.
/// Covers the sizes this project needs (central binomials up to C(1000,500)
/// and rational reductions up to n = 128) without external dependencies.
class BigUint {
 public:
  BigUint() = default;
  BigUint(uint64_t v);  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return limbs_.empty(); }
  int bit_length() const;
  bool bit(int i) const;

  static int cmp(const BigUint& a, const BigUint& b);
  bool operator==(const BigUint& b) const { return cmp(*this, b) == 0; }
  bool operator<(const BigUint& b) const { return cmp(*this, b) < 0; }
  bool operator<=(const BigUint& b) const { return cmp(*this, b) <= 0; }
  bool operator>(const BigUint& b) const { return cmp(*this, b) > 0; }
  bool operator>=(const BigUint& b) const { return cmp(*this, b) >= 0; }

  BigUint& operator+=(const BigUint& b);
  BigUint& operator-=(const BigUint& b);  // requires *this >= b
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
  BigUint operator*(const BigUint& b) const;

  BigUint& mul_small(uint32_t m);
  /// In-place division by a small divisor; returns the remainder.
  uint32_t divmod_small(uint32_t d);

  /// Schoolbook (quotient, remainder); den must be nonzero.
  static std::pair<BigUint, BigUint> divmod(const BigUint& num, const BigUint& den);

  BigUint& operator<<=(int bits);
  BigUint& operator>>=(int bits);

  /// Nearest double (inf on overflow).
  double to_double() const;
  /// log2 of the value (uses the top 64 bits; relative error ~1e-16).
  double log2() const;
  std::string str() const;

  uint64_t low_u64() const;

 private:
  void trim();
  std::vector<uint32_t> limbs_;
};

BigUint gcd(BigUint a, BigUint b);

}  // namespace jumplab
