#pragma once

#include <vector>

#include "jumplab/bigint.hpp"
#include "jumplab/bits.hpp"

namespace jumplab {

/// Exact probability as a reduced fraction of big integers.
struct ExactProb {
  BigUint num;
  BigUint den{1};

  static ExactProb ratio(BigUint n, BigUint d);
  ExactProb sub(const ExactProb& other) const;  // requires *this >= other
  ExactProb add(const ExactProb& other) const;
  static int cmp(const ExactProb& a, const ExactProb& b);
  bool operator==(const ExactProb& other) const { return num == other.num && den == other.den; }
  double value() const;
};

/// Exact C(n, k).
BigUint binom_exact(int n, int k);
/// log of C(n, k) via lgamma, for cross-checks and large n.
double binom_log(int n, int k);

/// Probability that flipping exactly n/2 bits of a string at symmetric
/// distance a (a even, n even) yields weight exactly n/2:
///   p_a = C(n-a, (n-a)/2) * C(a, a/2) / C(n, n/2).
ExactProb p_flip_even(int n, int a);
/// Odd-a analogue with n/2 - 1 flips:
///   p_a = C(n-a, (n-a-1)/2) * C(a, (a-1)/2) / C(n, n/2-1).
ExactProb p_flip_odd(int n, int a);
/// Closed form for p_{a-2} - p_a (parity dispatched); must equal the direct
/// subtraction of the p_flip values.
ExactProb p_diff(int n, int a);
/// log-space value of p_flip_even/odd for large-n cross checks.
double p_flip_log(int n, int a);

/// ceil(K * a^{5/2} * n^2 / (n-2a)^{3/2}); requires n - 2a > 0. a = 0 gives 0.
long sample_size_na(int n, int a, double K);

/// Check 4^m / sqrt(2 pi m) <= C(2m, m) <= 4^m / sqrt(pi m).
bool robbins_check(int m);

/// Additive Chernoff tail bound 2 exp(-d^2 / (2m)) for a sum of m +-1
/// variables with the negative-correlation property.
double chernoff_tail(double d, long m);

/// Exact hypergeometric draw: marked items among `draws` taken without
/// replacement from N items of which K are marked. Inverse transform on
/// exact masses; intended for N <= 10^4.
int hypergeom_sample(RngStream& rng, int N, int K, int draws);

/// Precomputed inverse-transform table for repeated draws with fixed
/// parameters.
class HypergeomTable {
 public:
  HypergeomTable() = default;
  HypergeomTable(int N, int K, int draws);
  int sample(RngStream& rng) const;
  double pmf(int k) const;
  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(cdf_.size()) - 1; }

 private:
  int k_min_ = 0;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

/// Offspring weight of flip_k applied to a weight-w parent: w + flips - 2z
/// with z hypergeometric. Distribution identical to the bit-level operator.
int weight_only_step(RngStream& rng, int n, int w, int flips);

/// Regularized upper incomplete gamma Q(s, x).
double gamma_q(double s, double x);
/// Survival function of the chi-square distribution with df degrees of freedom.
double chi2_survival(double stat, int df);

}  // namespace jumplab
