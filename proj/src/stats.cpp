#include "jumplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumplab {

ExactProb ExactProb::ratio(BigUint n, BigUint d) {
  if (d.is_zero()) throw std::domain_error("ExactProb: zero denominator");
  if (n > d) throw std::domain_error("ExactProb: value above 1");
  if (n.is_zero()) return {BigUint{0}, BigUint{1}};
  BigUint g = gcd(n, d);
  return {BigUint::divmod(n, g).first, BigUint::divmod(d, g).first};
}

ExactProb ExactProb::sub(const ExactProb& other) const {
  BigUint lhs = num * other.den;
  BigUint rhs = other.num * den;
  if (lhs < rhs) throw std::underflow_error("ExactProb: negative difference");
  return ratio(lhs - rhs, den * other.den);
}

ExactProb ExactProb::add(const ExactProb& other) const {
  return ratio(num * other.den + other.num * den, den * other.den);
}

int ExactProb::cmp(const ExactProb& a, const ExactProb& b) {
  return BigUint::cmp(a.num * b.den, b.num * a.den);
}

double ExactProb::value() const {
  if (num.is_zero()) return 0.0;
  return std::exp2(num.log2() - den.log2());
}

BigUint binom_exact(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binom_exact: k out of range");
  k = std::min(k, n - k);
  BigUint c{1};
  for (int i = 1; i <= k; ++i) {
    c.mul_small(static_cast<uint32_t>(n - k + i));
    c.divmod_small(static_cast<uint32_t>(i));  // always exact
  }
  return c;
}

double binom_log(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binom_log: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

ExactProb p_flip_even(int n, int a) {
  if (n % 2 != 0 || a % 2 != 0 || a < 0 || a > n)
    throw std::invalid_argument("p_flip_even: need n even, a even, 0 <= a <= n");
  return ExactProb::ratio(binom_exact(n - a, (n - a) / 2) * binom_exact(a, a / 2),
                          binom_exact(n, n / 2));
}

ExactProb p_flip_odd(int n, int a) {
  if (n % 2 != 0 || a % 2 == 0 || a < 1 || a > n)
    throw std::invalid_argument("p_flip_odd: need n even, a odd, 1 <= a <= n");
  return ExactProb::ratio(binom_exact(n - a, (n - a - 1) / 2) * binom_exact(a, (a - 1) / 2),
                          binom_exact(n, n / 2 - 1));
}

ExactProb p_diff(int n, int a) {
  // p_a is symmetric around n/2; the difference is a probability only on the
  // a_sym side a <= n/2.
  if (2 * a > n) throw std::invalid_argument("p_diff: need a <= n/2");
  if (a % 2 == 0) {
    if (a < 2) throw std::invalid_argument("p_diff: even a must be >= 2");
    // (1/4) * C(n-a+2,(n-a+2)/2) C(a,a/2) / C(n,n/2) * (n-2a+2)/((n-a+1)(a-1))
    BigUint num = binom_exact(n - a + 2, (n - a + 2) / 2) * binom_exact(a, a / 2);
    num.mul_small(static_cast<uint32_t>(n - 2 * a + 2));
    BigUint den = binom_exact(n, n / 2);
    den.mul_small(4);
    den.mul_small(static_cast<uint32_t>(n - a + 1));
    den.mul_small(static_cast<uint32_t>(a - 1));
    return ExactProb::ratio(num, den);
  }
  if (a < 3) throw std::invalid_argument("p_diff: odd a must be >= 3");
  // (1/4) * C(n-a+2,(n-a+1)/2) C(a,(a-1)/2) / C(n,n/2-1) * (n-2a+2)/(a(n-a+2))
  BigUint num = binom_exact(n - a + 2, (n - a + 1) / 2) * binom_exact(a, (a - 1) / 2);
  num.mul_small(static_cast<uint32_t>(n - 2 * a + 2));
  BigUint den = binom_exact(n, n / 2 - 1);
  den.mul_small(4);
  den.mul_small(static_cast<uint32_t>(a));
  den.mul_small(static_cast<uint32_t>(n - a + 2));
  return ExactProb::ratio(num, den);
}

double p_flip_log(int n, int a) {
  if (a % 2 == 0)
    return binom_log(n - a, (n - a) / 2) + binom_log(a, a / 2) - binom_log(n, n / 2);
  return binom_log(n - a, (n - a - 1) / 2) + binom_log(a, (a - 1) / 2) - binom_log(n, n / 2 - 1);
}

long sample_size_na(int n, int a, double K) {
  if (a == 0) return 0;
  if (a < 0 || n - 2 * a <= 0) throw std::invalid_argument("sample_size_na: need 0 <= a < n/2");
  long double v = K * std::pow(static_cast<long double>(a), 2.5L) *
                  static_cast<long double>(n) * n /
                  std::pow(static_cast<long double>(n - 2 * a), 1.5L);
  return static_cast<long>(std::ceil(v));
}

bool robbins_check(int m) {
  if (m < 1) throw std::invalid_argument("robbins_check: m >= 1");
  double log_c = binom_exact(2 * m, m).log2() * std::log(2.0);
  double log4m = m * std::log(4.0);
  double lower = log4m - 0.5 * std::log(2.0 * M_PI * m);
  double upper = log4m - 0.5 * std::log(M_PI * m);
  return lower <= log_c && log_c <= upper;
}

double chernoff_tail(double d, long m) {
  if (d < 0 || m < 1) throw std::invalid_argument("chernoff_tail: need d >= 0, m >= 1");
  return 2.0 * std::exp(-d * d / (2.0 * static_cast<double>(m)));
}

HypergeomTable::HypergeomTable(int N, int K, int draws) {
  if (K < 0 || K > N || draws < 0 || draws > N)
    throw std::invalid_argument("hypergeometric: parameters out of range");
  k_min_ = std::max(0, draws - (N - K));
  int k_max = std::min(K, draws);
  int span = k_max - k_min_ + 1;
  pmf_.assign(static_cast<size_t>(span), 0.0);

  // Unnormalized masses by the ratio recurrence, anchored at the mode.
  int mode = static_cast<int>((static_cast<long long>(draws) + 1) * (K + 1) / (N + 2));
  mode = std::clamp(mode, k_min_, k_max);
  pmf_[static_cast<size_t>(mode - k_min_)] = 1.0;
  for (int k = mode; k > k_min_; --k) {
    // m(k-1) = m(k) * k (N-K-draws+k) / ((K-k+1)(draws-k+1))
    double r = static_cast<double>(k) * (N - K - draws + k) /
               (static_cast<double>(K - k + 1) * (draws - k + 1));
    pmf_[static_cast<size_t>(k - 1 - k_min_)] = pmf_[static_cast<size_t>(k - k_min_)] * r;
  }
  for (int k = mode; k < k_max; ++k) {
    // m(k+1) = m(k) * (K-k)(draws-k) / ((k+1)(N-K-draws+k+1))
    double r = static_cast<double>(K - k) * (draws - k) /
               (static_cast<double>(k + 1) * (N - K - draws + k + 1));
    pmf_[static_cast<size_t>(k + 1 - k_min_)] = pmf_[static_cast<size_t>(k - k_min_)] * r;
  }
  double total = 0;
  for (double m : pmf_) total += m;
  cdf_.resize(pmf_.size());
  double acc = 0;
  for (size_t i = 0; i < pmf_.size(); ++i) {
    pmf_[i] /= total;
    acc += pmf_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

int HypergeomTable::sample(RngStream& rng) const {
  double u = rng.real01();
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return k_min_ + static_cast<int>(it - cdf_.begin());
}

double HypergeomTable::pmf(int k) const {
  if (k < k_min_ || k > k_max()) return 0.0;
  return pmf_[static_cast<size_t>(k - k_min_)];
}

int hypergeom_sample(RngStream& rng, int N, int K, int draws) {
  if (draws == 0) return 0;
  if (draws == N) return K;
  return HypergeomTable(N, K, draws).sample(rng);
}

int weight_only_step(RngStream& rng, int n, int w, int flips) {
  if (w < 0 || w > n || flips < 0 || flips > n)
    throw std::invalid_argument("weight_only_step: out of range");
  int z = hypergeom_sample(rng, n, w, flips);
  return w + flips - 2 * z;
}

namespace {

// Regularized lower incomplete gamma by series (x < s + 1).
double gamma_p_series(double s, double x) {
  double sum = 1.0 / s, term = sum;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (s + k);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized upper incomplete gamma by continued fraction (x >= s + 1).
double gamma_q_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 1000; ++i) {
    double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double gamma_q(double s, double x) {
  if (x < 0 || s <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
  return gamma_q_cf(s, x);
}

double chi2_survival(double stat, int df) {
  if (df < 1) throw std::invalid_argument("chi2_survival: df >= 1");
  if (stat <= 0) return 1.0;
  return gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace jumplab
