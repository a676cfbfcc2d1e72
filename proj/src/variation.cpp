#include "jumplab/variation.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace jumplab {
namespace {

thread_local std::vector<int> t_pool;
thread_local std::vector<uint64_t> t_buf;
thread_local std::vector<uint64_t> t_mask;

// Flip a uniform k-subset of pool[0..m) in buf (partial Fisher-Yates).
void flip_from_pool(RngStream& rng, uint64_t* buf, int m, int k) {
  auto& pool = t_pool;
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(m - i)));
    std::swap(pool[i], pool[j]);
    buf[pool[i] >> 6] ^= uint64_t{1} << (pool[i] & 63);
  }
}

void pool_all(int n) {
  t_pool.resize(static_cast<size_t>(n));
  std::iota(t_pool.begin(), t_pool.end(), 0);
}

// Collect positions selected by mask words into t_pool; returns count.
int pool_from_mask(const uint64_t* mask, int nwords) {
  t_pool.clear();
  for (int wi = 0; wi < nwords; ++wi) {
    uint64_t w = mask[wi];
    while (w) {
      int b = std::countr_zero(w);
      t_pool.push_back(wi * 64 + b);
      w &= w - 1;
    }
  }
  return static_cast<int>(t_pool.size());
}

void fill_uniform(RngStream& rng, uint64_t* buf, int n, int nwords) {
  for (int i = 0; i < nwords; ++i) buf[i] = rng.next();
  buf[nwords - 1] &= BitString::tail_mask(n);
}

int nwords_of(const QueryOracle& o) { return BitString::words_for(o.n()); }

void load(const QueryOracle& o, SearchPointHandle h, std::vector<uint64_t>& dst) {
  auto ws = detail::point_words(o, h);
  dst.assign(ws.begin(), ws.end());
}

}  // namespace

BitString op_flip_k(RngStream& rng, const BitString& x, int k) {
  if (k < 0 || k > x.size()) throw std::invalid_argument("op_flip_k: k out of range");
  BitString out = x;
  pool_all(x.size());
  flip_from_pool(rng, out.words().data(), x.size(), k);
  return out;
}

BitString op_flip_where_equal(RngStream& rng, const BitString& x, const BitString& y, int k) {
  if (x.size() != y.size()) throw std::invalid_argument("op_flip_where_equal: length mismatch");
  if (k < 0) throw std::invalid_argument("op_flip_where_equal: k < 0");
  BitString out = x;
  int nw = BitString::words_for(x.size());
  t_mask.resize(static_cast<size_t>(nw));
  for (int i = 0; i < nw; ++i) t_mask[i] = ~(x.words()[i] ^ y.words()[i]);
  t_mask[static_cast<size_t>(nw) - 1] &= BitString::tail_mask(x.size());
  int m = pool_from_mask(t_mask.data(), nw);
  flip_from_pool(rng, out.words().data(), m, std::min(k, m));
  return out;
}

BitString op_flip_where_different(RngStream& rng, const BitString& x, const BitString& y, int k) {
  if (x.size() != y.size()) throw std::invalid_argument("op_flip_where_different: length mismatch");
  if (k < 0) throw std::invalid_argument("op_flip_where_different: k < 0");
  int nw = BitString::words_for(x.size());
  t_mask.resize(static_cast<size_t>(nw));
  for (int i = 0; i < nw; ++i) t_mask[i] = x.words()[i] ^ y.words()[i];
  int m = pool_from_mask(t_mask.data(), nw);
  if (m < k) return random_bits(rng, x.size());
  BitString out = x;
  flip_from_pool(rng, out.words().data(), m, k);
  return out;
}

BitString op_select_bit(const BitString& x, const BitString& y, const BitString& z) {
  if (x.size() != y.size() || x.size() != z.size())
    throw std::invalid_argument("op_select_bit: length mismatch");
  BitString out = x;
  auto ow = out.words();
  for (size_t i = 0; i < ow.size(); ++i) ow[i] ^= y.words()[i] ^ z.words()[i];
  return out;
}

BitString op_copy_where_differs(const BitString& x, const BitString& y, const BitString& z) {
  if (x.size() != y.size() || x.size() != z.size())
    throw std::invalid_argument("op_copy_where_differs: length mismatch");
  BitString out = x;
  auto ow = out.words();
  for (size_t i = 0; i < ow.size(); ++i) {
    uint64_t take_y = y.words()[i] ^ z.words()[i];
    ow[i] ^= (x.words()[i] ^ y.words()[i]) & take_y;
  }
  return out;
}

BitString op_complement(const BitString& x) { return x.complemented(); }

BitString op_mix(RngStream& rng, const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("op_mix: length mismatch");
  int diff[3];
  int nd = 0;
  for (size_t wi = 0; wi < x.words().size() && nd <= 2; ++wi) {
    uint64_t w = x.words()[wi] ^ y.words()[wi];
    while (w) {
      if (nd > 2) break;
      int b = std::countr_zero(w);
      if (nd < 3) diff[nd] = static_cast<int>(wi) * 64 + b;
      ++nd;
      w &= w - 1;
    }
  }
  if (nd != 2) return random_bits(rng, x.size());
  BitString out = x;
  out.flip(rng.coin() ? diff[0] : diff[1]);
  return out;
}

BitString op_uniform(RngStream& rng, int n) { return random_bits(rng, n); }

// ---- oracle samplers ----

Sample sample_uniform(QueryOracle& o, RngStream& rng) {
  int nw = nwords_of(o);
  t_buf.resize(static_cast<size_t>(nw));
  fill_uniform(rng, t_buf.data(), o.n(), nw);
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_flip_k(QueryOracle& o, RngStream& rng, SearchPointHandle x, int k) {
  if (k < 0 || k > o.n()) throw std::invalid_argument("sample_flip_k: k out of range");
  load(o, x, t_buf);
  pool_all(o.n());
  flip_from_pool(rng, t_buf.data(), o.n(), k);
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_flip_where_equal(QueryOracle& o, RngStream& rng, SearchPointHandle x,
                               SearchPointHandle y, int k) {
  int nw = nwords_of(o);
  load(o, x, t_buf);
  auto yw = detail::point_words(o, y);
  t_mask.resize(static_cast<size_t>(nw));
  for (int i = 0; i < nw; ++i) t_mask[i] = ~(t_buf[i] ^ yw[i]);
  t_mask[static_cast<size_t>(nw) - 1] &= BitString::tail_mask(o.n());
  int m = pool_from_mask(t_mask.data(), nw);
  flip_from_pool(rng, t_buf.data(), m, std::min(k, m));
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_flip_where_different(QueryOracle& o, RngStream& rng, SearchPointHandle x,
                                   SearchPointHandle y, int k) {
  int nw = nwords_of(o);
  load(o, x, t_buf);
  auto yw = detail::point_words(o, y);
  t_mask.resize(static_cast<size_t>(nw));
  for (int i = 0; i < nw; ++i) t_mask[i] = t_buf[i] ^ yw[i];
  int m = pool_from_mask(t_mask.data(), nw);
  if (m < k)
    fill_uniform(rng, t_buf.data(), o.n(), nw);
  else
    flip_from_pool(rng, t_buf.data(), m, k);
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_select_bit(QueryOracle& o, SearchPointHandle x, SearchPointHandle y,
                         SearchPointHandle z) {
  int nw = nwords_of(o);
  load(o, x, t_buf);
  auto yw = detail::point_words(o, y);
  auto zw = detail::point_words(o, z);
  for (int i = 0; i < nw; ++i) t_buf[i] ^= yw[i] ^ zw[i];
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_copy_where_differs(QueryOracle& o, SearchPointHandle x, SearchPointHandle y,
                                 SearchPointHandle z) {
  int nw = nwords_of(o);
  load(o, x, t_buf);
  auto yw = detail::point_words(o, y);
  auto zw = detail::point_words(o, z);
  for (int i = 0; i < nw; ++i) t_buf[i] ^= (t_buf[i] ^ yw[i]) & (yw[i] ^ zw[i]);
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_complement(QueryOracle& o, SearchPointHandle x) {
  int nw = nwords_of(o);
  load(o, x, t_buf);
  for (auto& w : t_buf) w = ~w;
  t_buf[static_cast<size_t>(nw) - 1] &= BitString::tail_mask(o.n());
  return detail::submit_raw(o, t_buf.data());
}

Sample sample_mix(QueryOracle& o, RngStream& rng, SearchPointHandle x, SearchPointHandle y) {
  int nw = nwords_of(o);
  load(o, x, t_buf);
  auto yw = detail::point_words(o, y);
  int diff[3];
  int nd = 0;
  for (int wi = 0; wi < nw && nd <= 2; ++wi) {
    uint64_t w = t_buf[static_cast<size_t>(wi)] ^ yw[wi];
    while (w) {
      if (nd > 2) break;
      int b = std::countr_zero(w);
      if (nd < 3) diff[nd] = wi * 64 + b;
      ++nd;
      w &= w - 1;
    }
  }
  if (nd != 2) {
    fill_uniform(rng, t_buf.data(), o.n(), nw);
  } else {
    int p = rng.coin() ? diff[0] : diff[1];
    t_buf[p >> 6] ^= uint64_t{1} << (p & 63);
  }
  return detail::submit_raw(o, t_buf.data());
}

}  // namespace jumplab
