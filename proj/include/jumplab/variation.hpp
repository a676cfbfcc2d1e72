#pragma once

#include "jumplab/bits.hpp"
#include "jumplab/objective.hpp"

namespace jumplab {

// Pure offspring distributions on bit strings. These carry the operator
// semantics; the sample_* wrappers below apply them to stored points and
// submit the offspring to the oracle (one sample = one query).

/// Uniform over the C(n,k) strings at Hamming distance exactly k from x.
BitString op_flip_k(RngStream& rng, const BitString& x, int k);
/// Flip a uniform k-subset of the positions where x and y agree; if fewer
/// than k agree, flip all agreeing positions.
BitString op_flip_where_equal(RngStream& rng, const BitString& x, const BitString& y, int k);
/// Flip a uniform k-subset of the positions where x and y disagree; if fewer
/// than k disagree, return a uniform random string.
BitString op_flip_where_different(RngStream& rng, const BitString& x, const BitString& y, int k);
/// x with bits flipped wherever y and z differ (deterministic).
BitString op_select_bit(const BitString& x, const BitString& y, const BitString& z);
/// Copy of x taking y's bit wherever y and z differ (deterministic).
BitString op_copy_where_differs(const BitString& x, const BitString& y, const BitString& z);
/// All bits flipped (deterministic).
BitString op_complement(const BitString& x);
/// If x and y disagree in exactly two positions, inherit one of the two from
/// each parent (both outcomes equally likely); otherwise a uniform string.
BitString op_mix(RngStream& rng, const BitString& x, const BitString& y);
/// Uniform over {0,1}^n.
BitString op_uniform(RngStream& rng, int n);

// Oracle samplers: fetch parents by handle, draw the offspring, submit it.

Sample sample_uniform(QueryOracle& o, RngStream& rng);
Sample sample_flip_k(QueryOracle& o, RngStream& rng, SearchPointHandle x, int k);
Sample sample_flip_where_equal(QueryOracle& o, RngStream& rng, SearchPointHandle x,
                               SearchPointHandle y, int k);
Sample sample_flip_where_different(QueryOracle& o, RngStream& rng, SearchPointHandle x,
                                   SearchPointHandle y, int k);
Sample sample_select_bit(QueryOracle& o, SearchPointHandle x, SearchPointHandle y,
                         SearchPointHandle z);
Sample sample_copy_where_differs(QueryOracle& o, SearchPointHandle x, SearchPointHandle y,
                                 SearchPointHandle z);
Sample sample_complement(QueryOracle& o, SearchPointHandle x);
Sample sample_mix(QueryOracle& o, RngStream& rng, SearchPointHandle x, SearchPointHandle y);

}  // namespace jumplab
