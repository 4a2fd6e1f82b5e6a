#ifndef POLYBOUND_TESTS_SUPPORT_GENERATORS_H_
#define POLYBOUND_TESTS_SUPPORT_GENERATORS_H_

#include <cstdint>
#include <random>
#include <vector>

#include "polybound/instance.h"
#include "polybound/rational.h"

namespace polybound::testing {

// zip code (1), city (2), state (3) with the published degree statistics.
Instance postal_instance();

// {(empty, {1}, 1), ({1}, {1,2}, 1)}.
Instance two_chain_instance();

// Uniform integer in [lo, hi].
int uniform(std::mt19937_64& rng, int lo, int hi);

// p / q with 0 <= p <= max_num and 1 <= q <= max_den.
Rational random_rational(std::mt19937_64& rng, int max_num, int max_den);

// Random nonnegative delta: each entry p/4 with p in 0..max_quarters.
std::vector<Rational> random_delta(std::mt19937_64& rng, int k,
                                   int max_quarters);

// blocks * block_size attributes. Each block is strongly connected by a
// ring of dependencies plus a few extra constraints inside it; the blocks
// are chained by forward edges only, and the first attribute of every block
// carries a cardinality constraint. The strongly connected components are
// exactly the blocks.
Instance block_instance(int blocks, int block_size, int extra_per_block,
                        uint64_t seed);

}  // namespace polybound::testing

#endif  // POLYBOUND_TESTS_SUPPORT_GENERATORS_H_
