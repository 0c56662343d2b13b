#pragma once

#include <cstdint>
#include <vector>

#include "semilab/bignat.hpp"

namespace semilab::lemmas {

// Exact partition numbers Part(0..n_max) via Euler's pentagonal-number
// recurrence. Alternating terms are accumulated as two nonnegative sums and
// subtracted once at the end of each row.
std::vector<BigNat> partition_table(std::int64_t n_max);

// Exact Part(n).
BigNat partition_count(std::int64_t n);

// Independent route: counts partitions one by one by descending-parts
// enumeration. Feasible up to n ~ 45; the recurrence must agree with it.
std::uint64_t partition_count_by_enumeration(std::int64_t n);

// Leading-order size of Part(n): exp(pi * sqrt(2n/3)) / (4 * sqrt(3) * n).
double hardy_ramanujan_estimate(std::int64_t n);

// c * (gamma*N)^(-1/2) * exp(pi * sqrt(2*gamma*N/3)): the cap on how many
// integers up to N a semigroup generated by a gamma-sparse set can contain.
double partition_sum_bound(double gamma, std::int64_t n, double c);

// The smallest power of two c such that partition_sum_bound(1, m, c)
// dominates sum_{k<=m} Part(k) for every m in [1, max_partial_sum].
double calibrate_partition_constant(std::int64_t max_partial_sum = 500);

} // namespace semilab::lemmas
