#pragma once

#include <cstdint>

namespace semilab::lemmas {

// Per-trial statistics of |<A> intersect [1, N]| at the sparse scale
// N = c * p^-1 * ln^2(1/p).
struct SparseDensityStats {
    double p = 0.0;
    double c = 0.0;
    double epsilon = 0.0;
    std::int64_t n = 0;
    std::int64_t trials = 0;
    double mean_count = 0.0;
    std::int64_t max_count = 0;
    double frac_below_n_eps = 0.0; // fraction of trials with count <= N^epsilon
    double mean_density = 0.0;     // mean count / N
};

SparseDensityStats sparse_density(double p, double c, std::int64_t trials,
                                  std::uint64_t master_seed,
                                  double epsilon = 0.5);

} // namespace semilab::lemmas
