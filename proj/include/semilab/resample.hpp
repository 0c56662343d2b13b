#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semilab/rng.hpp"
#include "semilab/stats.hpp"

namespace semilab::lemmas {

// The distinct-resample procedure: partition the positions by equality of
// zs, then give each block a distinct value from {ys} through a uniformly
// random injective map. Output satisfies x_i = x_j iff z_i = z_j, with all
// values drawn from ys.
std::vector<std::int64_t> resample_sequence(std::int64_t q,
                                            std::span<const std::int64_t> ys,
                                            std::span<const std::int64_t> zs,
                                            Xoshiro256pp& rng);

// Exact output distribution of the resample procedure over (Z/qZ)^l, as
// integer masses over the common denominator P(q,l) * q^l * l!. The
// procedure is measure-preserving exactly when every cell holds
// P(q,l) * l!.
struct ResampleExactReport {
    std::int64_t q = 0;
    std::int64_t length = 0;
    std::uint64_t denominator = 0;
    std::uint64_t expected_mass = 0;
    std::vector<std::uint64_t> mass; // indexed by sum x_i * q^i
    bool uniform = false;
};

// Enumerates every (ys, zs, injective map) triple, weighted exactly.
// Requires P(q,l) * q^l * l! <= budget.
ResampleExactReport resample_distribution_exact(std::int64_t q, std::int64_t length,
                                                std::uint64_t budget);

// Chi-square goodness of fit of `trials` resample draws against the uniform
// distribution on (Z/qZ)^l.
ChiSquareReport resample_distribution_mc(std::int64_t q, std::int64_t length,
                                         std::uint64_t trials, std::uint64_t seed,
                                         double significance = 1e-3);

} // namespace semilab::lemmas
