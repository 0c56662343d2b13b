#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace semilab::lemmas {

// The set of residues mod q expressible as {0,1}-combinations of xs:
// one closure pass per element over a q-sized reachability table. Always
// contains 0.
std::vector<std::int64_t> reachable_residues(std::int64_t q,
                                             std::span<const std::int64_t> xs);

enum class CoverageMode { exact, monte_carlo };

// Subset-sum coverage statistics over Z/qZ against the q^2 * 2^-L failure
// bound.
struct CoverageReport {
    std::int64_t q = 0;
    std::int64_t length = 0;
    CoverageMode mode = CoverageMode::exact;
    std::uint64_t samples = 0;
    std::uint64_t failures = 0;
    double estimate = 0.0; // failures / samples
    double bound = 0.0;    // q^2 * 2^-L, exactly
};

// Probability that a uniform sequence x_1..x_L in Z/qZ fails to reach every
// residue. Exact mode enumerates all q^L sequences (requires q^L <= budget
// and q <= 64); monte_carlo draws `budget` sequences from a seeded stream.
CoverageReport coverall_failure_probability(std::int64_t q, std::int64_t length,
                                            CoverageMode mode,
                                            std::uint64_t budget,
                                            std::uint64_t mc_seed = 0);

std::string to_string(CoverageMode mode);

} // namespace semilab::lemmas
