#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semilab/core.hpp"
#include "semilab/rng.hpp"

namespace semilab::model {

// Inverse-CDF sample of the gap between consecutive elements of a
// Bernoulli(p) random subset of the integers: floor(ln u / ln(1-p)) + 1,
// so P[gap = k] = (1-p)^(k-1) * p.
std::int64_t geometric_gap(double u, double p);

// One lazily-extended Bernoulli(p) random subset of {ground_base+1,
// ground_base+2, ...}. The sequence is fully determined by
// (p, master_seed, trial_id, stream_index); extending the requested bound
// never re-randomizes earlier draws.
class RandomStream {
public:
    RandomStream(double p, std::uint64_t master_seed, std::uint64_t trial_id,
                 std::uint64_t stream_index = 0, std::int64_t ground_base = 0);

    // All elements of the set that are <= bound, ascending.
    std::vector<std::int64_t> sample_prefix(std::int64_t bound);

    double p() const { return p_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t trial_id() const { return trial_id_; }
    std::uint64_t stream_index() const { return stream_index_; }
    // Last emitted element (ground_base when none yet).
    std::int64_t cursor() const {
        return emitted_.empty() ? base_ : emitted_.back();
    }

private:
    double p_;
    std::uint64_t master_seed_;
    std::uint64_t trial_id_;
    std::uint64_t stream_index_;
    std::int64_t base_;
    Xoshiro256pp rng_;
    std::vector<std::int64_t> emitted_;
    std::int64_t pending_; // next element, already drawn, > all emitted
};

struct SamplerOptions {
    // Truncation never starts below this; used to show the stopping rule is
    // insensitive to forcing larger tables.
    std::int64_t force_min_truncation = 0;
    std::int64_t truncation_cap = std::int64_t{1} << 30;
    // Re-derive the invariants through the Apery path on every k-th trial and
    // require agreement with the table path. 0 disables.
    std::int64_t cross_check_every = 64;
    // When > 0, fill SampleOutcome::count_in_n with |A intersect [1, n]|.
    std::int64_t count_bound_n = 0;
};

// One draw of the random semigroup model: the sampled generators within the
// final truncation, and the exact invariants of the infinite semigroup they
// generate.
struct SampleOutcome {
    double p = 0.0;
    std::uint64_t trial_id = 0;
    std::int64_t truncation_m = 0;
    std::vector<std::int64_t> elements;
    InvariantsRecord invariants;
    std::int64_t count_in_n = 0;

    // trial_id,p,M,F,g,e,q,count_elements
    std::string to_csv_row() const;
};

// Draws A ~ Bernoulli(p) over Z>0 and adaptively grows the truncation M
// (doubling from M0 = ceil(8 * p^-1 * max(1, ln^2(1/p)))) until
// gcd(A cap [M]) = 1 and the largest gap of <A cap [M]> is certified below
// M - q. Past that point every element of A beyond M already lies in the
// semigroup, so the returned invariants are those of <A> itself, not of a
// truncation. Throws SamplerDidNotConverge at the truncation cap.
SampleOutcome sample_semigroup(double p, std::uint64_t trial,
                               std::uint64_t master_seed,
                               const SamplerOptions& opts = {});

// Same model on the ground set [u, infinity), u even and >= 2.
SampleOutcome shifted_sample_semigroup(double p, std::int64_t u,
                                       std::uint64_t trial,
                                       std::uint64_t master_seed,
                                       const SamplerOptions& opts = {});

} // namespace semilab::model
