#include "semilab/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "semilab/errors.hpp"

namespace semilab::model {

std::int64_t geometric_gap(double u, double p) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidParameter("geometric_gap: u must lie in (0, 1)");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("geometric_gap: p must lie in (0, 1)");
    }
    const double ratio = std::log(u) / std::log1p(-p);
    std::int64_t gap = static_cast<std::int64_t>(std::floor(ratio)) + 1;
    if (gap < 1) gap = 1;
    return gap;
}

RandomStream::RandomStream(double p, std::uint64_t master_seed,
                           std::uint64_t trial_id, std::uint64_t stream_index,
                           std::int64_t ground_base)
    : p_(p),
      master_seed_(master_seed),
      trial_id_(trial_id),
      stream_index_(stream_index),
      base_(ground_base),
      rng_(derive_stream_seed(master_seed, trial_id, stream_index)),
      pending_(0) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("RandomStream: p must lie in (0, 1)");
    }
    pending_ = base_ + geometric_gap(rng_.open01(), p_);
}

std::vector<std::int64_t> RandomStream::sample_prefix(std::int64_t bound) {
    while (pending_ <= bound) {
        emitted_.push_back(pending_);
        pending_ += geometric_gap(rng_.open01(), p_);
    }
    const auto end =
        std::upper_bound(emitted_.begin(), emitted_.end(), bound);
    return std::vector<std::int64_t>(emitted_.begin(), end);
}

std::string SampleOutcome::to_csv_row() const {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%llu,%.17g,%lld,%lld,%lld,%lld,%lld,%zu",
                  static_cast<unsigned long long>(trial_id), p,
                  static_cast<long long>(truncation_m),
                  static_cast<long long>(invariants.frobenius),
                  static_cast<long long>(invariants.genus),
                  static_cast<long long>(invariants.embedding_dim),
                  static_cast<long long>(invariants.multiplicity),
                  elements.size());
    return buf;
}

namespace {

std::int64_t initial_truncation(double p) {
    const double lg = std::log(1.0 / p);
    const double m0 = 8.0 * (1.0 / p) * std::max(1.0, lg * lg);
    return static_cast<std::int64_t>(std::ceil(m0));
}

// Invariants of <gens> read off a closure table that is certified complete:
// the trailing run of members must have length >= q so that the largest gap
// is the true Frobenius number.
InvariantsRecord invariants_from_table(const PrefixCloser& closer,
                                       const std::vector<std::int64_t>& gens,
                                       std::int64_t largest_gap) {
    const std::int64_t q = gens.front();
    InvariantsRecord rec;
    rec.frobenius = largest_gap;
    rec.multiplicity = q;
    if (q == 1) {
        rec.genus = 0;
        rec.embedding_dim = 1;
        rec.validate();
        return rec;
    }
    const auto& table = closer.table();
    std::int64_t gaps = 0;
    for (std::int64_t n = 1; n <= largest_gap; ++n) {
        if (!table[static_cast<std::size_t>(n)]) ++gaps;
    }
    rec.genus = gaps;

    // Minimal generators are a subset of the sampled elements. Anything past
    // largest_gap + q splits off a copy of q; the rest get a decomposition
    // scan over the small members.
    std::vector<std::int64_t> smalls;
    const std::int64_t small_limit = (largest_gap + q) / 2;
    for (std::int64_t n = q; n <= small_limit && n <= closer.bound(); ++n) {
        if (table[static_cast<std::size_t>(n)]) smalls.push_back(n);
    }
    std::int64_t minimal = 0;
    for (std::int64_t a : gens) {
        if (a > largest_gap + q) continue;
        bool decomposable = false;
        for (std::int64_t s : smalls) {
            if (2 * s > a) break;
            if (table[static_cast<std::size_t>(a - s)]) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) ++minimal;
    }
    rec.embedding_dim = minimal;
    rec.validate();
    return rec;
}

SampleOutcome sample_impl(double p, std::uint64_t trial,
                          std::uint64_t master_seed, std::int64_t ground_base,
                          const SamplerOptions& opts) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("sample_semigroup: p must lie in (0, 1)");
    }
    RandomStream stream(p, master_seed, trial, 0, ground_base);
    std::int64_t m = std::max(ground_base + initial_truncation(p),
                              opts.force_min_truncation);
    if (m > opts.truncation_cap) m = opts.truncation_cap;

    PrefixCloser closer;
    SampleOutcome out;
    out.p = p;
    out.trial_id = trial;

    for (;;) {
        std::vector<std::int64_t> elems = stream.sample_prefix(m);
        std::int64_t gcd = 0;
        for (std::int64_t a : elems) gcd = std::gcd(gcd, a);
        if (gcd == 1) {
            closer.extend(elems, m);
            const auto& table = closer.table();
            std::int64_t f = -1;
            for (std::int64_t n = m; n >= 1; --n) {
                if (!table[static_cast<std::size_t>(n)]) {
                    f = n;
                    break;
                }
            }
            const std::int64_t q = elems.front();
            if (m - f >= q) {
                out.truncation_m = m;
                out.elements = std::move(elems);
                out.invariants = invariants_from_table(closer, out.elements, f);
                break;
            }
        }
        if (m >= opts.truncation_cap) {
            throw SamplerDidNotConverge(
                "sampler hit truncation cap " + std::to_string(opts.truncation_cap) +
                " at p=" + std::to_string(p));
        }
        m = std::min(2 * m, opts.truncation_cap);
    }

    if (opts.cross_check_every > 0 &&
        trial % static_cast<std::uint64_t>(opts.cross_check_every) == 0) {
        const InvariantsRecord check =
            invariants(normalize_generators(out.elements));
        if (check.frobenius != out.invariants.frobenius ||
            check.genus != out.invariants.genus ||
            check.embedding_dim != out.invariants.embedding_dim ||
            check.multiplicity != out.invariants.multiplicity) {
            throw InvariantViolation("sampler table path disagrees with Apery path: " +
                                     out.invariants.to_string() + " vs " +
                                     check.to_string());
        }
    }
    if (opts.count_bound_n > 0) {
        out.count_in_n = static_cast<std::int64_t>(
            stream.sample_prefix(opts.count_bound_n).size());
    }
    return out;
}

} // namespace

SampleOutcome sample_semigroup(double p, std::uint64_t trial,
                               std::uint64_t master_seed,
                               const SamplerOptions& opts) {
    return sample_impl(p, trial, master_seed, 0, opts);
}

SampleOutcome shifted_sample_semigroup(double p, std::int64_t u,
                                       std::uint64_t trial,
                                       std::uint64_t master_seed,
                                       const SamplerOptions& opts) {
    if (u < 2 || u % 2 != 0) {
        throw InvalidParameter("shifted sampler requires an even shift u >= 2");
    }
    return sample_impl(p, trial, master_seed, u - 1, opts);
}

} // namespace semilab::model
