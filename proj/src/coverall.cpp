#include "semilab/coverall.hpp"

#include <cmath>

#include "semilab/errors.hpp"
#include "semilab/rng.hpp"

namespace semilab::lemmas {

namespace {

// Fixed-width bitset over the residue ring, sized at construction. Supports
// the one operation coverage needs: reach |= rotate(reach, x) mod q.
class ResidueSet {
public:
    explicit ResidueSet(std::int64_t q)
        : q_(q), words_((static_cast<std::size_t>(q) + 63) / 64, 0) {}

    void set(std::int64_t r) {
        words_[static_cast<std::size_t>(r) / 64] |= 1ull << (r % 64);
    }
    bool test(std::int64_t r) const {
        return (words_[static_cast<std::size_t>(r) / 64] >> (r % 64)) & 1ull;
    }

    void or_rotated(std::int64_t shift) {
        if (shift == 0) return;
        ResidueSet rotated(q_);
        shifted_into(rotated, shift);       // bits r -> r + shift, r < q - shift
        shifted_down_into(rotated, q_ - shift); // bits r >= q - shift wrap to low end
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] |= rotated.words_[i];
        }
    }

    bool full() const {
        std::int64_t remaining = q_;
        for (std::uint64_t word : words_) {
            const int take = remaining >= 64 ? 64 : static_cast<int>(remaining);
            const std::uint64_t mask =
                take == 64 ? ~0ull : ((1ull << take) - 1);
            if ((word & mask) != mask) return false;
            remaining -= take;
            if (remaining <= 0) break;
        }
        return true;
    }

    std::vector<std::int64_t> to_sorted_list() const {
        std::vector<std::int64_t> out;
        for (std::int64_t r = 0; r < q_; ++r) {
            if (test(r)) out.push_back(r);
        }
        return out;
    }

private:
    // dst |= (this << k), dropping bits shifted past q.
    void shifted_into(ResidueSet& dst, std::int64_t k) const {
        const std::size_t word_shift = static_cast<std::size_t>(k) / 64;
        const int bit_shift = static_cast<int>(k % 64);
        for (std::size_t i = words_.size(); i-- > 0;) {
            const std::size_t j = i + word_shift;
            if (j >= dst.words_.size()) continue;
            dst.words_[j] |= bit_shift == 0 ? words_[i] : (words_[i] << bit_shift);
            if (bit_shift != 0 && j + 1 < dst.words_.size()) {
                dst.words_[j + 1] |= words_[i] >> (64 - bit_shift);
            }
        }
        dst.mask_top();
    }

    // dst |= (this >> k)
    void shifted_down_into(ResidueSet& dst, std::int64_t k) const {
        const std::size_t word_shift = static_cast<std::size_t>(k) / 64;
        const int bit_shift = static_cast<int>(k % 64);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const std::size_t j = i + word_shift;
            if (j >= words_.size()) break;
            dst.words_[i] |= bit_shift == 0 ? words_[j] : (words_[j] >> bit_shift);
            if (bit_shift != 0 && j + 1 < words_.size()) {
                dst.words_[i] |= words_[j + 1] << (64 - bit_shift);
            }
        }
        dst.mask_top();
    }

    void mask_top() {
        const int top_bits = static_cast<int>(q_ % 64);
        if (top_bits != 0) {
            words_.back() &= (1ull << top_bits) - 1;
        }
    }

    std::int64_t q_;
    std::vector<std::uint64_t> words_;
};

// Covering sequences of a full q^L enumeration, counted with subtree
// short-circuiting: once the prefix already reaches everything, all
// completions cover.
std::uint64_t count_covering(std::int64_t q, std::int64_t length,
                             std::int64_t depth, std::uint64_t reach,
                             std::uint64_t full_mask,
                             const std::vector<std::uint64_t>& pow_q) {
    if (reach == full_mask) {
        return pow_q[static_cast<std::size_t>(length - depth)];
    }
    if (depth == length) return 0;
    std::uint64_t covering = 0;
    for (std::int64_t x = 0; x < q; ++x) {
        std::uint64_t next = reach;
        if (x != 0) {
            next |= ((reach << x) | (reach >> (q - x))) & full_mask;
        }
        covering += count_covering(q, length, depth + 1, next, full_mask, pow_q);
    }
    return covering;
}

} // namespace

std::vector<std::int64_t> reachable_residues(std::int64_t q,
                                             std::span<const std::int64_t> xs) {
    if (q < 1) {
        throw InvalidParameter("reachable_residues requires q >= 1");
    }
    for (std::int64_t x : xs) {
        if (x < 0 || x >= q) {
            throw InvalidParameter("reachable_residues: entry out of [0, q)");
        }
    }
    ResidueSet reach(q);
    reach.set(0);
    for (std::int64_t x : xs) {
        reach.or_rotated(x % q);
    }
    return reach.to_sorted_list();
}

CoverageReport coverall_failure_probability(std::int64_t q, std::int64_t length,
                                            CoverageMode mode,
                                            std::uint64_t budget,
                                            std::uint64_t mc_seed) {
    if (q < 1 || length < 1) {
        throw InvalidParameter("coverall requires q >= 1 and L >= 1");
    }
    CoverageReport report;
    report.q = q;
    report.length = length;
    report.mode = mode;
    report.bound = static_cast<double>(q) * static_cast<double>(q) *
                   std::exp2(-static_cast<double>(length));

    if (mode == CoverageMode::exact) {
        if (q > 64) {
            throw BudgetExceeded("exact coverall enumeration supports q <= 64");
        }
        std::vector<std::uint64_t> pow_q(static_cast<std::size_t>(length) + 1, 1);
        for (std::size_t i = 1; i < pow_q.size(); ++i) {
            if (pow_q[i - 1] > budget / static_cast<std::uint64_t>(q)) {
                throw BudgetExceeded("exact coverall enumeration of q^L = " +
                                     std::to_string(q) + "^" + std::to_string(length) +
                                     " sequences exceeds budget " +
                                     std::to_string(budget));
            }
            pow_q[i] = pow_q[i - 1] * static_cast<std::uint64_t>(q);
        }
        const std::uint64_t total = pow_q.back();
        const std::uint64_t full_mask =
            q == 64 ? ~0ull : (1ull << q) - 1;
        const std::uint64_t covering =
            count_covering(q, length, 0, 1ull, full_mask, pow_q);
        report.samples = total;
        report.failures = total - covering;
    } else {
        if (budget == 0) {
            throw BudgetExceeded("monte_carlo coverall requires a nonzero trial budget");
        }
        Xoshiro256pp rng(derive_stream_seed(mc_seed, static_cast<std::uint64_t>(q),
                                            static_cast<std::uint64_t>(length)));
        std::uint64_t failures = 0;
        for (std::uint64_t t = 0; t < budget; ++t) {
            ResidueSet reach(q);
            reach.set(0);
            for (std::int64_t i = 0; i < length; ++i) {
                reach.or_rotated(
                    static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(q))));
            }
            if (!reach.full()) ++failures;
        }
        report.samples = budget;
        report.failures = failures;
    }
    report.estimate = static_cast<double>(report.failures) /
                      static_cast<double>(report.samples);
    return report;
}

std::string to_string(CoverageMode mode) {
    return mode == CoverageMode::exact ? "exact" : "monte_carlo";
}

} // namespace semilab::lemmas
