#include "semilab/resample.hpp"

#include <algorithm>
#include <numeric>

#include "semilab/errors.hpp"

namespace semilab::lemmas {

namespace {

// block_of[i] = index of the first position whose z matches z_i, renumbered
// densely from 0.
std::vector<std::int64_t> collision_blocks(std::span<const std::int64_t> zs,
                                           std::int64_t* block_count) {
    std::vector<std::int64_t> block_of(zs.size());
    std::vector<std::int64_t> seen_values;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const auto it = std::find(seen_values.begin(), seen_values.end(), zs[i]);
        if (it == seen_values.end()) {
            block_of[i] = static_cast<std::int64_t>(seen_values.size());
            seen_values.push_back(zs[i]);
        } else {
            block_of[i] = it - seen_values.begin();
        }
    }
    *block_count = static_cast<std::int64_t>(seen_values.size());
    return block_of;
}

void validate_inputs(std::int64_t q, std::span<const std::int64_t> ys,
                     std::span<const std::int64_t> zs) {
    if (q < 1) {
        throw InvalidParameter("resample requires q >= 1");
    }
    if (ys.empty() || ys.size() != zs.size()) {
        throw InvalidParameter("resample requires |ys| = |zs| >= 1");
    }
    if (ys.size() > static_cast<std::size_t>(q)) {
        throw InvalidParameter("resample requires l <= q");
    }
    for (std::int64_t y : ys) {
        if (y < 0 || y >= q) throw InvalidParameter("resample: y out of [0, q)");
    }
    for (std::int64_t z : zs) {
        if (z < 0 || z >= q) throw InvalidParameter("resample: z out of [0, q)");
    }
    std::vector<std::int64_t> sorted(ys.begin(), ys.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidParameter("resample requires distinct ys");
    }
}

} // namespace

std::vector<std::int64_t> resample_sequence(std::int64_t q,
                                            std::span<const std::int64_t> ys,
                                            std::span<const std::int64_t> zs,
                                            Xoshiro256pp& rng) {
    validate_inputs(q, ys, zs);
    const std::int64_t l = static_cast<std::int64_t>(ys.size());
    std::int64_t blocks = 0;
    const std::vector<std::int64_t> block_of = collision_blocks(zs, &blocks);

    // Uniform injective map block -> ys via a partial Fisher-Yates prefix.
    std::vector<std::int64_t> pool(ys.begin(), ys.end());
    for (std::int64_t j = 0; j < blocks; ++j) {
        const std::int64_t pick =
            j + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(l - j)));
        std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
    }

    std::vector<std::int64_t> xs(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = pool[static_cast<std::size_t>(block_of[i])];
    }
    return xs;
}

namespace {

std::uint64_t falling_factorial(std::int64_t n, std::int64_t k) {
    std::uint64_t out = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        out *= static_cast<std::uint64_t>(n - i);
    }
    return out;
}

// Enumerate ordered sequences of `length` distinct residues, invoking fn on
// each complete sequence.
template <typename Fn>
void for_each_distinct_sequence(std::int64_t q, std::int64_t length,
                                std::vector<std::int64_t>& seq,
                                std::vector<bool>& used, Fn&& fn) {
    if (static_cast<std::int64_t>(seq.size()) == length) {
        fn(seq);
        return;
    }
    for (std::int64_t v = 0; v < q; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(v)] = true;
        seq.push_back(v);
        for_each_distinct_sequence(q, length, seq, used, fn);
        seq.pop_back();
        used[static_cast<std::size_t>(v)] = false;
    }
}

} // namespace

ResampleExactReport resample_distribution_exact(std::int64_t q, std::int64_t length,
                                                std::uint64_t budget) {
    if (q < 1 || length < 1 || length > q) {
        throw InvalidParameter("resample exact check requires 1 <= l <= q");
    }
    const std::uint64_t perm_ys = falling_factorial(q, length);
    std::uint64_t pow_q = 1;
    for (std::int64_t i = 0; i < length; ++i) pow_q *= static_cast<std::uint64_t>(q);
    const std::uint64_t fact_l = falling_factorial(length, length);
    const std::uint64_t denominator = perm_ys * pow_q * fact_l;
    if (denominator > budget) {
        throw BudgetExceeded("exact resample enumeration of " +
                             std::to_string(denominator) +
                             " weighted triples exceeds budget " +
                             std::to_string(budget));
    }

    ResampleExactReport report;
    report.q = q;
    report.length = length;
    report.denominator = denominator;
    report.expected_mass = perm_ys * fact_l; // denominator / q^l
    report.mass.assign(static_cast<std::size_t>(pow_q), 0);

    // zs odometer; for each collision pattern, enumerate all injective
    // assignments of blocks into ys. Each (ys, zs, map) triple carries mass
    // (l - k)! so that totals live over the common denominator.
    std::vector<std::int64_t> zs(static_cast<std::size_t>(length), 0);
    for (std::uint64_t code = 0; code < pow_q; ++code) {
        std::uint64_t rem = code;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            zs[i] = static_cast<std::int64_t>(rem % static_cast<std::uint64_t>(q));
            rem /= static_cast<std::uint64_t>(q);
        }
        std::int64_t blocks = 0;
        const std::vector<std::int64_t> block_of = collision_blocks(zs, &blocks);
        const std::uint64_t weight = falling_factorial(length - blocks, length - blocks);

        std::vector<std::int64_t> seq;
        std::vector<bool> used(static_cast<std::size_t>(q), false);
        for_each_distinct_sequence(q, length, seq, used, [&](const std::vector<std::int64_t>& ys) {
            // map: ordered choice of `blocks` distinct positions in ys
            std::vector<std::int64_t> map_seq;
            std::vector<bool> map_used(ys.size(), false);
            for_each_distinct_sequence(static_cast<std::int64_t>(ys.size()), blocks,
                                       map_seq, map_used,
                                       [&](const std::vector<std::int64_t>& assignment) {
                std::uint64_t cell = 0;
                std::uint64_t place = 1;
                for (std::size_t i = 0; i < block_of.size(); ++i) {
                    const std::int64_t x =
                        ys[static_cast<std::size_t>(assignment[static_cast<std::size_t>(
                            block_of[i])])];
                    cell += static_cast<std::uint64_t>(x) * place;
                    place *= static_cast<std::uint64_t>(q);
                }
                report.mass[static_cast<std::size_t>(cell)] += weight;
            });
        });
    }

    report.uniform = std::all_of(report.mass.begin(), report.mass.end(),
                                 [&](std::uint64_t m) { return m == report.expected_mass; });
    return report;
}

ChiSquareReport resample_distribution_mc(std::int64_t q, std::int64_t length,
                                         std::uint64_t trials, std::uint64_t seed,
                                         double significance) {
    if (q < 1 || length < 1 || length > q) {
        throw InvalidParameter("resample mc check requires 1 <= l <= q");
    }
    if (trials == 0) {
        throw BudgetExceeded("resample mc check requires a nonzero trial budget");
    }
    std::uint64_t pow_q = 1;
    for (std::int64_t i = 0; i < length; ++i) pow_q *= static_cast<std::uint64_t>(q);

    Xoshiro256pp rng(derive_stream_seed(seed, static_cast<std::uint64_t>(q),
                                        static_cast<std::uint64_t>(length)));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(pow_q), 0);
    std::vector<std::int64_t> values(static_cast<std::size_t>(q));
    std::vector<std::int64_t> ys(static_cast<std::size_t>(length));
    std::vector<std::int64_t> zs(static_cast<std::size_t>(length));
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::iota(values.begin(), values.end(), 0);
        for (std::int64_t j = 0; j < length; ++j) {
            const std::int64_t pick =
                j + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(q - j)));
            std::swap(values[static_cast<std::size_t>(j)],
                      values[static_cast<std::size_t>(pick)]);
            ys[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(j)];
        }
        for (auto& z : zs) {
            z = static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(q)));
        }
        const std::vector<std::int64_t> xs = resample_sequence(q, ys, zs, rng);
        std::uint64_t cell = 0;
        std::uint64_t place = 1;
        for (std::int64_t x : xs) {
            cell += static_cast<std::uint64_t>(x) * place;
            place *= static_cast<std::uint64_t>(q);
        }
        ++counts[static_cast<std::size_t>(cell)];
    }

    std::vector<double> observed(counts.size());
    std::vector<double> expected(counts.size(),
                                 static_cast<double>(trials) / static_cast<double>(pow_q));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        observed[i] = static_cast<double>(counts[i]);
    }
    ChiSquareReport report;
    report.dof = static_cast<std::int64_t>(pow_q) - 1;
    report.significance = significance;
    report.samples = trials;
    report.statistic = chi_square_statistic(observed, expected);
    report.critical = chi_square_critical(report.dof, significance);
    report.pass = report.statistic <= report.critical;
    return report;
}

} // namespace semilab::lemmas
