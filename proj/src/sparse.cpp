#include "semilab/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "semilab/core.hpp"
#include "semilab/errors.hpp"
#include "semilab/random_model.hpp"

namespace semilab::lemmas {

SparseDensityStats sparse_density(double p, double c, std::int64_t trials,
                                  std::uint64_t master_seed, double epsilon) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidParameter("sparse_density: p must lie in (0, 1)");
    }
    if (!(c > 0.0)) {
        throw InvalidParameter("sparse_density: c must be positive");
    }
    if (trials < 1) {
        throw InvalidParameter("sparse_density: trials must be >= 1");
    }
    const double lg = std::log(1.0 / p);
    const std::int64_t n =
        std::max<std::int64_t>(1, std::llround(c * (1.0 / p) * lg * lg));
    const double threshold = std::pow(static_cast<double>(n), epsilon);

    SparseDensityStats stats;
    stats.p = p;
    stats.c = c;
    stats.epsilon = epsilon;
    stats.n = n;
    stats.trials = trials;

    double sum_count = 0.0;
    std::int64_t below = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        model::RandomStream stream(p, master_seed, static_cast<std::uint64_t>(t));
        const std::vector<std::int64_t> elems = stream.sample_prefix(n);
        std::int64_t count = 0;
        if (!elems.empty()) {
            PrefixCloser closer;
            closer.extend(elems, n);
            const auto& table = closer.table();
            for (std::int64_t k = 1; k <= n; ++k) {
                count += table[static_cast<std::size_t>(k)];
            }
        }
        sum_count += static_cast<double>(count);
        stats.max_count = std::max(stats.max_count, count);
        if (static_cast<double>(count) <= threshold) ++below;
    }
    stats.mean_count = sum_count / static_cast<double>(trials);
    stats.frac_below_n_eps = static_cast<double>(below) / static_cast<double>(trials);
    stats.mean_density = stats.mean_count / static_cast<double>(n);
    return stats;
}

} // namespace semilab::lemmas
