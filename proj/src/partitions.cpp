#include "semilab/partitions.hpp"

#include <cmath>

#include "semilab/errors.hpp"

namespace semilab::lemmas {

std::vector<BigNat> partition_table(std::int64_t n_max) {
    if (n_max < 0) {
        throw InvalidParameter("partition_table requires n >= 0");
    }
    std::vector<BigNat> part(static_cast<std::size_t>(n_max) + 1);
    part[0] = BigNat(1);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        BigNat plus, minus;
        for (std::int64_t k = 1;; ++k) {
            const std::int64_t g1 = k * (3 * k - 1) / 2;
            if (g1 > n) break;
            const std::int64_t g2 = k * (3 * k + 1) / 2;
            BigNat& acc = (k % 2 == 1) ? plus : minus;
            acc += part[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) acc += part[static_cast<std::size_t>(n - g2)];
        }
        plus -= minus;
        part[static_cast<std::size_t>(n)] = std::move(plus);
    }
    return part;
}

BigNat partition_count(std::int64_t n) {
    return partition_table(n).back();
}

namespace {
std::uint64_t enumerate_rec(std::int64_t remaining, std::int64_t max_part) {
    if (remaining == 0) return 1;
    std::uint64_t count = 0;
    for (std::int64_t part = std::min(remaining, max_part); part >= 1; --part) {
        count += enumerate_rec(remaining - part, part);
    }
    return count;
}
} // namespace

std::uint64_t partition_count_by_enumeration(std::int64_t n) {
    if (n < 0) {
        throw InvalidParameter("partition enumeration requires n >= 0");
    }
    return enumerate_rec(n, n == 0 ? 1 : n);
}

double hardy_ramanujan_estimate(std::int64_t n) {
    if (n < 1) {
        throw InvalidParameter("hardy_ramanujan_estimate requires n >= 1");
    }
    const double nd = static_cast<double>(n);
    const double pi = 3.14159265358979323846;
    return std::exp(pi * std::sqrt(2.0 * nd / 3.0)) / (4.0 * std::sqrt(3.0) * nd);
}

double partition_sum_bound(double gamma, std::int64_t n, double c) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw InvalidParameter("partition_sum_bound requires gamma in (0, 1]");
    }
    if (n < 1) {
        throw InvalidParameter("partition_sum_bound requires N >= 1");
    }
    if (!(c > 0.0)) {
        throw InvalidParameter("partition_sum_bound requires C > 0");
    }
    const double gn = gamma * static_cast<double>(n);
    const double pi = 3.14159265358979323846;
    return c * std::exp(pi * std::sqrt(2.0 * gn / 3.0)) / std::sqrt(gn);
}

double calibrate_partition_constant(std::int64_t max_partial_sum) {
    const std::vector<BigNat> part = partition_table(max_partial_sum);
    BigNat partial(1); // Part(0)
    double needed = 0.0;
    const double pi = 3.14159265358979323846;
    for (std::int64_t m = 1; m <= max_partial_sum; ++m) {
        partial += part[static_cast<std::size_t>(m)];
        const double md = static_cast<double>(m);
        const double unit_bound = std::exp(pi * std::sqrt(2.0 * md / 3.0)) / std::sqrt(md);
        needed = std::max(needed, partial.to_double() / unit_bound);
    }
    return std::exp2(std::ceil(std::log2(needed)));
}

} // namespace semilab::lemmas
