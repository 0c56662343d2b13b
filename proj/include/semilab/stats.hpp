#pragma once

#include <cstdint>
#include <span>

namespace semilab {

// Nearest-rank quantile on a sorted sample: the ceil(frac * n)-th smallest
// value. No interpolation, so results are integers of the sample and
// bit-reproducible.
std::int64_t nearest_rank(std::span<const std::int64_t> sorted, double frac);

// Inverse standard normal CDF (Acklam's rational approximation, ~1e-9
// absolute error).
double normal_quantile(double prob);

// Upper-tail critical value of chi-square with `dof` degrees of freedom at
// tail probability `alpha`, via the Wilson-Hilferty cube approximation.
double chi_square_critical(std::int64_t dof, double alpha);

struct ChiSquareReport {
    double statistic = 0.0;
    double critical = 0.0;
    double significance = 0.0;
    std::int64_t dof = 0;
    std::uint64_t samples = 0;
    bool pass = false;
};

// Pearson statistic over matched observed/expected arrays.
double chi_square_statistic(std::span<const double> observed,
                            std::span<const double> expected);

} // namespace semilab
