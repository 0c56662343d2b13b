#include "semilab/stats.hpp"

#include <cmath>
#include <cstddef>

#include "semilab/errors.hpp"

namespace semilab {

std::int64_t nearest_rank(std::span<const std::int64_t> sorted, double frac) {
    if (sorted.empty()) {
        throw InvalidParameter("nearest_rank on an empty sample");
    }
    if (!(frac >= 0.0 && frac <= 1.0)) {
        throw InvalidParameter("quantile fraction must be in [0, 1]");
    }
    const auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(frac * n));
    if (rank < 1) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    return sorted[rank - 1];
}

double normal_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw InvalidParameter("normal_quantile argument must be in (0, 1)");
    }
    // Acklam's coefficients.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double q, r;
    if (prob < p_low) {
        q = std::sqrt(-2.0 * std::log(prob));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (prob <= 1.0 - p_low) {
        q = prob - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    q = std::sqrt(-2.0 * std::log(1.0 - prob));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double chi_square_critical(std::int64_t dof, double alpha) {
    if (dof < 1) {
        throw InvalidParameter("chi_square_critical requires dof >= 1");
    }
    const double z = normal_quantile(1.0 - alpha);
    const double d = static_cast<double>(dof);
    const double h = 2.0 / (9.0 * d);
    const double term = 1.0 - h + z * std::sqrt(h);
    return d * term * term * term;
}

double chi_square_statistic(std::span<const double> observed,
                            std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.empty()) {
        throw InvalidParameter("chi_square_statistic: mismatched or empty cells");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) {
            throw InvalidParameter("chi_square_statistic: nonpositive expected count");
        }
        const double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

} // namespace semilab
