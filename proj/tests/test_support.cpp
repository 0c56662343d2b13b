#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "semilab/bignat.hpp"
#include "semilab/core.hpp"
#include "semilab/errors.hpp"
#include "semilab/rng.hpp"
#include "semilab/stats.hpp"

using namespace semilab;

TEST_CASE("BigNat arithmetic and rendering") {
    CHECK(BigNat().to_string() == "0");
    CHECK(BigNat(0).is_zero());
    CHECK(BigNat(123456789012345678ull).to_string() == "123456789012345678");

    BigNat a(999999999);
    a += BigNat(1);
    CHECK(a.to_string() == "1000000000"); // limb carry

    BigNat big(18446744073709551615ull);
    BigNat sum = big;
    sum += big;
    CHECK(sum.to_string() == "36893488147419103230");
    sum -= big;
    CHECK(sum == big);
    sum -= big;
    CHECK(sum.is_zero());

    BigNat small(5);
    CHECK_THROWS_AS(small -= BigNat(6), InvariantViolation);

    CHECK(BigNat(41) < BigNat(42));
    CHECK(BigNat(1000000000) < BigNat(1000000001));
    CHECK(BigNat(77).to_double() == 77.0);
}

TEST_CASE("nearest-rank quantiles") {
    const std::vector<std::int64_t> sorted{10, 20, 30, 40};
    CHECK(nearest_rank(sorted, 0.0) == 10);
    CHECK(nearest_rank(sorted, 0.25) == 10);
    CHECK(nearest_rank(sorted, 0.5) == 20);
    CHECK(nearest_rank(sorted, 0.51) == 30);
    CHECK(nearest_rank(sorted, 0.9) == 40);
    CHECK(nearest_rank(sorted, 1.0) == 40);
    CHECK_THROWS_AS(nearest_rank(std::vector<std::int64_t>{}, 0.5), InvalidParameter);
    CHECK_THROWS_AS(nearest_rank(sorted, 1.5), InvalidParameter);
}

TEST_CASE("normal quantile and chi-square critical values") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845).epsilon(1e-6));
    CHECK(normal_quantile(0.999) == doctest::Approx(3.0902323062).epsilon(1e-6));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845).epsilon(1e-6));

    // known table values at moderate dof, where the cube approximation is tight
    CHECK(chi_square_critical(100, 0.05) == doctest::Approx(124.342).epsilon(5e-3));
    CHECK(chi_square_critical(342, 1e-3) == doctest::Approx(428.5).epsilon(1e-2));
    CHECK_THROWS_AS(chi_square_critical(0, 0.05), InvalidParameter);
    CHECK_THROWS_AS(normal_quantile(0.0), InvalidParameter);
}

TEST_CASE("chi-square statistic") {
    const std::vector<double> obs{9.0, 11.0};
    const std::vector<double> exp{10.0, 10.0};
    CHECK(chi_square_statistic(obs, exp) == doctest::Approx(0.2));
    CHECK_THROWS_AS(chi_square_statistic(obs, std::vector<double>{10.0}),
                    InvalidParameter);
    CHECK_THROWS_AS(chi_square_statistic(obs, std::vector<double>{10.0, 0.0}),
                    InvalidParameter);
}

TEST_CASE("PrefixCloser guards its extension contract") {
    PrefixCloser closer;
    CHECK_THROWS_AS(closer.extend(std::vector<std::int64_t>{3}, -1), InvalidParameter);
    closer.extend(std::vector<std::int64_t>{3, 5}, 20);
    CHECK(closer.is_member(8));
    CHECK_FALSE(closer.is_member(7));
    // a generator at or below the filled bound would invalidate old entries
    CHECK_THROWS_AS(closer.extend(std::vector<std::int64_t>{2, 3, 5}, 40),
                    InvariantViolation);
    // growing with a larger generator is fine and fills the new range
    closer.extend(std::vector<std::int64_t>{3, 5, 23}, 40);
    CHECK(closer.is_member(23));
    CHECK(closer.is_member(31)); // 23 + 8
    CHECK(closer.bound() == 40);
}

TEST_CASE("incremental closure equals a from-scratch build") {
    PrefixCloser grown;
    grown.extend(std::vector<std::int64_t>{5, 7}, 50);
    grown.extend(std::vector<std::int64_t>{5, 7, 53, 61}, 200);
    grown.extend(std::vector<std::int64_t>{5, 7, 53, 61, 201}, 400);

    PrefixCloser fresh;
    fresh.extend(std::vector<std::int64_t>{5, 7, 53, 61, 201}, 400);
    CHECK(grown.table() == fresh.table());
}

TEST_CASE("stream seeds separate trials and stream indexes") {
    const std::uint64_t base = derive_stream_seed(42, 0, 0);
    CHECK(base != derive_stream_seed(42, 1, 0));
    CHECK(base != derive_stream_seed(42, 0, 1));
    CHECK(base != derive_stream_seed(43, 0, 0));
    CHECK(base == derive_stream_seed(42, 0, 0));

    Xoshiro256pp rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.open01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        CHECK(rng.bounded(10) < 10);
    }
}
