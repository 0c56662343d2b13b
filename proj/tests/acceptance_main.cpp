// Acceptance suite: one criterion per function, one [PASS]/[FAIL] line per
// criterion, nonzero exit on any failure. Every tolerance is pinned in the
// code below; the runtime limits are part of the criteria and enforced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "semilab/core.hpp"
#include "semilab/coverall.hpp"
#include "semilab/experiments.hpp"
#include "semilab/partitions.hpp"
#include "semilab/random_model.hpp"
#include "semilab/resample.hpp"

#include "oracle_helpers.hpp"

using namespace semilab;

namespace {

struct CriterionResult {
    int number = 0;
    std::string label;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// ---------------------------------------------------------------------------
// C1: Apery-path invariants equal brute-force membership-table invariants on
// 1000 pseudo-random generator sets, and the two-generator closed forms hold
// exactly for all coprime 2 <= a < b <= 40. Runtime <= 60 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    Check check;

    Xoshiro256pp rng(0xACCE07ull);
    for (int iter = 0; iter < 1000 && check.ok; ++iter) {
        const auto gens = oracle::random_generator_set(rng, 1000000);
        const auto normalized = normalize_generators(gens);
        const auto rec = invariants(normalized);
        const std::int64_t bound = rec.frobenius + 2 * normalized.elements.back();
        const auto table = semigroup_prefix(normalized, bound);
        const auto brute =
            oracle::brute_invariants(table, normalized.elements.front());
        check.require(rec.frobenius == brute.frobenius &&
                          rec.genus == brute.genus &&
                          rec.embedding_dim == brute.embedding_dim,
                      "path mismatch on set #" + std::to_string(iter) + ": " +
                          rec.to_string());
    }

    for (std::int64_t a = 2; a <= 40 && check.ok; ++a) {
        for (std::int64_t b = a + 1; b <= 40 && check.ok; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const auto rec =
                invariants(normalize_generators(std::vector<std::int64_t>{a, b}));
            check.require(rec.frobenius == a * b - a - b &&
                              rec.genus == (a - 1) * (b - 1) / 2 &&
                              rec.embedding_dim == 2,
                          "two-generator closed form failed at (" +
                              std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    }

    const double elapsed = seconds_since(start);
    check.require(elapsed <= 60.0, "exceeded the 60 s budget");
    return {1, "oracle equivalence on 1000 random sets + two-generator sweep",
            check.ok, check.detail, elapsed};
}

// Shared state: criterion 7's study feeds the per-draw audit of criterion 2.
struct ScalingStudy {
    std::vector<experiments::ScalingRow> rows;
    std::vector<model::SampleOutcome> raw;
    double seconds = 0.0;
};

ScalingStudy run_main_scaling_study() {
    const auto start = std::chrono::steady_clock::now();
    experiments::ScalingConfig config;
    config.p_grid = {1e-2, 1e-3, 1e-4};
    config.trials = 200;
    config.master_seed = 0x5CA11E60ull;
    config.threads = 1; // the criterion's runtime bound is single-threaded
    ScalingStudy study;
    study.rows = experiments::run_scaling(config, &study.raw);
    study.seconds = seconds_since(start);
    return study;
}

// ---------------------------------------------------------------------------
// C7: for p in {1e-2, 1e-3, 1e-4} with 200 trials each: ratio_F_ln and
// ratio_e_ln within [0.05, 5], ratio_F_ln spread below a factor of 3, and the
// envelope fraction at p = 1e-4 at least 0.95. Runtime <= 600 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_7(const ScalingStudy& study) {
    Check check;
    check.require(study.rows.size() == 3, "expected three grid rows");
    double min_ratio = 1e300, max_ratio = 0.0;
    for (const auto& row : study.rows) {
        check.require(row.capped == 0, "a draw hit the truncation cap");
        check.require(row.ratio_f_ln >= 0.05 && row.ratio_f_ln <= 5.0,
                      "ratio_F_ln out of [0.05, 5] at p=" + std::to_string(row.p));
        check.require(row.ratio_e_ln >= 0.05 && row.ratio_e_ln <= 5.0,
                      "ratio_e_ln out of [0.05, 5] at p=" + std::to_string(row.p));
        min_ratio = std::min(min_ratio, row.ratio_f_ln);
        max_ratio = std::max(max_ratio, row.ratio_f_ln);
    }
    check.require(max_ratio < 3.0 * min_ratio,
                  "ratio_F_ln varies by a factor of " +
                      std::to_string(max_ratio / min_ratio) + " across the grid");
    if (check.ok) {
        check.require(study.rows.back().frac_under_envelope_log2 >= 0.95,
                      "envelope fraction below 0.95 at p=1e-4");
    }
    check.require(study.seconds <= 600.0, "exceeded the 600 s budget");
    char spread[64];
    std::snprintf(spread, sizeof(spread), "ratio_F_ln in [%.3f, %.3f]", min_ratio,
                  max_ratio);
    return {7,
            std::string("scaling law brackets, 3 p-values x 200 trials (") + spread +
                ")",
            check.ok, check.detail, study.seconds};
}

// ---------------------------------------------------------------------------
// C2: the elementary inequalities (F+1)/2 <= g <= F+1 and e <= F+2 hold on
// every draw in every study, zero tolerance. Audits the 600 scaling draws,
// 1500 shifted tail draws and 200 extra moderate-p draws.
// ---------------------------------------------------------------------------
CriterionResult criterion_2(const ScalingStudy& study) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    std::int64_t audited = 0;

    auto audit = [&](const InvariantsRecord& inv, const char* where) {
        check.require(inv.frobenius + 1 <= 2 * inv.genus,
                      std::string("(F+1)/2 <= g failed in ") + where);
        check.require(inv.genus <= inv.frobenius + 1,
                      std::string("g <= F+1 failed in ") + where);
        check.require(inv.embedding_dim <= inv.frobenius + 2,
                      std::string("e <= F+2 failed in ") + where);
        ++audited;
    };

    for (const auto& outcome : study.raw) audit(outcome.invariants, "scaling");
    check.require(study.raw.size() == 600, "scaling study must expose 600 draws");

    for (const std::int64_t u : {std::int64_t{2}, std::int64_t{100}, std::int64_t{400}}) {
        for (std::uint64_t t = 0; t < 500; ++t) {
            audit(model::shifted_sample_semigroup(0.3, u, t, 0x7A11ull).invariants,
                  "tail");
        }
    }
    for (std::uint64_t t = 0; t < 200; ++t) {
        audit(model::sample_semigroup(0.3, t, 0x5A3Bull).invariants, "sample");
    }

    return {2,
            "elementary inequalities on all " + std::to_string(audited) +
                " audited draws",
            check.ok, check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// C3: exact subset-sum coverage. Full enumeration at (q, L) = (3, 10) has
// failure probability <= 9 * 2^-10; at (2, 2) the failure probability is
// exactly 1/4. Runtime <= 10 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_3() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    const auto r310 = lemmas::coverall_failure_probability(
        3, 10, lemmas::CoverageMode::exact, 1000000);
    check.require(r310.samples == 59049, "(3,10) must enumerate 3^10 sequences");
    check.require(r310.estimate <= 9.0 * std::exp2(-10.0),
                  "(3,10) failure probability exceeds 9*2^-10");
    const auto r22 = lemmas::coverall_failure_probability(
        2, 2, lemmas::CoverageMode::exact, 1000000);
    check.require(r22.failures * 4 == r22.samples,
                  "(2,2) failure probability is not exactly 1/4");
    const double elapsed = seconds_since(start);
    check.require(elapsed <= 10.0, "exceeded the 10 s budget");
    char detail[96];
    std::snprintf(detail, sizeof(detail), "(3,10): %llu/59049 failures; (2,2): 1/4",
                  static_cast<unsigned long long>(r310.failures));
    return {3, std::string("coverage lemma exact enumeration (") + detail + ")",
            check.ok, check.detail, elapsed};
}

// ---------------------------------------------------------------------------
// C4: the resample distribution is exactly uniform (rational arithmetic) for
// all l <= 3, q <= 4, and the (7,3) Monte Carlo chi-square with 1e6 draws
// passes at significance 1e-3. Runtime <= 60 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    for (std::int64_t q = 1; q <= 4; ++q) {
        for (std::int64_t l = 1; l <= std::min<std::int64_t>(q, 3); ++l) {
            const auto report = lemmas::resample_distribution_exact(q, l, 1000000);
            check.require(report.uniform, "nonuniform at q=" + std::to_string(q) +
                                              " l=" + std::to_string(l));
        }
    }
    const auto mc = lemmas::resample_distribution_mc(7, 3, 1000000, 0xC4C4ull, 1e-3);
    check.require(mc.pass, "chi-square rejected at (7,3)");
    const double elapsed = seconds_since(start);
    check.require(elapsed <= 60.0, "exceeded the 60 s budget");
    char detail[96];
    std::snprintf(detail, sizeof(detail), "chi2 %.1f <= %.1f at 343 cells",
                  mc.statistic, mc.critical);
    return {4, std::string("resample uniformity, exact and Monte Carlo (") + detail +
                   ")",
            check.ok, check.detail, elapsed};
}

// ---------------------------------------------------------------------------
// C5: exact Part(n) matches enumeration for n <= 30, and Part(n) over the
// closed-form estimate stays in [0.9, 1.1] on n in {1000, 2000, 5000} with
// |ratio - 1| non-increasing. Runtime <= 30 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    const auto table = lemmas::partition_table(5000);
    for (std::int64_t n = 0; n <= 30; ++n) {
        check.require(table[static_cast<std::size_t>(n)] ==
                          BigNat(lemmas::partition_count_by_enumeration(n)),
                      "recurrence vs enumeration mismatch at n=" + std::to_string(n));
    }
    double previous_error = 1.0;
    std::string ratios;
    for (const std::int64_t n : {std::int64_t{1000}, std::int64_t{2000}, std::int64_t{5000}}) {
        const double ratio = table[static_cast<std::size_t>(n)].to_double() /
                             lemmas::hardy_ramanujan_estimate(n);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%s%.4f", ratios.empty() ? "" : ", ", ratio);
        ratios += buf;
        check.require(ratio >= 0.9 && ratio <= 1.1,
                      "ratio out of [0.9, 1.1] at n=" + std::to_string(n));
        const double error = std::abs(ratio - 1.0);
        check.require(error <= previous_error,
                      "|ratio - 1| increased at n=" + std::to_string(n));
        previous_error = error;
    }
    const double elapsed = seconds_since(start);
    check.require(elapsed <= 30.0, "exceeded the 30 s budget");
    return {5, "partition counts vs enumeration and estimate (ratios " + ratios + ")",
            check.ok, check.detail, elapsed};
}

// ---------------------------------------------------------------------------
// C6: with the calibrated constant, the partition bound dominates the partial
// sums up to 500 and the measured prefix counts of the extremal sparse set
// for gamma in {0.1, 0.2} up to N = 2000. Zero tolerance after calibration.
// ---------------------------------------------------------------------------
CriterionResult criterion_6() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    const double c = lemmas::calibrate_partition_constant(500);
    const auto table = lemmas::partition_table(500);
    BigNat partial(1);
    for (std::int64_t m = 1; m <= 500; ++m) {
        partial += table[static_cast<std::size_t>(m)];
        check.require(partial.to_double() <= lemmas::partition_sum_bound(1.0, m, c),
                      "partial sum above the bound at m=" + std::to_string(m));
    }
    for (const double gamma : {0.1, 0.2}) {
        std::vector<std::int64_t> gens;
        for (std::int64_t i = 1;; ++i) {
            const auto g =
                static_cast<std::int64_t>(std::ceil(static_cast<double>(i) / gamma));
            if (g > 2000) break;
            gens.push_back(g);
        }
        const auto prefix = semigroup_prefix(normalize_generators(gens), 2000);
        std::int64_t count = 0;
        for (std::int64_t n = 1; n <= 2000; ++n) {
            count += prefix.member[static_cast<std::size_t>(n)];
            check.require(static_cast<double>(count) <=
                              lemmas::partition_sum_bound(gamma, n, c),
                          "prefix count above the bound at gamma=" +
                              std::to_string(gamma) + " N=" + std::to_string(n));
        }
    }
    char label[96];
    std::snprintf(label, sizeof(label),
                  "partition-sum bound dominates with calibrated C = %g", c);
    return {6, label, check.ok, check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// C8: at p = 1e-3 with 200 shared trials, prob_dense <= 0.1 at C = 0.01 and
// >= 0.9 at C = 20, monotone across the grid. Runtime <= 300 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    const std::vector<double> c_grid{0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0};
    const auto rows = experiments::run_transition(1e-3, c_grid, 200, 0x7124A517ull, 1);
    check.require(rows.size() == c_grid.size(), "row count mismatch");
    double prev = -1.0;
    for (const auto& row : rows) {
        check.require(row.prob_dense >= prev, "prob_dense not monotone in C");
        prev = row.prob_dense;
    }
    check.require(rows.front().prob_dense <= 0.1,
                  "prob_dense above 0.1 at C = 0.01");
    check.require(rows.back().prob_dense >= 0.9, "prob_dense below 0.9 at C = 20");
    const double elapsed = seconds_since(start);
    check.require(elapsed <= 300.0, "exceeded the 300 s budget");
    char detail[96];
    std::snprintf(detail, sizeof(detail), "prob_dense %.3f -> %.3f",
                  rows.front().prob_dense, rows.back().prob_dense);
    return {8, std::string("sparse-to-dense transition endpoints (") + detail + ")",
            check.ok, check.detail, elapsed};
}

// ---------------------------------------------------------------------------
// C9: shifted-model tail at p = 0.3, u in {2, 100, 400}, 500 trials:
// mean F stays within 50 * (p^-4 + u^2) in every row. Runtime <= 60 s.
// ---------------------------------------------------------------------------
CriterionResult criterion_9() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    const std::vector<std::int64_t> u_grid{2, 100, 400};
    const auto rows = experiments::run_tail(0.3, u_grid, 500, 0x7A11ull, 1);
    check.require(rows.size() == 3, "row count mismatch");
    std::string margins;
    for (const auto& row : rows) {
        check.require(row.trials == 500, "capped draws in the tail study");
        check.require(row.mean_f_shifted <= 50.0 * row.reference,
                      "mean F above 50x the reference at u=" + std::to_string(row.u));
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%s%.1f/%.0f", margins.empty() ? "" : ", ",
                      row.mean_f_shifted, row.reference);
        margins += buf;
    }
    const double elapsed = seconds_since(start);
    check.require(elapsed <= 60.0, "exceeded the 60 s budget");
    return {9, "shifted-model tail bound (mean/reference: " + margins + ")", check.ok,
            check.detail, elapsed};
}

// ---------------------------------------------------------------------------
// C10: the scaling study writes byte-identical CSV at 1, 4 and 8 threads.
// ---------------------------------------------------------------------------
CriterionResult criterion_10() {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    const auto dir = std::filesystem::temp_directory_path() / "semilab_acceptance_c10";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::vector<std::string> contents;
    for (const int threads : {1, 4, 8}) {
        experiments::StudySpec spec;
        spec.study = "scaling";
        spec.p_grid = {1e-2, 2e-3};
        spec.trials = 64;
        spec.master_seed = 0xD17E2A11ull;
        spec.threads = threads;
        spec.out_path =
            (dir / ("scaling_t" + std::to_string(threads) + ".csv")).string();
        experiments::execute_study(spec);
        contents.push_back(slurp(spec.out_path));
    }
    check.require(!contents[0].empty(), "empty study output");
    check.require(contents[0] == contents[1] && contents[0] == contents[2],
                  "CSV bytes differ across thread counts");
    std::filesystem::remove_all(dir);
    return {10, "thread-count determinism of the scaling CSV", check.ok, check.detail,
            seconds_since(start)};
}

} // namespace

int main() {
    std::vector<CriterionResult> results;
    results.push_back(criterion_1());
    const ScalingStudy study = run_main_scaling_study();
    results.push_back(criterion_2(study));
    results.push_back(criterion_3());
    results.push_back(criterion_4());
    results.push_back(criterion_5());
    results.push_back(criterion_6());
    results.push_back(criterion_7(study));
    results.push_back(criterion_8());
    results.push_back(criterion_9());
    results.push_back(criterion_10());

    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) {
                  return a.number < b.number;
              });
    int failed = 0;
    for (const auto& result : results) {
        if (result.pass) {
            std::printf("[PASS] C%-2d %s (%.2f s)\n", result.number,
                        result.label.c_str(), result.seconds);
        } else {
            ++failed;
            std::printf("[FAIL] C%-2d %s (%.2f s): %s\n", result.number,
                        result.label.c_str(), result.seconds, result.detail.c_str());
        }
    }
    if (failed != 0) {
        std::printf("%d of %zu criteria failed\n", failed, results.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", results.size());
    return 0;
}
