#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "semilab/random_model.hpp"

namespace semilab::experiments {

inline constexpr const char* kToolName = "semilab";
inline constexpr const char* kToolVersion = "0.1.0";

struct ScalingConfig {
    std::vector<double> p_grid; // strictly decreasing, in (0, 1)
    std::int64_t trials = 0;
    std::uint64_t master_seed = 0;
    int threads = 1;
    std::string output_path;
};

// Per-p aggregate of the main scaling study. The _ln ratios normalize by
// natural-log powers; the envelope fraction uses base-2 logs, and both bases
// are spelled out in the column names.
struct ScalingRow {
    double p = 0.0;
    std::int64_t trials = 0; // aggregated draws (capped ones excluded)
    std::int64_t capped = 0;
    double mean_f = 0.0;
    std::int64_t median_f = 0;
    std::int64_t q10_f = 0;
    std::int64_t q90_f = 0;
    double mean_g = 0.0;
    double mean_e = 0.0;
    double ratio_f_ln = 0.0; // mean_F / (p^-1 ln^2(1/p))
    double ratio_e_ln = 0.0; // mean_e / ln^2(1/p)
    double ratio_g_f = 0.0;  // mean_g / mean_F
    double frac_under_envelope_log2 = 0.0; // F <= 5 p^-1 (log2(1/p))^2
};

struct TransitionRow {
    double p = 0.0;
    double c = 0.0;
    std::int64_t n = 0; // realized truncation, round(C p^-1 ln^2(1/p))
    std::int64_t trials = 0;
    double prob_dense = 0.0;   // empirical P[F < N]
    double mean_density = 0.0; // mean |<A> cap [N]| / N
};

struct TailRow {
    double p = 0.0;
    std::int64_t u = 0;
    std::int64_t trials = 0;
    double mean_f_shifted = 0.0;
    double reference = 0.0; // p^-4 + u^2
};

// Full description of one CLI invocation; a manifest embeds it so any run
// can be reproduced byte-identically.
struct StudySpec {
    std::string study; // invariants|sample|scaling|transition|tail|lemmas
    std::vector<double> p_grid;
    double p = 0.0;
    std::vector<double> c_grid;
    std::vector<std::int64_t> u_grid;
    std::int64_t trials = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t budget = 0;
    int threads = 1;
    std::string out_path; // empty writes to stdout and skips the manifest
    std::string format = "csv";

    nlohmann::json to_json() const;
    static StudySpec from_json(const nlohmann::json& j);
};

struct RunManifest {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    StudySpec spec;
    double wall_clock_seconds = 0.0;
    std::vector<std::pair<std::string, std::int64_t>> row_counts;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

// Draws `trials` outcomes per p and aggregates. Deterministic for a fixed
// (config, master_seed) at any thread count: trials own derived streams and
// aggregation folds in trial order. Capped trials (sampler hit its cap) are
// excluded from the aggregates and counted. When `raw` is non-null it
// receives every uncapped outcome, grid-major then trial-major.
std::vector<ScalingRow> run_scaling(const ScalingConfig& config,
                                    std::vector<model::SampleOutcome>* raw = nullptr,
                                    const model::SamplerOptions& sampler_opts = {});

// Shared-draw transition study: each trial samples one A and every C row is
// evaluated on it. prob_dense is non-decreasing in C by construction.
std::vector<TransitionRow> run_transition(double p, std::span<const double> c_grid,
                                          std::int64_t trials,
                                          std::uint64_t master_seed,
                                          int threads = 1);

std::vector<TailRow> run_tail(double p, std::span<const std::int64_t> u_grid,
                              std::int64_t trials, std::uint64_t master_seed,
                              int threads = 1);

struct LemmaCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    nlohmann::json data;
};

struct LemmaSuiteReport {
    std::uint64_t budget = 0;
    std::vector<LemmaCheck> checks;
    bool all_pass = false;

    nlohmann::json to_json() const;
};

// Exact-mode verification bundle: coverage examples and bound sweep,
// resample uniformity, partition recurrence vs enumeration, and the
// calibrated partition-sum bound. A check that cannot run inside `budget`
// is reported failed with a diagnostic rather than thrown.
LemmaSuiteReport run_lemma_suite(std::uint64_t budget);

// CSV renderers. Reals carry 17 significant digits so files are
// byte-reproducible.
std::string scaling_csv_header();
std::string to_csv(const ScalingRow& row);
std::string transition_csv_header();
std::string to_csv(const TransitionRow& row);
std::string tail_csv_header();
std::string to_csv(const TailRow& row);
std::string sample_csv_header();

nlohmann::json to_json(const ScalingRow& row);
nlohmann::json to_json(const TransitionRow& row);
nlohmann::json to_json(const TailRow& row);

struct ExecutionResult {
    RunManifest manifest;
    bool ok = true;          // false when a lemma-suite check failed
    std::string failure_detail;
};

// Runs the described study, writes its output file (or stdout) plus a
// manifest at <out>.manifest.json, and reports what happened.
ExecutionResult execute_study(const StudySpec& spec);

// Reads a manifest and re-executes its embedded spec; outputs are rewritten
// to the same paths.
ExecutionResult rerun_from_manifest(const std::string& manifest_path);

} // namespace semilab::experiments
