// Command-line front end: exact invariants for explicit generator sets, and
// seeded, parallel, CSV/JSON-emitting studies of the random semigroup model.
//
// Exit codes: 0 success, 2 invalid arguments or domain errors in the input,
// 3 failed check suite, 4 I/O error.

#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "semilab/core.hpp"
#include "semilab/errors.hpp"
#include "semilab/experiments.hpp"

namespace {

int default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int run(int argc, char** argv) {
    CLI::App app{"numerical semigroup laboratory"};
    app.require_subcommand(1);

    // invariants <gens...>
    std::vector<std::int64_t> gen_args;
    CLI::App* cmd_invariants =
        app.add_subcommand("invariants", "exact F, g, e, q of <generators>");
    cmd_invariants->add_option("generators", gen_args, "generator list")
        ->required()
        ->expected(-1);

    // sample --p --trials --seed [--out]
    semilab::experiments::StudySpec sample_spec;
    sample_spec.study = "sample";
    CLI::App* cmd_sample =
        app.add_subcommand("sample", "draw random semigroups, one CSV row per trial");
    cmd_sample->add_option("--p", sample_spec.p, "inclusion probability")->required();
    cmd_sample->add_option("--trials", sample_spec.trials, "number of draws")->required();
    cmd_sample->add_option("--seed", sample_spec.master_seed, "master seed")->required();
    cmd_sample->add_option("--out", sample_spec.out_path, "output path (default stdout)");
    cmd_sample->add_option("--format", sample_spec.format, "csv or json");

    // scaling --p-grid --trials --seed [--threads] [--out] [--format]
    semilab::experiments::StudySpec scaling_spec;
    scaling_spec.study = "scaling";
    scaling_spec.threads = default_threads();
    CLI::App* cmd_scaling =
        app.add_subcommand("scaling", "invariant growth across a decreasing p grid");
    cmd_scaling->add_option("--p-grid", scaling_spec.p_grid, "strictly decreasing p values")
        ->required()
        ->delimiter(',');
    cmd_scaling->add_option("--trials", scaling_spec.trials, "draws per p")->required();
    cmd_scaling->add_option("--seed", scaling_spec.master_seed, "master seed")->required();
    cmd_scaling->add_option("--threads", scaling_spec.threads, "worker threads");
    cmd_scaling->add_option("--out", scaling_spec.out_path, "output path (default stdout)");
    cmd_scaling->add_option("--format", scaling_spec.format, "csv or json");

    // transition --p --c-grid --trials --seed [--threads] [--out] [--format]
    semilab::experiments::StudySpec transition_spec;
    transition_spec.study = "transition";
    transition_spec.threads = default_threads();
    CLI::App* cmd_transition = app.add_subcommand(
        "transition", "sparse-to-dense transition at N = C p^-1 ln^2(1/p)");
    cmd_transition->add_option("--p", transition_spec.p, "inclusion probability")
        ->required();
    cmd_transition
        ->add_option("--c-grid", transition_spec.c_grid, "strictly increasing C values")
        ->required()
        ->delimiter(',');
    cmd_transition->add_option("--trials", transition_spec.trials, "shared draws")
        ->required();
    cmd_transition->add_option("--seed", transition_spec.master_seed, "master seed")
        ->required();
    cmd_transition->add_option("--threads", transition_spec.threads, "worker threads");
    cmd_transition->add_option("--out", transition_spec.out_path,
                               "output path (default stdout)");
    cmd_transition->add_option("--format", transition_spec.format, "csv or json");

    // tail --p --u-grid --trials --seed [--threads] [--out] [--format]
    semilab::experiments::StudySpec tail_spec;
    tail_spec.study = "tail";
    tail_spec.threads = default_threads();
    CLI::App* cmd_tail =
        app.add_subcommand("tail", "shifted-model mean F against p^-4 + u^2");
    cmd_tail->add_option("--p", tail_spec.p, "inclusion probability")->required();
    cmd_tail->add_option("--u-grid", tail_spec.u_grid, "even shifts u >= 2")
        ->required()
        ->delimiter(',');
    cmd_tail->add_option("--trials", tail_spec.trials, "draws per u")->required();
    cmd_tail->add_option("--seed", tail_spec.master_seed, "master seed")->required();
    cmd_tail->add_option("--threads", tail_spec.threads, "worker threads");
    cmd_tail->add_option("--out", tail_spec.out_path, "output path (default stdout)");
    cmd_tail->add_option("--format", tail_spec.format, "csv or json");

    // lemmas [--budget] [--out]
    semilab::experiments::StudySpec lemma_spec;
    lemma_spec.study = "lemmas";
    lemma_spec.budget = 1000000;
    lemma_spec.format = "json";
    CLI::App* cmd_lemmas =
        app.add_subcommand("lemmas", "exact-mode verification suite, JSON report");
    cmd_lemmas->add_option("--budget", lemma_spec.budget,
                           "enumeration budget for exact checks");
    cmd_lemmas->add_option("--out", lemma_spec.out_path, "output path (default stdout)");

    // rerun handled at the library level through manifests; not a subcommand.

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_invariants->parsed()) {
            const auto gens = semilab::normalize_generators(gen_args);
            std::printf("%s\n", semilab::invariants(gens).to_string().c_str());
            return 0;
        }
        const semilab::experiments::StudySpec* spec = nullptr;
        if (cmd_sample->parsed()) spec = &sample_spec;
        if (cmd_scaling->parsed()) spec = &scaling_spec;
        if (cmd_transition->parsed()) spec = &transition_spec;
        if (cmd_tail->parsed()) spec = &tail_spec;
        if (cmd_lemmas->parsed()) spec = &lemma_spec;
        const auto result = semilab::experiments::execute_study(*spec);
        if (!result.ok) {
            std::fprintf(stderr, "suite failed: %s\n", result.failure_detail.c_str());
            return 3;
        }
        return 0;
    } catch (const semilab::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const semilab::BudgetExceeded& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return 3;
    } catch (const semilab::InvariantViolation& e) {
        std::fprintf(stderr, "internal consistency failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        // InvalidGenerators, NotCofinite, InvalidParameter and kin: bad input.
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
