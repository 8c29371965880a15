#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "clftraj/campaign.hpp"
#include "clftraj/cases.hpp"
#include "clftraj/errors.hpp"
#include "clftraj/validation.hpp"

namespace {

using namespace clftraj;

std::string default_out_dir() {
    const char* env = std::getenv("CLFTRAJ_OUT");
    return env ? env : "results";
}

int do_run(const std::string& case_arg, const std::string& mode_arg, int runs,
           std::uint64_t seed, const std::string& out, double epsilon, double rel_tol,
           double abs_tol, double horizon_days, int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    std::vector<cases::CaseId> ids;
    if (case_arg == "all") {
        ids = {cases::CaseId::A, cases::CaseId::B, cases::CaseId::C, cases::CaseId::D,
               cases::CaseId::E};
    } else {
        ids = {cases::parse_case_id(case_arg)};
    }
    std::vector<cases::MatrixMode> modes;
    if (mode_arg == "both") {
        modes = {cases::MatrixMode::kDiagonal, cases::MatrixMode::kFull};
    } else {
        modes = {cases::parse_mode(mode_arg)};
    }

    campaign::CampaignOptions options;
    options.n_runs = runs;
    options.base_seed = seed;
    options.epsilon = epsilon;
    options.rel_tol = rel_tol;
    options.abs_tol = abs_tol;
    options.horizon_days = horizon_days;
    options.out_dir = out;

    std::vector<campaign::SummaryRow> rows;
    for (cases::CaseId id : ids) {
        const cases::TransferCase tc = cases::load_case(id);
        for (cases::MatrixMode mode : modes) {
            std::cerr << "case " << cases::to_string(id) << " / " << cases::to_string(mode)
                      << ": " << runs << " runs, swarm " << tc.swarm_size << " x "
                      << tc.max_iterations << " iterations\n";
            const std::vector<campaign::RunRecord> records =
                campaign::run_campaign(tc, mode, options);
            for (const campaign::RunRecord& rec : records) {
                std::cerr << "  run " << rec.run_index << ": " << rec.best_tof_days
                          << " days" << (rec.converged ? "" : " (not converged)") << "\n";
            }
            rows.push_back(campaign::summarize(records));
        }
    }
    campaign::write_summary_csv(rows, std::filesystem::path(out) / "summary.csv");
    std::cout << campaign::render_table(rows);
    return 0;
}

int do_report(const std::string& out) {
    const std::vector<campaign::SummaryRow> rows =
        campaign::summaries_from_disk(std::filesystem::path(out));
    if (rows.empty()) {
        std::cerr << "no run records found under " << out << "\n";
        return 1;
    }
    campaign::write_summary_csv(rows, std::filesystem::path(out) / "summary.csv");
    std::cout << campaign::render_table(rows);
    return 0;
}

int do_validate(std::uint64_t seed) {
    const std::vector<validation::CheckResult> results =
        validation::run_validation_suite(seed);
    int failures = 0;
    for (const validation::CheckResult& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail
                  << ")\n";
        if (!r.passed) ++failures;
    }
    std::cout << results.size() - static_cast<std::size_t>(failures) << " passed, "
              << failures << " failed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyapunov-control low-thrust transfer optimizer"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Optimize weighting matrices for benchmark transfers");
    std::string case_arg = "all", mode_arg = "both", out = default_out_dir();
    int runs = 5, threads = 0;
    std::uint64_t seed = 42;
    double epsilon = 1e-4, rel_tol = 1e-10, abs_tol = 1e-12, horizon_days = 0.0;
    run->add_option("--case", case_arg, "Transfer case: A, B, C, D, E, or all")
        ->default_val("all");
    run->add_option("--mode", mode_arg, "Weight matrix mode: diagonal, full, or both")
        ->default_val("both");
    run->add_option("--runs", runs, "Optimizer runs per (case, mode)")->default_val(5);
    run->add_option("--seed", seed, "Base RNG seed; run k uses seed + k - 1")->default_val(42);
    run->add_option("--out", out, "Output directory (env CLFTRAJ_OUT, else 'results')");
    run->add_option("--epsilon", epsilon, "Insertion tolerance on |w|_inf")->default_val(1e-4);
    run->add_option("--rel-tol", rel_tol, "Integrator relative tolerance")->default_val(1e-10);
    run->add_option("--abs-tol", abs_tol, "Integrator absolute tolerance")->default_val(1e-12);
    run->add_option("--horizon-days", horizon_days,
                    "Propagation horizon in days (0 = per-case default: A 30, B 300, C 4, D 60, E 250)")
        ->default_val(0.0);
    run->add_option("--threads", threads, "Worker threads for swarm evaluation (0 = all)")
        ->default_val(0);

    // report
    auto* report = app.add_subcommand("report", "Rebuild the summary table from stored run records");
    std::string report_out = default_out_dir();
    report->add_option("--out", report_out, "Directory holding run records");

    // validate
    auto* validate = app.add_subcommand("validate", "Run the numerical property suite");
    std::uint64_t validate_seed = 7;
    validate->add_option("--seed", validate_seed, "RNG seed for the property draws")
        ->default_val(7);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return do_run(case_arg, mode_arg, runs, seed, out, epsilon, rel_tol, abs_tol,
                          horizon_days, threads);
        }
        if (report->parsed()) return do_report(report_out);
        if (validate->parsed()) return do_validate(validate_seed);
    } catch (const clftraj::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
