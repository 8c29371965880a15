#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "clftraj/cases.hpp"
#include "clftraj/optimize.hpp"
#include "clftraj/propagate.hpp"

// Orchestration of the n-runs-per-mode protocol: seeded PSO runs, JSON run
// records, per-run trajectory history CSVs, and the summary table.
namespace clftraj::campaign {

struct RunRecord {
    cases::CaseId case_id = cases::CaseId::A;
    cases::MatrixMode mode = cases::MatrixMode::kDiagonal;
    int run_index = 0; // 1-based
    std::uint64_t seed = 0;
    std::vector<double> best_x;
    double best_tof_days = 0.0; // penalty value when !converged
    bool converged = false;
    std::vector<double> history; // global best per iteration, non-increasing

    // Knobs the run was executed with, persisted for reproducibility.
    int swarm_size = 0;
    int max_iterations = 0;
    double inertia = 0.0, cognitive = 0.0, social = 0.0, velocity_fraction = 0.0;
    double epsilon = 0.0, rel_tol = 0.0, abs_tol = 0.0, horizon_days = 0.0;
};

struct SummaryRow {
    cases::CaseId case_id = cases::CaseId::A;
    cases::MatrixMode mode = cases::MatrixMode::kDiagonal;
    std::vector<double> tof_days; // per run, in run order
    double average = 0.0;
    int best_index = 0; // 0-based position of the minimum
};

// Average + flagged minimum over runs of one (case, mode). Throws
// ArgumentError on an empty set or mixed case/mode inputs.
SummaryRow summarize(const std::vector<RunRecord>& records);

struct CampaignOptions {
    int n_runs = 5;
    std::uint64_t base_seed = 0; // run k uses base_seed + k - 1
    double epsilon = 1e-4;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double horizon_days = 0.0; // <= 0 selects the case default
    bool parallel = true;
    std::filesystem::path out_dir; // empty = no persistence
};

// Runs n_runs PSO optimizations with consecutive seeds. When out_dir is set,
// persists <out>/<case>/<mode>/run<k>.json and run<k>_history.csv (the best
// decision vector re-propagated with full logging).
std::vector<RunRecord> run_campaign(const cases::TransferCase& tc,
                                    cases::MatrixMode mode,
                                    const CampaignOptions& options);

// JSON persistence (schema: case, mode, seed, config, best_x, best_tof_days,
// converged, history). Read must round-trip what write produced.
void write_run_record(const RunRecord& record, const std::filesystem::path& path);
RunRecord read_run_record(const std::filesystem::path& path);

// Trajectory history CSV: t[TU], t[days], r(3) [DU], v(3) [DU/TU], m [kg],
// V, Vdot, w components, and the classical elements a, e, i, raan, argp.
void write_history_csv(const prop::Trajectory& trajectory, const UnitSystem& units,
                       const std::filesystem::path& path);

// Plain-text table mirroring the per-run/average layout; throws on empty.
std::string render_table(const std::vector<SummaryRow>& rows);

// results/summary.csv: case,mode,run1..runN,average,best_run. Throws on empty.
void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::filesystem::path& path);

// Rebuilds summary rows from persisted run<k>.json files under
// <out>/<case>/<mode>/ for every (case, mode) directory present.
std::vector<SummaryRow> summaries_from_disk(const std::filesystem::path& out_dir);

} // namespace clftraj::campaign
