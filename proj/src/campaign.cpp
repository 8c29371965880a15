#include "clftraj/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace clftraj::campaign {

namespace fs = std::filesystem;
using nlohmann::json;

SummaryRow summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw ArgumentError("summarize: no run records");
    SummaryRow row;
    row.case_id = records.front().case_id;
    row.mode = records.front().mode;
    for (const RunRecord& rec : records) {
        if (rec.case_id != row.case_id || rec.mode != row.mode) {
            throw ArgumentError("summarize: mixed case/mode records");
        }
        row.tof_days.push_back(rec.best_tof_days);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < row.tof_days.size(); ++i) {
        sum += row.tof_days[i];
        if (row.tof_days[i] < row.tof_days[static_cast<std::size_t>(row.best_index)]) {
            row.best_index = static_cast<int>(i);
        }
    }
    row.average = sum / static_cast<double>(row.tof_days.size());
    return row;
}

std::vector<RunRecord> run_campaign(const cases::TransferCase& tc,
                                    cases::MatrixMode mode,
                                    const CampaignOptions& options) {
    if (options.n_runs <= 0) throw ArgumentError("run_campaign: n_runs must be positive");

    const cases::CanonicalCase cc = cases::canonicalize(tc, options.horizon_days);
    pso::TrajectoryObjective objective(cc, mode);
    objective.propagation_config().epsilon_insertion = options.epsilon;
    objective.propagation_config().rel_tol = options.rel_tol;
    objective.propagation_config().abs_tol = options.abs_tol;

    pso::PsoConfig cfg;
    cfg.swarm_size = tc.swarm_size;
    cfg.max_iterations = tc.max_iterations;
    cfg.parallel_evaluation = options.parallel;
    pso::decision_bounds(tc.error_dim(), mode, cfg.lower, cfg.upper);

    fs::path dir;
    if (!options.out_dir.empty()) {
        dir = options.out_dir / cases::to_string(tc.id) / cases::to_string(mode);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("run_campaign: cannot create " + dir.string() + ": " + ec.message());
    }

    std::vector<RunRecord> records;
    for (int k = 1; k <= options.n_runs; ++k) {
        cfg.seed = options.base_seed + static_cast<std::uint64_t>(k - 1);
        const pso::PsoResult result =
            pso::pso_minimize([&objective](const std::vector<double>& x) { return objective(x); }, cfg);

        RunRecord rec;
        rec.case_id = tc.id;
        rec.mode = mode;
        rec.run_index = k;
        rec.seed = cfg.seed;
        rec.best_x = result.best_x;
        rec.best_tof_days = result.best_f;
        rec.history = result.history;
        rec.swarm_size = cfg.swarm_size;
        rec.max_iterations = cfg.max_iterations;
        rec.inertia = cfg.inertia;
        rec.cognitive = cfg.cognitive;
        rec.social = cfg.social;
        rec.velocity_fraction = cfg.velocity_fraction;
        rec.epsilon = options.epsilon;
        rec.rel_tol = options.rel_tol;
        rec.abs_tol = options.abs_tol;
        rec.horizon_days = cc.units.tu_to_days(cc.horizon_tu);

        // best-of-run trajectory, re-propagated with full logging; also the
        // ground truth for the converged flag
        const prop::Trajectory best_traj = objective.propagate(rec.best_x, !dir.empty());
        rec.converged = best_traj.converged;

        if (!dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof(name), "run%d", k);
            write_run_record(rec, dir / (std::string(name) + ".json"));
            write_history_csv(best_traj, cc.units, dir / (std::string(name) + "_history.csv"));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_run_record(const RunRecord& record, const fs::path& path) {
    json j;
    j["case"] = cases::to_string(record.case_id);
    j["mode"] = cases::to_string(record.mode);
    j["run_index"] = record.run_index;
    j["seed"] = record.seed;
    j["best_x"] = record.best_x;
    j["best_tof_days"] = record.best_tof_days;
    j["converged"] = record.converged;
    j["history"] = record.history;
    j["config"] = {
        {"swarm_size", record.swarm_size},
        {"max_iterations", record.max_iterations},
        {"inertia", record.inertia},
        {"cognitive", record.cognitive},
        {"social", record.social},
        {"velocity_fraction", record.velocity_fraction},
        {"epsilon", record.epsilon},
        {"rel_tol", record.rel_tol},
        {"abs_tol", record.abs_tol},
        {"horizon_days", record.horizon_days},
    };
    std::ofstream out(path);
    if (!out) throw IoError("write_run_record: cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write_run_record: write failed for " + path.string());
}

RunRecord read_run_record(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_run_record: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("read_run_record: " + path.string() + ": " + e.what());
    }
    RunRecord rec;
    try {
        rec.case_id = cases::parse_case_id(j.at("case").get<std::string>());
        rec.mode = cases::parse_mode(j.at("mode").get<std::string>());
        rec.run_index = j.at("run_index").get<int>();
        rec.seed = j.at("seed").get<std::uint64_t>();
        rec.best_x = j.at("best_x").get<std::vector<double>>();
        rec.best_tof_days = j.at("best_tof_days").get<double>();
        rec.converged = j.at("converged").get<bool>();
        rec.history = j.at("history").get<std::vector<double>>();
        const json& c = j.at("config");
        rec.swarm_size = c.at("swarm_size").get<int>();
        rec.max_iterations = c.at("max_iterations").get<int>();
        rec.inertia = c.at("inertia").get<double>();
        rec.cognitive = c.at("cognitive").get<double>();
        rec.social = c.at("social").get<double>();
        rec.velocity_fraction = c.at("velocity_fraction").get<double>();
        rec.epsilon = c.at("epsilon").get<double>();
        rec.rel_tol = c.at("rel_tol").get<double>();
        rec.abs_tol = c.at("abs_tol").get<double>();
        rec.horizon_days = c.at("horizon_days").get<double>();
    } catch (const json::exception& e) {
        throw IoError("read_run_record: " + path.string() + ": " + e.what());
    }
    return rec;
}

void write_history_csv(const prop::Trajectory& trajectory, const UnitSystem& units,
                       const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_history_csv: cannot open " + path.string());

    out << "t_tu,t_days";
    out << ",rx,ry,rz,vx,vy,vz,m_kg,V,Vdot";
    for (int i = 0; i < trajectory.w_dim; ++i) out << ",w" << (i + 1);
    out << ",a,e,inc,raan,argp\n";

    char buf[32];
    auto put = [&](double value) {
        std::snprintf(buf, sizeof(buf), "%.12g", value);
        out << ',' << buf;
    };
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        const double t = trajectory.times[k];
        const astro::State& s = trajectory.states[k];
        std::snprintf(buf, sizeof(buf), "%.12g", t);
        out << buf;
        put(units.tu_to_days(t));
        put(s.r.x); put(s.r.y); put(s.r.z);
        put(s.v.x); put(s.v.y); put(s.v.z);
        put(s.m);
        put(trajectory.V_history[k]);
        put(trajectory.Vdot_history[k]);
        for (int i = 0; i < trajectory.w_dim; ++i) {
            put(trajectory.w_history[k][static_cast<std::size_t>(i)]);
        }
        const astro::OrbitalElements el = astro::elements_from_state(s.r, s.v);
        put(el.a); put(el.e); put(el.inc); put(el.raan); put(el.argp);
        out << '\n';
    }
    if (!out) throw IoError("write_history_csv: write failed for " + path.string());
}

std::string render_table(const std::vector<SummaryRow>& rows) {
    if (rows.empty()) throw ArgumentError("render_table: no summary rows");
    std::size_t max_runs = 0;
    for (const SummaryRow& row : rows) max_runs = std::max(max_runs, row.tof_days.size());

    std::ostringstream os;
    os << "Case  Mode    ";
    for (std::size_t i = 1; i <= max_runs; ++i) {
        char head[24];
        std::snprintf(head, sizeof(head), " %9s%zu", "Run", i);
        os << head;
    }
    os << "    Average\n";
    for (const SummaryRow& row : rows) {
        char cell[48];
        std::snprintf(cell, sizeof(cell), "%-5s %-8s", cases::to_string(row.case_id).c_str(),
                      cases::to_string(row.mode).c_str());
        os << cell;
        for (std::size_t i = 0; i < max_runs; ++i) {
            if (i < row.tof_days.size()) {
                // the best run is flagged with '*'
                std::snprintf(cell, sizeof(cell), " %9.4f%c", row.tof_days[i],
                              static_cast<int>(i) == row.best_index ? '*' : ' ');
            } else {
                std::snprintf(cell, sizeof(cell), " %10s", "");
            }
            os << cell;
        }
        char avg[24];
        std::snprintf(avg, sizeof(avg), " %10.4f\n", row.average);
        os << avg;
    }
    return os.str();
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const fs::path& path) {
    if (rows.empty()) throw ArgumentError("write_summary_csv: no summary rows");
    std::size_t max_runs = 0;
    for (const SummaryRow& row : rows) max_runs = std::max(max_runs, row.tof_days.size());

    std::ofstream out(path);
    if (!out) throw IoError("write_summary_csv: cannot open " + path.string());
    out << "case,mode";
    for (std::size_t i = 1; i <= max_runs; ++i) out << ",run" << i;
    out << ",average,best_run\n";
    char buf[32];
    for (const SummaryRow& row : rows) {
        out << cases::to_string(row.case_id) << ',' << cases::to_string(row.mode);
        for (std::size_t i = 0; i < max_runs; ++i) {
            out << ',';
            if (i < row.tof_days.size()) {
                std::snprintf(buf, sizeof(buf), "%.12g", row.tof_days[i]);
                out << buf;
            }
        }
        std::snprintf(buf, sizeof(buf), "%.12g", row.average);
        out << ',' << buf << ',' << (row.best_index + 1) << '\n';
    }
    if (!out) throw IoError("write_summary_csv: write failed for " + path.string());
}

std::vector<SummaryRow> summaries_from_disk(const fs::path& out_dir) {
    std::vector<SummaryRow> rows;
    const char* case_names[] = {"A", "B", "C", "D", "E"};
    const char* mode_names[] = {"diagonal", "full"};
    for (const char* cn : case_names) {
        for (const char* mn : mode_names) {
            const fs::path dir = out_dir / cn / mn;
            if (!fs::is_directory(dir)) continue;
            std::vector<RunRecord> records;
            for (int k = 1;; ++k) {
                char name[32];
                std::snprintf(name, sizeof(name), "run%d.json", k);
                const fs::path file = dir / name;
                if (!fs::exists(file)) break;
                records.push_back(read_run_record(file));
            }
            if (!records.empty()) rows.push_back(summarize(records));
        }
    }
    return rows;
}

} // namespace clftraj::campaign
