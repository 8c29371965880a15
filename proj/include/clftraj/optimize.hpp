#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "clftraj/cases.hpp"
#include "clftraj/propagate.hpp"

// Global-best particle swarm optimization over box-bounded decision vectors,
// and the trajectory objective it minimizes: time of flight in days (or a
// feasibility-graded penalty when the propagation does not insert).
namespace clftraj::pso {

struct PsoConfig {
    int swarm_size = 0;
    int max_iterations = 0;
    double inertia = 0.7298;
    double cognitive = 1.49618;
    double social = 1.49618;
    // Velocity clamp as a fraction of each variable's range; initial
    // velocities are drawn uniformly within the clamp.
    double velocity_fraction = 0.2;
    std::uint64_t seed = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    // Evaluate the swarm with the OpenMP kernel (true) or the serial
    // reference (false). Results are identical; only wall time differs.
    bool parallel_evaluation = true;
};

struct PsoResult {
    std::vector<double> best_x;
    double best_f = 0.0;
    std::vector<double> history; // global best after each iteration
    long evaluations = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

// Serial reference kernel: values[i] = f(positions[i]) in index order.
void evaluate_swarm_serial(const Objective& f,
                           const std::vector<std::vector<double>>& positions,
                           std::vector<double>& values);

// OpenMP kernel; bitwise-identical to the serial reference for any thread
// count (each slot is computed independently and written once).
void evaluate_swarm_parallel(const Objective& f,
                             const std::vector<std::vector<double>>& positions,
                             std::vector<double>& values);

// Synchronous global-best PSO: inertia + cognitive + social velocity update,
// velocities clamped, positions clamped to the box (velocity zeroed on the
// clamped component). All random draws happen in the serial master loop, so
// the result depends only on (seed, config, f), never on thread count.
PsoResult pso_minimize(const Objective& f, const PsoConfig& config);

// Decision-vector box for a case: diagonal mode has N weights in
// [1e-3, 100]; full mode has N eigenvalues in [1e-3, 100] followed by
// N(N-1)/2 angles in [0, 2pi).
void decision_bounds(int error_dim, cases::MatrixMode mode,
                     std::vector<double>& lower, std::vector<double>& upper);

// Weight matrix from a decision vector (diag(x) or the eigendecomposition
// construction).
Eigen::MatrixXd weight_matrix_from_decision(const std::vector<double>& x,
                                            int error_dim, cases::MatrixMode mode);

// Time-of-flight objective [days]: build K, propagate to insertion. If the
// run does not converge the value is horizon_days + 100 |w(t_end)|_inf;
// propagation failures score the same penalty from the last state (total:
// the swarm never aborts).
class TrajectoryObjective {
public:
    TrajectoryObjective(const cases::CanonicalCase& cc, cases::MatrixMode mode);
    double operator()(const std::vector<double>& x) const;
    prop::Trajectory propagate(const std::vector<double>& x, bool record_history) const;
    const cases::CanonicalCase& canonical() const { return cc_; }
    cases::MatrixMode mode() const { return mode_; }

private:
    cases::CanonicalCase cc_;
    cases::MatrixMode mode_;
    prop::PropagationConfig pcfg_;

public:
    prop::PropagationConfig& propagation_config() { return pcfg_; }
    const prop::PropagationConfig& propagation_config() const { return pcfg_; }
};

} // namespace clftraj::pso
