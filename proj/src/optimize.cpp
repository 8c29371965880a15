#include "clftraj/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "clftraj/spdparam.hpp"

namespace clftraj::pso {

void evaluate_swarm_serial(const Objective& f,
                           const std::vector<std::vector<double>>& positions,
                           std::vector<double>& values) {
    values.resize(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) values[i] = f(positions[i]);
}

void evaluate_swarm_parallel(const Objective& f,
                             const std::vector<std::vector<double>>& positions,
                             std::vector<double>& values) {
    values.resize(positions.size());
    const long n = static_cast<long>(positions.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] = f(positions[static_cast<std::size_t>(i)]);
    }
}

PsoResult pso_minimize(const Objective& f, const PsoConfig& config) {
    if (config.swarm_size <= 0 || config.max_iterations <= 0) {
        throw ArgumentError("pso_minimize: swarm size and iterations must be positive");
    }
    const std::size_t dim = config.lower.size();
    if (dim == 0 || config.upper.size() != dim) {
        throw ArgumentError("pso_minimize: bound vectors empty or mismatched");
    }
    for (std::size_t d = 0; d < dim; ++d) {
        if (!(config.lower[d] < config.upper[d])) {
            throw ArgumentError("pso_minimize: lower bound must be below upper bound");
        }
    }

    const std::size_t n = static_cast<std::size_t>(config.swarm_size);
    std::vector<double> vmax(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        vmax[d] = config.velocity_fraction * (config.upper[d] - config.lower[d]);
    }

    // All randomness is drawn here, in particle-major order, so the result
    // is a function of (seed, config, f) alone regardless of how the
    // evaluations are scheduled.
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<double>> x(n, std::vector<double>(dim));
    std::vector<std::vector<double>> vel(n, std::vector<double>(dim));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t d = 0; d < dim; ++d) {
            x[p][d] = config.lower[d] + unit(rng) * (config.upper[d] - config.lower[d]);
        }
        for (std::size_t d = 0; d < dim; ++d) {
            vel[p][d] = (2.0 * unit(rng) - 1.0) * vmax[d];
        }
    }

    std::vector<double> fx(n);
    auto evaluate = [&]() {
        if (config.parallel_evaluation) {
            evaluate_swarm_parallel(f, x, fx);
        } else {
            evaluate_swarm_serial(f, x, fx);
        }
    };

    evaluate();
    std::vector<std::vector<double>> pbest_x = x;
    std::vector<double> pbest_f = fx;

    PsoResult result;
    result.evaluations = static_cast<long>(n);
    std::size_t gbest = 0;
    for (std::size_t p = 1; p < n; ++p) {
        if (pbest_f[p] < pbest_f[gbest]) gbest = p; // ties keep the lowest index
    }
    result.best_x = pbest_x[gbest];
    result.best_f = pbest_f[gbest];
    result.history.push_back(result.best_f);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double r1 = unit(rng);
                const double r2 = unit(rng);
                double vnew = config.inertia * vel[p][d] +
                              config.cognitive * r1 * (pbest_x[p][d] - x[p][d]) +
                              config.social * r2 * (result.best_x[d] - x[p][d]);
                vnew = std::clamp(vnew, -vmax[d], vmax[d]);
                double xnew = x[p][d] + vnew;
                if (xnew < config.lower[d]) {
                    xnew = config.lower[d];
                    vnew = 0.0;
                } else if (xnew > config.upper[d]) {
                    xnew = config.upper[d];
                    vnew = 0.0;
                }
                x[p][d] = xnew;
                vel[p][d] = vnew;
            }
        }

        evaluate();
        result.evaluations += static_cast<long>(n);
        for (std::size_t p = 0; p < n; ++p) {
            if (fx[p] < pbest_f[p]) {
                pbest_f[p] = fx[p];
                pbest_x[p] = x[p];
            }
        }
        for (std::size_t p = 0; p < n; ++p) {
            if (pbest_f[p] < result.best_f) {
                result.best_f = pbest_f[p];
                result.best_x = pbest_x[p];
            }
        }
        result.history.push_back(result.best_f);
    }
    return result;
}

void decision_bounds(int error_dim, cases::MatrixMode mode,
                     std::vector<double>& lower, std::vector<double>& upper) {
    if (error_dim < 1) throw ArgumentError("decision_bounds: dimension must be >= 1");
    lower.clear();
    upper.clear();
    const int n_eig = error_dim;
    for (int i = 0; i < n_eig; ++i) {
        lower.push_back(1e-3); // strict-positivity floor inside the (0, 100] box
        upper.push_back(100.0);
    }
    if (mode == cases::MatrixMode::kFull) {
        const int n_ang = spd::angle_count(error_dim);
        for (int i = 0; i < n_ang; ++i) {
            lower.push_back(0.0);
            upper.push_back(2.0 * astro::kPi);
        }
    }
}

Eigen::MatrixXd weight_matrix_from_decision(const std::vector<double>& x, int error_dim,
                                            cases::MatrixMode mode) {
    const std::size_t n = static_cast<std::size_t>(error_dim);
    if (mode == cases::MatrixMode::kDiagonal) {
        if (x.size() != n) throw ArgumentError("weight_matrix_from_decision: expected N weights");
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(error_dim, error_dim);
        for (int i = 0; i < error_dim; ++i) {
            const double w = x[static_cast<std::size_t>(i)];
            if (!(w > 0.0)) throw ArgumentError("weight_matrix_from_decision: weights must be positive");
            K(i, i) = w;
        }
        return K;
    }
    const std::size_t n_ang = static_cast<std::size_t>(spd::angle_count(error_dim));
    if (x.size() != n + n_ang) {
        throw ArgumentError("weight_matrix_from_decision: expected N + N(N-1)/2 parameters");
    }
    const std::vector<double> eigenvalues(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    const std::vector<double> angles(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
    return spd::build_spd(eigenvalues, angles);
}

TrajectoryObjective::TrajectoryObjective(const cases::CanonicalCase& cc,
                                         cases::MatrixMode mode)
    : cc_(cc), mode_(mode) {
    pcfg_.max_horizon = cc.horizon_tu;
    // Stall guard. Weightings that drive the error to a pointwise-stationary
    // plateau make the steering direction swing across razor-thin gradient
    // sign changes, and the step controller collapses to microscopic steps;
    // such runs never insert and only burn budget. Healthy trajectories stay
    // under ~25 accepted steps per TU end to end, so twice that over the full
    // horizon (plus fixed headroom) can never clip a converging run, while
    // capping the cost of stalled ones. Callers needing the library default
    // can raise it through propagation_config().
    const double cap = 100000.0 + 50.0 * cc.horizon_tu;
    pcfg_.max_steps = std::min(pcfg_.max_steps, static_cast<long>(cap));
}

prop::Trajectory TrajectoryObjective::propagate(const std::vector<double>& x,
                                                bool record_history) const {
    const Eigen::MatrixXd K = weight_matrix_from_decision(x, cc_.target.dim(), mode_);
    const guidance::ClfLaw law(K, cc_.target);
    const prop::ThrustModel thrust{cc_.thrust_canonical, cc_.mdot_canonical};
    prop::PropagationConfig pcfg = pcfg_;
    pcfg.record_history = record_history;
    return prop::propagate_until_insertion(cc_.initial, law, thrust, pcfg);
}

double TrajectoryObjective::operator()(const std::vector<double>& x) const {
    const double horizon_days = cc_.units.tu_to_days(pcfg_.max_horizon);
    try {
        const prop::Trajectory traj = propagate(x, false);
        if (traj.converged) return cc_.units.tu_to_days(traj.time_of_flight);
        return horizon_days + 100.0 * traj.final_w_inf;
    } catch (const NumericDomainError&) {
        // totality guard: freak states (exact zeros, collision geometries)
        // score an order worse than any timed-out trajectory
        return 10.0 * horizon_days;
    } catch (const UnsupportedOrbitError&) {
        return 10.0 * horizon_days;
    }
}

} // namespace clftraj::pso
