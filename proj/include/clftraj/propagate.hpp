#pragma once

#include <array>
#include <vector>

#include "clftraj/astrodyn.hpp"
#include "clftraj/guidance.hpp"
#include "clftraj/vec3.hpp"

// Closed-loop propagation of r'' = -r/|r|^3 + (T/m) alpha*(r, v), m' = -mdot,
// with an adaptive embedded Runge-Kutta 5(4) pair (Dormand-Prince
// coefficients), dense output, and event detection for orbit insertion
// (|w|_inf <= epsilon).
namespace clftraj::prop {

// Thrust magnitude [kg DU/TU^2] and mass flow [kg/TU], both canonical.
// thrust = 0 gives ballistic two-body motion.
struct ThrustModel {
    double thrust = 0.0;
    double mdot = 0.0;
};

struct PropagationConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double epsilon_insertion = 1e-4;
    double max_horizon = 0.0;     // TU; must be > 0
    long max_steps = 5'000'000;   // accepted-step cap
    double mass_floor_kg = 1.0;   // breach = propellant exhausted
    bool record_history = false;  // log state/V/Vdot/w at accepted steps
};

enum class StopReason {
    kInserted,
    kHorizon,
    kMaxSteps,
    kPropellantExhausted,
    kStepUnderflow,
};

const char* to_string(StopReason reason);

struct Trajectory {
    bool converged = false;
    double time_of_flight = 0.0; // TU; valid iff converged
    StopReason stop = StopReason::kHorizon;
    astro::State final_state{};
    double final_w_inf = 0.0;
    long accepted_steps = 0;

    // Populated only when PropagationConfig::record_history is set.
    std::vector<double> times; // TU
    std::vector<astro::State> states;
    std::vector<double> V_history;
    std::vector<double> Vdot_history;
    std::vector<std::array<double, astro::kMaxErrorDim>> w_history;
    int w_dim = 0;
};

// Closed-loop state derivative. The steering direction is re-evaluated from
// (r, v) on every call; when the CLF velocity gradient is degenerate the
// previously used direction `alpha_hold` is kept, and if none exists yet
// (zero vector) the inertial velocity direction is used. On success
// alpha_hold carries the direction actually applied.
struct Derivative {
    Vec3d rdot{};
    Vec3d vdot{};
    double mdot = 0.0;
};
Derivative dynamics(const astro::State& state, const guidance::ClfLaw& law,
                    const ThrustModel& thrust, Vec3d& alpha_hold);

// Integrates until |w|_inf <= epsilon (event time refined on dense output by
// bisection plus one secant polish), the horizon or step cap is reached, the
// mass floor is breached, or the step size underflows.
Trajectory propagate_until_insertion(const astro::State& initial,
                                     const guidance::ClfLaw& law,
                                     const ThrustModel& thrust,
                                     const PropagationConfig& config);

} // namespace clftraj::prop
