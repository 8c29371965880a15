#include "clftraj/propagate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace clftraj::prop {

namespace {

constexpr int kDim = 7; // rx ry rz vx vy vz m
using Y = std::array<double, kDim>;

// Dormand-Prince 5(4) coefficients with the order-5 continuous extension.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double er1 = 71.0 / 57600.0, er3 = -71.0 / 16695.0, er4 = 71.0 / 1920.0,
                 er5 = -17253.0 / 339200.0, er6 = 22.0 / 525.0, er7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI step-size controller constants (order-5 error exponent with damping).
constexpr double kSafe = 0.9, kFacMinInv = 5.0, kFacMaxInv = 0.1;
constexpr double kBeta = 0.04, kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kUround = 2.3e-16;

constexpr double kEventTimeTol = 1e-10; // TU; bisection interval width

Vec3d r_of(const Y& y) { return {y[0], y[1], y[2]}; }
Vec3d v_of(const Y& y) { return {y[3], y[4], y[5]}; }

astro::State state_of(const Y& y) { return {r_of(y), v_of(y), y[6]}; }

struct RhsContext {
    const guidance::ClfLaw& law;
    const ThrustModel& thrust;
    Vec3d alpha_hold{}; // zero until a steering direction has been applied
};

void rhs(const Y& y, Y& f, RhsContext& ctx) {
    const astro::State s = state_of(y);
    const Derivative d = dynamics(s, ctx.law, ctx.thrust, ctx.alpha_hold);
    f[0] = d.rdot.x;
    f[1] = d.rdot.y;
    f[2] = d.rdot.z;
    f[3] = d.vdot.x;
    f[4] = d.vdot.y;
    f[5] = d.vdot.z;
    f[6] = d.mdot;
}

double hinit(const Y& y, const Y& f0, double hmax, double rel_tol, double abs_tol,
             RhsContext& ctx) {
    double dnf = 0.0, dny = 0.0;
    for (int i = 0; i < kDim; ++i) {
        const double sk = abs_tol + rel_tol * std::abs(y[i]);
        dnf += (f0[i] / sk) * (f0[i] / sk);
        dny += (y[i] / sk) * (y[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, hmax);

    Y y1, f1;
    for (int i = 0; i < kDim; ++i) y1[i] = y[i] + h * f0[i];
    rhs(y1, f1, ctx);
    double der2 = 0.0;
    for (int i = 0; i < kDim; ++i) {
        const double sk = abs_tol + rel_tol * std::abs(y[i]);
        der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;

    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, std::abs(h) * 1e-3)
                                       : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, hmax});
}

} // namespace

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::kInserted: return "inserted";
        case StopReason::kHorizon: return "horizon";
        case StopReason::kMaxSteps: return "max-steps";
        case StopReason::kPropellantExhausted: return "propellant-exhausted";
        case StopReason::kStepUnderflow: return "step-underflow";
    }
    return "unknown";
}

Derivative dynamics(const astro::State& state, const guidance::ClfLaw& law,
                    const ThrustModel& thrust, Vec3d& alpha_hold) {
    const double rmag = norm(state.r);
    if (rmag <= 0.0) throw ArgumentError("dynamics: zero position");
    const double inv_r3 = 1.0 / (rmag * rmag * rmag);

    Derivative d;
    d.rdot = state.v;
    d.vdot = -inv_r3 * state.r;
    d.mdot = -thrust.mdot;

    if (thrust.thrust != 0.0) {
        if (state.m <= 0.0) throw ArgumentError("dynamics: non-positive mass under thrust");
        Vec3d alpha;
        if (law.steering(state.r, state.v, alpha)) {
            alpha_hold = alpha;
        } else if (squared_norm(alpha_hold) > 0.0) {
            alpha = alpha_hold; // degenerate gradient: keep last direction
        } else {
            const double vmag = norm(state.v);
            if (vmag <= 0.0) throw ArgumentError("dynamics: degenerate gradient at zero velocity");
            alpha = (1.0 / vmag) * state.v;
            alpha_hold = alpha;
        }
        d.vdot = d.vdot + (thrust.thrust / state.m) * alpha;
    }
    return d;
}

Trajectory propagate_until_insertion(const astro::State& initial,
                                     const guidance::ClfLaw& law,
                                     const ThrustModel& thrust,
                                     const PropagationConfig& config) {
    if (config.rel_tol <= 0.0 || config.abs_tol <= 0.0) {
        throw ArgumentError("propagate: tolerances must be positive");
    }
    if (config.max_horizon <= 0.0) throw ArgumentError("propagate: horizon must be positive");
    if (config.epsilon_insertion <= 0.0) throw ArgumentError("propagate: epsilon must be positive");

    const astro::TargetSpec& target = law.target();

    // event function g = |w|_inf - epsilon at a raw state
    auto g_at = [&](const Vec3d& r, const Vec3d& v) {
        double w[astro::kMaxErrorDim];
        const int d = astro::error_vector(r, v, target, w);
        double winf = 0.0;
        for (int i = 0; i < d; ++i) winf = std::max(winf, std::abs(w[i]));
        return winf - config.epsilon_insertion;
    };

    Trajectory traj;
    traj.w_dim = law.dim();

    RhsContext ctx{law, thrust};

    // diagnostics row for histories; Vdot re-derives the applied direction
    auto log_point = [&](double t, const astro::State& s) {
        if (!config.record_history) return;
        const guidance::ClfEval eval = law.eval_velocity(s.r, s.v);
        double accel = 0.0;
        Vec3d alpha{};
        if (thrust.thrust != 0.0) {
            accel = thrust.thrust / s.m;
            Vec3d a_hold = ctx.alpha_hold;
            if (!law.steering(s.r, s.v, alpha)) {
                alpha = squared_norm(a_hold) > 0.0 ? a_hold : (1.0 / norm(s.v)) * s.v;
            }
        }
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.V_history.push_back(eval.V);
        traj.Vdot_history.push_back(law.time_derivative(s.r, s.v, alpha, accel));
        traj.w_history.push_back(eval.w);
    };

    Y y{initial.r.x, initial.r.y, initial.r.z, initial.v.x, initial.v.y, initial.v.z,
        initial.m};
    double t = 0.0;
    const double t_end = config.max_horizon;

    double g_prev = g_at(initial.r, initial.v);
    log_point(0.0, initial);
    if (g_prev <= 0.0) { // already inside the insertion tolerance
        traj.converged = true;
        traj.time_of_flight = 0.0;
        traj.stop = StopReason::kInserted;
        traj.final_state = initial;
        traj.final_w_inf = g_prev + config.epsilon_insertion;
        return traj;
    }

    Y k1, k2, k3, k4, k5, k6, k7, ynew, ytmp;
    rhs(y, k1, ctx);
    double h = hinit(y, k1, t_end, config.rel_tol, config.abs_tol, ctx);
    double facold = 1e-4;
    bool last_rejected = false;

    while (true) {
        if (traj.accepted_steps >= config.max_steps) {
            traj.stop = StopReason::kMaxSteps;
            break;
        }
        if (0.1 * h <= std::abs(t) * kUround) {
            traj.stop = StopReason::kStepUnderflow;
            break;
        }

        // never let the mass cross the floor within a step
        if (thrust.mdot > 0.0) {
            const double h_mass = (y[6] - config.mass_floor_kg) / thrust.mdot;
            if (h_mass <= 1e-12) {
                traj.stop = StopReason::kPropellantExhausted;
                break;
            }
            h = std::min(h, h_mass);
        }
        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }

        // six fresh stages; k7 at the step end doubles as the error stage
        for (int i = 0; i < kDim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(ytmp, k2, ctx);
        for (int i = 0; i < kDim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(ytmp, k3, ctx);
        for (int i = 0; i < kDim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(ytmp, k4, ctx);
        for (int i = 0; i < kDim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(ytmp, k5, ctx);
        for (int i = 0; i < kDim; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(ytmp, k6, ctx);
        for (int i = 0; i < kDim; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                  a76 * k6[i]);
        rhs(ynew, k7, ctx);

        double err = 0.0;
        for (int i = 0; i < kDim; ++i) {
            const double sk =
                config.abs_tol + config.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double ei = h * (er1 * k1[i] + er3 * k3[i] + er4 * k4[i] + er5 * k5[i] +
                                   er6 * k6[i] + er7 * k7[i]);
            err += (ei / sk) * (ei / sk);
        }
        err = std::sqrt(err / kDim);

        const double fac11 = std::pow(err, kExpo1);
        if (err > 1.0) { // reject, retry with a smaller step
            h = h / std::min(kFacMinInv, fac11 / kSafe);
            last_rejected = true;
            continue;
        }

        // accepted
        double fac = fac11 / std::pow(facold, kBeta);
        fac = std::max(kFacMaxInv, std::min(kFacMinInv, fac / kSafe));
        double hnew = h / fac;
        if (last_rejected) hnew = std::min(hnew, h);
        facold = std::max(err, 1e-4);
        last_rejected = false;

        // dense-output coefficients over [t, t + h]
        Y rc1, rc2, rc3, rc4, rc5;
        for (int i = 0; i < kDim; ++i) {
            rc1[i] = y[i];
            const double ydiff = ynew[i] - y[i];
            rc2[i] = ydiff;
            const double bspl = h * k1[i] - ydiff;
            rc3[i] = bspl;
            rc4[i] = ydiff - h * k7[i] - bspl;
            rc5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                          d7 * k7[i]);
        }
        auto dense = [&](double theta) {
            Y out;
            const double th1 = 1.0 - theta;
            for (int i = 0; i < kDim; ++i) {
                out[i] = rc1[i] +
                         theta * (rc2[i] + th1 * (rc3[i] + theta * (rc4[i] + th1 * rc5[i])));
            }
            return out;
        };
        auto g_theta = [&](double theta) {
            const Y yd = dense(theta);
            return g_at(r_of(yd), v_of(yd));
        };

        const double t_new = final_step ? t_end : t + h;
        ++traj.accepted_steps;

        const guidance::ClfEval eval_new = law.eval_velocity(r_of(ynew), v_of(ynew));
        if (eval_new.V < -1e-12) {
            throw ContractViolation("propagate: CLF went negative at an accepted step");
        }
        const double g_new = eval_new.w_inf - config.epsilon_insertion;

        // scan the step for the first sign change of g
        constexpr double kProbes[] = {0.25, 0.5, 0.75, 1.0};
        double th_lo = 0.0, g_lo = g_prev, th_hi = -1.0, g_hi = 0.0;
        for (double th : kProbes) {
            const double g_th = (th == 1.0) ? g_new : g_theta(th);
            if (g_lo > 0.0 && g_th <= 0.0) {
                th_hi = th;
                g_hi = g_th;
                break;
            }
            th_lo = th;
            g_lo = g_th;
        }

        if (th_hi > 0.0) { // insertion inside this step: refine on dense output
            double ta = t + th_lo * h, ga = g_lo;
            double tb = t + th_hi * h, gb = g_hi;
            for (int it = 0; it < 200 && (tb - ta) > kEventTimeTol; ++it) {
                const double tm = 0.5 * (ta + tb);
                const double gm = g_theta((tm - t) / h);
                if (gm <= 0.0) {
                    tb = tm;
                    gb = gm;
                } else {
                    ta = tm;
                    ga = gm;
                }
            }
            double t_root = tb, g_root = gb;
            const double denom = gb - ga;
            if (std::abs(denom) > 0.0) { // one secant polish
                const double ts = std::clamp(tb - gb * (tb - ta) / denom, ta, tb);
                const double gs = g_theta((ts - t) / h);
                if (gs <= 0.0 && std::abs(gs) < std::abs(g_root)) {
                    t_root = ts;
                    g_root = gs;
                }
            }

            const Y y_root = dense((t_root - t) / h);
            traj.converged = true;
            traj.time_of_flight = t_root;
            traj.stop = StopReason::kInserted;
            traj.final_state = state_of(y_root);
            traj.final_w_inf = g_root + config.epsilon_insertion;
            log_point(t_root, traj.final_state);
            return traj;
        }

        t = t_new;
        y = ynew;
        k1 = k7; // FSAL
        g_prev = g_new;
        log_point(t, state_of(y));

        if (final_step) {
            traj.stop = StopReason::kHorizon;
            break;
        }
        if (thrust.mdot > 0.0 && y[6] <= config.mass_floor_kg + 1e-9) {
            traj.stop = StopReason::kPropellantExhausted;
            break;
        }
        h = hnew;
    }

    traj.converged = false;
    traj.final_state = state_of(y);
    traj.final_w_inf = g_prev + config.epsilon_insertion;
    return traj;
}

} // namespace clftraj::prop
