#pragma once

#include <Eigen/Dense>
#include <array>

#include "clftraj/astrodyn.hpp"
#include "clftraj/vec3.hpp"

// Control-Lyapunov law: V = 1/2 w^T K w over a case's error vector w(r, v),
// with the thrust direction that minimizes dV/dt pointwise,
// alpha* = -dV/dv / |dV/dv|. Velocity/position gradients come from dual-number
// forward differentiation of the full composition w(r, v) -> V.
namespace clftraj::guidance {

// One velocity-direction dual pass: the CLF value, the error vector, and the
// gradient of V with respect to the velocity components.
struct ClfEval {
    double V = 0.0;
    Vec3d dV_dv{};
    std::array<double, astro::kMaxErrorDim> w{};
    int dim = 0;
    double w_inf = 0.0; // max_i |w_i|
};

class ClfLaw {
public:
    // Below this gradient norm the steering direction is degenerate and the
    // propagation policy (hold previous direction) takes over.
    static constexpr double kDegenerateGradient = 1e-14;

    // K must be symmetric with dimension target.dim().
    ClfLaw(const Eigen::MatrixXd& K, const astro::TargetSpec& target);

    int dim() const { return dim_; }
    const astro::TargetSpec& target() const { return target_; }
    double K_at(int i, int j) const { return K_[static_cast<std::size_t>(i * dim_ + j)]; }

    // V = 1/2 w^T K w (plain arithmetic, no gradients).
    double value(const Vec3d& r, const Vec3d& v) const;

    // V, w, and dV/dv in one forward pass with velocity lifted.
    ClfEval eval_velocity(const Vec3d& r, const Vec3d& v) const;

    // dV/dr by a second pass with position lifted (diagnostics only).
    Vec3d position_gradient(const Vec3d& r, const Vec3d& v) const;

    // alpha* = -dV/dv normalized. Returns false (alpha untouched) when the
    // gradient norm is below kDegenerateGradient.
    bool steering(const Vec3d& r, const Vec3d& v, Vec3d& alpha) const;

    // dV/dt = dV/dr . v + dV/dv . (-r/|r|^3 + thrust_accel * alpha);
    // thrust_accel = T_max/m in canonical units.
    double time_derivative(const Vec3d& r, const Vec3d& v, const Vec3d& alpha,
                           double thrust_accel) const;

private:
    template <typename S>
    S value_from_state(const Vec3<S>& r, const Vec3<S>& v) const;

    std::array<double, astro::kMaxErrorDim * astro::kMaxErrorDim> K_{};
    astro::TargetSpec target_;
    int dim_ = 0;
};

} // namespace clftraj::guidance
