#include "clftraj/guidance.hpp"

#include <cmath>

#include "clftraj/dual.hpp"
#include "clftraj/errors.hpp"

namespace clftraj::guidance {

ClfLaw::ClfLaw(const Eigen::MatrixXd& K, const astro::TargetSpec& target)
    : target_(target), dim_(target.dim()) {
    if (K.rows() != dim_ || K.cols() != dim_) {
        throw ContractViolation("ClfLaw: weight matrix dimension does not match error vector");
    }
    const double scale = std::max(K.cwiseAbs().maxCoeff(), 1.0);
    if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ContractViolation("ClfLaw: weight matrix not symmetric");
    }
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            K_[static_cast<std::size_t>(i * dim_ + j)] = K(i, j);
        }
    }
}

template <typename S>
S ClfLaw::value_from_state(const Vec3<S>& r, const Vec3<S>& v) const {
    S w[astro::kMaxErrorDim];
    const int d = astro::error_vector(r, v, target_, w);
    S quad(0.0);
    for (int i = 0; i < d; ++i) {
        S row(0.0);
        for (int j = 0; j < d; ++j) row = row + K_at(i, j) * w[j];
        quad = quad + w[i] * row;
    }
    return 0.5 * quad;
}

double ClfLaw::value(const Vec3d& r, const Vec3d& v) const {
    return value_from_state(r, v);
}

ClfEval ClfLaw::eval_velocity(const Vec3d& r, const Vec3d& v) const {
    using ad::Dual;
    const ad::DualVec3 rd = ad::lift_constant(r);
    const ad::DualVec3 vd = ad::lift_variables(v);

    Dual w[astro::kMaxErrorDim];
    const int d = astro::error_vector(rd, vd, target_, w);
    Dual quad(0.0);
    for (int i = 0; i < d; ++i) {
        Dual row(0.0);
        for (int j = 0; j < d; ++j) row = row + K_at(i, j) * w[j];
        quad = quad + w[i] * row;
    }

    ClfEval out;
    out.dim = d;
    out.V = 0.5 * quad.val;
    out.dV_dv = {0.5 * quad.der[0], 0.5 * quad.der[1], 0.5 * quad.der[2]};
    for (int i = 0; i < d; ++i) {
        out.w[static_cast<std::size_t>(i)] = w[i].val;
        out.w_inf = std::max(out.w_inf, std::abs(w[i].val));
    }
    return out;
}

Vec3d ClfLaw::position_gradient(const Vec3d& r, const Vec3d& v) const {
    const ad::DualVec3 rd = ad::lift_variables(r);
    const ad::DualVec3 vd = ad::lift_constant(v);
    const ad::Dual V = value_from_state(rd, vd);
    return {V.der[0], V.der[1], V.der[2]};
}

bool ClfLaw::steering(const Vec3d& r, const Vec3d& v, Vec3d& alpha) const {
    const ClfEval eval = eval_velocity(r, v);
    const double gnorm = norm(eval.dV_dv);
    if (gnorm < kDegenerateGradient) return false;
    alpha = (-1.0 / gnorm) * eval.dV_dv;
    return true;
}

double ClfLaw::time_derivative(const Vec3d& r, const Vec3d& v, const Vec3d& alpha,
                               double thrust_accel) const {
    const Vec3d dV_dr = position_gradient(r, v);
    const Vec3d dV_dv = eval_velocity(r, v).dV_dv;
    const double rmag = norm(r);
    const Vec3d vdot = (-1.0 / (rmag * rmag * rmag)) * r + thrust_accel * alpha;
    return dot(dV_dr, v) + dot(dV_dv, vdot);
}

} // namespace clftraj::guidance
