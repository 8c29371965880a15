#pragma once

#include <cmath>
#include <numbers>
#include <type_traits>

#include "clftraj/dual.hpp"
#include "clftraj/errors.hpp"
#include "clftraj/vec3.hpp"

// Two-body astrodynamics in canonical units (mu = 1): element/state
// conversions and the targeting error vectors the control law drives to zero.
namespace clftraj::astro {

inline constexpr double kPi = std::numbers::pi;

// Threshold below which a norm is treated as degenerate (circular orbit,
// equatorial orbit) and the corresponding angle falls back to a convention.
inline constexpr double kDegenerateNorm = 1e-12;

// Classical orbital elements, angles in radians.
struct OrbitalElements {
    double a = 0.0;    // semi-major axis [DU]
    double e = 0.0;    // eccentricity
    double inc = 0.0;  // inclination
    double raan = 0.0; // right ascension of ascending node
    double argp = 0.0; // argument of periapsis
    double nu = 0.0;   // true anomaly
};

struct Rv {
    Vec3d r;
    Vec3d v;
};

// Propagation state: position, velocity [canonical], spacecraft mass [kg].
struct State {
    Vec3d r;
    Vec3d v;
    double m = 0.0;
};

// Which scalar/vector residuals make up the targeting error vector.
enum class ErrorSet {
    kMomentumEcc,          // [h - h_T, e - e_T]
    kMomentumEccInc,       // + [i - i_T]
    kMomentumEccIncNode,   // + [wrap(raan - raan_T)]
    kVectorMomentumEcc,    // [hvec - hvec_T ; evec - evec_T]
};

inline constexpr int kMaxErrorDim = 6;

inline int error_dim(ErrorSet set) {
    switch (set) {
        case ErrorSet::kMomentumEcc: return 2;
        case ErrorSet::kMomentumEccInc: return 3;
        case ErrorSet::kMomentumEccIncNode: return 4;
        case ErrorSet::kVectorMomentumEcc: return 6;
    }
    throw ContractViolation("error_dim: unknown error set");
}

// Target values for one transfer; only the fields used by `set` are read.
struct TargetSpec {
    ErrorSet set = ErrorSet::kMomentumEcc;
    double h_t = 0.0;
    double e_t = 0.0;
    double inc_t = 0.0;
    double raan_t = 0.0;
    Vec3d hvec_t{};
    Vec3d evec_t{};

    int dim() const { return error_dim(set); }
};

// Wraps an angle-valued scalar into (-pi, pi]. For duals the wrap is a
// constant shift, so sensitivities pass through unchanged.
inline double wrap_pm_pi(double x) {
    double w = std::remainder(x, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

inline ad::Dual wrap_pm_pi(const ad::Dual& x) {
    return x + (wrap_pm_pi(x.val) - x.val);
}

// Eccentricity vector for mu = 1: ((v.v - 1/|r|) r - (r.v) v).
template <typename S>
Vec3<S> eccentricity_vector(const Vec3<S>& r, const Vec3<S>& v) {
    const S rmag = norm(r);
    return (dot(v, v) - 1.0 / rmag) * r - dot(r, v) * v;
}

// Fills out[0..dim-1] with the targeting error vector for (r, v) against the
// target; returns the dimension. Branch decisions (node quadrant, degeneracy)
// are taken on values, so the templated dual path differentiates the branch
// actually active at the evaluation point.
template <typename S>
int error_vector(const Vec3<S>& r, const Vec3<S>& v, const TargetSpec& target,
                 S out[kMaxErrorDim]) {
    using ad::value_of;
    using std::sqrt; // ADL: ad::sqrt for duals

    const Vec3<S> h = cross(r, v);

    if (target.set == ErrorSet::kVectorMomentumEcc) {
        const Vec3<S> ev = eccentricity_vector(r, v);
        out[0] = h.x - target.hvec_t.x;
        out[1] = h.y - target.hvec_t.y;
        out[2] = h.z - target.hvec_t.z;
        out[3] = ev.x - target.evec_t.x;
        out[4] = ev.y - target.evec_t.y;
        out[5] = ev.z - target.evec_t.z;
        return 6;
    }

    const S hmag = norm(h);
    const S emag = norm(eccentricity_vector(r, v));
    out[0] = hmag - target.h_t;
    out[1] = emag - target.e_t;
    if (target.set == ErrorSet::kMomentumEcc) return 2;

    const S inc = acos(h.z / hmag); // ADL: ad::acos clamps near +-1
    out[2] = inc - target.inc_t;
    if (target.set == ErrorSet::kMomentumEccInc) return 3;

    // Node vector n = z_hat x h = (-h_y, h_x, 0); raan = acos(n_x/|n|) with
    // the lower half-plane mirrored to (pi, 2pi).
    const S nx = -h.y;
    const S ny = h.x;
    const S nmag = sqrt(nx * nx + ny * ny);
    S raan;
    if (value_of(nmag) < kDegenerateNorm) {
        raan = S(0.0); // equatorial: node direction undefined, convention x_hat
    } else {
        raan = acos(nx / nmag);
        if (value_of(ny) < 0.0) raan = 2.0 * kPi - raan;
    }
    out[3] = wrap_pm_pi(raan - target.raan_t);
    return 4;
}

// Specific angular momentum magnitude of the orbit (a, e) for mu = 1.
inline double momentum_from_elements(double a, double e) {
    const double p = a * (1.0 - e * e);
    if (p <= 0.0) throw ArgumentError("momentum_from_elements: non-positive semi-latus rectum");
    return std::sqrt(p);
}

// Classical elements from a Cartesian state (mu = 1). Degenerate geometries
// use fixed conventions: equatorial -> raan = 0 (node = x_hat), circular ->
// argp = 0 (periapsis direction = node line).
OrbitalElements elements_from_state(const Vec3d& r, const Vec3d& v);

// Cartesian state from classical elements (mu = 1). Requires an elliptic
// orbit: a > 0, 0 <= e < 1.
Rv state_from_elements(const OrbitalElements& el);

} // namespace clftraj::astro
