#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "clftraj/errors.hpp"
#include "clftraj/vec3.hpp"

namespace clftraj::ad {

// Number of simultaneous differentiation directions. Three suffice: the
// control law needs d/dv only, and the diagnostics pass reuses the same
// three slots for d/dr.
inline constexpr int kDirections = 3;

// Window around +-1 inside which inverse-trig inputs are clamped instead of
// rejected; beyond it the input is treated as a genuine domain violation.
inline constexpr double kClampWindow = 1e-12;

// Forward-mode dual number: a value and its sensitivities along kDirections
// independent directions. Arithmetic applies the chain rule exactly.
struct Dual {
    double val = 0.0;
    std::array<double, kDirections> der{};

    Dual() = default;
    Dual(double v) : val(v) {} // constants carry zero sensitivities
};

// Seeds a differentiation variable: unit sensitivity along one direction.
inline Dual lift(double x, int direction_index) {
    if (direction_index < 0 || direction_index >= kDirections) {
        throw ArgumentError("lift: direction index out of range");
    }
    Dual d(x);
    d.der[static_cast<std::size_t>(direction_index)] = 1.0;
    return d;
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.val; }

inline Dual operator-(const Dual& a) {
    Dual r(-a.val);
    for (int i = 0; i < kDirections; ++i) r.der[i] = -a.der[i];
    return r;
}

inline Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.val + b.val);
    for (int i = 0; i < kDirections; ++i) r.der[i] = a.der[i] + b.der[i];
    return r;
}
inline Dual operator+(const Dual& a, double b) { Dual r(a); r.val += b; return r; }
inline Dual operator+(double a, const Dual& b) { return b + a; }

inline Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.val - b.val);
    for (int i = 0; i < kDirections; ++i) r.der[i] = a.der[i] - b.der[i];
    return r;
}
inline Dual operator-(const Dual& a, double b) { Dual r(a); r.val -= b; return r; }
inline Dual operator-(double a, const Dual& b) { return -b + a; }

inline Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.val * b.val);
    for (int i = 0; i < kDirections; ++i) r.der[i] = a.der[i] * b.val + a.val * b.der[i];
    return r;
}
inline Dual operator*(const Dual& a, double b) {
    Dual r(a.val * b);
    for (int i = 0; i < kDirections; ++i) r.der[i] = a.der[i] * b;
    return r;
}
inline Dual operator*(double a, const Dual& b) { return b * a; }

inline Dual operator/(const Dual& a, const Dual& b) {
    if (b.val == 0.0) throw NumericDomainError("divide", "zero denominator");
    // value uses true division so constant expressions match plain doubles
    // bit for bit; the derivative may use the reciprocal.
    const double inv = 1.0 / b.val;
    Dual r(a.val / b.val);
    for (int i = 0; i < kDirections; ++i) r.der[i] = (a.der[i] - r.val * b.der[i]) * inv;
    return r;
}
inline Dual operator/(const Dual& a, double b) {
    if (b == 0.0) throw NumericDomainError("divide", "zero denominator");
    const double inv = 1.0 / b;
    Dual r(a.val / b);
    for (int i = 0; i < kDirections; ++i) r.der[i] = a.der[i] * inv;
    return r;
}
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

inline Dual sqrt(const Dual& a) {
    if (a.val <= 0.0) throw NumericDomainError("sqrt", "non-positive argument");
    const double s = std::sqrt(a.val);
    const double f = 0.5 / s;
    Dual r(s);
    for (int i = 0; i < kDirections; ++i) r.der[i] = f * a.der[i];
    return r;
}

inline Dual pow(const Dual& a, double p) {
    if (a.val <= 0.0) throw NumericDomainError("pow", "non-positive base");
    const double v = std::pow(a.val, p);
    const double f = p * v / a.val;
    Dual r(v);
    for (int i = 0; i < kDirections; ++i) r.der[i] = f * a.der[i];
    return r;
}

inline Dual sin(const Dual& a) {
    const double c = std::cos(a.val);
    Dual r(std::sin(a.val));
    for (int i = 0; i < kDirections; ++i) r.der[i] = c * a.der[i];
    return r;
}

inline Dual cos(const Dual& a) {
    const double s = -std::sin(a.val);
    Dual r(std::cos(a.val));
    for (int i = 0; i < kDirections; ++i) r.der[i] = s * a.der[i];
    return r;
}

inline Dual tan(const Dual& a) {
    const double c = std::cos(a.val);
    // |cos| below the clamp window means the argument is within ~1e-12 of a
    // pole and the derivative factor 1/cos^2 is no longer meaningful.
    if (std::fabs(c) < kClampWindow) throw NumericDomainError("tan", "argument at pole");
    const double f = 1.0 / (c * c);
    Dual r(std::tan(a.val));
    for (int i = 0; i < kDirections; ++i) r.der[i] = f * a.der[i];
    return r;
}

inline Dual atan(const Dual& a) {
    const double f = 1.0 / (1.0 + a.val * a.val);
    Dual r(std::atan(a.val));
    for (int i = 0; i < kDirections; ++i) r.der[i] = f * a.der[i];
    return r;
}

inline Dual atan2(const Dual& y, const Dual& x) {
    const double q = x.val * x.val + y.val * y.val;
    if (q == 0.0) throw NumericDomainError("atan2", "both arguments zero");
    Dual r(std::atan2(y.val, x.val));
    for (int i = 0; i < kDirections; ++i) {
        r.der[i] = (x.val * y.der[i] - y.val * x.der[i]) / q;
    }
    return r;
}

namespace detail {

// Clamp policy for inverse-cosine/sine inputs: values within kClampWindow of
// +-1 are pulled onto the boundary, anything further out is rejected.
inline double clamp_unit_interval(double v, const char* op) {
    if (v > 1.0) {
        if (v - 1.0 > kClampWindow) throw NumericDomainError(op, "argument above +1");
        return 1.0;
    }
    if (v < -1.0) {
        if (-1.0 - v > kClampWindow) throw NumericDomainError(op, "argument below -1");
        return -1.0;
    }
    return v;
}

// Derivative factor of acos; at an exactly clamped boundary the unbounded
// derivative is replaced by its value at sign(v)*(1 - kClampWindow).
inline double acos_derivative_factor(double v) {
    if (std::abs(v) == 1.0) {
        const double s = std::copysign(1.0 - kClampWindow, v);
        return -1.0 / std::sqrt(1.0 - s * s);
    }
    return -1.0 / std::sqrt(1.0 - v * v);
}

} // namespace detail

inline double acos(double a) {
    return std::acos(detail::clamp_unit_interval(a, "acos"));
}

inline Dual acos(const Dual& a) {
    const double v = detail::clamp_unit_interval(a.val, "acos");
    const double f = detail::acos_derivative_factor(v);
    Dual r(std::acos(v));
    for (int i = 0; i < kDirections; ++i) r.der[i] = f * a.der[i];
    return r;
}

inline double asin(double a) {
    return std::asin(detail::clamp_unit_interval(a, "asin"));
}

inline Dual asin(const Dual& a) {
    const double v = detail::clamp_unit_interval(a.val, "asin");
    const double f = -detail::acos_derivative_factor(v);
    Dual r(std::asin(v));
    for (int i = 0; i < kDirections; ++i) r.der[i] = f * a.der[i];
    return r;
}

using DualVec3 = Vec3<Dual>;

// Lifts a plain vector to dual constants (zero sensitivities).
inline DualVec3 lift_constant(const Vec3d& v) {
    return {Dual(v.x), Dual(v.y), Dual(v.z)};
}

// Lifts a plain vector as the differentiation variables, component k seeded
// along direction k.
inline DualVec3 lift_variables(const Vec3d& v) {
    return {lift(v.x, 0), lift(v.y, 1), lift(v.z, 2)};
}

} // namespace clftraj::ad
