#pragma once

#include <cmath>

namespace clftraj {

// Cartesian 3-vector over any scalar type (double for plain arithmetic,
// ad::Dual for derivative propagation).
template <typename T>
struct Vec3 {
    T x{};
    T y{};
    T z{};
};

using Vec3d = Vec3<double>;

template <typename T>
inline Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

template <typename T>
inline Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <typename T>
inline Vec3<T> operator-(const Vec3<T>& a) {
    return {-a.x, -a.y, -a.z};
}

template <typename T, typename S>
inline Vec3<T> operator*(const S& s, const Vec3<T>& a) {
    return {s * a.x, s * a.y, s * a.z};
}

template <typename T, typename S>
inline Vec3<T> operator*(const Vec3<T>& a, const S& s) {
    return s * a;
}

template <typename T, typename S>
inline Vec3<T> operator/(const Vec3<T>& a, const S& s) {
    return {a.x / s, a.y / s, a.z / s};
}

template <typename T>
inline T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
inline Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

template <typename T>
inline T squared_norm(const Vec3<T>& a) {
    return dot(a, a);
}

// Finds ad::sqrt for Dual via ADL, std::sqrt for double.
template <typename T>
inline T norm(const Vec3<T>& a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}

} // namespace clftraj
