#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "clftraj/dual.hpp"
#include "clftraj/errors.hpp"
#include "clftraj/vec3.hpp"

using namespace clftraj;

namespace {

// central finite difference for a scalar function of one variable
template <typename F>
double central_fd(F f, double x, double h = 1e-7) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// evaluate f on a dual seeded in direction 0 and return d(f)/dx
template <typename F>
double forward_der(F f, double x) {
    return f(ad::lift(x, 0)).der[0];
}

template <typename F>
void check_matches_fd(F f, double x, double tol = 1e-6) {
    const double ad = forward_der(f, x);
    const double fd = central_fd([&](double t) { return f(ad::Dual(t)).val; }, x);
    const double denom = std::max({std::fabs(ad), std::fabs(fd), 1e-3});
    CHECK(std::fabs(ad - fd) / denom <= tol);
}

} // namespace

TEST_CASE("seeding a variable sets exactly one derivative slot") {
    const ad::Dual a = ad::lift(2.0, 0);
    CHECK(a.val == 2.0);
    CHECK(a.der[0] == 1.0);
    CHECK(a.der[1] == 0.0);
    CHECK(a.der[2] == 0.0);

    const ad::Dual c = ad::lift(0.0, 2);
    CHECK(c.val == 0.0);
    CHECK(c.der[0] == 0.0);
    CHECK(c.der[1] == 0.0);
    CHECK(c.der[2] == 1.0);
}

TEST_CASE("seeding outside the direction range is rejected") {
    CHECK_THROWS_AS(ad::lift(1.0, -1), ArgumentError);
    CHECK_THROWS_AS(ad::lift(1.0, ad::kDirections), ArgumentError);
}

TEST_CASE("square of a seeded variable carries 2x in its derivative") {
    const ad::Dual x = ad::lift(3.0, 0);
    const ad::Dual y = x * x;
    CHECK(y.val == 9.0);
    CHECK(y.der[0] == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("sine at zero has unit derivative") {
    const ad::Dual y = sin(ad::lift(0.0, 0));
    CHECK(y.val == 0.0);
    CHECK(y.der[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("vector norm through the number type differentiates componentwise") {
    // f(x) = |(x, 4, 0)| at x = 3 -> 5, df/dx = 3/5
    ad::DualVec3 v;
    v.x = ad::lift(3.0, 0);
    v.y = ad::Dual(4.0);
    v.z = ad::Dual(0.0);
    const ad::Dual n = norm(v);
    CHECK(n.val == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(n.der[0] == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("arithmetic on constant duals is bit-identical to plain doubles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        const ad::Dual da(a), db(b);
        CHECK((da + db).val == a + b);
        CHECK((da - db).val == a - b);
        CHECK((da * db).val == a * b);
        if (b != 0.0) CHECK((da / db).val == a / b);
        CHECK((da + db).der[0] == 0.0);
        CHECK((da * db).der[1] == 0.0);
    }
}

TEST_CASE("elementary functions agree with central finite differences") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        check_matches_fd([](auto t) { return sqrt(t); }, x);
        check_matches_fd([](auto t) { return sin(t) * cos(t); }, x);
        check_matches_fd([](auto t) { return tan(t * 0.5); }, x);
        check_matches_fd([](auto t) { return atan(t); }, x);
        check_matches_fd([](auto t) { return t * t * t / (t + 3.0); }, x);
        check_matches_fd([](auto t) { return pow(t, 2.5); }, x);
    }
    // inverse trig away from the boundary
    std::uniform_real_distribution<double> w(-0.95, 0.95);
    for (int i = 0; i < 200; ++i) {
        const double x = w(rng);
        check_matches_fd([](auto t) { return acos(t); }, x);
        check_matches_fd([](auto t) { return asin(t); }, x);
    }
}

TEST_CASE("two-argument arctangent matches finite differences in both slots") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        if (std::fabs(a) < 0.1 && std::fabs(b) < 0.1) continue;
        const ad::Dual y = atan2(ad::lift(a, 0), ad::lift(b, 1));
        const double fd_a = central_fd([&](double t) { return std::atan2(t, b); }, a);
        const double fd_b = central_fd([&](double t) { return std::atan2(a, t); }, b);
        CHECK(y.der[0] == doctest::Approx(fd_a).epsilon(1e-6));
        CHECK(y.der[1] == doctest::Approx(fd_b).epsilon(1e-6));
    }
}

TEST_CASE("acos clamps arguments within the tolerance window of one") {
    const ad::Dual y = acos(ad::Dual(1.0 + 1e-13));
    CHECK(y.val == 0.0); // clamped to acos(1)
    // derivative factor is evaluated at the nudged point 1 - 1e-12
    const double s = 1.0 - 1e-12;
    const double expected = -1.0 / std::sqrt(1.0 - s * s);
    CHECK(y.der[0] == 0.0); // constant input keeps zero derivative
    const ad::Dual z = acos(ad::lift(1.0 + 1e-13, 0));
    CHECK(z.der[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("acos and asin reject arguments beyond the clamp window") {
    CHECK_THROWS_AS(acos(ad::Dual(1.0 + 1e-11)), NumericDomainError);
    CHECK_THROWS_AS(acos(ad::Dual(-1.0 - 1e-11)), NumericDomainError);
    CHECK_THROWS_AS(asin(ad::Dual(1.0 + 1e-11)), NumericDomainError);
    try {
        acos(ad::Dual(2.0));
        FAIL("expected a domain error");
    } catch (const NumericDomainError& err) {
        CHECK(std::string(err.op()) == "acos");
    }
}

TEST_CASE("asin boundary derivative uses the nudged interior point") {
    const ad::Dual z = asin(ad::lift(-1.0, 0));
    const double s = -(1.0 - 1e-12);
    const double expected = 1.0 / std::sqrt(1.0 - s * s);
    CHECK(z.val == doctest::Approx(std::asin(-1.0)).epsilon(1e-15));
    CHECK(z.der[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("square root requires a strictly positive argument") {
    CHECK_THROWS_AS(sqrt(ad::Dual(0.0)), NumericDomainError);
    CHECK_THROWS_AS(sqrt(ad::Dual(-1.0)), NumericDomainError);
    try {
        sqrt(ad::Dual(-1.0));
        FAIL("expected a domain error");
    } catch (const NumericDomainError& err) {
        CHECK(std::string(err.op()) == "sqrt");
    }
}

TEST_CASE("division by a zero-valued number is rejected") {
    CHECK_THROWS_AS(ad::Dual(1.0) / ad::Dual(0.0), NumericDomainError);
    CHECK_THROWS_AS(ad::Dual(1.0) / 0.0, NumericDomainError);
}

TEST_CASE("tangent near an odd multiple of half pi is rejected") {
    const double pole = std::acos(-1.0) / 2.0;
    CHECK_THROWS_AS(tan(ad::Dual(pole)), NumericDomainError);
}

TEST_CASE("seeding vector components uses one direction per axis") {
    const Vec3d p{1.5, -2.0, 0.25};
    const ad::DualVec3 v = ad::lift_variables(p);
    CHECK(v.x.der[0] == 1.0);
    CHECK(v.x.der[1] == 0.0);
    CHECK(v.y.der[1] == 1.0);
    CHECK(v.z.der[2] == 1.0);
    CHECK(v.z.der[0] == 0.0);
    const ad::DualVec3 c = ad::lift_constant(p);
    for (int k = 0; k < 3; ++k) {
        CHECK(c.x.der[k] == 0.0);
        CHECK(c.y.der[k] == 0.0);
        CHECK(c.z.der[k] == 0.0);
    }
}

TEST_CASE("chain rule composes through nested expressions") {
    // f(x) = acos(x / sqrt(x*x + 1)) has f'(x) = -1/(x*x + 1)
    const double x0 = 0.7;
    const ad::Dual x = ad::lift(x0, 0);
    const ad::Dual f = acos(x / sqrt(x * x + 1.0));
    const double expected = -1.0 / (x0 * x0 + 1.0);
    CHECK(f.der[0] == doctest::Approx(expected).epsilon(1e-12));
}
