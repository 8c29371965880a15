#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "clftraj/astrodyn.hpp"
#include "clftraj/cases.hpp"
#include "clftraj/errors.hpp"
#include "clftraj/units.hpp"
#include "test_util.hpp"

using namespace clftraj;

namespace {

double wrap_diff(double a, double b) { return astro::wrap_pm_pi(a - b); }

} // namespace

TEST_CASE("time unit follows from the distance unit and gravitational parameter") {
    const UnitSystem earth = earth_units();
    CHECK(earth.tu_s == doctest::Approx(806.8109991).epsilon(1e-9));
    const UnitSystem vesta = vesta_units();
    CHECK(vesta.tu_s == doctest::Approx(1164.492680).epsilon(1e-9));
    // one DU and one TU map back to themselves
    CHECK(earth.km_to_du(earth.du_km) == 1.0);
    CHECK(earth.tu_to_days(earth.days_to_tu(3.5)) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK_THROWS_AS(UnitSystem(0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(UnitSystem(1.0, -1.0), ArgumentError);
}

TEST_CASE("one newton around earth converts to the frozen canonical value") {
    const UnitSystem earth = earth_units();
    const double t = earth.thrust_newton_to_canonical(1.0);
    CHECK(t == doctest::Approx(0.10205864646142197).epsilon(1e-12));
    // dimensional oracle: canonical acceleration back to m/s^2 equals T/m
    const double accel_si = t / 300.0 * earth.du_km * 1000.0 / (earth.tu_s * earth.tu_s);
    CHECK(accel_si == doctest::Approx(1.0 / 300.0).epsilon(1e-12));
}

TEST_CASE("mass flow matches the thrust over exhaust velocity rate") {
    const UnitSystem earth = earth_units();
    const double mdot_tu = earth.mass_flow_canonical(1.0, 3100.0);
    const double mdot_si = mdot_tu / earth.tu_s; // kg/s
    CHECK(mdot_si == doctest::Approx(1.0 / (3100.0 * kStandardGravity)).epsilon(1e-15));
    CHECK(mdot_si == doctest::Approx(3.2898e-5).epsilon(5e-4)); // quoted rounded figure
    CHECK_THROWS_AS(earth.mass_flow_canonical(1.0, 0.0), ArgumentError);
}

TEST_CASE("circular equatorial state gives vertical momentum and zero eccentricity") {
    const Vec3d r{1.0, 0.0, 0.0};
    const Vec3d v{0.0, 1.0, 0.0};
    const Vec3d h = cross(r, v);
    CHECK(h.x == 0.0);
    CHECK(h.y == 0.0);
    CHECK(h.z == 1.0);
    const Vec3d ev = astro::eccentricity_vector(r, v);
    CHECK(norm(ev) <= 1e-15);
}

TEST_CASE("supersynchronous speed shifts the eccentricity vector along position") {
    const Vec3d r{1.0, 0.0, 0.0};
    const Vec3d v{0.0, 1.1, 0.0};
    const Vec3d h = cross(r, v);
    CHECK(h.z == doctest::Approx(1.1).epsilon(1e-15));
    const Vec3d ev = astro::eccentricity_vector(r, v);
    CHECK(ev.x == doctest::Approx(0.21).epsilon(1e-14));
    CHECK(std::fabs(ev.y) <= 1e-15);
    CHECK(std::fabs(ev.z) <= 1e-15);
}

TEST_CASE("eccentricity vector is orthogonal to the momentum vector") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i) {
        const astro::Rv rv = testutil::random_rv(rng);
        const Vec3d h = cross(rv.r, rv.v);
        const Vec3d ev = astro::eccentricity_vector(rv.r, rv.v);
        const double bound = 1e-12 * std::max(1.0, norm(h) * norm(ev));
        CHECK(std::fabs(dot(h, ev)) <= bound);
    }
}

TEST_CASE("circular equatorial state maps to unit elements") {
    const astro::OrbitalElements el = astro::elements_from_state({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
    CHECK(el.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(el.e <= 1e-14);
    CHECK(el.inc <= 1e-14);
}

TEST_CASE("unit circular elements map to the canonical start state") {
    astro::OrbitalElements el;
    el.a = 1.0;
    const astro::Rv rv = astro::state_from_elements(el);
    CHECK(rv.r.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(rv.r.y) <= 1e-15);
    CHECK(std::fabs(rv.r.z) <= 1e-15);
    CHECK(std::fabs(rv.v.x) <= 1e-15);
    CHECK(rv.v.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(rv.v.z) <= 1e-15);
}

TEST_CASE("element construction rejects open orbits") {
    astro::OrbitalElements el;
    el.a = -1.0;
    el.e = 1.5;
    CHECK_THROWS_AS(astro::state_from_elements(el), UnsupportedOrbitError);
    el.a = 1.0;
    el.e = 1.0;
    CHECK_THROWS_AS(astro::state_from_elements(el), UnsupportedOrbitError);
    // hyperbolic state back to elements is rejected too
    CHECK_THROWS_AS(astro::elements_from_state({1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}),
                    UnsupportedOrbitError);
}

TEST_CASE("geostationary transfer row survives the element round trip") {
    const UnitSystem earth = earth_units();
    astro::OrbitalElements el;
    el.a = earth.km_to_du(24505.9);
    el.e = 0.725;
    el.inc = 7.05 * astro::kPi / 180.0;
    el.raan = 0.0;
    el.argp = 0.0;
    el.nu = 0.0;
    const astro::Rv rv = astro::state_from_elements(el);
    const astro::OrbitalElements back = astro::elements_from_state(rv.r, rv.v);
    CHECK(earth.du_to_km(back.a) == doctest::Approx(24505.9).epsilon(1e-9));
    CHECK(back.e == doctest::Approx(0.725).epsilon(1e-9));
    CHECK(back.inc * 180.0 / astro::kPi == doctest::Approx(7.05).epsilon(1e-9));
}

TEST_CASE("negative node angle normalizes modulo a full turn") {
    // small-body polar orbit tabulated with a negative node angle
    const cases::TransferCase tc = cases::load_case(cases::CaseId::D);
    const cases::CanonicalCase cc = cases::canonicalize(tc, 0.0);
    const astro::OrbitalElements back = astro::elements_from_state(cc.initial.r, cc.initial.v);
    const double raan_deg = back.raan * 180.0 / astro::kPi;
    CHECK(raan_deg == doctest::Approx(360.0 - 24.60).epsilon(1e-9));
    CHECK(back.argp * 180.0 / astro::kPi == doctest::Approx(156.90).epsilon(1e-9));
    CHECK(back.inc * 180.0 / astro::kPi == doctest::Approx(90.06).epsilon(1e-9));
}

TEST_CASE("random elements survive the state round trip") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 1000; ++i) {
        const astro::OrbitalElements el = testutil::random_elements(rng);
        const astro::Rv rv = astro::state_from_elements(el);
        const astro::OrbitalElements back = astro::elements_from_state(rv.r, rv.v);
        CHECK(std::fabs(back.a - el.a) <= 1e-9 * std::max(1.0, std::fabs(el.a)));
        CHECK(std::fabs(back.e - el.e) <= 1e-9);
        CHECK(std::fabs(back.inc - el.inc) <= 1e-9);
        CHECK(std::fabs(wrap_diff(back.raan, el.raan)) <= 1e-9);
        CHECK(std::fabs(wrap_diff(back.argp, el.argp)) <= 1e-9);
        CHECK(std::fabs(wrap_diff(back.nu, el.nu)) <= 1e-9);
    }
}

TEST_CASE("degenerate geometries use the fixed angle conventions") {
    // equatorial elliptic: node undefined -> raan 0, periapsis measured from x
    astro::OrbitalElements el;
    el.a = 2.0;
    el.e = 0.3;
    el.inc = 0.0;
    el.raan = 0.0;
    el.argp = 1.2;
    el.nu = 0.7;
    const astro::Rv rv = astro::state_from_elements(el);
    const astro::OrbitalElements back = astro::elements_from_state(rv.r, rv.v);
    CHECK(back.raan == 0.0);
    CHECK(std::fabs(wrap_diff(back.argp, 1.2)) <= 1e-9);
    CHECK(std::fabs(wrap_diff(back.nu, 0.7)) <= 1e-9);

    // circular inclined: periapsis undefined -> argp 0, anomaly from the node
    astro::OrbitalElements ci;
    ci.a = 1.5;
    ci.e = 0.0;
    ci.inc = 0.8;
    ci.raan = 0.9;
    ci.argp = 0.0;
    ci.nu = 2.1;
    const astro::Rv rv2 = astro::state_from_elements(ci);
    const astro::OrbitalElements back2 = astro::elements_from_state(rv2.r, rv2.v);
    CHECK(back2.argp == 0.0);
    CHECK(std::fabs(wrap_diff(back2.raan, 0.9)) <= 1e-9);
    CHECK(std::fabs(wrap_diff(back2.nu, 2.1)) <= 1e-9);
}

TEST_CASE("momentum magnitude from shape elements matches its definition") {
    CHECK(astro::momentum_from_elements(1.0, 0.0) == 1.0);
    CHECK(astro::momentum_from_elements(2.0, 0.5) ==
          doctest::Approx(std::sqrt(2.0 * 0.75)).epsilon(1e-15));
    CHECK_THROWS_AS(astro::momentum_from_elements(1.0, 1.0), ArgumentError);
}

TEST_CASE("angle wrap lands in the half-open symmetric interval") {
    CHECK(astro::wrap_pm_pi(0.0) == 0.0);
    CHECK(astro::wrap_pm_pi(astro::kPi) == doctest::Approx(astro::kPi).epsilon(1e-15));
    CHECK(astro::wrap_pm_pi(-astro::kPi) == doctest::Approx(astro::kPi).epsilon(1e-15));
    CHECK(astro::wrap_pm_pi(3.0 * astro::kPi / 2.0) ==
          doctest::Approx(-astro::kPi / 2.0).epsilon(1e-14));
    // the dual overload shifts the value but keeps sensitivities
    const ad::Dual x = ad::lift(3.0 * astro::kPi / 2.0, 1);
    const ad::Dual w = astro::wrap_pm_pi(x);
    CHECK(w.val == doctest::Approx(-astro::kPi / 2.0).epsilon(1e-14));
    CHECK(w.der[1] == 1.0);
}

TEST_CASE("error vector dimensions follow the case residual sets") {
    CHECK(astro::error_dim(astro::ErrorSet::kMomentumEcc) == 2);
    CHECK(astro::error_dim(astro::ErrorSet::kMomentumEccInc) == 3);
    CHECK(astro::error_dim(astro::ErrorSet::kMomentumEccIncNode) == 4);
    CHECK(astro::error_dim(astro::ErrorSet::kVectorMomentumEcc) == 6);
}

TEST_CASE("error vector vanishes on the target orbit for every case") {
    std::mt19937_64 rng(271);
    for (const cases::CaseId id :
         {cases::CaseId::A, cases::CaseId::B, cases::CaseId::C, cases::CaseId::D,
          cases::CaseId::E}) {
        const cases::TransferCase tc = cases::load_case(id);
        const cases::CanonicalCase cc = cases::canonicalize(tc, 0.0);

        // target orbit with free elements given arbitrary values
        astro::OrbitalElements el;
        el.a = cc.units.km_to_du(tc.at_km);
        el.e = tc.et;
        el.inc = std::isnan(tc.it_deg) ? 0.4 : tc.it_deg * astro::kPi / 180.0;
        el.argp = std::isnan(tc.argpt_deg) ? 1.0 : tc.argpt_deg * astro::kPi / 180.0;
        el.raan = std::isnan(tc.raant_deg)
                      ? 2.0
                      : cases::canonicalize(tc, 0.0).target.raan_t;
        if (id == cases::CaseId::E) {
            // the six-component case pins the full orientation
            el.inc = tc.it_deg * astro::kPi / 180.0;
            el.argp = tc.argpt_deg * astro::kPi / 180.0;
        }
        for (int k = 0; k < 20; ++k) {
            el.nu = testutil::uniform(rng, 0.0, 2.0 * astro::kPi);
            const astro::Rv rv = astro::state_from_elements(el);
            double w[astro::kMaxErrorDim];
            const int dim = astro::error_vector(rv.r, rv.v, cc.target, w);
            REQUIRE(dim == tc.error_dim());
            for (int j = 0; j < dim; ++j) CHECK(std::fabs(w[j]) <= 1e-10);
        }
    }
}

TEST_CASE("low orbit to synchronous orbit momentum deficit matches the frozen value") {
    const cases::TransferCase tc = cases::load_case(cases::CaseId::A);
    const cases::CanonicalCase cc = cases::canonicalize(tc, 0.0);
    double w[astro::kMaxErrorDim];
    const int dim = astro::error_vector(cc.initial.r, cc.initial.v, cc.target, w);
    REQUIRE(dim == 2);
    CHECK(w[0] == doctest::Approx(-1.5184326812702396).epsilon(1e-12));
    CHECK(std::fabs(w[1]) <= 1e-12); // same eccentricity at both ends
}

TEST_CASE("node residual takes the short way around the circle") {
    // raan 359 deg against a target of 1 deg is a -2 deg residual
    astro::OrbitalElements el;
    el.a = 1.2;
    el.e = 0.1;
    el.inc = 0.5;
    el.raan = 359.0 * astro::kPi / 180.0;
    el.argp = 0.3;
    el.nu = 0.9;
    const astro::Rv rv = astro::state_from_elements(el);
    astro::TargetSpec target;
    target.set = astro::ErrorSet::kMomentumEccIncNode;
    target.h_t = astro::momentum_from_elements(1.2, 0.1);
    target.e_t = 0.1;
    target.inc_t = 0.5;
    target.raan_t = 1.0 * astro::kPi / 180.0;
    double w[astro::kMaxErrorDim];
    const int dim = astro::error_vector(rv.r, rv.v, target, w);
    REQUIRE(dim == 4);
    CHECK(w[3] == doctest::Approx(-2.0 * astro::kPi / 180.0).epsilon(1e-10));
}

TEST_CASE("vector residual case pins the full target orientation") {
    const cases::TransferCase tc = cases::load_case(cases::CaseId::E);
    const cases::CanonicalCase cc = cases::canonicalize(tc, 0.0);
    // target vectors are consistent: e vector length, h vector length, orthogonal
    CHECK(norm(cc.target.evec_t) == doctest::Approx(0.7).epsilon(1e-12));
    const double h_t = astro::momentum_from_elements(cc.units.km_to_du(26500.0), 0.7);
    CHECK(norm(cc.target.hvec_t) == doctest::Approx(h_t).epsilon(1e-12));
    CHECK(std::fabs(dot(cc.target.hvec_t, cc.target.evec_t)) <= 1e-12);
}

TEST_CASE("case rows carry the tabulated spacecraft constants") {
    const cases::TransferCase a = cases::load_case(cases::CaseId::A);
    CHECK(a.a0_km == 7000.0);
    CHECK(a.at_km == 42000.0);
    CHECK(a.thrust_newton == 1.0);
    CHECK(a.isp_s == 3100.0);
    CHECK(a.swarm_size == 50);
    CHECK(a.max_iterations == 50);
    CHECK(std::isnan(a.it_deg)); // free target inclination

    const cases::TransferCase e = cases::load_case(cases::CaseId::E);
    CHECK(e.at_km == 26500.0);
    CHECK(e.it_deg == 116.0);
    CHECK(e.argpt_deg == 270.0);
    CHECK(e.raant_deg == 180.0);
    CHECK(e.swarm_size == 100);
    CHECK(e.max_iterations == 300);

    const cases::TransferCase d = cases::load_case(cases::CaseId::D);
    CHECK(d.thrust_newton == 0.045);
    CHECK(d.initial_mass_kg == 950.0);
    CHECK(d.isp_s == 3045.0);
    CHECK(d.raant_deg == -40.73);
    CHECK(std::isnan(d.argpt_deg)); // free target periapsis angle

    CHECK_THROWS_AS(cases::parse_case_id("F"), ArgumentError);
    CHECK(cases::parse_case_id("c") == cases::CaseId::C);
    CHECK(cases::parse_mode("full") == cases::MatrixMode::kFull);
    CHECK_THROWS_AS(cases::parse_mode("dense"), ArgumentError);
}

TEST_CASE("canonicalization fills thrust, mass flow, and horizon") {
    const cases::TransferCase tc = cases::load_case(cases::CaseId::A);
    const cases::CanonicalCase cc = cases::canonicalize(tc, 0.0);
    CHECK(cc.initial.m == 300.0);
    CHECK(cc.thrust_canonical ==
          doctest::Approx(cc.units.thrust_newton_to_canonical(1.0)).epsilon(1e-15));
    CHECK(cc.horizon_tu == doctest::Approx(cc.units.days_to_tu(30.0)).epsilon(1e-15));
    const cases::CanonicalCase cc2 = cases::canonicalize(tc, 12.0);
    CHECK(cc2.horizon_tu == doctest::Approx(cc.units.days_to_tu(12.0)).epsilon(1e-15));
}
