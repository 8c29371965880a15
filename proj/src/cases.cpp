#include "clftraj/cases.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace clftraj::cases {

namespace {

constexpr double kFree = std::numeric_limits<double>::quiet_NaN();

double deg_to_rad_normalized(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d * astro::kPi / 180.0;
}

} // namespace

std::string to_string(CaseId id) {
    switch (id) {
        case CaseId::A: return "A";
        case CaseId::B: return "B";
        case CaseId::C: return "C";
        case CaseId::D: return "D";
        case CaseId::E: return "E";
    }
    throw ContractViolation("to_string: unknown case id");
}

std::string to_string(MatrixMode mode) {
    return mode == MatrixMode::kDiagonal ? "diagonal" : "full";
}

CaseId parse_case_id(const std::string& text) {
    if (text.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(text[0]))) {
            case 'A': return CaseId::A;
            case 'B': return CaseId::B;
            case 'C': return CaseId::C;
            case 'D': return CaseId::D;
            case 'E': return CaseId::E;
            default: break;
        }
    }
    throw ArgumentError("unknown case '" + text + "' (expected A..E)");
}

MatrixMode parse_mode(const std::string& text) {
    if (text == "diagonal") return MatrixMode::kDiagonal;
    if (text == "full") return MatrixMode::kFull;
    throw ArgumentError("unknown mode '" + text + "' (expected diagonal|full)");
}

TransferCase load_case(CaseId id) {
    TransferCase tc;
    tc.id = id;
    switch (id) {
        case CaseId::A:
            tc.error_set = astro::ErrorSet::kMomentumEcc;
            tc.a0_km = 7000.0; tc.e0 = 0.01; tc.i0_deg = 0.05; tc.argp0_deg = 0.0; tc.raan0_deg = 0.0;
            tc.at_km = 42000.0; tc.et = 0.01; tc.it_deg = kFree; tc.argpt_deg = kFree; tc.raant_deg = kFree;
            tc.thrust_newton = 1.0; tc.initial_mass_kg = 300.0; tc.isp_s = 3100.0;
            tc.units = earth_units();
            tc.swarm_size = 50; tc.max_iterations = 50;
            tc.default_horizon_days = 30.0;
            break;
        case CaseId::B:
            tc.error_set = astro::ErrorSet::kMomentumEccInc;
            tc.a0_km = 24505.9; tc.e0 = 0.725; tc.i0_deg = 7.05; tc.argp0_deg = 0.0; tc.raan0_deg = 0.0;
            tc.at_km = 42165.0; tc.et = 0.001; tc.it_deg = 0.05; tc.argpt_deg = kFree; tc.raant_deg = kFree;
            tc.thrust_newton = 0.350; tc.initial_mass_kg = 2000.0; tc.isp_s = 2000.0;
            tc.units = earth_units();
            tc.swarm_size = 50; tc.max_iterations = 50;
            tc.default_horizon_days = 300.0;
            break;
        case CaseId::C:
            tc.error_set = astro::ErrorSet::kMomentumEcc;
            tc.a0_km = 9222.7; tc.e0 = 0.2; tc.i0_deg = 0.573; tc.argp0_deg = 0.0; tc.raan0_deg = 0.0;
            tc.at_km = 30000.0; tc.et = 0.7; tc.it_deg = kFree; tc.argpt_deg = kFree; tc.raant_deg = kFree;
            tc.thrust_newton = 9.3; tc.initial_mass_kg = 300.0; tc.isp_s = 3100.0;
            tc.units = earth_units();
            tc.swarm_size = 50; tc.max_iterations = 50;
            tc.default_horizon_days = 4.0;
            break;
        case CaseId::D:
            tc.error_set = astro::ErrorSet::kMomentumEccIncNode;
            tc.a0_km = 944.64; tc.e0 = 0.015; tc.i0_deg = 90.06; tc.argp0_deg = 156.90; tc.raan0_deg = -24.60;
            tc.at_km = 401.72; tc.et = 0.012; tc.it_deg = 90.01; tc.argpt_deg = kFree; tc.raant_deg = -40.73;
            tc.thrust_newton = 0.045; tc.initial_mass_kg = 950.0; tc.isp_s = 3045.0;
            tc.units = vesta_units();
            tc.swarm_size = 50; tc.max_iterations = 50;
            tc.default_horizon_days = 60.0;
            break;
        case CaseId::E:
            tc.error_set = astro::ErrorSet::kVectorMomentumEcc;
            tc.a0_km = 24505.9; tc.e0 = 0.725; tc.i0_deg = 0.06; tc.argp0_deg = 0.0; tc.raan0_deg = 0.0;
            tc.at_km = 26500.0; tc.et = 0.7; tc.it_deg = 116.0; tc.argpt_deg = 270.0; tc.raant_deg = 180.0;
            tc.thrust_newton = 2.0; tc.initial_mass_kg = 2000.0; tc.isp_s = 2000.0;
            tc.units = earth_units();
            tc.swarm_size = 100; tc.max_iterations = 300;
            tc.default_horizon_days = 250.0;
            break;
    }
    return tc;
}

CanonicalCase canonicalize(const TransferCase& tc, double horizon_days) {
    if (tc.thrust_newton <= 0.0 || tc.initial_mass_kg <= 0.0 || tc.isp_s <= 0.0) {
        throw ArgumentError("canonicalize: spacecraft constants must be positive");
    }
    CanonicalCase cc;
    cc.units = tc.units;

    astro::OrbitalElements el0;
    el0.a = cc.units.km_to_du(tc.a0_km);
    el0.e = tc.e0;
    el0.inc = deg_to_rad_normalized(tc.i0_deg);
    el0.argp = deg_to_rad_normalized(tc.argp0_deg);
    el0.raan = deg_to_rad_normalized(tc.raan0_deg);
    el0.nu = 0.0; // periapsis start (the catalog rows omit the anomaly)
    const astro::Rv rv0 = astro::state_from_elements(el0);
    cc.initial = {rv0.r, rv0.v, tc.initial_mass_kg};

    cc.target.set = tc.error_set;
    const double at_du = cc.units.km_to_du(tc.at_km);
    cc.target.h_t = astro::momentum_from_elements(at_du, tc.et);
    cc.target.e_t = tc.et;
    if (!std::isnan(tc.it_deg)) cc.target.inc_t = deg_to_rad_normalized(tc.it_deg);
    if (!std::isnan(tc.raant_deg)) cc.target.raan_t = deg_to_rad_normalized(tc.raant_deg);
    if (tc.error_set == astro::ErrorSet::kVectorMomentumEcc) {
        astro::OrbitalElements elt;
        elt.a = at_du;
        elt.e = tc.et;
        elt.inc = deg_to_rad_normalized(tc.it_deg);
        elt.argp = deg_to_rad_normalized(tc.argpt_deg);
        elt.raan = deg_to_rad_normalized(tc.raant_deg);
        elt.nu = 0.0; // h and e vectors are anomaly-free
        const astro::Rv rvt = astro::state_from_elements(elt);
        cc.target.hvec_t = cross(rvt.r, rvt.v);
        cc.target.evec_t = astro::eccentricity_vector(rvt.r, rvt.v);
    }

    cc.thrust_canonical = cc.units.thrust_newton_to_canonical(tc.thrust_newton);
    cc.mdot_canonical = cc.units.mass_flow_canonical(tc.thrust_newton, tc.isp_s);
    const double days = horizon_days > 0.0 ? horizon_days : tc.default_horizon_days;
    cc.horizon_tu = cc.units.days_to_tu(days);
    return cc;
}

} // namespace clftraj::cases
