#pragma once

#include <string>

#include "clftraj/astrodyn.hpp"
#include "clftraj/units.hpp"

// Catalog of the five benchmark transfers: raw orbital-element rows plus
// spacecraft constants, and their canonical-unit realization (initial
// Cartesian state, target spec, thrust model inputs).
namespace clftraj::cases {

enum class CaseId { A, B, C, D, E };
enum class MatrixMode { kDiagonal, kFull };

std::string to_string(CaseId id);
std::string to_string(MatrixMode mode);
CaseId parse_case_id(const std::string& text);       // throws ArgumentError
MatrixMode parse_mode(const std::string& text);      // throws ArgumentError

// Raw catalog row: elements in km/degrees exactly as tabulated (negative
// angles kept as given; normalized during canonicalization). A NaN target
// field means that element is free (absent from the error vector).
struct TransferCase {
    CaseId id = CaseId::A;
    astro::ErrorSet error_set = astro::ErrorSet::kMomentumEcc;

    // initial orbit [km, -, deg]
    double a0_km = 0.0, e0 = 0.0, i0_deg = 0.0, argp0_deg = 0.0, raan0_deg = 0.0;
    // target orbit; free elements are NaN
    double at_km = 0.0, et = 0.0, it_deg = 0.0, argpt_deg = 0.0, raant_deg = 0.0;

    double thrust_newton = 0.0;
    double initial_mass_kg = 0.0;
    double isp_s = 0.0;
    UnitSystem units;

    int swarm_size = 0;
    int max_iterations = 0;

    double default_horizon_days = 0.0;

    int error_dim() const { return astro::error_dim(error_set); }
};

TransferCase load_case(CaseId id);

// Canonical realization of a case: everything propagation needs.
struct CanonicalCase {
    astro::State initial{};       // nu0 = 0, mass in kg
    astro::TargetSpec target{};
    double thrust_canonical = 0.0; // kg DU/TU^2
    double mdot_canonical = 0.0;   // kg/TU
    double horizon_tu = 0.0;
    UnitSystem units;
};

// Builds the canonical-unit realization. Initial true anomaly is 0 (the
// tabulated rows omit it); negative angles are normalized to [0, 2pi).
CanonicalCase canonicalize(const TransferCase& tc, double horizon_days);

} // namespace clftraj::cases
