#pragma once

#include <cmath>

#include "clftraj/errors.hpp"

namespace clftraj {

inline constexpr double kStandardGravity = 9.80665; // m/s^2
inline constexpr double kSecondsPerDay = 86400.0;

// Canonical unit system anchored on a central body: one distance unit (DU)
// and a gravitational parameter normalized to 1, which fixes the time unit
// as TU = sqrt(DU^3 / mu). Mass stays in kilograms.
struct UnitSystem {
    double du_km = 0.0;   // km per DU
    double mu_km3s2 = 0.0; // km^3/s^2
    double tu_s = 0.0;    // seconds per TU

    UnitSystem() = default;
    UnitSystem(double du_km_, double mu_km3s2_) : du_km(du_km_), mu_km3s2(mu_km3s2_) {
        if (du_km <= 0.0 || mu_km3s2 <= 0.0) {
            throw ArgumentError("UnitSystem: DU and mu must be positive");
        }
        tu_s = std::sqrt(du_km * du_km * du_km / mu_km3s2);
    }

    double km_to_du(double km) const { return km / du_km; }
    double du_to_km(double du) const { return du * du_km; }
    double s_to_tu(double s) const { return s / tu_s; }
    double tu_to_s(double tu) const { return tu * tu_s; }
    double tu_to_days(double tu) const { return tu * tu_s / kSecondsPerDay; }
    double days_to_tu(double days) const { return days * kSecondsPerDay / tu_s; }

    // Thrust in newtons -> kg * DU / TU^2 (canonical acceleration times mass).
    double thrust_newton_to_canonical(double newtons) const {
        return newtons * tu_s * tu_s / (du_km * 1000.0);
    }

    // Mass flow rate for thrust T and specific impulse Isp: kg per TU.
    double mass_flow_canonical(double thrust_newton, double isp_s) const {
        if (isp_s <= 0.0) throw ArgumentError("mass_flow_canonical: Isp must be positive");
        return thrust_newton / (isp_s * kStandardGravity) * tu_s;
    }
};

inline UnitSystem earth_units() { return UnitSystem(6378.1366, 398600.49); }
inline UnitSystem vesta_units() { return UnitSystem(289.0, 17.8); }

} // namespace clftraj
