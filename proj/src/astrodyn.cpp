#include "clftraj/astrodyn.hpp"

#include <algorithm>
#include <cmath>

namespace clftraj::astro {

namespace {

double wrap_two_pi(double x) {
    double w = std::fmod(x, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

} // namespace

OrbitalElements elements_from_state(const Vec3d& r, const Vec3d& v) {
    const double rmag = norm(r);
    if (rmag <= 0.0) throw ArgumentError("elements_from_state: zero position");

    const Vec3d hv = cross(r, v);
    const double h = norm(hv);
    if (h < kDegenerateNorm) {
        throw UnsupportedOrbitError("elements_from_state: rectilinear orbit (h = 0)");
    }

    const Vec3d ev = eccentricity_vector(r, v);
    const double e = norm(ev);

    const double energy = 0.5 * dot(v, v) - 1.0 / rmag;
    if (energy >= 0.0) {
        throw UnsupportedOrbitError("elements_from_state: non-elliptic orbit");
    }

    OrbitalElements el;
    el.a = -0.5 / energy;
    el.e = e;
    el.inc = clamped_acos(hv.z / h);

    const Vec3d n{-hv.y, hv.x, 0.0};
    const double nmag = norm(n);
    const bool equatorial = nmag < kDegenerateNorm;
    const bool circular = e < kDegenerateNorm;

    if (equatorial) {
        el.raan = 0.0;
    } else {
        el.raan = clamped_acos(n.x / nmag);
        if (n.y < 0.0) el.raan = 2.0 * kPi - el.raan;
    }

    if (circular) {
        el.argp = 0.0;
    } else if (equatorial) {
        // node convention x_hat: argp measured from the x-axis
        el.argp = clamped_acos(ev.x / e);
        if (ev.y < 0.0) el.argp = 2.0 * kPi - el.argp;
    } else {
        el.argp = clamped_acos(dot(n, ev) / (nmag * e));
        if (ev.z < 0.0) el.argp = 2.0 * kPi - el.argp;
    }

    if (!circular) {
        el.nu = clamped_acos(dot(ev, r) / (e * rmag));
        if (dot(r, v) < 0.0) el.nu = 2.0 * kPi - el.nu;
    } else if (!equatorial) {
        // anomaly measured from the node line
        el.nu = clamped_acos(dot(n, r) / (nmag * rmag));
        if (r.z < 0.0) el.nu = 2.0 * kPi - el.nu;
    } else {
        el.nu = clamped_acos(r.x / rmag);
        if (r.y < 0.0) el.nu = 2.0 * kPi - el.nu;
    }

    el.raan = wrap_two_pi(el.raan);
    el.argp = wrap_two_pi(el.argp);
    el.nu = wrap_two_pi(el.nu);
    return el;
}

Rv state_from_elements(const OrbitalElements& el) {
    if (el.a <= 0.0 || el.e < 0.0 || el.e >= 1.0) {
        throw UnsupportedOrbitError("state_from_elements: requires a > 0 and 0 <= e < 1");
    }
    const double p = el.a * (1.0 - el.e * el.e);
    const double rmag = p / (1.0 + el.e * std::cos(el.nu));
    const double vs = std::sqrt(1.0 / p);

    // perifocal frame
    const Vec3d r_pf{rmag * std::cos(el.nu), rmag * std::sin(el.nu), 0.0};
    const Vec3d v_pf{-vs * std::sin(el.nu), vs * (el.e + std::cos(el.nu)), 0.0};

    // inertial = Rz(raan) Rx(inc) Rz(argp) * perifocal
    const double co = std::cos(el.raan), so = std::sin(el.raan);
    const double ci = std::cos(el.inc), si = std::sin(el.inc);
    const double cw = std::cos(el.argp), sw = std::sin(el.argp);

    const double R[3][3] = {
        {co * cw - so * sw * ci, -co * sw - so * cw * ci, so * si},
        {so * cw + co * sw * ci, -so * sw + co * cw * ci, -co * si},
        {sw * si, cw * si, ci},
    };

    auto rotate = [&R](const Vec3d& p3) {
        return Vec3d{R[0][0] * p3.x + R[0][1] * p3.y + R[0][2] * p3.z,
                     R[1][0] * p3.x + R[1][1] * p3.y + R[1][2] * p3.z,
                     R[2][0] * p3.x + R[2][1] * p3.y + R[2][2] * p3.z};
    };
    return Rv{rotate(r_pf), rotate(v_pf)};
}

} // namespace clftraj::astro
