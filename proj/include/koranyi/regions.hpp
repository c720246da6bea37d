#pragma once

// Integration domains in gauge spherical coordinates: patches of the unit
// Koranyi sphere described by (theta, phi) ranges and sectors of Koranyi
// balls obtained by adding a radial range.
//
// Theta is 2*pi-periodic in every integrand this library evaluates, so a
// theta interval is allowed to leave (-pi, pi] (e.g. (pi/2, 3pi/2) for the
// half-sphere {x < 0}); this keeps one-sided supports single rectangles
// with panel edges exactly on the discontinuity.

#include <cmath>
#include <functional>

#include "koranyi/heisenberg.hpp"

namespace koranyi {

struct SphereRegion {
    double theta_lo = -pi;
    double theta_hi = pi;
    double phi_lo = 0.0;
    double phi_hi = pi;
    // Optional indicator for non-rectangular patches, sampled on quadrature
    // nodes of the bounding rectangle.
    std::function<bool(double /*theta*/, double /*phi*/)> mask;

    bool empty() const { return !(theta_hi > theta_lo) || !(phi_hi > phi_lo); }

    bool contains(double theta, double phi) const {
        if (phi < phi_lo || phi > phi_hi) return false;
        // compare theta modulo 2*pi against the (possibly wrapped) interval
        double d = std::remainder(theta - theta_lo, 2.0 * pi);
        if (d < 0) d += 2.0 * pi;
        if (d > theta_hi - theta_lo) return false;
        return !mask || mask(theta, phi);
    }

    static SphereRegion full() { return {}; }
    static SphereRegion cap(double phi0) { return {-pi, pi, 0.0, phi0, nullptr}; }
    static SphereRegion cocap(double phi0) { return {-pi, pi, phi0, pi, nullptr}; }
    // Half-sphere {cos(theta - theta0) > 0}.
    static SphereRegion half_theta(double theta0) {
        return {theta0 - pi / 2, theta0 + pi / 2, 0.0, pi, nullptr};
    }
};

struct BallRegion {
    double rho_lo = 0.0;
    double rho_hi = 1.0;
    SphereRegion angular;

    bool empty() const { return !(rho_hi > rho_lo) || angular.empty(); }

    static BallRegion ball(double r, SphereRegion ang = SphereRegion::full()) {
        return {0.0, r, ang};
    }
    static BallRegion annulus(double r_in, double r_out,
                              SphereRegion ang = SphereRegion::full()) {
        return {r_in, r_out, ang};
    }
};

}  // namespace koranyi
