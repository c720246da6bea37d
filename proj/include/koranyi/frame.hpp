#pragma once

// Closed forms for the horizontal gradients of the gauge coordinates
// rho, theta, phi, their norms, inner products and Kohn Laplacians, and
// the orthonormal horizontal frame {e_rho, e_phi}.  Everything here is
// defined away from the characteristic locus x^2 + y^2 = 0 (the t-axis),
// where the frame degenerates.

#include <cmath>
#include <stdexcept>

#include "koranyi/heisenberg.hpp"

namespace koranyi {

// Characteristic-locus guard: frame operations refuse when
// x^2 + y^2 <= kCharGuardScale * rho^2.
inline constexpr double kCharGuardScale = 1e-12;

struct FrameData {
    HorizontalVec grad_rho, grad_phi, grad_theta;
    double norm2_rho = 0, norm2_phi = 0, norm2_theta = 0;
    double ip_phi_rho = 0, ip_rho_theta = 0, ip_phi_theta = 0;
    double lap_rho = 0, lap_phi = 0, lap_theta = 0;
    HorizontalVec e_rho, e_phi;
};

inline bool near_characteristic(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    const double rho = gauge_norm(p);
    return r2 <= kCharGuardScale * rho * rho;
}

inline FrameData frame_at(const HPoint& p) {
    const double x = p.x, y = p.y, t = p.t;
    const double r2 = x * x + y * y;
    const double rho = gauge_norm(p);
    if (r2 <= kCharGuardScale * rho * rho)
        throw std::domain_error("frame_at: characteristic point (x^2+y^2 vanishes)");

    const double rho2 = rho * rho;
    const double rho3 = rho2 * rho;
    const double rho4 = rho2 * rho2;
    const double cosphi = t / rho2;

    FrameData f;
    f.grad_rho = {(r2 * x + t * y) / rho3, (r2 * y - t * x) / rho3};
    f.grad_theta = {-y / r2, x / r2};
    // grad phi = 2/(rho (x^2+y^2)) * (t grad rho + rho (-y, x))
    const double cphi = 2.0 / (rho * r2);
    f.grad_phi = {cphi * (t * f.grad_rho.a - rho * y), cphi * (t * f.grad_rho.b + rho * x)};

    f.norm2_rho = r2 / rho2;
    f.norm2_phi = 4.0 * r2 / rho4;
    f.norm2_theta = 1.0 / r2;

    f.ip_phi_rho = 0.0;
    f.ip_rho_theta = -cosphi / rho;
    f.ip_phi_theta = 2.0 * r2 / rho4;

    f.lap_theta = 0.0;
    f.lap_rho = 3.0 * r2 / rho3;
    f.lap_phi = 4.0 * cosphi / rho2;

    const double nr = std::sqrt(f.norm2_rho);
    const double np = std::sqrt(f.norm2_phi);
    f.e_rho = {f.grad_rho.a / nr, f.grad_rho.b / nr};
    f.e_phi = {f.grad_phi.a / np, f.grad_phi.b / np};
    return f;
}

}  // namespace koranyi
