#pragma once

// Scalar fields on H^1: evaluation, analytic horizontal gradients, separable
// data u = rho^alpha f(theta, phi), finite-difference operators along the
// flows of X and Y, and the catalog of named fields used by the CLI and the
// ACF test pairs.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "koranyi/frame.hpp"
#include "koranyi/heisenberg.hpp"
#include "koranyi/regions.hpp"

namespace koranyi {

// Angular profile f(theta, phi) with the partial derivatives needed by the
// separable Kohn Laplacian and the Rayleigh quotients.
struct Separable {
    double alpha = 0.0;
    std::function<double(double, double)> f;
    std::function<double(double, double)> f_theta;
    std::function<double(double, double)> f_phi;
    std::function<double(double, double)> f_thetatheta;
    std::function<double(double, double)> f_thetaphi;
    std::function<double(double, double)> f_phiphi;
};

struct ScalarField {
    std::string name;
    std::function<double(const HPoint&)> eval;
    // Analytic horizontal gradient; empty when only separable data is known.
    std::function<HorizontalVec(const HPoint&)> hgrad;
    std::optional<Separable> separable;
    // Angular support cone for one-sided fields (radially invariant); empty
    // means the field lives on all of H^1.
    std::optional<SphereRegion> support;

    bool has_gradient_data() const { return static_cast<bool>(hgrad) || separable.has_value(); }
};

// ---------------------------------------------------------------------------
// Finite differences along the horizontal flows.
//
// The integral curves of X = (1, 0, 2y) and Y = (0, 1, -2x) are straight
// lines in R^3 (y resp. x is constant along them), so stepping p + h*X(p)
// follows the exact flow.

inline HPoint flow_x(const HPoint& p, double h) { return {p.x + h, p.y, p.t + 2.0 * p.y * h}; }
inline HPoint flow_y(const HPoint& p, double h) { return {p.x, p.y + h, p.t - 2.0 * p.x * h}; }

inline double fd_default_step(const HPoint& p) {
    return 1e-5 * std::max(1.0, gauge_norm(p));
}

inline HorizontalVec hgrad_fd(const ScalarField& u, const HPoint& p, double h) {
    const double inv = 1.0 / (2.0 * h);
    return {(u.eval(flow_x(p, h)) - u.eval(flow_x(p, -h))) * inv,
            (u.eval(flow_y(p, h)) - u.eval(flow_y(p, -h))) * inv};
}

inline HorizontalVec hgrad_fd(const ScalarField& u, const HPoint& p) {
    return hgrad_fd(u, p, fd_default_step(p));
}

// Kohn Laplacian X^2 + Y^2 by second central differences along each flow.
inline double kohn_laplacian_fd(const ScalarField& u, const HPoint& p, double h) {
    const double u0 = u.eval(p);
    const double xx = u.eval(flow_x(p, h)) - 2.0 * u0 + u.eval(flow_x(p, -h));
    const double yy = u.eval(flow_y(p, h)) - 2.0 * u0 + u.eval(flow_y(p, -h));
    return (xx + yy) / (h * h);
}

inline double kohn_laplacian_fd(const ScalarField& u, const HPoint& p) {
    return kohn_laplacian_fd(u, p, fd_default_step(p));
}

// ---------------------------------------------------------------------------
// Separable calculus.

// Delta_H(rho^alpha f) = rho^(alpha-2) [ a(a+2) sin(phi) f - 2a cos(phi) f_t
//   + f_tt / sin(phi) + 4 sin(phi) f_tp + 4 sin(phi) f_pp + 4 cos(phi) f_p ].
inline double laplacian_separable(const ScalarField& u, const SphericalPoint& s) {
    if (!u.separable) throw std::invalid_argument("laplacian_separable: field lacks separable data");
    const Separable& g = *u.separable;
    const double sp = std::sin(s.phi);
    if (!(sp > 0.0)) throw std::domain_error("laplacian_separable: pole (sin phi = 0)");
    const double cp = std::cos(s.phi);
    const double a = g.alpha;
    const double th = s.theta, ph = s.phi;
    const double bracket = a * (a + 2.0) * sp * g.f(th, ph) - 2.0 * a * cp * g.f_theta(th, ph) +
                           g.f_thetatheta(th, ph) / sp + 4.0 * sp * g.f_thetaphi(th, ph) +
                           4.0 * sp * g.f_phiphi(th, ph) + 4.0 * cp * g.f_phi(th, ph);
    return std::pow(s.rho, a - 2.0) * bracket;
}

// |grad_H^phi u|^2 for u = rho^alpha f: rho^(2(alpha-2)) (x^2+y^2) (f_t + 2 f_p)^2,
// with x^2 + y^2 = rho^2 sin(phi).
inline double phi_component_sq_separable(double alpha, double f_theta, double f_phi,
                                         const SphericalPoint& s) {
    const double sp = std::sin(s.phi);
    const double d = f_theta + 2.0 * f_phi;
    return std::pow(s.rho, 2.0 * (alpha - 2.0)) * s.rho * s.rho * sp * d * d;
}

struct GradComponents {
    double radial = 0.0;   // <grad_H u, e_rho>
    double angular = 0.0;  // <grad_H u, e_phi>
};

// Frame components of grad_H u at p.  Uses the analytic gradient when
// available, otherwise the separable closed forms
//   radial  = rho^(alpha-1) (alpha sqrt(s) f - cos(phi) f_theta / sqrt(s))
//   angular = rho^(alpha-1) sqrt(s) (f_theta + 2 f_phi),  s = sin(phi).
inline GradComponents grad_components(const ScalarField& u, const HPoint& p) {
    if (u.hgrad) {
        const FrameData fr = frame_at(p);  // throws at characteristic points
        const HorizontalVec g = u.hgrad(p);
        return {dot(g, fr.e_rho), dot(g, fr.e_phi)};
    }
    if (u.separable) {
        if (near_characteristic(p))
            throw std::domain_error("grad_components: characteristic point");
        const SphericalPoint s = to_spherical(p);
        const Separable& g = *u.separable;
        const double sp = std::sin(s.phi), cp = std::cos(s.phi);
        const double sq = std::sqrt(sp);
        const double ra = std::pow(s.rho, g.alpha - 1.0);
        const double ft = g.f_theta(s.theta, s.phi), fp = g.f_phi(s.theta, s.phi);
        return {ra * (g.alpha * sq * g.f(s.theta, s.phi) - cp * ft / sq),
                ra * sq * (ft + 2.0 * fp)};
    }
    throw std::invalid_argument("grad_components: field lacks gradient data");
}

// Horizontal gradient squared norm, preferring the analytic gradient.
inline double hgrad_norm2(const ScalarField& u, const HPoint& p) {
    if (u.hgrad) return u.hgrad(p).norm2();
    const GradComponents gc = grad_components(u, p);
    return gc.radial * gc.radial + gc.angular * gc.angular;
}

// ---------------------------------------------------------------------------
// Catalog.

namespace profiles {

// f = cos(phi)  (the theta-free ground profile of the half-space t > 0)
inline Separable cosphi(double alpha = 2.0) {
    Separable s;
    s.alpha = alpha;
    s.f = [](double, double p) { return std::cos(p); };
    s.f_theta = [](double, double) { return 0.0; };
    s.f_phi = [](double, double p) { return -std::sin(p); };
    s.f_thetatheta = [](double, double) { return 0.0; };
    s.f_thetaphi = [](double, double) { return 0.0; };
    s.f_phiphi = [](double, double p) { return -std::cos(p); };
    return s;
}

// f = sqrt(sin phi) cos(theta)  (u = rho f equals the coordinate x)
inline Separable sqrtsin_costheta(double alpha = 1.0) {
    Separable s;
    s.alpha = alpha;
    s.f = [](double t, double p) { return std::sqrt(std::sin(p)) * std::cos(t); };
    s.f_theta = [](double t, double p) { return -std::sqrt(std::sin(p)) * std::sin(t); };
    s.f_phi = [](double t, double p) {
        return 0.5 * std::cos(p) / std::sqrt(std::sin(p)) * std::cos(t);
    };
    s.f_thetatheta = [](double t, double p) { return -std::sqrt(std::sin(p)) * std::cos(t); };
    s.f_thetaphi = [](double t, double p) {
        return -0.5 * std::cos(p) / std::sqrt(std::sin(p)) * std::sin(t);
    };
    s.f_phiphi = [](double t, double p) {
        const double sp = std::sin(p), cp = std::cos(p);
        return (-0.5 * std::sqrt(sp) - 0.25 * cp * cp / std::pow(sp, 1.5)) * std::cos(t);
    };
    return s;
}

// f = sin(phi) sin(theta)  (generic smooth profile for cross-validation)
inline Separable sinphi_sintheta(double alpha = 3.0) {
    Separable s;
    s.alpha = alpha;
    s.f = [](double t, double p) { return std::sin(p) * std::sin(t); };
    s.f_theta = [](double t, double p) { return std::sin(p) * std::cos(t); };
    s.f_phi = [](double t, double p) { return std::cos(p) * std::sin(t); };
    s.f_thetatheta = [](double t, double p) { return -std::sin(p) * std::sin(t); };
    s.f_thetaphi = [](double t, double p) { return std::cos(p) * std::cos(t); };
    s.f_phiphi = [](double t, double p) { return -std::sin(p) * std::sin(t); };
    return s;
}

inline Separable by_id(const std::string& id, double alpha) {
    if (id == "cosphi") return cosphi(alpha);
    if (id == "sqrtsin-costheta") return sqrtsin_costheta(alpha);
    if (id == "sinphi-sintheta") return sinphi_sintheta(alpha);
    throw std::invalid_argument("unknown separable profile: " + id);
}

}  // namespace profiles

namespace fields {

// (a x + b y)^+ with |grad| = sqrt(a^2+b^2) on its half-space support.
inline ScalarField x_linear_plus(double a, double b) {
    if (a * a + b * b == 0.0) throw std::invalid_argument("x_linear: a^2+b^2 must be positive");
    ScalarField u;
    u.name = "(" + std::to_string(a) + "x+" + std::to_string(b) + "y)+";
    u.eval = [a, b](const HPoint& p) { return std::max(a * p.x + b * p.y, 0.0); };
    u.hgrad = [a, b](const HPoint& p) -> HorizontalVec {
        return (a * p.x + b * p.y > 0.0) ? HorizontalVec{a, b} : HorizontalVec{0.0, 0.0};
    };
    u.support = SphereRegion::half_theta(std::atan2(b, a));
    return u;
}

inline ScalarField x_linear_minus(double a, double b) {
    ScalarField u = x_linear_plus(-a, -b);
    u.name = "(" + std::to_string(a) + "x+" + std::to_string(b) + "y)-";
    return u;
}

inline ScalarField xplus() {
    ScalarField u = x_linear_plus(1.0, 0.0);
    u.name = "xplus";
    Separable s = profiles::sqrtsin_costheta(1.0);
    u.separable = s;  // valid on the support cone
    return u;
}

inline ScalarField xminus() {
    ScalarField u = x_linear_minus(1.0, 0.0);
    u.name = "xminus";
    return u;
}

// c * t^+ (c > 0), gradient 2c(y, -x) on {t > 0}.
inline ScalarField t_plus_scaled(double c) {
    ScalarField u;
    u.name = (c == 1.0) ? "tplus" : "t-scaled+(" + std::to_string(c) + ")";
    u.eval = [c](const HPoint& p) { return c * std::max(p.t, 0.0); };
    u.hgrad = [c](const HPoint& p) -> HorizontalVec {
        return (p.t > 0.0) ? HorizontalVec{2.0 * c * p.y, -2.0 * c * p.x}
                           : HorizontalVec{0.0, 0.0};
    };
    u.support = SphereRegion::cap(pi / 2);
    Separable s = profiles::cosphi(2.0);
    auto f0 = s.f;
    s.f = [c, f0](double t, double p) { return c * f0(t, p); };
    auto fp0 = s.f_phi;
    s.f_phi = [c, fp0](double t, double p) { return c * fp0(t, p); };
    auto fpp0 = s.f_phiphi;
    s.f_phiphi = [c, fpp0](double t, double p) { return c * fpp0(t, p); };
    u.separable = s;
    return u;
}

inline ScalarField t_minus_scaled(double c) {
    ScalarField u;
    u.name = (c == 1.0) ? "tminus" : "t-scaled-(" + std::to_string(c) + ")";
    u.eval = [c](const HPoint& p) { return c * std::max(-p.t, 0.0); };
    u.hgrad = [c](const HPoint& p) -> HorizontalVec {
        return (p.t < 0.0) ? HorizontalVec{-2.0 * c * p.y, 2.0 * c * p.x}
                           : HorizontalVec{0.0, 0.0};
    };
    u.support = SphereRegion::cocap(pi / 2);
    return u;
}

inline ScalarField tplus() { return t_plus_scaled(1.0); }
inline ScalarField tminus() { return t_minus_scaled(1.0); }

// rho^2 cos(phi) = t, globally H-harmonic.
inline ScalarField rho2cos() {
    ScalarField u;
    u.name = "rho2cos";
    u.eval = [](const HPoint& p) { return p.t; };
    u.hgrad = [](const HPoint& p) -> HorizontalVec { return {2.0 * p.y, -2.0 * p.x}; };
    u.separable = profiles::cosphi(2.0);
    return u;
}

// rho^alpha f(theta, phi) from a named profile; gradient through the frame
// closed forms (grad_components), so no Cartesian hgrad is attached.
inline ScalarField separable_field(double alpha, const std::string& profile_id) {
    ScalarField u;
    u.name = "separable(" + std::to_string(alpha) + "," + profile_id + ")";
    Separable s = profiles::by_id(profile_id, alpha);
    u.eval = [s](const HPoint& p) {
        const SphericalPoint sp = to_spherical(p);
        return std::pow(sp.rho, s.alpha) * s.f(sp.theta, sp.phi);
    };
    u.separable = s;
    return u;
}

}  // namespace fields

}  // namespace koranyi
