#pragma once

// Tensor Gauss-Legendre quadrature over Koranyi-ball sectors and sphere
// patches.  Volume integrals carry the Jacobian rho^3 of the gauge spherical
// coordinates; sphere integrals carry the H-perimeter element
// d sigma_H = sqrt(sin phi) dtheta dphi on the unit sphere.  Nodes are open,
// so the singular weights 1/sqrt(x^2+y^2) and 1/|xi|^2 are never sampled at
// their poles.

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include "koranyi/heisenberg.hpp"
#include "koranyi/parallel.hpp"
#include "koranyi/regions.hpp"
#include "koranyi/scalar_field.hpp"

namespace koranyi {

struct QuadSpec {
    int panels_rho = 8;
    int panels_theta = 8;
    int panels_phi = 8;
    int nodes_per_panel = 16;
    bool refine = true;

    QuadSpec doubled() const {
        return {2 * panels_rho, 2 * panels_theta, 2 * panels_phi, nodes_per_panel, false};
    }
};

struct IntegralResult {
    double value = 0.0;
    double err_estimate = 0.0;
    long nodes_used = 0;
};

namespace detail {

struct GaussRule {
    std::vector<double> nodes;    // in (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
inline const GaussRule& gauss_legendre(int n) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: need at least 2 nodes");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(r)).first->second;
}

struct Panel1D {
    double mid, halfwidth;
};

inline std::vector<Panel1D> split(double lo, double hi, int panels) {
    std::vector<Panel1D> out(panels);
    const double w = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) out[k] = {lo + (k + 0.5) * w, 0.5 * w};
    return out;
}

// Integral of g(theta, phi) dtheta dphi over a sphere region (no measure
// factor).  Panels evaluate independently; reduction order is fixed.
inline IntegralResult integrate_rect_once(const std::function<double(double, double)>& g,
                                          const SphereRegion& region, const QuadSpec& spec) {
    if (region.empty()) return {0.0, 0.0, 0};
    const auto pt = split(region.theta_lo, region.theta_hi, spec.panels_theta);
    const auto pp = split(region.phi_lo, region.phi_hi, spec.panels_phi);
    const GaussRule& rule = gauss_legendre(spec.nodes_per_panel);
    const std::size_t npanels = pt.size() * pp.size();
    std::vector<double> partial(npanels, 0.0);
    bool saw_nan = false;

    parallel_for_indexed(npanels, [&](std::size_t idx) {
        const Panel1D& a = pt[idx / pp.size()];
        const Panel1D& b = pp[idx % pp.size()];
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double th = a.mid + a.halfwidth * rule.nodes[i];
            const double wth = a.halfwidth * rule.weights[i];
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double ph = b.mid + b.halfwidth * rule.nodes[j];
                if (region.mask && !region.mask(th, ph)) continue;
                const double v = g(th, ph);
                if (std::isnan(v)) { saw_nan = true; return; }
                acc += wth * b.halfwidth * rule.weights[j] * v;
            }
        }
        partial[idx] = acc;
    });
    if (saw_nan) throw std::runtime_error("integrate: integrand returned NaN");
    const long nodes = static_cast<long>(npanels) * spec.nodes_per_panel * spec.nodes_per_panel;
    return {pairwise_sum(partial), 0.0, nodes};
}

inline IntegralResult integrate_ball_once(const std::function<double(const SphericalPoint&)>& g,
                                          const BallRegion& region, const QuadSpec& spec) {
    if (region.empty()) return {0.0, 0.0, 0};
    const auto pr = split(region.rho_lo, region.rho_hi, spec.panels_rho);
    const auto pt = split(region.angular.theta_lo, region.angular.theta_hi, spec.panels_theta);
    const auto pp = split(region.angular.phi_lo, region.angular.phi_hi, spec.panels_phi);
    const GaussRule& rule = gauss_legendre(spec.nodes_per_panel);
    const std::size_t npanels = pr.size() * pt.size() * pp.size();
    std::vector<double> partial(npanels, 0.0);
    bool saw_nan = false;

    parallel_for_indexed(npanels, [&](std::size_t idx) {
        const Panel1D& a = pr[idx / (pt.size() * pp.size())];
        const Panel1D& b = pt[(idx / pp.size()) % pt.size()];
        const Panel1D& c = pp[idx % pp.size()];
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double rho = a.mid + a.halfwidth * rule.nodes[i];
            const double wr = a.halfwidth * rule.weights[i];
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double th = b.mid + b.halfwidth * rule.nodes[j];
                const double wt = b.halfwidth * rule.weights[j];
                for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                    const double ph = c.mid + c.halfwidth * rule.nodes[k];
                    if (region.angular.mask && !region.angular.mask(th, ph)) continue;
                    const double v = g({rho, th, ph});
                    if (std::isnan(v)) { saw_nan = true; return; }
                    acc += wr * wt * c.halfwidth * rule.weights[k] * v * rho * rho * rho;
                }
            }
        }
        partial[idx] = acc;
    });
    if (saw_nan) throw std::runtime_error("integrate_ball: integrand returned NaN");
    const long nodes = static_cast<long>(npanels) * spec.nodes_per_panel * spec.nodes_per_panel *
                       spec.nodes_per_panel;
    return {pairwise_sum(partial), 0.0, nodes};
}

}  // namespace detail

// Integral of g dtheta dphi (no measure weight) over a sphere patch.
inline IntegralResult integrate_rect(const std::function<double(double, double)>& g,
                                     const SphereRegion& region, const QuadSpec& spec) {
    IntegralResult r = detail::integrate_rect_once(g, region, spec);
    if (spec.refine) {
        const IntegralResult r2 = detail::integrate_rect_once(g, region, spec.doubled());
        r.err_estimate = std::abs(r.value - r2.value);
        r.nodes_used += r2.nodes_used;
    }
    return r;
}

// Integral of g d sigma_H over a patch of the unit Koranyi sphere,
// d sigma_H = sqrt(sin phi) dtheta dphi.
inline IntegralResult integrate_sphere_H(const std::function<double(double, double)>& g,
                                         const SphereRegion& region, const QuadSpec& spec) {
    return integrate_rect(
        [&g](double th, double ph) { return g(th, ph) * std::sqrt(std::sin(ph)); }, region, spec);
}

// Integral of g(rho,theta,phi) rho^3 drho dtheta dphi over a ball sector.
inline IntegralResult integrate_ball(const std::function<double(const SphericalPoint&)>& g,
                                     const BallRegion& region, const QuadSpec& spec) {
    IntegralResult r = detail::integrate_ball_once(g, region, spec);
    if (spec.refine) {
        const IntegralResult r2 = detail::integrate_ball_once(g, region, spec.doubled());
        r.err_estimate = std::abs(r.value - r2.value);
        r.nodes_used += r2.nodes_used;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Surface-measure consistency: on the unit sphere the Euclidean area element
// of the parametrization K(theta,phi) satisfies |K_t ^ K_p| / |grad rho| = 1,
// with |grad rho| = (1/2) sqrt(4 sin^3 phi + cos^2 phi), so
// d sigma_H = |grad_H rho| / |grad rho| d sigma = sqrt(sin phi) dtheta dphi.
// Returns the max deviation of (|grad_H rho| / |grad rho|) |K_t ^ K_p| from
// sqrt(sin phi) over random samples.
inline double surface_measure_crosscheck(int sample_count) {
    std::mt19937_64 rng(0x5eed5u);
    std::uniform_real_distribution<double> uth(-pi, pi), uph(1e-3, pi - 1e-3);
    double worst = 0.0;
    for (int i = 0; i < sample_count; ++i) {
        const double th = uth(rng), ph = uph(rng);
        const double sp = std::sin(ph), cp = std::cos(ph);
        const double sq = std::sqrt(sp);
        // K = (sqrt(s) cos th, sqrt(s) sin th, cos phi)
        const double kt[3] = {-sq * std::sin(th), sq * std::cos(th), 0.0};
        const double kp[3] = {0.5 * cp / sq * std::cos(th), 0.5 * cp / sq * std::sin(th), -sp};
        const double cx = kt[1] * kp[2] - kt[2] * kp[1];
        const double cy = kt[2] * kp[0] - kt[0] * kp[2];
        const double cz = kt[0] * kp[1] - kt[1] * kp[0];
        const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
        const double grad_rho = 0.5 * std::sqrt(4.0 * sp * sp * sp + cp * cp);
        const double lhs = (sq / grad_rho) * cross;
        worst = std::max(worst, std::abs(lhs - sq));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Weighted energies of scalar fields.

namespace detail {

inline double hgrad_norm2_spherical(const ScalarField& u, const SphericalPoint& s) {
    if (u.hgrad) return u.hgrad(from_spherical(s)).norm2();
    if (u.separable) {
        // radial^2 + angular^2 from the separable closed forms
        const Separable& g = *u.separable;
        const double sp = std::sin(s.phi), cp = std::cos(s.phi);
        const double sq = std::sqrt(sp);
        const double ra = std::pow(s.rho, g.alpha - 1.0);
        const double ft = g.f_theta(s.theta, s.phi), fp = g.f_phi(s.theta, s.phi);
        const double radial = ra * (g.alpha * sq * g.f(s.theta, s.phi) - cp * ft / sq);
        const double angular = ra * sq * (ft + 2.0 * fp);
        return radial * radial + angular * angular;
    }
    throw std::invalid_argument("energy: field '" + u.name + "' lacks gradient data");
}

inline SphereRegion support_of(const ScalarField& u) {
    return u.support ? *u.support : SphereRegion::full();
}

}  // namespace detail

// Bulk energy  int_{B_r ∩ supp u} |grad_H u|^2 / |xi|^2 dxi.
inline IntegralResult energy_bulk(const ScalarField& u, double r, const QuadSpec& spec) {
    if (!u.has_gradient_data())
        throw std::invalid_argument("energy_bulk: field '" + u.name + "' lacks gradient data");
    const BallRegion region = BallRegion::ball(r, detail::support_of(u));
    return integrate_ball(
        [&u](const SphericalPoint& s) {
            return detail::hgrad_norm2_spherical(u, s) / (s.rho * s.rho);
        },
        region, spec);
}

// Boundary energy  int_{∂B_1 ∩ supp u} |grad_H u|^2 / sqrt(x^2+y^2) dsigma_H.
// On the unit sphere sqrt(x^2+y^2) = sqrt(sin phi) cancels the perimeter
// element, leaving a plain dtheta dphi integral.
inline IntegralResult energy_boundary(const ScalarField& u, const QuadSpec& spec) {
    if (!u.has_gradient_data())
        throw std::invalid_argument("energy_boundary: field '" + u.name + "' lacks gradient data");
    return integrate_rect(
        [&u](double th, double ph) {
            return detail::hgrad_norm2_spherical(u, {1.0, th, ph});
        },
        detail::support_of(u), spec);
}

struct AQuantities {
    double a_rho = 0.0;  // int radial^2 / sqrt(x^2+y^2) dsigma_H
    double a_phi = 0.0;  // int angular^2 / sqrt(x^2+y^2) dsigma_H
    double a_u = 0.0;    // int u^2 sqrt(x^2+y^2) dsigma_H
};

inline AQuantities A_quantities(const ScalarField& u, const SphereRegion& sigma,
                                const QuadSpec& spec) {
    if (!u.has_gradient_data())
        throw std::invalid_argument("A_quantities: field '" + u.name + "' lacks gradient data");
    AQuantities out;
    out.a_rho = integrate_rect(
                    [&u](double th, double ph) {
                        const GradComponents g = grad_components(u, from_spherical({1.0, th, ph}));
                        return g.radial * g.radial;
                    },
                    sigma, spec)
                    .value;
    out.a_phi = integrate_rect(
                    [&u](double th, double ph) {
                        const GradComponents g = grad_components(u, from_spherical({1.0, th, ph}));
                        return g.angular * g.angular;
                    },
                    sigma, spec)
                    .value;
    out.a_u = integrate_rect(
                  [&u](double th, double ph) {
                      const double v = u.eval(from_spherical({1.0, th, ph}));
                      return v * v * std::sin(ph);
                  },
                  sigma, spec)
                  .value;
    return out;
}

// [ int_{B_rho} |grad_H u|^2/|xi|^2 ] / [ rho^{-4} int_{B_{2rho} \ B_rho} u^2 ].
// For dilation-homogeneous u the ratio does not depend on rho.
inline double limitato_ratio(const ScalarField& u, double rho, const QuadSpec& spec) {
    if (!(rho > 0.0) || rho > 0.5)
        throw std::invalid_argument("limitato_ratio: need 0 < rho <= 1/2");
    const double bulk = energy_bulk(u, rho, spec).value;
    const BallRegion shell = BallRegion::annulus(rho, 2.0 * rho, detail::support_of(u));
    const double mass = integrate_ball(
                            [&u](const SphericalPoint& s) {
                                const double v = u.eval(from_spherical(s));
                                return v * v;
                            },
                            shell, spec)
                            .value;
    if (mass <= 0.0)
        throw std::domain_error("limitato_ratio: degenerate function (zero annulus mass)");
    return bulk / (std::pow(rho, -4.0) * mass);
}

}  // namespace koranyi
