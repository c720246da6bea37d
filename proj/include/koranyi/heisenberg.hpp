#pragma once

// Group structure of the first Heisenberg group H^1 = (R^3, o) and the
// gauge / spherical-coordinate machinery attached to the Koranyi norm.
//
// Conventions used throughout the library:
//   (x1,y1,t1) o (x2,y2,t2) = (x1+x2, y1+y2, t1+t2 + 2(x2*y1 - x1*y2))
//   X = d/dx + 2y d/dt,  Y = d/dy - 2x d/dt,  [X,Y] = -4 d/dt
//   |p|_H = ((x^2+y^2)^2 + t^2)^{1/4}
//   x = rho sqrt(sin phi) cos theta, y = rho sqrt(sin phi) sin theta,
//   t = rho^2 cos phi,  with theta in (-pi, pi], phi in [0, pi].

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace koranyi {

inline constexpr double pi = std::numbers::pi;

// A point of H^1 in Cartesian coordinates.
struct HPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

// A horizontal vector a*X + b*Y expressed in the orthonormal frame {X, Y}.
struct HorizontalVec {
    double a = 0.0;
    double b = 0.0;

    double norm2() const { return a * a + b * b; }
    double norm() const { return std::sqrt(norm2()); }
};

inline double dot(const HorizontalVec& u, const HorizontalVec& v) {
    return u.a * v.a + u.b * v.b;
}

inline HorizontalVec operator+(const HorizontalVec& u, const HorizontalVec& v) {
    return {u.a + v.a, u.b + v.b};
}

inline HorizontalVec operator*(double c, const HorizontalVec& v) {
    return {c * v.a, c * v.b};
}

// A point in the gauge spherical coordinates (rho, theta, phi).
struct SphericalPoint {
    double rho = 0.0;
    double theta = 0.0;   // (-pi, pi]
    double phi = 0.0;     // [0, pi]
};

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * pi);   // (-pi, pi], except -pi maps to -pi
    if (a <= -pi) a += 2.0 * pi;
    return a;
}

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
    return {p.x + q.x, p.y + q.y, p.t + q.t + 2.0 * (q.x * p.y - p.x * q.y)};
}

inline HPoint group_inverse(const HPoint& p) { return {-p.x, -p.y, -p.t}; }

inline HPoint dilate(double r, const HPoint& p) {
    if (!(r > 0.0)) throw std::invalid_argument("dilate: radius must be positive");
    return {r * p.x, r * p.y, r * r * p.t};
}

inline double gauge_norm(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return std::pow(r2 * r2 + p.t * p.t, 0.25);
}

// phi = arccos(t / rho^2) evaluated as atan2(x^2 + y^2, t); the two forms
// agree exactly (sin phi = (x^2+y^2)/rho^2) and atan2 stays accurate at the
// poles where the arccos argument grazes +-1.
inline SphericalPoint to_spherical(const HPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    const double rho = gauge_norm(p);
    if (rho == 0.0)
        throw std::domain_error("to_spherical: coordinates undefined at the group identity");
    const double phi = std::atan2(r2, p.t);
    const double theta = (r2 > 0.0) ? std::atan2(p.y, p.x) : 0.0;  // canonical 0 on the t-axis
    return {rho, theta, phi};
}

inline HPoint from_spherical(const SphericalPoint& s) {
    const double sq = std::sqrt(std::max(std::sin(s.phi), 0.0));
    return {s.rho * sq * std::cos(s.theta), s.rho * sq * std::sin(s.theta),
            s.rho * s.rho * std::cos(s.phi)};
}

}  // namespace koranyi
