#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "slicereg/stem.hpp"

namespace slicereg {

namespace detail {
/// Same complex plane test: x real, y real, or J_x = +-J_y.
inline bool same_plane(const ConePoint& x, const ConePoint& y, double tol = 1e-9) {
    if (x.is_real() || y.is_real()) return true;
    return distance(x.j(), y.j()) <= tol || distance(x.j(), -y.j()) <= tol;
}
}  // namespace detail

/// sigma_A(x, y): |x - y|_A on the plane of y (real points count as every
/// plane, checked first), otherwise
/// sqrt(|re x - re y|^2 + (|im x| + |im y|)^2) = max{|z-w|, |z-wbar|}.
inline double sigma(const ConePoint& x, const ConePoint& y) {
    if (detail::same_plane(x, y)) return (x.element() - y.element()).norm();
    const double dr = x.alpha() - y.alpha();
    const double di = x.beta() + y.beta();
    return std::hypot(dr, di);
}

/// Complex-shadow Cassini distance tau(z, w) = sqrt(|Delta_w(z)|).
inline double tau_shadow(std::complex<double> z, std::complex<double> w) {
    return std::sqrt(std::abs((z - w) * (z - std::conj(w))));
}

/// tau_A(x, y) = sqrt(|Delta_y(x)|_A), computed on the complex shadows
/// (equality |Delta_y(x)|_A = |Delta_w(z)| is exercised by tau_direct).
inline double tau(const ConePoint& x, const ConePoint& y) {
    return tau_shadow(x.shadow(), y.shadow());
}

/// Same value computed entirely inside A: sqrt(|x^2 - x t(y) + n(y)|_A).
inline double tau_direct(const ConePoint& x, const ConePoint& y) {
    const Element xe = x.element();
    const double t = 2.0 * y.alpha();
    const double n = y.alpha() * y.alpha() + y.beta() * y.beta();
    const Element delta = xe * xe - xe * t + Element::real(x.algebra(), n);
    return std::sqrt(delta.norm());
}

/// Delta_y(x) as an element of A (lives in C_{I_x}).
inline Element characteristic_value(const ConePoint& y, const ConePoint& x) {
    const Element xe = x.element();
    const double t = 2.0 * y.alpha();
    const double n = y.alpha() * y.alpha() + y.beta() * y.beta();
    return xe * xe - xe * t + Element::real(x.algebra(), n);
}

inline StemPolynomial characteristic_poly(const ConePoint& y) {
    return StemPolynomial::characteristic(y);
}

/// Sandwich sqrt(|Delta_w(z)| + im(w)^2) - |im w| <= |z - w| <= ... + |im w|.
inline bool sto_inequality_check(std::complex<double> z, std::complex<double> w,
                                 double slack = 1e-12) {
    const double tau2 = std::abs((z - w) * (z - std::conj(w)));
    const double imw = std::fabs(w.imag());
    const double mid = std::sqrt(tau2 + imw * imw);
    const double dist = std::abs(z - w);
    return mid - imw <= dist + slack && dist <= mid + imw + slack;
}

/// |x - y|_A <= sigma_A(x, y).
inline bool sigma_dominates_norm(const ConePoint& x, const ConePoint& y, double slack = 1e-12) {
    return (x.element() - y.element()).norm() <= sigma(x, y) + slack;
}

// ---------------------------------------------------------------------------
// Complex spherical polynomials and the Lemma (S) style inequalities,
// used as property-test predicates.

/// S_{w,n}(z) over C: Delta_w(z)^m for n = 2m, Delta_w(z)^m (z - w) for n = 2m+1.
inline std::complex<double> cassini_poly(std::complex<double> w, std::complex<double> z, int n) {
    const std::complex<double> delta = (z - w) * (z - std::conj(w));
    std::complex<double> pw{1.0, 0.0};
    for (int m = 0; m < n / 2; ++m) pw *= delta;
    if (n % 2 == 1) pw *= (z - w);
    return pw;
}

struct CassiniBoundsReport {
    bool upper_ok = true;   // |S_{w,n+1}(z)| <= tau^n (sqrt(tau^2 + im^2) + |im w|)
    bool lower_ok = true;   // |S_{w,n+1}(z)| >= tau^n (sqrt(tau^2 + im^2) - |im w|)
    bool gap_ok = true;     // |zeta - z| >= (tau(w,zeta) - tau(w,z))^2 / (3 tau(w,zeta) + 2 |im w|)
    bool floor_ok = true;   // |S_{w,n+1}(zeta)| >= tau(w,zeta)^{n+1} tau / (tau + 2 |im w|)
};

/// Evaluates the four inequalities of the boundary-estimate lemma on a
/// sample (w, z, zeta, n). gap/floor are checked only when tau(w,zeta) > tau(w,z).
inline CassiniBoundsReport cassini_bounds_check(std::complex<double> w, std::complex<double> z,
                                                std::complex<double> zeta, int n,
                                                double slack = 1e-9) {
    CassiniBoundsReport rep;
    const double imw = std::fabs(w.imag());
    const double s = tau_shadow(z, w);
    const double sn = std::pow(s, n);
    const double body = std::sqrt(s * s + imw * imw);
    const double sval = std::abs(cassini_poly(w, z, n + 1));
    rep.upper_ok = sval <= sn * (body + imw) + slack * (1.0 + sval);
    rep.lower_ok = sval >= sn * (body - imw) - slack * (1.0 + sval);
    const double r = tau_shadow(zeta, w);
    if (r > s) {
        rep.gap_ok = std::abs(zeta - z) >=
                     (r - s) * (r - s) / (3.0 * r + 2.0 * imw) - slack;
        const double floor_val = std::pow(r, n + 1) * r / (r + 2.0 * imw);
        const double sz = std::abs(cassini_poly(w, zeta, n + 1));
        rep.floor_ok = sz >= floor_val - slack * (1.0 + sz);
    }
    return rep;
}

}  // namespace slicereg
