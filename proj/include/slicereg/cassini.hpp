#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "slicereg/algebra.hpp"

namespace slicereg {

enum class CassiniTopology { Circle, TwoLoops, Lemniscate, OneLoop };

struct ContourNode {
    double t = 0.0;                 // parameter along the loop
    std::complex<double> z;         // point
    std::complex<double> dz;        // dz/dt
};

/// Boundary of the tau-ball U(w, r): a circle for real w, one Cassini oval
/// for r > |im w|, the Bernoulli lemniscate for r = |im w| and two disjoint
/// loops (one around each of w, wbar) for r < |im w|.
struct CassiniContour {
    std::complex<double> w;
    double r = 0.0;
    CassiniTopology topology = CassiniTopology::Circle;
    std::vector<std::vector<ContourNode>> loops;
};

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol ||
        std::fabs(delta) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                (std::fabs(left) + std::fabs(right)))
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 18) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// tanh-sinh quadrature of Int_0^{pi/2} (1 - m sin^2 phi)^{-1/4} dphi for
/// 0 <= m <= 1. Node distances to the singular endpoint phi = pi/2 are
/// evaluated without cancellation, so the m = 1 case (integrable
/// (cos phi)^{-1/2} singularity) and the m -> 1 boundary layer both converge.
inline double matz_integral(double m) {
    const double quarter_pi = 0.78539816339744830961566084581988;
    auto integrand = [&](double one_minus_x) {
        const double c = std::sin(quarter_pi * one_minus_x);  // cos(phi)
        const double body = (1.0 - m) + m * c * c;
        return std::pow(body, -0.25);
    };
    const double tmax = 4.0;
    double prev = 0.0;
    for (int level = 0; level < 9; ++level) {
        const double h = 0.5 / static_cast<double>(1 << level);
        double sum = 0.0;
        const int nmax = static_cast<int>(tmax / h);
        for (int k = -nmax; k <= nmax; ++k) {
            const double t = k * h;
            const double u = 1.5707963267948966 * std::sinh(t);
            const double cu = std::cosh(u);
            const double w = 1.5707963267948966 * std::cosh(t) / (cu * cu);
            const double one_minus_x = 2.0 / (1.0 + std::exp(2.0 * u));
            const double one_plus_x = 2.0 / (1.0 + std::exp(-2.0 * u));
            // integrand is regular at phi = 0 (x = -1), singular at phi = pi/2
            (void)one_plus_x;
            sum += w * integrand(one_minus_x);
        }
        const double value = quarter_pi * h * sum;
        if (level > 2 && std::fabs(value - prev) <= 1e-13 * std::fabs(value)) return value;
        prev = value;
    }
    return prev;
}

/// One-loop parametrization about the midpoint (r > eta):
/// z = xi + rho(t) e^{it}, rho^2 = -eta^2 cos 2t + sqrt(r^4 - eta^4 sin^2 2t).
inline ContourNode one_loop_eval(double xi, double eta, double r, double t) {
    const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
    const double disc = std::sqrt(std::max(0.0, r * r * r * r - eta * eta * eta * eta * s2 * s2));
    const double rho2 = -eta * eta * c2 + disc;
    const double rho = std::sqrt(rho2);
    double drho2 = 2.0 * eta * eta * s2;
    if (disc > 0.0) drho2 -= eta * eta * eta * eta * std::sin(4.0 * t) / disc;
    const double drho = drho2 / (2.0 * rho);
    const std::complex<double> eit{std::cos(t), std::sin(t)};
    ContourNode n;
    n.t = t;
    n.z = std::complex<double>(xi, 0.0) + rho * eit;
    n.dz = (std::complex<double>(drho, rho)) * eit;
    return n;
}

/// Focus-polar parametrization of one loop of the two-loop case (r < eta):
/// z = xi + i sign*eta + rho(t) e^{it} with
/// rho^2 (rho^2 + 4 sign*eta rho sin t + 4 eta^2) = r^4. The quartic is
/// monotone on (0, eta], solved by safeguarded Newton.
inline ContourNode focus_loop_eval(double xi, double eta, double r, double sign, double t) {
    const double st = std::sin(t);
    const double r4 = r * r * r * r;
    auto q = [&](double rho) {
        return rho * rho * (rho * rho + 4.0 * sign * eta * rho * st + 4.0 * eta * eta) - r4;
    };
    auto dq = [&](double rho) {
        return 4.0 * rho * rho * rho + 12.0 * sign * eta * rho * rho * st + 8.0 * eta * eta * rho;
    };
    double lo = 0.0, hi = eta;
    double rho = std::min(hi, r * r / (2.0 * eta));
    for (int it = 0; it < 100; ++it) {
        const double f = q(rho);
        if (std::fabs(f) <= 1e-15 * r4) break;
        if (f > 0.0) hi = rho; else lo = rho;
        const double d = dq(rho);
        double next = rho - f / d;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        rho = next;
    }
    const double drho = -(4.0 * sign * eta * rho * rho * rho * std::cos(t)) / dq(rho);
    const std::complex<double> eit{std::cos(t), std::sin(t)};
    ContourNode n;
    n.t = t;
    n.z = std::complex<double>(xi, sign * eta) + rho * eit;
    n.dz = (std::complex<double>(drho, rho)) * eit;
    return n;
}

/// Lemniscate lobe (r = eta): rho^2 = -2 eta^2 cos 2t on t in
/// [pi/4, 3pi/4] (upper lobe, sign +) or [5pi/4, 7pi/4] (lower). dz/dt is
/// singular at the node, so arc length uses the endpoint substitution below.
inline ContourNode lemniscate_eval(double xi, double eta, double sign, double t) {
    const double c2 = std::cos(2.0 * t);
    const double rho2 = std::max(0.0, -2.0 * eta * eta * c2);
    const double rho = std::sqrt(rho2);
    const std::complex<double> eit{std::cos(t), std::sin(t)};
    ContourNode n;
    n.t = t;
    n.z = std::complex<double>(xi, 0.0) + rho * eit;
    if (rho > 0.0) {
        const double drho = 2.0 * eta * eta * std::sin(2.0 * t) / rho;
        n.dz = (std::complex<double>(drho, rho)) * eit;
    } else {
        n.dz = {0.0, 0.0};
    }
    (void)sign;
    return n;
}

inline CassiniTopology classify(double eta, double r) {
    if (eta <= 1e-14 * std::max(1.0, r)) return CassiniTopology::Circle;
    const double rel = (r - eta) / std::max(r, eta);
    if (std::fabs(rel) < 1e-13) return CassiniTopology::Lemniscate;
    return r < eta ? CassiniTopology::TwoLoops : CassiniTopology::OneLoop;
}

}  // namespace detail

/// Boundary nodes of U(w, r), n_points per loop. All emitted points satisfy
/// |Delta_w(z)| = r^2 to roundoff.
inline CassiniContour cassini_contour(std::complex<double> w, double r, int n_points) {
    if (r <= 0.0) throw std::invalid_argument("cassini_contour: radius must be positive");
    if (n_points < 8) throw std::invalid_argument("cassini_contour: need at least 8 points");
    const double xi = w.real();
    const double eta = std::fabs(w.imag());
    CassiniContour out;
    out.w = w;
    out.r = r;
    out.topology = detail::classify(eta, r);
    const double two_pi = 6.283185307179586476925286766559;
    auto emit = [&](auto&& eval, double t0, double t1) {
        std::vector<ContourNode> loop(n_points);
        for (int k = 0; k < n_points; ++k)
            loop[k] = eval(t0 + (t1 - t0) * (static_cast<double>(k) / n_points));
        out.loops.push_back(std::move(loop));
    };
    switch (out.topology) {
        case CassiniTopology::Circle:
            emit([&](double t) {
                ContourNode n;
                n.t = t;
                n.z = w + r * std::complex<double>(std::cos(t), std::sin(t));
                n.dz = r * std::complex<double>(-std::sin(t), std::cos(t));
                return n;
            }, 0.0, two_pi);
            break;
        case CassiniTopology::OneLoop:
            emit([&](double t) { return detail::one_loop_eval(xi, eta, r, t); }, 0.0, two_pi);
            break;
        case CassiniTopology::TwoLoops:
            emit([&](double t) { return detail::focus_loop_eval(xi, eta, r, +1.0, t); }, 0.0, two_pi);
            emit([&](double t) { return detail::focus_loop_eval(xi, eta, r, -1.0, t); }, 0.0, two_pi);
            break;
        case CassiniTopology::Lemniscate: {
            const double q = two_pi / 8.0;  // pi/4
            emit([&](double t) { return detail::lemniscate_eval(xi, eta, +1.0, t); }, q, 3.0 * q);
            emit([&](double t) { return detail::lemniscate_eval(xi, eta, -1.0, t); }, 5.0 * q, 7.0 * q);
            break;
        }
    }
    return out;
}

/// Point lists only (loop-labelled), uniform parameter spacing per loop.
inline std::vector<std::vector<std::complex<double>>> cassini_boundary(std::complex<double> w,
                                                                       double r, int n_points) {
    const CassiniContour c = cassini_contour(w, r, n_points);
    std::vector<std::vector<std::complex<double>>> out;
    for (const auto& loop : c.loops) {
        std::vector<std::complex<double>> pts;
        pts.reserve(loop.size());
        for (const auto& n : loop) pts.push_back(n.z);
        out.push_back(std::move(pts));
    }
    return out;
}

namespace detail {

/// Trapezoid with doubling on a smooth closed loop t in [0, 2pi).
inline double periodic_arclength(const std::function<ContourNode(double)>& eval, double tol) {
    const double two_pi = 6.283185307179586476925286766559;
    int n = 64;
    auto sum_abs = [&](int m) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += std::abs(eval(two_pi * k / m).dz);
        return s * (two_pi / m);
    };
    double prev = sum_abs(n);
    for (int iter = 0; iter < 12; ++iter) {
        n *= 2;
        const double cur = sum_abs(n);
        if (std::fabs(cur - prev) <= tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace detail

/// Arc length of the boundary of U(w, r) for eta = |im w|, by quadrature of
/// |dz/dt| along the loop parametrizations. The lemniscate case removes the
/// corner singularity with the substitution t = t_node + u^2.
inline double cassini_arclength(double eta, double r) {
    if (r <= 0.0) throw std::invalid_argument("cassini_arclength: radius must be positive");
    if (eta < 0.0) throw std::invalid_argument("cassini_arclength: eta must be >= 0");
    const double two_pi = 6.283185307179586476925286766559;
    switch (detail::classify(eta, r)) {
        case CassiniTopology::Circle:
            return two_pi * r;
        case CassiniTopology::OneLoop:
            return detail::periodic_arclength(
                [&](double t) { return detail::one_loop_eval(0.0, eta, r, t); }, 1e-13);
        case CassiniTopology::TwoLoops:
            return detail::periodic_arclength(
                       [&](double t) { return detail::focus_loop_eval(0.0, eta, r, +1.0, t); },
                       1e-13) +
                   detail::periodic_arclength(
                       [&](double t) { return detail::focus_loop_eval(0.0, eta, r, -1.0, t); },
                       1e-13);
        case CassiniTopology::Lemniscate: {
            // half lobe from the node t = pi/4 to the top t = pi/2,
            // regularized by t = pi/4 + u^2; two symmetric halves per lobe
            const double half_lobe = detail::adaptive_simpson(
                [&](double u) {
                    const double t = two_pi / 8.0 + u * u;
                    const ContourNode n = detail::lemniscate_eval(0.0, eta, +1.0, t);
                    return 2.0 * u * std::abs(n.dz);
                },
                0.0, std::sqrt(two_pi / 8.0), 1e-12);
            return 4.0 * half_lobe;
        }
    }
    return 0.0;
}

/// Closed integral formula for the length of the Cassini oval
/// |z - i||z + i| = gamma^2 (both loops when gamma < 1):
/// l(i, gamma) = (4 gamma^2/sqrt(1+gamma^2))
///               * Int_0^{pi/2} (1 - m sin^2 phi)^{-1/4} dphi,
/// m = 4 gamma^2/(1+gamma^2)^2. The integrand endpoint singularity at
/// gamma = 1 is removed by phi = pi/2 - u^2.
inline double cassini_length_closed(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("cassini_length_closed: gamma > 0 required");
    const double g2 = gamma * gamma;
    const double m = 4.0 * g2 / ((1.0 + g2) * (1.0 + g2));
    return 4.0 * g2 / std::sqrt(1.0 + g2) * detail::matz_integral(m);
}

/// Normalized boundary length L(i, gamma) = gamma^{-2} (1 + sqrt(1+gamma^2))
/// * l(i, gamma); increases from 4pi on (0,1), peaks at the lemniscate and
/// decreases to 2pi.
inline double normalized_cassini_length(double gamma) {
    return (1.0 + std::sqrt(1.0 + gamma * gamma)) / (gamma * gamma) * cassini_length_closed(gamma);
}

/// Theta = sup_gamma L(i, gamma) / (2 pi), located by golden-section search
/// on [0.5, 2]; the maximum sits at the lemniscate radius gamma = 1.
inline double theta_constant() {
    const double phi = 0.61803398874989484820458683436564;
    double a = 0.5, b = 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = normalized_cassini_length(x1), f2 = normalized_cassini_length(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = normalized_cassini_length(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = normalized_cassini_length(x1);
        }
    }
    const double two_pi = 6.283185307179586476925286766559;
    return std::max(f1, f2) / two_pi;
}

/// The circularized lens Omega(y, r) is nonempty iff r > |im y|.
inline bool omega_nonempty(double eta, double r) { return r > eta; }

/// Boundary of the sigma-ball slice in the plane of w: loop 0 is the circle
/// dB(w, r); when the lens B(w,r) cap B(wbar,r) is nonempty its boundary is
/// emitted as loop 1 (two circular arcs joined at the real axis).
inline std::vector<std::vector<ContourNode>> sigma_ball_slice_boundary(std::complex<double> w,
                                                                       double r, int n_points) {
    if (r <= 0.0) throw std::invalid_argument("sigma_ball_slice_boundary: radius must be positive");
    if (n_points < 8) throw std::invalid_argument("sigma_ball_slice_boundary: need >= 8 points");
    const double eta = std::fabs(w.imag());
    const std::complex<double> wu{w.real(), eta}, wl{w.real(), -eta};
    std::vector<std::vector<ContourNode>> out;
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<ContourNode> circle(n_points);
    for (int k = 0; k < n_points; ++k) {
        const double t = two_pi * k / n_points;
        circle[k] = {t, w + r * std::complex<double>(std::cos(t), std::sin(t)),
                     r * std::complex<double>(-std::sin(t), std::cos(t))};
    }
    out.push_back(std::move(circle));
    if (!omega_nonempty(eta, r)) return out;
    if (eta == 0.0) return out;  // lens equals the disk itself; circle already emitted
    const double a = std::asin(eta / r);
    const int half = n_points / 2;
    std::vector<ContourNode> lens;
    lens.reserve(2 * half);
    const double pi = two_pi / 2.0;
    for (int k = 0; k < half; ++k) {  // lower arc of the circle around w
        const double t = (pi + a) + (pi - 2.0 * a) * (static_cast<double>(k) / half);
        lens.push_back({t, wu + r * std::complex<double>(std::cos(t), std::sin(t)),
                        r * std::complex<double>(-std::sin(t), std::cos(t))});
    }
    for (int k = 0; k < half; ++k) {  // upper arc of the circle around wbar
        const double t = a + (pi - 2.0 * a) * (static_cast<double>(k) / half);
        lens.push_back({t, wl + r * std::complex<double>(std::cos(t), std::sin(t)),
                        r * std::complex<double>(-std::sin(t), std::cos(t))});
    }
    out.push_back(std::move(lens));
    return out;
}

}  // namespace slicereg
