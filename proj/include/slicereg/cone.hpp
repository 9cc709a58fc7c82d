#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "slicereg/algebra.hpp"
#include "slicereg/rng.hpp"

namespace slicereg {

inline constexpr double kConeTol = 1e-9;

/// Point of the quadratic cone in decomposed form x = alpha + beta J,
/// beta >= 0, J^2 = -1. Real points (beta == 0) carry a flagged placeholder J;
/// formulas that need J must branch on is_real().
class ConePoint {
public:
    ConePoint() = default;
    /// Compose alpha + beta j. j must be a square root of -1 unless beta == 0.
    ConePoint(double alpha, double beta, Element j, bool real_placeholder = false)
        : alpha_(alpha), beta_(beta), j_(std::move(j)), real_(real_placeholder || beta == 0.0) {
        if (beta_ < 0.0) throw std::invalid_argument("ConePoint: beta must be >= 0");
        if (!real_ && j_.imaginary_unit_defect() > kConeTol * 10.0)
            throw std::invalid_argument("ConePoint: j is not a square root of -1");
        elem_ = Element::real(j_.algebra(), alpha_) + beta_ * j_;
    }

    static ConePoint real_point(const Algebra& alg, double alpha) {
        // canonical placeholder: first non-unity basis vector
        return ConePoint(alpha, 0.0, Element::basis(alg, 1), true);
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const Element& j() const { return j_; }
    bool is_real() const { return real_; }
    const Element& element() const { return elem_; }
    const Algebra& algebra() const { return j_.algebra(); }
    /// Complex shadow alpha + i beta (beta >= 0, so always in the closed upper half plane).
    std::complex<double> shadow() const { return {alpha_, beta_}; }
    ConePoint conjugated() const {
        return real_ ? *this : ConePoint(alpha_, beta_, -j_);
    }

private:
    double alpha_ = 0.0;
    double beta_ = 0.0;
    Element j_;
    bool real_ = false;
    Element elem_;
};

/// Decompose x = alpha + beta J. Throws NotInConeError when t(x) or n(x) has a
/// non-real part beyond tol (scaled by the operand magnitude) or when
/// 4 n(x) <= t(x)^2 with beta above tolerance.
inline ConePoint cone_decompose(const Element& x, double tol = kConeTol) {
    const double scale1 = std::max(1.0, x.norm_euclid());
    const double scale2 = scale1 * scale1;
    const Element t = x.trace();
    if (!t.is_real(tol * scale1))
        throw NotInConeError("cone_decompose: trace is not real");
    const Element n = x.norm_quadratic();
    if (!n.is_real(tol * scale2))
        throw NotInConeError("cone_decompose: quadratic norm is not real");
    const double alpha = t.scalar_part() / 2.0;
    const Element im = x - Element::real(x.algebra(), alpha);
    const double beta = im.norm();
    if (beta <= tol * scale1) return ConePoint::real_point(x.algebra(), alpha);
    const double discriminant = 4.0 * n.scalar_part() - t.scalar_part() * t.scalar_part();
    if (discriminant <= 0.0)
        throw NotInConeError("cone_decompose: 4 n(x) <= t(x)^2 with nonzero imaginary part");
    Element j = im * (1.0 / beta);
    if (j.imaginary_unit_defect() > tol * 100.0)
        throw NotInConeError("cone_decompose: normalized imaginary part is not a root of -1");
    return ConePoint(alpha, beta, std::move(j));
}

/// x^{-1} = n(x)^{-1} x^c for nonzero cone points.
inline Element inverse_in_cone(const ConePoint& x) {
    const Element e = x.element();
    const double n = e.norm_quadratic().scalar_part();
    if (n == 0.0) throw std::domain_error("inverse_in_cone: zero element");
    return e.conjugate() * (1.0 / n);
}

// ---------------------------------------------------------------------------
// Splitting bases

/// Ordered splitting base (1, J, J_1, J J_1, ..., J_h, J J_h) associated
/// with J, built by greedy extension: each coordinate vector not in the
/// current real span contributes a normalized J_l paired with J J_l. The span
/// stays closed under left multiplication by J, so the result is a basis.
inline std::vector<Element> splitting_base(const Element& j) {
    if (j.imaginary_unit_defect() > 1e-8)
        throw std::invalid_argument("splitting_base: j is not a square root of -1");
    const Algebra& alg = j.algebra();
    const int d = alg.dim();
    std::vector<Element> base;
    base.push_back(Element::one(alg));
    base.push_back(j);

    // orthonormal tracker of the current real span (euclidean coordinates)
    std::vector<Element> ortho = {Element::one(alg), [&] {
                                      Element t = j;
                                      Element p = Element::one(alg) * (j.scalar_part());
                                      t -= p;
                                      return t * (1.0 / t.norm_euclid());
                                  }()};
    auto project_out = [&](Element v) {
        for (const Element& q : ortho) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += v[i] * q[i];
            v -= dot * q;
        }
        return v;
    };
    auto add_to_span = [&](const Element& v) {
        Element w = project_out(v);
        const double nw = w.norm_euclid();
        if (nw > 1e-12) ortho.push_back(w * (1.0 / nw));
    };

    for (int k = 0; k < d && static_cast<int>(base.size()) < d; ++k) {
        const Element cand = Element::basis(alg, k);
        Element w = project_out(cand);
        const double nw = w.norm_euclid();
        if (nw <= 1e-9) continue;
        Element jl = w * (1.0 / nw);
        const double na = jl.norm();
        jl = jl * (1.0 / na);  // |J_l|_A = 1
        Element jjl = j * jl;
        base.push_back(jl);
        base.push_back(jjl);
        add_to_span(jl);
        add_to_span(jjl);
    }
    if (static_cast<int>(base.size()) != d)
        throw std::runtime_error("splitting_base: construction did not reach full dimension");
    return base;
}

/// Change-of-basis matrix with the base vectors as columns.
inline detail::Matrix basis_matrix(const std::vector<Element>& base) {
    const int d = static_cast<int>(base.size());
    detail::Matrix m(d, d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) m(r, c) = base[c][r];
    return m;
}

/// Coordinates of x in a (not necessarily orthogonal) basis.
inline std::vector<double> coordinates_in(const std::vector<Element>& base, const Element& x) {
    detail::Matrix m = basis_matrix(base);
    std::vector<int> piv;
    double det = 0.0;
    if (!detail::lu_factor(m, piv, det) || det == 0.0)
        throw std::runtime_error("coordinates_in: basis matrix is singular");
    std::vector<double> b = x.coords();
    detail::lu_solve(m, piv, b);
    return b;
}

/// Operator norm of the coordinate map x -> coords_{B_J}(x) for the splitting
/// base built at J, i.e. |M_J^{-1}|_2 (with the euclidean |.|_A this bounds
/// |x|_{B_J} <= H_J |x|_A).
inline double splitting_condition(const Element& j) {
    const auto base = splitting_base(j);
    const double smin = detail::smallest_singular_value(basis_matrix(base));
    if (smin == 0.0) throw std::runtime_error("splitting_condition: singular base");
    return 1.0 / smin;
}

// ---------------------------------------------------------------------------
// Sampling S_A and the cone

namespace detail {

/// Indices of the -1 eigenspace of the conjugation (t(J) = 0 exactly there).
inline std::vector<int> imaginary_basis(const Algebra& alg) {
    std::vector<int> idx;
    for (int i = 0; i < alg.dim(); ++i)
        if (alg.conjugation_sign(i) < 0.0) idx.push_back(i);
    return idx;
}

/// Damped Gauss-Newton projection of an imaginary-subspace vector onto the
/// variety {J^2 = -1}. Together with t(J) = 0 this lands exactly on S_A.
inline std::optional<Element> project_to_sphere(Element j, const std::vector<int>& imag_idx) {
    const Algebra& alg = j.algebra();
    const int d = alg.dim();
    const int m = static_cast<int>(imag_idx.size());
    for (int iter = 0; iter < 80; ++iter) {
        Element f = j * j;
        f[0] += 1.0;
        const double res = f.norm_euclid();
        if (res < 1e-13) return j;
        // Jacobian columns: b_i J + J b_i restricted to the imaginary coordinates
        Matrix jac(d, m);
        for (int c = 0; c < m; ++c) {
            const Element b = Element::basis(alg, imag_idx[c]);
            const Element col = b * j + j * b;
            for (int r = 0; r < d; ++r) jac(r, c) = col[r];
        }
        // normal equations with a small damping term
        Matrix ata(m, m);
        std::vector<double> atb(m, 0.0);
        for (int i = 0; i < m; ++i) {
            for (int k = 0; k <= i; ++k) {
                double s = 0.0;
                for (int r = 0; r < d; ++r) s += jac(r, i) * jac(r, k);
                ata(i, k) = s;
                ata(k, i) = s;
            }
            double s = 0.0;
            for (int r = 0; r < d; ++r) s += jac(r, i) * f[r];
            atb[i] = s;
            ata(i, i) += 1e-12;
        }
        std::vector<int> piv;
        double det = 0.0;
        Matrix lu = ata;
        if (!lu_factor(lu, piv, det)) return std::nullopt;
        lu_solve(lu, piv, atb);
        for (int c = 0; c < m; ++c) j[imag_idx[c]] -= atb[c];
    }
    return std::nullopt;
}

}  // namespace detail

/// Random J in S_A. For C, H, O and R_1, R_2 the unit sphere of the imaginary
/// subspace is exactly S_A; for R_3..R_5 a Gauss-Newton projection onto
/// {J^2 = -1} inside that subspace is applied.
inline Element random_sphere_point(const Algebra& alg, Rng& rng) {
    const auto idx = detail::imaginary_basis(alg);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Element j(alg);
        for (int i : idx) j[i] = rng.normal();
        const double n = j.norm_euclid();
        if (n < 1e-8) continue;
        j *= 1.0 / n;
        if (j.imaginary_unit_defect() < 1e-12) return j;
        auto projected = detail::project_to_sphere(j, idx);
        if (!projected) continue;
        Element out = *projected;
        if (out.norm_euclid() < 1e-6) continue;
        if (out.imaginary_unit_defect() < 1e-12) return out;
    }
    throw std::runtime_error("random_sphere_point: sampling failed");
}

/// Random cone point alpha + beta J with alpha in [-amax, amax], beta in (0, bmax].
inline ConePoint random_cone_point(const Algebra& alg, Rng& rng, double amax = 2.0,
                                   double bmax = 2.0, double bmin = 1e-3) {
    const double alpha = rng.uniform(-amax, amax);
    const double beta = bmin + (bmax - bmin) * rng.uniform();
    return ConePoint(alpha, beta, random_sphere_point(alg, rng));
}

// ---------------------------------------------------------------------------
// The constants c_A, C_A and H

/// The constants are extrema over compact sets with no closed form, so they
/// are estimated by sampling plus a deterministic basis-pair sweep: the
/// returned C and H are lower bounds of the true maxima, c an upper bound of
/// the minimum, and all are monotone in the sample count.
inline AlgebraConstants estimate_constants(const Algebra& alg, int samples,
                                           std::uint64_t seed = 0x5eedc0de5eedc0deull) {
    if (samples < 1) throw std::invalid_argument("estimate_constants: samples >= 1");
    Rng rng(seed);
    const int d = alg.dim();
    AlgebraConstants out;
    out.c = std::numeric_limits<double>::infinity();

    // deterministic part of C_A: all normalized basis pairs
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Element vi = Element::basis(alg, i), vj = Element::basis(alg, j);
            const double ni = vi.norm(), nj = vj.norm();
            if (ni == 0.0 || nj == 0.0) continue;
            out.C = std::max(out.C, (vi * vj).norm() / (ni * nj));
        }

    auto unit_cone = [&](Rng& r) {
        const double theta = r.uniform(0.0, 6.283185307179586);
        Element e = Element::real(alg, std::cos(theta)) + std::sin(theta) * random_sphere_point(alg, r);
        return e * (1.0 / e.norm());
    };
    auto unit_any = [&](Rng& r) {
        Element e(alg);
        for (int i = 0; i < d; ++i) e[i] = r.normal();
        const double n = e.norm();
        return e * (1.0 / n);
    };

    Element best_cx = Element::one(alg), best_cy = Element::one(alg);
    Element best_lx = Element::one(alg), best_ly = Element::one(alg), best_lz = Element::one(alg);
    for (int s = 0; s < samples; ++s) {
        const Element u = unit_any(rng);
        const Element v = unit_any(rng);
        const double prod = (u * v).norm();
        if (prod > out.C) {
            out.C = prod;
            best_cx = u;
            best_cy = v;
        }
        const Element x = unit_cone(rng);
        const Element z = unit_cone(rng);
        const double triple = ((x * u) * z).norm();
        if (triple < out.c) {
            out.c = triple;
            best_lx = x;
            best_ly = u;
            best_lz = z;
        }
    }

    // deterministic local refinement of the sampled extrema (coordinate
    // perturbation with a shrinking step; keeps the bounds one-sided)
    auto renorm_any = [&](Element e) { return e * (1.0 / e.norm()); };
    double step = 0.3;
    for (int it = 0; it < 600; ++it) {
        Element u = best_cx, v = best_cy;
        for (int i = 0; i < d; ++i) {
            u[i] += step * rng.normal();
            v[i] += step * rng.normal();
        }
        u = renorm_any(u);
        v = renorm_any(v);
        const double prod = (u * v).norm();
        if (prod > out.C) {
            out.C = prod;
            best_cx = u;
            best_cy = v;
        }
        Element y = best_ly;
        for (int i = 0; i < d; ++i) y[i] += step * rng.normal();
        y = renorm_any(y);
        const Element x = (it % 3 == 0) ? unit_cone(rng) : best_lx;
        const Element z = (it % 3 == 1) ? unit_cone(rng) : best_lz;
        const double triple = ((x * y) * z).norm();
        if (triple < out.c) {
            out.c = triple;
            best_lx = x;
            best_ly = y;
            best_lz = z;
        }
        step *= 0.99;
    }

    // H over sampled J plus the canonical generators that lie in S_A
    const int h_samples = std::min(samples, 256);
    for (int s = 0; s < h_samples; ++s)
        out.H = std::max(out.H, splitting_condition(random_sphere_point(alg, rng)));
    const Element canonical = Element::basis(alg, 1);
    if (canonical.imaginary_unit_defect() < 1e-12)
        out.H = std::max(out.H, splitting_condition(canonical));
    return out;
}

inline const AlgebraConstants& Algebra::constants() const {
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    if (!constants_cache_)
        constants_cache_ = std::make_shared<const AlgebraConstants>(estimate_constants(*this, 2048));
    return *constants_cache_;
}

}  // namespace slicereg
