#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "slicereg/cone.hpp"

namespace slicereg {

/// Value in the complexification A (x) C, stored as re + i im with A-valued parts.
struct Complexified {
    Element re, im;
};

/// Polynomial stem F(z) = sum_k z^k (c1_k + i c2_k) with a central complex
/// variable z and coefficients in A (x) C. A-valued coefficients (c2 = 0)
/// satisfy the stem condition F(conj z) = conj(F(z)) automatically; for
/// general coefficients the parity condition is enforced at evaluation only
/// on the real axis, where the i-part is discarded (see induce_checked).
class StemPolynomial {
public:
    explicit StemPolynomial(const Algebra& alg) : alg_(&alg) {}

    static StemPolynomial from_coeffs(std::vector<Element> c1) {
        if (c1.empty()) throw std::invalid_argument("StemPolynomial: empty coefficient list");
        StemPolynomial f(c1.front().algebra());
        f.c1_ = std::move(c1);
        f.c2_.assign(f.c1_.size(), Element::zero(*f.alg_));
        return f;
    }
    static StemPolynomial from_coeffs(std::vector<Element> c1, std::vector<Element> c2) {
        if (c1.size() != c2.size())
            throw std::invalid_argument("StemPolynomial: c1/c2 length mismatch");
        StemPolynomial f = from_coeffs(std::move(c1));
        f.c2_ = std::move(c2);
        return f;
    }
    static StemPolynomial from_real_coeffs(const Algebra& alg, const std::vector<double>& a) {
        std::vector<Element> c1;
        c1.reserve(a.size());
        for (double v : a) c1.push_back(Element::real(alg, v));
        return from_coeffs(std::move(c1));
    }
    static StemPolynomial constant(Element a) { return from_coeffs({std::move(a)}); }
    static StemPolynomial monomial(int k, Element a) {
        std::vector<Element> c1(static_cast<size_t>(k) + 1, Element::zero(a.algebra()));
        c1[k] = std::move(a);
        return from_coeffs(std::move(c1));
    }
    static StemPolynomial identity(const Algebra& alg) {
        return monomial(1, Element::one(alg));
    }
    /// (z - y)^n with A-valued binomial coefficients (powers of y associate).
    static StemPolynomial power_of_binomial(const ConePoint& y, int n) {
        const Algebra& alg = y.algebra();
        std::vector<Element> c1(static_cast<size_t>(n) + 1, Element::zero(alg));
        Element ypow = Element::one(alg);  // (-y)^{n-k}, built from k = n downward
        double binom = 1.0;
        c1[n] = ypow;
        for (int k = n - 1; k >= 0; --k) {
            ypow = ypow * (-y.element());
            binom = binom * (k + 1) / (n - k);
            c1[k] = ypow * binom;
        }
        return from_coeffs(std::move(c1));
    }
    /// Characteristic polynomial of y: z^2 - t(y) z + n(y), real coefficients.
    static StemPolynomial characteristic(const ConePoint& y) {
        const double t = 2.0 * y.alpha();
        const double n = y.alpha() * y.alpha() + y.beta() * y.beta();
        return from_real_coeffs(y.algebra(), {n, -t, 1.0});
    }

    const Algebra& algebra() const { return *alg_; }
    int degree() const { return static_cast<int>(c1_.size()) - 1; }
    const Element& c1(int k) const { return c1_[k]; }
    const Element& c2(int k) const { return c2_[k]; }

    StemPolynomial& operator+=(const StemPolynomial& g) {
        check(g);
        if (g.c1_.size() > c1_.size()) {
            c1_.resize(g.c1_.size(), Element::zero(*alg_));
            c2_.resize(g.c2_.size(), Element::zero(*alg_));
        }
        for (size_t k = 0; k < g.c1_.size(); ++k) {
            c1_[k] += g.c1_[k];
            c2_[k] += g.c2_[k];
        }
        return *this;
    }
    friend StemPolynomial operator+(StemPolynomial f, const StemPolynomial& g) { return f += g; }
    friend StemPolynomial operator*(StemPolynomial f, double s) {
        for (auto& c : f.c1_) c *= s;
        for (auto& c : f.c2_) c *= s;
        return f;
    }

    /// Slice product: coefficient convolution in the central variable.
    /// Each coefficient product is one binary product in A (x) C, so the
    /// convolution is well defined without associativity.
    friend StemPolynomial slice_product(const StemPolynomial& f, const StemPolynomial& g) {
        f.check(g);
        const Algebra& alg = *f.alg_;
        StemPolynomial out(alg);
        const size_t n = f.c1_.size(), m = g.c1_.size();
        out.c1_.assign(n + m - 1, Element::zero(alg));
        out.c2_.assign(n + m - 1, Element::zero(alg));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j) {
                out.c1_[i + j] += f.c1_[i] * g.c1_[j] - f.c2_[i] * g.c2_[j];
                out.c2_[i + j] += f.c1_[i] * g.c2_[j] + f.c2_[i] * g.c1_[j];
            }
        return out;
    }

    /// Formal derivative dF/dz.
    StemPolynomial derivative() const {
        StemPolynomial out(*alg_);
        if (c1_.size() <= 1) {
            out.c1_ = {Element::zero(*alg_)};
            out.c2_ = {Element::zero(*alg_)};
            return out;
        }
        out.c1_.reserve(c1_.size() - 1);
        out.c2_.reserve(c1_.size() - 1);
        for (size_t k = 1; k < c1_.size(); ++k) {
            out.c1_.push_back(c1_[k] * static_cast<double>(k));
            out.c2_.push_back(c2_[k] * static_cast<double>(k));
        }
        return out;
    }

    /// F(z) in A (x) C.
    Complexified eval_stem(std::complex<double> z) const {
        Element f1 = Element::zero(*alg_), f2 = Element::zero(*alg_);
        std::complex<double> zk{1.0, 0.0};
        for (size_t k = 0; k < c1_.size(); ++k) {
            f1 += zk.real() * c1_[k] - zk.imag() * c2_[k];
            f2 += zk.imag() * c1_[k] + zk.real() * c2_[k];
            zk *= z;
        }
        return {f1, f2};
    }

    struct Induced {
        Element value;
        double discarded_imaginary = 0.0;  // |F2(alpha)| dropped at real points
    };

    /// Slice function value f(x) = F1(z) + J F2(z), z the shadow of x.
    /// At real points the stem condition forces F2 = 0; whatever is left of it
    /// numerically is discarded and reported through induce_checked.
    Induced induce_checked(const ConePoint& x) const {
        const Complexified f = eval_stem(x.shadow());
        if (x.is_real()) return {f.re, f.im.norm()};
        return {f.re + x.j() * f.im, 0.0};
    }
    Element induce(const ConePoint& x) const { return induce_checked(x).value; }

private:
    void check(const StemPolynomial& g) const {
        if (alg_ != g.alg_)
            throw SpecMismatchError("StemPolynomial: operands belong to different algebras");
    }

    const Algebra* alg_ = nullptr;
    std::vector<Element> c1_, c2_;
};

/// Slice and Cullen derivative values of a stem-carried function.
inline StemPolynomial slice_derivative(const StemPolynomial& f) { return f.derivative(); }

inline Element cullen_derivative_at(const StemPolynomial& f, const ConePoint& x) {
    return f.derivative().induce(x);
}

/// The conjugate slice derivative (1/2)(d/dalpha + i d/dbeta) F evaluated at z,
/// computed through two independent evaluation routes; identically zero for
/// polynomial stems up to roundoff.
inline Complexified conjugate_derivative_defect(const StemPolynomial& f, std::complex<double> z) {
    const StemPolynomial da = f.derivative();
    // dF/dbeta = i dF/dz as a separate stem (c1, c2) -> (-c2, c1)
    std::vector<Element> c1, c2;
    for (int k = 0; k <= da.degree(); ++k) {
        c1.push_back(-da.c2(k));
        c2.push_back(da.c1(k));
    }
    const StemPolynomial db = StemPolynomial::from_coeffs(std::move(c1), std::move(c2));
    const Complexified va = da.eval_stem(z);
    const Complexified vb = db.eval_stem(z);
    // (1/2)(va + i vb)
    return {(va.re - vb.im) * 0.5, (va.im + vb.re) * 0.5};
}

/// Representation formula: reconstructs f(alpha + beta I) from the two values
/// on the plane C_J,
///   f(x) = (1/2)(f(z_J) + f(z_J^c)) - (I/2)(J (f(z_J) - f(z_J^c))).
/// The sign convention is the one consistent with
/// (x-y)^{.n} = ((1-IJ)/2)(z_J-y)^n + ((1+IJ)/2)(z_J^c-y)^n.
inline Element representation_formula(const Element& f_at_zj, const Element& f_at_zjc,
                                      const Element& i_new, const Element& j) {
    if (i_new.imaginary_unit_defect() > 1e-8 || j.imaginary_unit_defect() > 1e-8)
        throw std::invalid_argument("representation_formula: I and J must be square roots of -1");
    const Element mean = (f_at_zj + f_at_zjc) * 0.5;
    const Element skew = j * (f_at_zj - f_at_zjc);
    return mean - (i_new * skew) * 0.5;
}

/// Spherical derivative from the two values on the sphere of y:
/// (im y)^{-1} (f(y) - f(y^c))/2; equals the coefficient s_1 of the spherical
/// expansion at y.
inline Element spherical_derivative(const Element& f_at_y, const Element& f_at_yc,
                                    const ConePoint& y) {
    if (y.is_real()) throw std::domain_error("spherical_derivative: undefined at real points");
    const Element im_inv = -(1.0 / y.beta()) * y.j();
    return im_inv * ((f_at_y - f_at_yc) * 0.5);
}

/// Generic slice function: a value for each cone point.
using SliceFunction = std::function<Element(const ConePoint&)>;

inline SliceFunction slice_function(StemPolynomial f) {
    return [f = std::move(f)](const ConePoint& x) { return f.induce(x); };
}

/// The locally constant slice function f(x) = 1 - I_x j0 on Q_A minus the
/// reals (stem value 2 on the upper half plane, 0 on the lower).
inline SliceFunction upper_step(Element j0) {
    if (j0.imaginary_unit_defect() > 1e-10)
        throw std::invalid_argument("upper_step: j0 must be a square root of -1");
    return [j0 = std::move(j0)](const ConePoint& x) {
        if (x.is_real()) throw std::domain_error("upper_step: undefined on the reals");
        return Element::one(x.algebra()) - x.j() * j0;
    };
}

}  // namespace slicereg
