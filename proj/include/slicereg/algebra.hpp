#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "slicereg/detail/linalg.hpp"

namespace slicereg {

struct SpecMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotInConeError : std::domain_error {
    using std::domain_error::domain_error;
};
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AlgebraKind { Complex, Quaternion, Octonion, Clifford };
enum class NormKind { Euclidean, CliffordOperator };

inline constexpr int kMaxDim = 32;  // Clifford(5)

class Element;

/// c_A = min |(xy)z| over unit x,z in the cone and unit y;
/// C_A = max |xy| over unit x,y; H bounds the splitting coordinate map
/// |x|_{B_J} <= H |x|_A. Estimated, see estimate_constants() in cone.hpp.
struct AlgebraConstants {
    double c = 0.0;
    double C = 0.0;
    double H = 0.0;
};

/// One finite-dimensional real alternative *-algebra: structure constants,
/// conjugation signs, and the distinguished norm |.|_A.
///
/// Supported instances: C, H, O and the Clifford algebras R_n, 1 <= n <= 5,
/// with signature (0, n). Basis vector 0 is always the unity. Every basis
/// product is +-1 times a basis vector in these algebras, but the product
/// table is stored as general sparse coordinate lists so the multiplication
/// code does not depend on that.
class Algebra {
public:
    struct Term {
        int index;
        double coeff;
    };

    static const Algebra& complex_algebra();
    static const Algebra& quaternion();
    static const Algebra& octonion();
    static const Algebra& clifford(int n, NormKind norm = NormKind::Euclidean);

    AlgebraKind kind() const { return kind_; }
    int clifford_n() const { return clifford_n_; }
    int dim() const { return dim_; }
    /// h such that dim = 2h + 2 (number of splitting-base pairs beyond {1, J}).
    int splitting_pairs() const { return dim_ / 2 - 1; }
    NormKind norm_kind() const { return norm_; }
    const std::string& name() const { return name_; }
    const std::string& basis_name(int i) const { return basis_names_[i]; }
    double conjugation_sign(int i) const { return conj_sign_[i]; }
    const std::vector<Term>& basis_product(int i, int j) const {
        return table_[static_cast<size_t>(i) * dim_ + j];
    }

    bool same_as(const Algebra& other) const { return this == &other; }

    /// Estimated (c_A, C_A, H); computed once with a fixed seed, cached.
    const AlgebraConstants& constants() const;

    double norm(const Element& x) const;

private:
    Algebra() = default;
    static Algebra make_complex();
    static Algebra make_quaternion();
    static Algebra make_octonion();
    static Algebra make_clifford(int n, NormKind norm);

    AlgebraKind kind_ = AlgebraKind::Complex;
    int clifford_n_ = 0;
    int dim_ = 0;
    NormKind norm_ = NormKind::Euclidean;
    std::string name_;
    std::vector<std::string> basis_names_;
    std::vector<std::vector<Term>> table_;
    std::vector<double> conj_sign_;

    mutable std::shared_ptr<const AlgebraConstants> constants_cache_;
};

/// Coordinate vector over the basis of one Algebra. Plain value type;
/// all operations are pure.
class Element {
public:
    Element() = default;
    explicit Element(const Algebra& alg) : alg_(&alg), size_(alg.dim()) { coords_.fill(0.0); }
    Element(const Algebra& alg, const std::vector<double>& coords) : Element(alg) {
        if (static_cast<int>(coords.size()) != size_)
            throw std::invalid_argument("Element: coordinate count does not match algebra dimension");
        for (int i = 0; i < size_; ++i) coords_[i] = coords[i];
    }

    static Element zero(const Algebra& alg) { return Element(alg); }
    static Element one(const Algebra& alg) { return basis(alg, 0); }
    static Element real(const Algebra& alg, double t) {
        Element e(alg);
        e.coords_[0] = t;
        return e;
    }
    static Element basis(const Algebra& alg, int i) {
        Element e(alg);
        e.coords_[i] = 1.0;
        return e;
    }

    const Algebra& algebra() const { return *alg_; }
    bool valid() const { return alg_ != nullptr; }
    int dim() const { return size_; }
    double operator[](int i) const { return coords_[i]; }
    double& operator[](int i) { return coords_[i]; }
    std::vector<double> coords() const { return {coords_.begin(), coords_.begin() + size_}; }

    Element& operator+=(const Element& rhs) {
        check(rhs);
        for (int i = 0; i < size_; ++i) coords_[i] += rhs.coords_[i];
        return *this;
    }
    Element& operator-=(const Element& rhs) {
        check(rhs);
        for (int i = 0; i < size_; ++i) coords_[i] -= rhs.coords_[i];
        return *this;
    }
    Element& operator*=(double s) {
        for (int i = 0; i < size_; ++i) coords_[i] *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, double s) { return a *= s; }
    friend Element operator*(double s, Element a) { return a *= s; }
    friend Element operator-(Element a) { return a *= -1.0; }

    friend Element operator*(const Element& a, const Element& b) {
        a.check(b);
        const Algebra& alg = *a.alg_;
        Element out(alg);
        for (int i = 0; i < a.size_; ++i) {
            const double ai = a.coords_[i];
            if (ai == 0.0) continue;
            for (int j = 0; j < b.size_; ++j) {
                const double bj = b.coords_[j];
                if (bj == 0.0) continue;
                for (const auto& term : alg.basis_product(i, j))
                    out.coords_[term.index] += ai * bj * term.coeff;
            }
        }
        return out;
    }

    /// Anti-involution x -> x^c (diagonal in the canonical basis).
    Element conjugate() const {
        Element out = *this;
        for (int i = 0; i < size_; ++i) out.coords_[i] *= alg_->conjugation_sign(i);
        return out;
    }
    /// t(x) = x + x^c.
    Element trace() const { return *this + conjugate(); }
    /// n(x) = x x^c.
    Element norm_quadratic() const { return *this * conjugate(); }

    double scalar_part() const { return coords_[0]; }
    /// re(x) = (x + x^c)/2 and im(x) = (x - x^c)/2; re() is a real number only
    /// on the quadratic cone, so it is kept as an Element here.
    Element real_part() const { return (*this + conjugate()) * 0.5; }
    Element imaginary_part() const { return (*this - conjugate()) * 0.5; }

    double norm_euclid() const {
        double s = 0.0;
        for (int i = 0; i < size_; ++i) s += coords_[i] * coords_[i];
        return std::sqrt(s);
    }
    double norm_sup() const {
        double s = 0.0;
        for (int i = 0; i < size_; ++i) s = std::max(s, std::fabs(coords_[i]));
        return s;
    }
    /// The distinguished norm |.|_A of the algebra.
    double norm() const { return alg_->norm(*this); }

    bool is_real(double tol) const {
        for (int i = 1; i < size_; ++i)
            if (std::fabs(coords_[i]) > tol) return false;
        return true;
    }

    /// |J^2 + 1|, zero exactly on the square roots of -1.
    double imaginary_unit_defect() const {
        Element sq = (*this) * (*this);
        sq.coords_[0] += 1.0;
        return sq.norm_euclid();
    }

private:
    void check(const Element& rhs) const {
        if (alg_ != rhs.alg_)
            throw SpecMismatchError("Element: operands belong to different algebras");
    }

    const Algebra* alg_ = nullptr;
    int size_ = 0;
    std::array<double, kMaxDim> coords_{};
};

inline double distance(const Element& a, const Element& b) { return (a - b).norm_euclid(); }

inline bool approx_equal(const Element& a, const Element& b, double tol) {
    return distance(a, b) <= tol;
}

/// Left-multiplication matrix L_x.
inline detail::Matrix left_mult_matrix(const Element& x) {
    const Algebra& alg = x.algebra();
    const int d = alg.dim();
    detail::Matrix m(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            if (x[i] == 0.0) continue;
            for (const auto& term : alg.basis_product(i, j)) m(term.index, j) += x[i] * term.coeff;
        }
    return m;
}

// ---------------------------------------------------------------------------
// Algebra construction

inline Algebra Algebra::make_complex() {
    Algebra a;
    a.kind_ = AlgebraKind::Complex;
    a.dim_ = 2;
    a.name_ = "C";
    a.basis_names_ = {"1", "i"};
    a.conj_sign_ = {1.0, -1.0};
    a.table_.resize(4);
    auto set = [&](int i, int j, int k, double s) { a.table_[i * 2 + j] = {{k, s}}; };
    set(0, 0, 0, 1);
    set(0, 1, 1, 1);
    set(1, 0, 1, 1);
    set(1, 1, 0, -1);
    return a;
}

inline Algebra Algebra::make_quaternion() {
    Algebra a;
    a.kind_ = AlgebraKind::Quaternion;
    a.dim_ = 4;
    a.name_ = "H";
    a.basis_names_ = {"1", "i", "j", "k"};
    a.conj_sign_ = {1.0, -1.0, -1.0, -1.0};
    a.table_.assign(16, {});
    auto set = [&](int i, int j, int k, double s) { a.table_[i * 4 + j] = {{k, s}}; };
    for (int i = 0; i < 4; ++i) {
        set(0, i, i, 1);
        set(i, 0, i, 1);
    }
    for (int i = 1; i < 4; ++i) set(i, i, 0, -1);
    const int lines[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};  // ij=k, jk=i, ki=j
    for (const auto& l : lines) {
        set(l[0], l[1], l[2], 1);
        set(l[1], l[0], l[2], -1);
    }
    return a;
}

inline Algebra Algebra::make_octonion() {
    Algebra a;
    a.kind_ = AlgebraKind::Octonion;
    a.dim_ = 8;
    a.name_ = "O";
    a.basis_names_ = {"1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"};
    a.conj_sign_.assign(8, -1.0);
    a.conj_sign_[0] = 1.0;
    a.table_.assign(64, {});
    auto set = [&](int i, int j, int k, double s) { a.table_[i * 8 + j] = {{k, s}}; };
    for (int i = 0; i < 8; ++i) {
        set(0, i, i, 1);
        set(i, 0, i, 1);
    }
    for (int i = 1; i < 8; ++i) set(i, i, 0, -1);
    // Oriented Fano lines of the Cayley-Dickson doubling of H:
    // for each line (a,b,c): ea eb = ec, eb ec = ea, ec ea = eb.
    const int lines[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                             {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (const auto& l : lines) {
        const int x = l[0], y = l[1], z = l[2];
        set(x, y, z, 1);
        set(y, x, z, -1);
        set(y, z, x, 1);
        set(z, y, x, -1);
        set(z, x, y, 1);
        set(x, z, y, -1);
    }
    return a;
}

namespace detail {
/// Sign of the blade product e_S e_T in R_{0,n}: reordering inversions times
/// (-1) per repeated generator (e_i^2 = -1).
inline int blade_product_sign(std::uint32_t s, std::uint32_t t) {
    int inversions = 0;
    std::uint32_t a = s >> 1;
    while (a != 0) {
        inversions += std::popcount(a & t);
        a >>= 1;
    }
    const int repeats = std::popcount(s & t);
    return ((inversions + repeats) % 2 == 0) ? 1 : -1;
}

inline std::string blade_name(std::uint32_t mask) {
    if (mask == 0) return "1";
    std::string s = "e";
    for (int b = 0; b < 8; ++b)
        if (mask & (1u << b)) s += static_cast<char>('1' + b);
    return s;
}
}  // namespace detail

inline Algebra Algebra::make_clifford(int n, NormKind norm) {
    if (n < 1 || n > 5) throw std::invalid_argument("Clifford(n) supported for 1 <= n <= 5");
    Algebra a;
    a.kind_ = AlgebraKind::Clifford;
    a.clifford_n_ = n;
    a.dim_ = 1 << n;
    a.norm_ = norm;
    a.name_ = "R_" + std::to_string(n);
    const int d = a.dim_;
    a.basis_names_.resize(d);
    a.conj_sign_.resize(d);
    a.table_.assign(static_cast<size_t>(d) * d, {});
    for (int i = 0; i < d; ++i) {
        a.basis_names_[i] = detail::blade_name(static_cast<std::uint32_t>(i));
        const int k = std::popcount(static_cast<std::uint32_t>(i));
        // Clifford conjugation acts on a grade-k blade by (-1)^{k(k+1)/2}
        a.conj_sign_[i] = (((k * (k + 1) / 2) % 2) == 0) ? 1.0 : -1.0;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int sign = detail::blade_product_sign(static_cast<std::uint32_t>(i),
                                                        static_cast<std::uint32_t>(j));
            a.table_[static_cast<size_t>(i) * d + j] = {{i ^ j, static_cast<double>(sign)}};
        }
    return a;
}

inline const Algebra& Algebra::complex_algebra() {
    static const Algebra a = make_complex();
    return a;
}
inline const Algebra& Algebra::quaternion() {
    static const Algebra a = make_quaternion();
    return a;
}
inline const Algebra& Algebra::octonion() {
    static const Algebra a = make_octonion();
    return a;
}
inline const Algebra& Algebra::clifford(int n, NormKind norm) {
    static std::map<std::pair<int, int>, std::unique_ptr<Algebra>> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, static_cast<int>(norm));
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto alg = std::unique_ptr<Algebra>(new Algebra(make_clifford(n, norm)));
        it = cache.emplace(key, std::move(alg)).first;
    }
    return *it->second;
}

inline double Algebra::norm(const Element& x) const {
    if (norm_ == NormKind::Euclidean) return x.norm_euclid();
    return detail::spectral_norm(left_mult_matrix(x));
}

}  // namespace slicereg
