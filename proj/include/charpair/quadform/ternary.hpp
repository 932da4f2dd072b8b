#pragma once

// Ternary quadratic forms in characteristic 2: radicals, the six-row
// classification of conics, and the Artin-Schreier invariant of a cross.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/finite_field.hpp"
#include "charpair/error.hpp"
#include "charpair/poly/parse.hpp"
#include "charpair/poly/polynomial.hpp"
#include "charpair/poly/rational_function.hpp"

namespace charpair {

namespace qf_detail {

inline FFElem zero_of(const FFElem& a) { return {a.f, 0}; }
inline FFElem one_of(const FFElem& a) { return {a.f, 1}; }
inline bool is_zero_elem(const FFElem& a) { return a.v == 0; }
inline std::uint32_t characteristic_of(const FFElem& a) { return a.f->p; }
inline std::string str(const FFElem& a) { return to_string(a); }

template <class F>
RationalFunction<F> zero_of(const RationalFunction<F>& a) { return a.zero_like(); }
template <class F>
RationalFunction<F> one_of(const RationalFunction<F>& a) { return a.constant_like(a.ring().one()); }
template <class F>
bool is_zero_elem(const RationalFunction<F>& a) { return a.is_zero(); }
template <class F>
std::uint32_t characteristic_of(const RationalFunction<F>& a) { return a.ring().characteristic(); }
template <class F>
std::string str(const RationalFunction<F>& a) { return a.to_string(); }

template <class R>
Polynomial<R> zero_of(const Polynomial<R>& a) { return a.zero_like(); }
template <class R>
Polynomial<R> one_of(const Polynomial<R>& a) { return a.constant_like(a.ring().one()); }
template <class R>
bool is_zero_elem(const Polynomial<R>& a) { return a.is_zero(); }
template <class R>
std::uint32_t characteristic_of(const Polynomial<R>& a) { return static_cast<std::uint32_t>(a.ring().characteristic()); }
template <class R>
std::string str(const Polynomial<R>& a) { return a.to_string(); }

/// Rank over K^2 of a list of elements of K. Finite fields are perfect.
inline std::size_t square_class_rank(const std::vector<FFElem>& xs) {
    for (const auto& x : xs)
        if (x.v != 0) return 1;
    return 0;
}

/// Over F(t1..tm) with F perfect, K = sum over e in {0,1}^m of K^2 * t^e.
/// Each element becomes its coordinate vector in that basis; the rank of
/// the resulting matrix over K equals the rank over K^2.
template <class F>
std::size_t square_class_rank(const std::vector<RationalFunction<F>>& xs) {
    using RF = RationalFunction<F>;
    if (xs.empty()) return 0;
    const std::size_t m = xs.front().vars().size();
    const std::size_t width = std::size_t{1} << m;
    std::vector<std::vector<RF>> rows;
    for (const auto& x : xs) {
        if (x.is_zero()) continue;
        const auto n = x.numerator() * x.denominator();
        std::vector<std::vector<typename Polynomial<F>::Term>> parts(width);
        for (const auto& t : n.terms()) {
            std::size_t eps = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (t.m.e[i] & 1U) eps |= std::size_t{1} << i;
            parts[eps].push_back(t);
        }
        std::vector<RF> row;
        for (auto& p : parts) row.emplace_back(Polynomial<F>(n.vars(), n.ring(), std::move(p)));
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            const RF f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < width; ++c) rows[r][c] = rows[r][c] - f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace qf_detail

template <class K>
using Matrix3 = std::array<std::array<K, 3>, 3>;

template <class K>
K determinant(const Matrix3<K>& T) {
    return T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
           T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
}

template <class K>
struct TernaryQuadraticForm {
    K xx, yy, zz, xy, xz, yz;

    static TernaryQuadraticForm from_list(const std::array<K, 6>& c) { return {c[0], c[1], c[2], c[3], c[4], c[5]}; }
    std::array<K, 6> coefficients() const { return {xx, yy, zz, xy, xz, yz}; }

    bool is_zero() const {
        for (const auto& c : coefficients())
            if (!qf_detail::is_zero_elem(c)) return false;
        return true;
    }
    bool is_totally_singular() const {
        return qf_detail::is_zero_elem(xy) && qf_detail::is_zero_elem(xz) && qf_detail::is_zero_elem(yz);
    }

    K operator()(const std::array<K, 3>& v) const {
        return xx * v[0] * v[0] + yy * v[1] * v[1] + zz * v[2] * v[2] + xy * v[0] * v[1] + xz * v[0] * v[2] +
               yz * v[1] * v[2];
    }

    /// s * q(T X) with X = (x, y, z)^t.
    TernaryQuadraticForm transform(const Matrix3<K>& T, const K& s) const {
        const K zero = qf_detail::zero_of(xx);
        // upper-triangular coefficient table a[i][j], i <= j
        const K a[3][3] = {{xx, xy, xz}, {zero, yy, yz}, {zero, zero, zz}};
        K out[3][3] = {{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = i; k < 3; ++k) {
                if (qf_detail::is_zero_elem(a[i][k])) continue;
                for (std::size_t j = 0; j < 3; ++j)
                    for (std::size_t l = j; l < 3; ++l) {
                        K c = T[i][j] * T[k][l];
                        if (j != l) c = c + T[i][l] * T[k][j];
                        out[j][l] = out[j][l] + a[i][k] * c;
                    }
            }
        return {s * out[0][0], s * out[1][1], s * out[2][2], s * out[0][1], s * out[0][2], s * out[1][2]};
    }

    /// Swap two of the variables x=0, y=1, z=2.
    TernaryQuadraticForm swapped(std::size_t i, std::size_t j) const {
        const K zero = qf_detail::zero_of(xx), one = qf_detail::one_of(xx);
        Matrix3<K> T{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
        std::array<std::size_t, 3> perm{0, 1, 2};
        std::swap(perm[i], perm[j]);
        for (std::size_t r = 0; r < 3; ++r) T[r][perm[r]] = one;
        return transform(T, one);
    }

    std::string to_string() const {
        static const char* names[6] = {"x^2", "y^2", "z^2", "x*y", "x*z", "y*z"};
        const auto c = coefficients();
        std::string out;
        for (std::size_t i = 0; i < 6; ++i) {
            if (qf_detail::is_zero_elem(c[i])) continue;
            if (!out.empty()) out += " + ";
            const std::string s = qf_detail::str(c[i]);
            if (s == "1") {
                out += names[i];
            } else {
                const bool paren = s.find_first_of("+-/ ") != std::string::npos;
                out += (paren ? "(" + s + ")" : s) + "*" + names[i];
            }
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const TernaryQuadraticForm& a, const TernaryQuadraticForm& b) {
        return a.coefficients() == b.coefficients();
    }
};

using FFQuadraticForm = TernaryQuadraticForm<FFElem>;
using RFQuadraticForm = TernaryQuadraticForm<FRational>;

/// Read a ternary form from a homogeneous quadratic polynomial in three variables.
inline FFQuadraticForm quadratic_form_from_polynomial(const FPoly& f) {
    if (f.vars().size() != 3) throw DomainError("ternary form needs exactly three variables");
    if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != 2))
        throw DomainError("ternary form must be homogeneous of degree 2");
    auto c = [&](unsigned a, unsigned b, unsigned d) { return f.coeff(Monomial::from({a, b, d})); };
    return {c(2, 0, 0), c(0, 2, 0), c(0, 0, 2), c(1, 1, 0), c(1, 0, 1), c(0, 1, 1)};
}

inline FPoly to_polynomial(const FFQuadraticForm& q, const Vars& vars = Vars{"x", "y", "z"}) {
    const FiniteField K = field_of(q.xx);
    FPoly out(vars, K);
    const unsigned e[6][3] = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    const auto c = q.coefficients();
    for (std::size_t i = 0; i < 6; ++i)
        out += FPoly::monomial(vars, K, Monomial::from({e[i][0], e[i][1], e[i][2]}), c[i]);
    return out;
}

inline FFQuadraticForm parse_quadratic_form(const std::string& text, const FiniteField& K) {
    return quadratic_form_from_polynomial(parse_polynomial(text, Vars{"x", "y", "z"}, K));
}

struct RadicalDims {
    unsigned q = 0;  // dim r(q)
    unsigned b = 0;  // dim r(b_q)
    friend bool operator==(const RadicalDims& a, const RadicalDims& b) { return a.q == b.q && a.b == b.b; }
};

template <class K>
void require_char2_nonzero(const TernaryQuadraticForm<K>& q) {
    if (qf_detail::characteristic_of(q.xx) != 2) throw DomainError("quadratic form must be in characteristic 2");
    if (q.is_zero()) throw DomainError("zero quadratic form");
}

/// (dim r(q), dim r(b_q)).
template <class K>
RadicalDims radical_dims(const TernaryQuadraticForm<K>& q) {
    require_char2_nonzero(q);
    if (q.is_totally_singular()) {
        // q is Frobenius-semilinear on K^3; its kernel has codimension rank_{K^2}(a_xx, a_yy, a_zz)
        const auto r = qf_detail::square_class_rank(std::vector<K>{q.xx, q.yy, q.zz});
        return {static_cast<unsigned>(3 - r), 3};
    }
    // the alternating matrix has rank 2; its kernel is spanned by (a_yz, a_xz, a_xy)
    const bool isotropic = qf_detail::is_zero_elem(q({q.yz, q.xz, q.xy}));
    return {isotropic ? 1U : 0U, 1};
}

/// Index (in x=0,y=1,z=2 terms) of the pair that plays the role of a_xz,
/// in the fixed preference order a_xz, a_xy, a_yz.
template <class K>
std::optional<std::pair<std::size_t, std::size_t>> cross_slot_swap(const TernaryQuadraticForm<K>& q) {
    if (!qf_detail::is_zero_elem(q.xz)) return std::pair<std::size_t, std::size_t>{0, 0};
    if (!qf_detail::is_zero_elem(q.xy)) return std::pair<std::size_t, std::size_t>{1, 2};
    if (!qf_detail::is_zero_elem(q.yz)) return std::pair<std::size_t, std::size_t>{0, 1};
    return std::nullopt;
}

/// Move the preferred nonzero mixed coefficient into the xz slot.
template <class K>
TernaryQuadraticForm<K> with_cross_in_xz(const TernaryQuadraticForm<K>& q) {
    const auto s = cross_slot_swap(q);
    if (!s) throw DomainError("form has no mixed coefficient");
    return s->first == s->second ? q : q.swapped(s->first, s->second);
}

/// The a with q similar to a x^2 + xz + z^2, for forms with dims (1,1).
/// Well defined modulo ℘(K).
template <class K>
K artin_schreier_invariant(const TernaryQuadraticForm<K>& q) {
    const auto d = radical_dims(q);
    if (d.q != 1 || d.b != 1) throw DomainError("Artin-Schreier invariant needs radical dimensions (1,1)");
    const auto p = with_cross_in_xz(q);
    // shearing x and z along y does not touch the (x, z) part of the form
    return p.xx * p.zz / (p.xz * p.xz);
}

enum class ConicTag { SmoothConic, RegularGeomDoubleLine, CrossSplit, CrossConjugate, SingularGeomDoubleLine, DoubleLine };

inline std::string to_string(ConicTag t) {
    switch (t) {
        case ConicTag::SmoothConic:
            return "SmoothConic";
        case ConicTag::RegularGeomDoubleLine:
            return "RegularGeomDoubleLine";
        case ConicTag::CrossSplit:
            return "CrossSplit";
        case ConicTag::CrossConjugate:
            return "CrossConjugate";
        case ConicTag::SingularGeomDoubleLine:
            return "SingularGeomDoubleLine";
        case ConicTag::DoubleLine:
            return "DoubleLine";
    }
    return "?";
}

inline ConicTag conic_tag_from_string(const std::string& s) {
    for (auto t : {ConicTag::SmoothConic, ConicTag::RegularGeomDoubleLine, ConicTag::CrossSplit, ConicTag::CrossConjugate,
                   ConicTag::SingularGeomDoubleLine, ConicTag::DoubleLine})
        if (to_string(t) == s) return t;
    throw ParseError("unknown conic class " + s, 0);
}

/// Geometric description in the words of the classification table.
inline std::string geometry_of(ConicTag t) {
    switch (t) {
        case ConicTag::SmoothConic:
            return "smooth conic";
        case ConicTag::RegularGeomDoubleLine:
            return "regular conic, geom. double line";
        case ConicTag::CrossSplit:
            return "2 rational lines";
        case ConicTag::CrossConjugate:
            return "2 conjugate lines";
        case ConicTag::SingularGeomDoubleLine:
            return "singular conic, geom. double line";
        case ConicTag::DoubleLine:
            return "double line";
    }
    return "?";
}

struct ConicClass {
    ConicTag tag = ConicTag::SmoothConic;
    std::optional<FFElem> invariant;  // present exactly for the two cross rows
    RadicalDims dims;
    bool has_rational_point = false;
    /// The table assumes an anisotropic diagonal part in the totally singular
    /// rows with dim r(q) < 2. Set when the search finds that assumption false.
    bool anisotropy_hypothesis_fails = false;

    bool is_cross() const { return tag == ConicTag::CrossSplit || tag == ConicTag::CrossConjugate; }
    bool is_smooth() const { return tag == ConicTag::SmoothConic; }
};

/// First K-rational point of the conic, scanning P^2(K) in normalized form.
inline std::optional<std::array<FFElem, 3>> find_rational_point(const FFQuadraticForm& q) {
    const FiniteField K = field_of(q.xx);
    const auto elems = K.elements();
    const FFElem zero = K.zero(), one = K.one();
    if (is_zero(q({zero, zero, one}))) return std::array<FFElem, 3>{zero, zero, one};
    for (const auto& z : elems)
        if (is_zero(q({zero, one, z}))) return std::array<FFElem, 3>{zero, one, z};
    for (const auto& y : elems)
        for (const auto& z : elems)
            if (is_zero(q({one, y, z}))) return std::array<FFElem, 3>{one, y, z};
    return std::nullopt;
}

inline ConicClass classify(const FFQuadraticForm& q) {
    ConicClass out;
    out.dims = radical_dims(q);
    out.has_rational_point = find_rational_point(q).has_value();
    switch (out.dims.b * 10 + out.dims.q) {
        case 10:
            out.tag = ConicTag::SmoothConic;
            break;
        case 11: {
            const FFElem a = artin_schreier_invariant(q);
            out.invariant = a;
            out.tag = absolute_trace(a).v == 0 ? ConicTag::CrossSplit : ConicTag::CrossConjugate;
            break;
        }
        case 30:
            out.tag = ConicTag::RegularGeomDoubleLine;
            out.anisotropy_hypothesis_fails = out.has_rational_point;
            break;
        case 31:
            out.tag = ConicTag::SingularGeomDoubleLine;
            out.anisotropy_hypothesis_fails = out.has_rational_point;
            break;
        default:
            out.tag = ConicTag::DoubleLine;
            break;
    }
    return out;
}

/// Quadratic form in n variables over a finite field of characteristic 2,
/// stored as an upper-triangular coefficient table.
class QuadraticForm {
public:
    QuadraticForm(FiniteField K, std::size_t n) : K_(K), n_(n), a_(n * n, K.zero()) {}

    static QuadraticForm from_polynomial(const FPoly& f) {
        if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != 2))
            throw DomainError("quadratic form must be homogeneous of degree 2");
        QuadraticForm q(f.ring(), f.vars().size());
        for (const auto& t : f.terms()) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < q.n_; ++i)
                for (unsigned e = 0; e < t.m.e[i]; ++e) idx.push_back(i);
            q.a_[idx[0] * q.n_ + idx[1]] = t.c;
        }
        return q;
    }

    std::size_t size() const { return n_; }
    const FFElem& coeff(std::size_t i, std::size_t j) const { return a_[std::min(i, j) * n_ + std::max(i, j)]; }

    FFElem operator()(const std::vector<FFElem>& v) const {
        FFElem acc = K_.zero();
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) acc = acc + coeff(i, j) * v[i] * v[j];
        return acc;
    }

    /// (dim r(q), dim r(b_q)).
    RadicalDims radical_dims() const {
        if (K_.characteristic() != 2) throw DomainError("quadratic form must be in characteristic 2");
        // kernel of the alternating matrix by elimination
        std::vector<std::vector<FFElem>> m(n_, std::vector<FFElem>(n_, K_.zero()));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j) m[i][j] = coeff(i, j);
        std::vector<std::size_t> pivots;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n_ && rank < n_; ++col) {
            std::size_t piv = rank;
            while (piv < n_ && is_zero(m[piv][col])) ++piv;
            if (piv == n_) continue;
            std::swap(m[piv], m[rank]);
            const FFElem inv = inverse(m[rank][col]);
            for (auto& x : m[rank]) x = x * inv;
            for (std::size_t r = 0; r < n_; ++r) {
                if (r == rank || is_zero(m[r][col])) continue;
                const FFElem f = m[r][col];
                for (std::size_t c = 0; c < n_; ++c) m[r][c] = m[r][c] - f * m[rank][c];
            }
            pivots.push_back(col);
            ++rank;
        }
        std::vector<std::vector<FFElem>> kernel;
        for (std::size_t free = 0; free < n_; ++free) {
            if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
            std::vector<FFElem> v(n_, K_.zero());
            v[free] = K_.one();
            for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = -m[r][free];
            kernel.push_back(std::move(v));
        }
        // q restricted to the kernel is the square of a linear functional (K perfect)
        bool nonzero = false;
        for (const auto& v : kernel) nonzero = nonzero || !is_zero((*this)(v));
        const auto kb = static_cast<unsigned>(kernel.size());
        return {nonzero ? kb - 1 : kb, kb};
    }

    /// n - dim r(q): the number of variables needed to write q over the closure.
    std::size_t rank() const { return n_ - radical_dims().q; }

private:
    FiniteField K_;
    std::size_t n_;
    std::vector<FFElem> a_;
};

}  // namespace charpair
