#pragma once

// Conic bundles over P^2: construction, discriminants, fibres and
// restriction to lines.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/finite_field.hpp"
#include "charpair/error.hpp"
#include "charpair/poly/polynomial.hpp"
#include "charpair/quadform/ternary.hpp"

namespace charpair {

inline const Vars& base_vars() {
    static const Vars v{"u", "v", "w"};
    return v;
}
inline const Vars& fiber_vars() {
    static const Vars v{"x", "y", "z"};
    return v;
}
inline const Vars& total_vars() {
    static const Vars v{"u", "v", "w", "x", "y", "z"};
    return v;
}

inline const std::array<std::string, 6>& coefficient_names() {
    static const std::array<std::string, 6> n{"xx", "yy", "zz", "xy", "xz", "yz"};
    return n;
}

/// a_xx x^2 + a_yy y^2 + a_zz z^2 + a_xy xy + a_xz xz + a_yz yz with the
/// a's forms of a common degree d in the base coordinates.
template <class Ring>
class ConicBundle {
public:
    using P = Polynomial<Ring>;
    using C = typename Ring::value_type;

    ConicBundle() = default;
    explicit ConicBundle(TernaryQuadraticForm<P> q) : q_(std::move(q)) { validate(); }
    static ConicBundle from_list(const std::array<P, 6>& c) { return ConicBundle(TernaryQuadraticForm<P>::from_list(c)); }

    const TernaryQuadraticForm<P>& form() const { return q_; }
    const Vars& base() const { return q_.xx.vars(); }
    const Ring& ring() const { return q_.xx.ring(); }
    unsigned degree() const { return degree_; }

    const P& coefficient(const std::string& name) const {
        const P* c[6] = {&q_.xx, &q_.yy, &q_.zz, &q_.xy, &q_.xz, &q_.yz};
        for (std::size_t i = 0; i < 6; ++i)
            if (coefficient_names()[i] == name) return *c[i];
        throw DomainError("unknown coefficient " + name);
    }

    /// The bihomogeneous equation in (u,v,w,x,y,z) or another 6-variable list.
    P equation(const Vars& all = total_vars()) const {
        const auto lift = [&](const P& f) { return rebase(f, all); };
        const P x = P::variable(all, ring(), 3), y = P::variable(all, ring(), 4), z = P::variable(all, ring(), 5);
        return lift(q_.xx) * x * x + lift(q_.yy) * y * y + lift(q_.zz) * z * z + lift(q_.xy) * x * y +
               lift(q_.xz) * x * z + lift(q_.yz) * y * z;
    }

    /// Constant linear change of fibre coordinates, scaled by s.
    ConicBundle transform(const Matrix3<C>& T, const C& s) const {
        Matrix3<P> TP;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) TP[i][j] = q_.xx.constant_like(T[i][j]);
        return ConicBundle(q_.transform(TP, q_.xx.constant_like(s)));
    }

    std::string to_string() const { return q_.to_string(); }
    friend bool operator==(const ConicBundle& a, const ConicBundle& b) { return a.q_ == b.q_; }

private:
    void validate() {
        const auto c = q_.coefficients();
        if (c[0].vars().size() != 3) throw DomainError("conic bundle base must have three coordinates");
        std::optional<unsigned> d;
        for (const auto& f : c) {
            if (f.vars().names() != c[0].vars().names()) throw DomainError("coefficients use different variables");
            if (f.is_zero()) continue;
            if (!f.is_homogeneous()) throw DomainError("coefficient " + f.to_string() + " is not homogeneous");
            const auto fd = static_cast<unsigned>(f.total_degree());
            if (d && *d != fd) throw DomainError("coefficients have different degrees");
            d = fd;
        }
        if (!d) throw DomainError("all coefficients of the conic bundle are zero");
        degree_ = *d;
    }

    TernaryQuadraticForm<P> q_;
    unsigned degree_ = 0;
};

using ZBundle = ConicBundle<IntegerRing>;
using FBundle = ConicBundle<FiniteField>;

inline FBundle reduce_mod_p(const ZBundle& b, std::uint32_t p) {
    const auto& q = b.form();
    return FBundle(TernaryQuadraticForm<FPoly>{reduce_mod_p(q.xx, p), reduce_mod_p(q.yy, p), reduce_mod_p(q.zz, p),
                                               reduce_mod_p(q.xy, p), reduce_mod_p(q.xz, p), reduce_mod_p(q.yz, p)});
}

inline FBundle base_change(const FBundle& b, const FieldEmbedding& e) {
    const auto& q = b.form();
    return FBundle(TernaryQuadraticForm<FPoly>{base_change(q.xx, e), base_change(q.yy, e), base_change(q.zz, e),
                                               base_change(q.xy, e), base_change(q.xz, e), base_change(q.yz, e)});
}

using SymmetricMatrix = std::array<std::array<ZPoly, 3>, 3>;

struct SymmetricImport {
    ZBundle bundle;
    ZPoly D;  // det(S) / 2
};

/// The bundle (1/2)(x,y,z) S (x,y,z)^t = 0.
inline SymmetricImport from_symmetric_matrix(const SymmetricMatrix& S) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (S[i][j] != S[j][i]) throw DomainError("matrix is not symmetric");
    const ZPoly two = S[0][0].constant_like(BigInt(2));
    std::array<ZPoly, 3> half;
    for (std::size_t i = 0; i < 3; ++i) {
        for (const auto& t : S[i][i].terms())
            if (t.c % 2 != 0)
                throw DomainError("diagonal entry " + std::to_string(i + 1) + " has an odd coefficient: " +
                                  S[i][i].to_string());
        half[i] = exact_divide(S[i][i], two);
    }
    const ZPoly det = S[0][0] * (S[1][1] * S[2][2] - S[1][2] * S[2][1]) -
                      S[0][1] * (S[1][0] * S[2][2] - S[1][2] * S[2][0]) +
                      S[0][2] * (S[1][0] * S[2][1] - S[1][1] * S[2][0]);
    for (const auto& t : det.terms())
        if (t.c % 2 != 0) throw DomainError("det S is not divisible by 2");
    return {ZBundle(TernaryQuadraticForm<ZPoly>{half[0], half[1], half[2], S[0][1], S[0][2], S[1][2]}),
            exact_divide(det, two)};
}

enum class DiscriminantMode { Char2, General };

/// Discriminant of a ternary form with coefficients in any commutative ring.
template <class K>
K discriminant_formula(const TernaryQuadraticForm<K>& q, DiscriminantMode mode) {
    const K mixed = q.xy * q.yz * q.xz;
    if (mode == DiscriminantMode::Char2)
        return mixed + q.xz * q.xz * q.yy + q.yz * q.yz * q.xx + q.xy * q.xy * q.zz;
    const K diag = q.xx * q.yy * q.zz;
    return diag + diag + diag + diag + mixed - q.xz * q.xz * q.yy - q.yz * q.yz * q.xx - q.xy * q.xy * q.zz;
}

template <class Ring>
struct DiscriminantComponent {
    std::string name;
    Polynomial<Ring> poly;
    int multiplicity = 1;
};

template <class Ring>
struct DiscriminantData {
    Polynomial<Ring> D;
    DiscriminantMode mode = DiscriminantMode::General;
    /// Identically zero discriminant: totally singular generic fibre.
    bool wild = false;
    std::vector<DiscriminantComponent<Ring>> components;  // empty until verified
    std::optional<typename Ring::value_type> witness;      // D = witness * product

    bool factored() const { return !components.empty(); }
    const DiscriminantComponent<Ring>& component(const std::string& name) const {
        for (const auto& c : components)
            if (c.name == name) return c;
        throw DomainError("unknown discriminant component " + name);
    }
};

template <class Ring>
DiscriminantData<Ring> discriminant(const ConicBundle<Ring>& b, DiscriminantMode mode) {
    const auto ch = b.ring().characteristic();
    if (mode == DiscriminantMode::Char2 && ch != 2)
        throw DomainError("char2 discriminant formula needs characteristic 2 coefficients");
    if (mode == DiscriminantMode::General && ch == 2)
        throw DomainError("general discriminant formula degenerates in characteristic 2; use char2 mode");
    DiscriminantData<Ring> out;
    out.D = discriminant_formula(b.form(), mode);
    out.mode = mode;
    out.wild = out.D.is_zero();
    return out;
}

/// The natural mode for the bundle's coefficient ring.
template <class Ring>
DiscriminantData<Ring> discriminant(const ConicBundle<Ring>& b) {
    return discriminant(b, b.ring().characteristic() == 2 ? DiscriminantMode::Char2 : DiscriminantMode::General);
}

template <class Ring>
struct FactorizationCheck {
    bool holds = false;
    std::optional<typename Ring::value_type> witness;
    Polynomial<Ring> product;
};

/// Is D equal to a nonzero scalar times the product of the components?
template <class Ring>
FactorizationCheck<Ring> verify_factorization(const Polynomial<Ring>& D,
                                              const std::vector<DiscriminantComponent<Ring>>& components) {
    static_assert(Ring::is_field, "factorization witnesses need a coefficient field");
    FactorizationCheck<Ring> out;
    out.product = D.constant_like(D.ring().one());
    for (const auto& c : components) {
        if (c.multiplicity < 1) throw DomainError("component multiplicity must be positive");
        if (c.poly.vars().names() != D.vars().names()) throw DomainError("component " + c.name + " uses other variables");
        out.product = out.product * c.poly.pow(static_cast<unsigned>(c.multiplicity));
    }
    if (D.is_zero() || out.product.is_zero()) return out;
    const auto s = D.lead().c * inverse(out.product.lead().c);
    if (s * out.product == D) {
        out.holds = true;
        out.witness = s;
    }
    return out;
}

/// D with a verified factored view; throws if the product does not match.
template <class Ring>
DiscriminantData<Ring> with_factorization(DiscriminantData<Ring> data,
                                          std::vector<DiscriminantComponent<Ring>> components) {
    const auto check = verify_factorization(data.D, components);
    if (!check.holds) throw DomainError("claimed factorization does not reproduce the discriminant");
    data.components = std::move(components);
    data.witness = check.witness;
    return data;
}

/// Exact-division count of a component in D.
template <class Ring>
int scheme_multiplicity(const Polynomial<Ring>& D, const Polynomial<Ring>& component) {
    return divisibility_count(D, component);
}

using BasePoint = std::vector<FFElem>;

inline std::string point_string(const BasePoint& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ":" : "") + to_string(p[i]);
    return out + ")";
}

inline bool is_projective_point(const BasePoint& p) {
    return std::any_of(p.begin(), p.end(), [](const FFElem& c) { return !is_zero(c); });
}

/// All points of P^2(K), first nonzero coordinate equal to 1, in lexicographic order.
inline std::vector<BasePoint> projective_plane_points(const FiniteField& K) {
    std::vector<BasePoint> out;
    const auto el = K.elements();
    out.push_back({K.zero(), K.zero(), K.one()});
    for (const auto& c : el) out.push_back({K.zero(), K.one(), c});
    for (const auto& b : el)
        for (const auto& c : el) out.push_back({K.one(), b, c});
    std::sort(out.begin(), out.end(), [](const BasePoint& a, const BasePoint& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const FFElem& x, const FFElem& y) { return x.v < y.v; });
    });
    return out;
}

/// Brings a bundle over a subfield to the field of the point.
inline FBundle bundle_over(const FBundle& b, const FiniteField& L) {
    if (b.ring() == L) return b;
    return base_change(b, FieldEmbedding(b.ring(), L));
}

/// The fibre over P; P may have coordinates in an extension field.
inline FFQuadraticForm fiber_at(const FBundle& b, const BasePoint& P) {
    if (P.size() != 3 || !is_projective_point(P)) throw DomainError("base point must have three coordinates, not all 0");
    const FBundle bb = bundle_over(b, field_of(P[0]));
    const auto c = bb.form().coefficients();
    std::array<FFElem, 6> v;
    for (std::size_t i = 0; i < 6; ++i) v[i] = evaluate(c[i], P);
    const auto q = FFQuadraticForm::from_list(v);
    if (q.is_zero()) throw DomainError("all six coefficients vanish at " + point_string(P) + ": not a conic bundle there");
    return q;
}

struct FiberRow {
    BasePoint point;
    FFQuadraticForm fiber;
    ConicClass cls;
    std::vector<bool> on_component;
};

inline int fiber_rank(ConicTag t) {
    switch (t) {
        case ConicTag::DoubleLine:
            return 0;
        case ConicTag::SingularGeomDoubleLine:
            return 1;
        case ConicTag::RegularGeomDoubleLine:
            return 2;
        case ConicTag::CrossSplit:
            return 3;
        case ConicTag::CrossConjugate:
            return 4;
        case ConicTag::SmoothConic:
            return 5;
    }
    return 6;
}

/// One row per rational point of the plane, grouped by fibre type as in
/// the reference table of X_(2).
inline std::vector<FiberRow> fiber_table(const FBundle& b, const DiscriminantData<FiniteField>& disc) {
    std::vector<FiberRow> rows;
    for (const auto& P : projective_plane_points(b.ring())) {
        FiberRow r;
        r.point = P;
        r.fiber = fiber_at(b, P);
        r.cls = classify(r.fiber);
        for (const auto& c : disc.components) r.on_component.push_back(is_zero(evaluate(c.poly, P)));
        rows.push_back(std::move(r));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const FiberRow& a, const FiberRow& b) { return fiber_rank(a.cls.tag) < fiber_rank(b.cls.tag); });
    return rows;
}

/// Fibre description in the wording of the fibre table.
inline std::string fiber_label(const ConicClass& c) {
    switch (c.tag) {
        case ConicTag::DoubleLine:
            return "1 double line";
        case ConicTag::CrossSplit:
            return "2 rational lines";
        case ConicTag::CrossConjugate:
            return "2 conjugate lines";
        default:
            return geometry_of(c.tag);
    }
}

/// Aligned text rendering: point, fibre, one column per component.
inline std::string render_fiber_table(const std::vector<FiberRow>& rows, const std::vector<std::string>& names) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"point", "fiber"};
    head.insert(head.end(), names.begin(), names.end());
    cells.push_back(head);
    for (const auto& r : rows) {
        std::vector<std::string> line{point_string(r.point), fiber_label(r.cls)};
        for (bool f : r.on_component) line.push_back(f ? "x" : "");
        cells.push_back(line);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    std::string out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out += line[i] + std::string(width[i] - line[i].size(), ' ');
            out += i + 1 < line.size() ? " | " : "";
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    }
    return out;
}

/// The conic over a line (u,v,w) = s*P0 + t*P1; coefficients are binary forms in (s,t).
struct RestrictedConic {
    BasePoint p0, p1;
    TernaryQuadraticForm<FPoly> form;

    const Vars& vars() const { return form.xx.vars(); }
    FPoly discriminant() const { return discriminant_formula(form, DiscriminantMode::Char2); }
};

inline const Vars& line_vars() {
    static const Vars v{"s", "t"};
    return v;
}

inline RestrictedConic restrict_to_line(const FBundle& b, const BasePoint& P0, const BasePoint& P1) {
    if (P0.size() != 3 || P1.size() != 3) throw DomainError("line points need three coordinates");
    const FFElem c0 = P0[1] * P1[2] - P0[2] * P1[1], c1 = P0[2] * P1[0] - P0[0] * P1[2],
                 c2 = P0[0] * P1[1] - P0[1] * P1[0];
    if (is_zero(c0) && is_zero(c1) && is_zero(c2)) throw DomainError("degenerate line parameterization");
    const FiniteField L = field_of(P0[0]);
    const FBundle bb = bundle_over(b, L);
    const FPoly s = FPoly::variable(line_vars(), L, 0), t = FPoly::variable(line_vars(), L, 1);
    std::vector<FPoly> images;
    for (std::size_t i = 0; i < 3; ++i) images.push_back(P0[i] * s + P1[i] * t);
    const auto c = bb.form().coefficients();
    std::array<FPoly, 6> r;
    for (std::size_t i = 0; i < 6; ++i) r[i] = substitute(c[i], images);
    return {P0, P1, TernaryQuadraticForm<FPoly>::from_list(r)};
}

}  // namespace charpair
