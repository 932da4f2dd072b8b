#pragma once

// Artin-Schreier classes in F_q(t)/℘ over the algebraic closure, double
// covers of lines induced by conic bundles, and Frobenius certificates.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/univariate.hpp"
#include "charpair/bundle/conic_bundle.hpp"
#include "charpair/poly/rational_function.hpp"

namespace charpair {

inline const Vars& affine_line_vars() {
    static const Vars v{"t"};
    return v;
}

/// An element of F_q(t) standing for its class modulo ℘(f) = f^2 + f.
struct ArtinSchreierClass {
    FRational rep;

    static ArtinSchreierClass parse(const std::string& num, const std::string& den, const FiniteField& K);
    const FiniteField& field() const { return rep.ring(); }
};

/// Principal part sum_m coeffs[m-1] / (t - root)^m.
struct PoleTerm {
    FFElem root;
    std::vector<FFElem> coeffs;
};

/// Canonical representative over the algebraic closure: odd pole orders
/// only, polynomial part with odd-degree terms only, no constant term.
struct ReducedClass {
    FiniteField field;
    UPoly<FiniteField> polynomial;
    std::vector<PoleTerm> poles;  // sorted by root, trailing zero coefficients trimmed

    bool is_zero() const { return polynomial.is_zero() && poles.empty(); }

    ReducedClass embed(const FiniteField& L) const {
        if (L == field) return *this;
        const FieldEmbedding e(field, L);
        ReducedClass out{L, map_coefficients(polynomial, e), {}};
        for (const auto& p : poles) {
            PoleTerm q{e(p.root), {}};
            for (const auto& c : p.coeffs) q.coeffs.push_back(e(c));
            out.poles.push_back(std::move(q));
        }
        out.sort();
        return out;
    }

    FRational to_rational() const {
        const Vars& t = affine_line_vars();
        FRational acc(from_upoly(polynomial, t));
        const FPoly tv = FPoly::variable(t, field, 0);
        for (const auto& p : poles) {
            const FPoly lin = tv - tv.constant_like(p.root);
            for (std::size_t m = 0; m < p.coeffs.size(); ++m)
                if (!charpair::is_zero(p.coeffs[m]))
                    acc = acc + FRational(tv.constant_like(p.coeffs[m]), lin.pow(static_cast<unsigned>(m + 1)));
        }
        return acc;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out = polynomial.is_zero() ? "" : polynomial.to_string("t");
        for (const auto& p : poles)
            for (std::size_t m = 0; m < p.coeffs.size(); ++m) {
                if (charpair::is_zero(p.coeffs[m])) continue;
                if (!out.empty()) out += " + ";
                const std::string c = charpair::to_string(p.coeffs[m]);
                const std::string r = charpair::to_string(p.root);
                const std::string den = charpair::is_zero(p.root) ? "t"
                                        : "(t + " + (r.find('+') != std::string::npos ? "(" + r + ")" : r) + ")";
                out += (c.find('+') != std::string::npos ? "(" + c + ")" : c) + "/" + den;
                if (m > 0) out += "^" + std::to_string(m + 1);
            }
        return out;
    }

    void sort() {
        std::sort(poles.begin(), poles.end(), [](const PoleTerm& a, const PoleTerm& b) { return a.root.v < b.root.v; });
    }
};

inline ArtinSchreierClass ArtinSchreierClass::parse(const std::string& num, const std::string& den, const FiniteField& K) {
    return {FRational(parse_polynomial(num, affine_line_vars(), K), parse_polynomial(den, affine_line_vars(), K))};
}

namespace as_detail {

using U = UPoly<FiniteField>;

/// f(r + s) as a polynomial in s.
inline U taylor_shift(const U& f, const FFElem& r) {
    const FiniteField K = f.field();
    const U s_plus_r(K, {r, K.one()});
    U acc(K);
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * s_plus_r + U::constant(K, f.coeffs()[i]);
    return acc;
}

/// First n coefficients of the power series N/H, H(0) != 0.
inline std::vector<FFElem> series_quotient(const U& N, const U& H, std::size_t n) {
    const FiniteField K = N.field();
    const FFElem inv0 = inverse(H.coeff(0));
    std::vector<FFElem> q(n, K.zero());
    for (std::size_t k = 0; k < n; ++k) {
        FFElem acc = N.coeff(k);
        for (std::size_t j = 1; j <= k; ++j) acc = acc - H.coeff(j) * q[k - j];
        q[k] = acc * inv0;
    }
    return q;
}

inline unsigned lcm_degree(unsigned a, unsigned b) { return std::lcm(a, b); }

}  // namespace as_detail

/// The smallest extension F_{2^(k j)}, k j <= k_max, over which f splits.
inline FiniteField splitting_field(const UPoly<FiniteField>& f, unsigned k_max) {
    const FiniteField K = f.field();
    for (unsigned j = 1; K.degree() * j <= k_max; ++j) {
        const FiniteField L = FiniteField::get(K.characteristic(), K.degree() * j);
        const auto fl = L == K ? f : map_coefficients(f, FieldEmbedding(K, L));
        int total = 0;
        for (const auto& r : roots_by_scan(fl)) total += r.second;
        if (total == f.degree()) return L;
    }
    throw ResourceError("denominator " + f.to_string() + " does not split over fields of degree <= " +
                        std::to_string(k_max));
}

/// Partial fractions over a splitting field of the denominator, then
/// removal of even-order terms via c/g^2 = ℘(sqrt(c)/g) + sqrt(c)/g.
inline ReducedClass reduce(const ArtinSchreierClass& alpha, unsigned k_max = 12) {
    using as_detail::U;
    const FiniteField K = alpha.field();
    if (K.characteristic() != 2) throw DomainError("Artin-Schreier classes need characteristic 2");
    if (alpha.rep.vars().size() != 1) throw DomainError("Artin-Schreier class must be a function of one variable");
    const U num0 = to_upoly(alpha.rep.numerator()), den0 = to_upoly(alpha.rep.denominator());
    const FiniteField L = splitting_field(den0, k_max);
    const FieldEmbedding e(K, L);
    const U num = L == K ? num0 : map_coefficients(num0, e);
    const U den = L == K ? den0 : map_coefficients(den0, e);

    auto [quot, rem] = num.divmod(den);
    ReducedClass out{L, quot, {}};
    for (const auto& [r, mult] : roots_by_scan(den)) {
        U h = den;
        for (int i = 0; i < mult; ++i) h = h.divmod(U::linear(L, r)).first;
        const auto d = as_detail::series_quotient(as_detail::taylor_shift(rem, r), as_detail::taylor_shift(h, r),
                                                  static_cast<std::size_t>(mult));
        PoleTerm p{r, std::vector<FFElem>(static_cast<std::size_t>(mult), L.zero())};
        for (int k = 0; k < mult; ++k) p.coeffs[static_cast<std::size_t>(mult - 1 - k)] = d[static_cast<std::size_t>(k)];
        out.poles.push_back(std::move(p));
    }

    for (auto& p : out.poles) {
        for (std::size_t m = p.coeffs.size(); m >= 2; --m) {
            if (m % 2 != 0 || charpair::is_zero(p.coeffs[m - 1])) continue;
            p.coeffs[m / 2 - 1] = p.coeffs[m / 2 - 1] + frobenius_sqrt(p.coeffs[m - 1]);
            p.coeffs[m - 1] = L.zero();
        }
        while (!p.coeffs.empty() && charpair::is_zero(p.coeffs.back())) p.coeffs.pop_back();
    }
    out.poles.erase(std::remove_if(out.poles.begin(), out.poles.end(), [](const PoleTerm& p) { return p.coeffs.empty(); }),
                    out.poles.end());

    std::vector<FFElem> c = out.polynomial.coeffs();
    for (std::size_t m = c.size(); m-- > 2;) {
        if (m % 2 != 0 || charpair::is_zero(c[m])) continue;
        c[m / 2] = c[m / 2] + frobenius_sqrt(c[m]);
        c[m] = L.zero();
    }
    if (!c.empty()) c[0] = L.zero();
    out.polynomial = U(L, std::move(c));
    out.sort();
    return out;
}

/// Equality of reduced classes over a common extension.
inline bool equivalent(const ReducedClass& a, const ReducedClass& b) {
    const FiniteField L = FiniteField::get(2, as_detail::lcm_degree(a.field.degree(), b.field.degree()));
    const ReducedClass x = a.embed(L), y = b.embed(L);
    if (!(x.polynomial == y.polynomial) || x.poles.size() != y.poles.size()) return false;
    for (std::size_t i = 0; i < x.poles.size(); ++i)
        if (x.poles[i].root != y.poles[i].root || x.poles[i].coeffs != y.poles[i].coeffs) return false;
    return true;
}

inline bool is_trivial_geometric(const ArtinSchreierClass& alpha, unsigned k_max = 12) {
    return reduce(alpha, k_max).is_zero();
}

inline ArtinSchreierClass operator+(const ArtinSchreierClass& a, const ArtinSchreierClass& b) { return {a.rep + b.rep}; }

/// ℘(f) = f^2 + f.
inline FRational wp(const FRational& f) { return f * f + f; }

// ---------------------------------------------------------------------------
// Binary forms in (s, t).

namespace as_detail {

inline FPoly homogenize_binary(const U& f, unsigned degree) {
    const Vars& st = line_vars();
    FPoly out(st, f.field());
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        out += FPoly::monomial(st, f.field(), Monomial::from({degree - static_cast<unsigned>(i), static_cast<unsigned>(i)}),
                               f.coeffs()[i]);
    return out;
}

/// f(1, t) and the exponent of s dividing f.
inline std::pair<U, unsigned> split_binary(const FPoly& f) {
    const U F = to_upoly(dehomogenize(f, 0));
    return {F, static_cast<unsigned>(f.total_degree() - F.degree())};
}

inline FPoly binary_gcd(const FPoly& f, const FPoly& g) {
    if (f.is_zero() && g.is_zero()) return f;
    if (f.is_zero()) return inverse(g.lead().c) * g;
    if (g.is_zero()) return inverse(f.lead().c) * f;
    const auto [F, ef] = split_binary(f);
    const auto [G, eg] = split_binary(g);
    const U h = gcd(F, G);
    const unsigned e = std::min(ef, eg);
    return homogenize_binary(h, static_cast<unsigned>(h.degree()) + e);
}

}  // namespace as_detail

/// The double cover a X^2 + b XZ + c Z^2 = 0 of a line, a, b, c binary forms.
struct CoverDescriptor {
    FPoly a, b, c;
    FPoly ramification() const { return b; }
    bool degree_relation_holds() const {
        if (a.is_zero() || c.is_zero()) return true;
        return a.total_degree() + c.total_degree() == 2 * b.total_degree();
    }
};

/// Divides out a common factor, then removes linear factors pi of b with
/// pi^2 dividing a (or c) by rescaling X (or Z).
inline CoverDescriptor minimize(CoverDescriptor cd) {
    const FPoly g = as_detail::binary_gcd(as_detail::binary_gcd(cd.a, cd.b), cd.c);
    if (g.total_degree() > 0) {
        cd.a = exact_divide(cd.a, g);
        cd.b = exact_divide(cd.b, g);
        cd.c = exact_divide(cd.c, g);
    }
    const FiniteField K = cd.b.ring();
    const Vars& st = line_vars();
    std::vector<FPoly> linear{FPoly::variable(st, K, 0)};
    for (const auto& r : K.elements())
        linear.push_back(FPoly::variable(st, K, 1) - r * FPoly::variable(st, K, 0));
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& pi : linear) {
            if (!divides(pi, cd.b)) continue;
            const FPoly pi2 = pi * pi;
            for (FPoly* side : {&cd.a, &cd.c}) {
                if (side->is_zero() || !divides(pi2, *side)) continue;
                *side = exact_divide(*side, pi2);
                cd.b = exact_divide(cd.b, pi);
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
    return cd;
}

/// Descriptor of the double cover induced on a line contained in the discriminant.
inline CoverDescriptor cover_descriptor(const RestrictedConic& r) {
    std::array<FRational, 6> generic;
    const auto c = r.form.coefficients();
    for (std::size_t i = 0; i < 6; ++i) generic[i] = FRational(rebase(dehomogenize(c[i], 0), affine_line_vars()));
    const auto q = RFQuadraticForm::from_list(generic);
    if (q.is_zero()) throw DomainError("bundle vanishes identically on the line");
    const auto dims = radical_dims(q);
    if (dims.q != 1 || dims.b != 1)
        throw DomainError("generic fibre over the line is not a cross of lines (radical dims " + std::to_string(dims.q) +
                          "," + std::to_string(dims.b) + ")");
    const auto p = with_cross_in_xz(r.form);
    return minimize({p.xx, p.xz, p.zz});
}

/// The class of a c / b^2 in the coordinate t = (second)/(first).
inline ArtinSchreierClass cover_invariant(const CoverDescriptor& cd) {
    if (cd.b.is_zero()) throw DomainError("b = 0: wild restriction, no Artin-Schreier cover");
    const FPoly num = cd.a * cd.c, den = cd.b * cd.b;
    return {FRational(rebase(dehomogenize(num, 0), affine_line_vars()), rebase(dehomogenize(den, 0), affine_line_vars()))};
}

enum class LineCoverKind { Trivial, Canonical, Scaled };

inline std::string to_string(LineCoverKind k) {
    switch (k) {
        case LineCoverKind::Trivial:
            return "TRIVIAL";
        case LineCoverKind::Canonical:
            return "CANONICAL";
        case LineCoverKind::Scaled:
            return "SCALED";
    }
    return "?";
}

/// Normal form x^2 + x + lambda V/U with U a local equation of the branch
/// point R = (U = 0), monic in t when possible, and V = s or t.
struct LineCoverForm {
    LineCoverKind kind = LineCoverKind::Trivial;
    FFElem lambda;
    FPoly U, V;
    BasePoint branch_point;  // R as a point (s:t)
    FFElem alpha, beta, gamma;
};

namespace as_detail {

inline LineCoverForm finish_form(FPoly Uf, FPoly Vf, FFElem lambda) {
    LineCoverForm out;
    out.lambda = lambda;
    const FiniteField K = Uf.ring();
    out.kind = charpair::is_zero(lambda)   ? LineCoverKind::Trivial
               : lambda == K.one()         ? LineCoverKind::Canonical
                                           : LineCoverKind::Scaled;
    const FFElem u0 = Uf.coeff(Monomial::from({1, 0})), u1 = Uf.coeff(Monomial::from({0, 1}));
    out.branch_point = {u1, -u0};
    if (!charpair::is_zero(out.branch_point[0])) {
        const FFElem inv = inverse(out.branch_point[0]);
        out.branch_point = {K.one(), out.branch_point[1] * inv};
    } else {
        out.branch_point = {K.zero(), K.one()};
    }
    out.U = std::move(Uf);
    out.V = std::move(Vf);
    return out;
}

}  // namespace as_detail

/// Replays the normalization for a cover branched at one reduced point:
/// b = U, a c = alpha U^2 + beta U V + gamma V^2, lambda = beta + sqrt(gamma).
inline LineCoverForm normal_form_line_cover(const CoverDescriptor& cd) {
    if (cd.b.is_zero()) throw DomainError("b = 0: wild restriction");
    if (cd.b.total_degree() != 1) throw DomainError("ramification is not a single reduced point: deg b = " +
                                                    std::to_string(cd.b.total_degree()));
    const FiniteField K = cd.b.ring();
    const Vars& st = line_vars();
    const FPoly s = FPoly::variable(st, K, 0), t = FPoly::variable(st, K, 1);
    const FFElem b0 = cd.b.coeff(Monomial::from({1, 0})), b1 = cd.b.coeff(Monomial::from({0, 1}));
    const FPoly ac = cd.a * cd.c;
    if (ac.is_zero()) {
        auto out = as_detail::finish_form(cd.b, s, K.zero());
        out.alpha = out.beta = out.gamma = K.zero();
        return out;
    }
    if (!cd.degree_relation_holds() || ac.total_degree() != 2)
        throw DomainError("descriptor violates deg a + deg c = 2 deg b");
    // U monic in t (or U = s), and the inverse change of coordinates
    FPoly Uf, Vf;
    std::vector<FPoly> st_in_uv;
    const FPoly Uv = FPoly::variable(st, K, 0), Vv = FPoly::variable(st, K, 1);  // placeholders for U, V
    if (!charpair::is_zero(b1)) {
        const FFElem r = b0 * inverse(b1);
        Uf = t + r * s;
        Vf = s;
        st_in_uv = {Vv, Uv - r * Vv};
    } else {
        Uf = s;
        Vf = t;
        st_in_uv = {Uv, Vv};
    }
    // b = b1 U or b0 U: rescaling b by a constant multiplies ac/b^2 by a square constant
    const FFElem bscale = charpair::is_zero(b1) ? b0 : b1;
    const FPoly q = inverse(bscale * bscale) * substitute(ac, st_in_uv);
    LineCoverForm out;
    const FFElem alpha = q.coeff(Monomial::from({2, 0})), beta = q.coeff(Monomial::from({1, 1})),
                 gamma = q.coeff(Monomial::from({0, 2}));
    out = as_detail::finish_form(Uf, Vf, beta + frobenius_sqrt(gamma));
    out.alpha = alpha;
    out.beta = beta;
    out.gamma = gamma;
    return out;
}

/// Same normal form read off a class with a single simple pole.
inline LineCoverForm normal_form_line_cover(const ArtinSchreierClass& cls, unsigned k_max = 12) {
    const ReducedClass r = reduce(cls, k_max);
    const FiniteField K = cls.field();
    const Vars& st = line_vars();
    const FPoly s = FPoly::variable(st, K, 0), t = FPoly::variable(st, K, 1);
    if (r.is_zero()) {
        auto out = as_detail::finish_form(s, t, K.zero());
        out.alpha = out.beta = out.gamma = K.zero();
        return out;
    }
    const bool pole_at_infinity = !r.polynomial.is_zero();
    if (pole_at_infinity + r.poles.size() != 1 || (pole_at_infinity && r.polynomial.degree() != 1) ||
        (!r.poles.empty() && r.poles[0].coeffs.size() != 1))
        throw DomainError("ramification is not a single reduced point: " + r.to_string());
    if (pole_at_infinity) {
        auto out = as_detail::finish_form(s, t, r.polynomial.coeff(1));
        out.alpha = K.zero();
        out.beta = out.lambda;
        out.gamma = K.zero();
        return out;
    }
    const FFElem root = r.poles[0].root;
    if (!(field_of(root) == K)) throw DomainError("branch point is not rational over " + K.name());
    auto out = as_detail::finish_form(t - root * s, s, r.poles[0].coeffs[0]);
    out.alpha = K.zero();
    out.beta = out.lambda;
    out.gamma = K.zero();
    return out;
}

// ---------------------------------------------------------------------------
// Frobenius certificates and residue profiles.

struct CoverCertificate {
    bool certified = false;
    BasePoint split_point, conjugate_point;
    ConicClass split_class, conjugate_class;
    std::string reason;
};

/// Split and non-split cross fibres at two rational points of C force the
/// induced double cover of C to be irreducible.
inline CoverCertificate frobenius_irreducibility(const FBundle& b, const FPoly& C, BasePoint p1, BasePoint p2) {
    for (const auto* p : {&p1, &p2}) {
        if (!(field_of((*p)[0]) == b.ring())) throw DomainError("witness " + point_string(*p) + " is not rational");
        if (!is_zero(evaluate(C, *p))) throw DomainError("witness " + point_string(*p) + " is not on the curve");
    }
    ConicClass c1 = classify(fiber_at(b, p1)), c2 = classify(fiber_at(b, p2));
    for (const auto& [p, c] : {std::pair{&p1, &c1}, std::pair{&p2, &c2}})
        if (!c->is_cross())
            throw DomainError("fibre at witness " + point_string(*p) + " is not a cross of lines: " + to_string(c->tag));
    CoverCertificate out;
    if (c1.tag == ConicTag::CrossConjugate && c2.tag == ConicTag::CrossSplit) {
        std::swap(p1, p2);
        std::swap(c1, c2);
    }
    out.split_point = p1;
    out.conjugate_point = p2;
    out.split_class = c1;
    out.conjugate_class = c2;
    out.certified = c1.tag == ConicTag::CrossSplit && c2.tag == ConicTag::CrossConjugate;
    out.reason = out.certified ? "split fibre at " + point_string(p1) + ", conjugate fibre at " + point_string(p2)
                               : "both witnesses have fibres of type " + to_string(c1.tag);
    return out;
}

/// First rational points of C with split and with conjugate cross fibres.
inline std::optional<std::pair<BasePoint, BasePoint>> find_frobenius_witnesses(const FBundle& b, const FPoly& C) {
    std::optional<BasePoint> split, conj;
    for (const auto& P : projective_plane_points(b.ring())) {
        if (!is_zero(evaluate(C, P))) continue;
        const auto c = classify(fiber_at(b, P));
        if (c.tag == ConicTag::CrossSplit && !split) split = P;
        if (c.tag == ConicTag::CrossConjugate && !conj) conj = P;
    }
    if (split && conj) return std::pair{*split, *conj};
    return std::nullopt;
}

struct LineParameterization {
    BasePoint p0, p1;
};

enum class ResidueKind { Class, Certificate, Trivial };

inline std::string to_string(ResidueKind k) {
    switch (k) {
        case ResidueKind::Class:
            return "class";
        case ResidueKind::Certificate:
            return "certificate";
        case ResidueKind::Trivial:
            return "trivial";
    }
    return "?";
}

struct ResidueEntry {
    std::string component;
    ResidueKind kind = ResidueKind::Trivial;
    bool nontrivial = false;
    std::optional<CoverDescriptor> descriptor;
    std::optional<ReducedClass> cls;
    std::optional<LineCoverForm> line_form;
    std::optional<CoverCertificate> certificate;
};

using ResidueProfile = std::vector<ResidueEntry>;

/// One entry per supplied curve. Curves not dividing D get TRIVIAL; lines
/// with a parameterization get their class; other curves a certificate.
inline ResidueProfile residue_profile(const FBundle& b, const FPoly& D,
                                      const std::vector<DiscriminantComponent<FiniteField>>& curves,
                                      const std::map<std::string, LineParameterization>& lines, unsigned k_max = 12) {
    ResidueProfile out;
    for (const auto& comp : curves) {
        ResidueEntry e;
        e.component = comp.name;
        const int mult = D.is_zero() ? 0 : divisibility_count(D, comp.poly);
        if (mult == 0) {
            out.push_back(std::move(e));
            continue;
        }
        if (mult > 1)
            throw DomainError("component " + comp.name + " has multiplicity " + std::to_string(mult) +
                              "; residues are only defined along reduced components");
        const auto it = lines.find(comp.name);
        if (it != lines.end()) {
            const auto& L = it->second;
            if (!is_zero(evaluate(comp.poly, L.p0)) || !is_zero(evaluate(comp.poly, L.p1)))
                throw DomainError("parameterization of " + comp.name + " does not lie on it");
            e.kind = ResidueKind::Class;
            e.descriptor = cover_descriptor(restrict_to_line(b, L.p0, L.p1));
            e.cls = reduce(cover_invariant(*e.descriptor), k_max);
            e.nontrivial = !e.cls->is_zero();
            if (e.descriptor->b.total_degree() == 1) e.line_form = normal_form_line_cover(*e.descriptor);
        } else {
            e.kind = ResidueKind::Certificate;
            const auto w = find_frobenius_witnesses(b, comp.poly);
            CoverCertificate cert;
            if (w) {
                cert = frobenius_irreducibility(b, comp.poly, w->first, w->second);
            } else {
                cert.reason = "no pair of split and conjugate rational witnesses on " + comp.name;
            }
            e.nontrivial = cert.certified;
            e.certificate = std::move(cert);
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace charpair
