#pragma once

// Plane curves and hypersurfaces: singular-scheme length, irreducibility
// certificates, intersection multiplicities, tangent cones, chartwise
// smoothness certificates and the 2x2-minor gcd.

#include <numeric>
#include <string>
#include <vector>

#include "charpair/groebner/ideal_ops.hpp"

namespace charpair {

/// Per-chart lengths of the singular scheme of a plane curve.
struct SingularLength {
    Length total;
    Length chart_u;  // u != 0
    Length chart_v;  // u = 0, v != 0
    Length chart_w;  // the point (0:0:1)
};

template <class Field>
Ideal<Field> jacobian_ideal(const Polynomial<Field>& f) {
    std::vector<Polynomial<Field>> g{f};
    for (std::size_t i = 0; i < f.vars().size(); ++i) g.push_back(partial_derivative(f, i));
    return Ideal<Field>(f.vars(), f.ring(), std::move(g));
}

template <class Field>
Ideal<Field> dehomogenize_ideal(const Ideal<Field>& I, std::size_t idx) {
    std::vector<Polynomial<Field>> g;
    for (const auto& f : I.generators()) g.push_back(dehomogenize(f, idx));
    return Ideal<Field>(I.vars().without(idx), I.field(), std::move(g));
}

/// Length over the algebraic closure of the scheme cut out by F and its partials
/// (F homogeneous in three variables). The plane is partitioned as
/// {u != 0} + {u = 0, v != 0} + {(0:0:1)}.
template <class Field>
SingularLength singular_scheme_length_detail(const Polynomial<Field>& F, const GroebnerOptions& opt = {}) {
    if (F.is_zero()) throw DomainError("singular scheme of the zero polynomial");
    if (F.vars().size() != 3 || !F.is_homogeneous()) throw DomainError("expected a homogeneous polynomial in three variables");
    if (F.total_degree() < 1) throw DomainError("curve of degree 0");
    const Ideal<Field> J = jacobian_ideal(F);
    SingularLength out;
    out.chart_u = quotient_length(dehomogenize_ideal(J, 0), opt);

    const Ideal<Field> Jv = dehomogenize_ideal(J, 1);  // variables (u, w)
    const Length lv = quotient_length(Jv, opt);
    if (lv.infinite) {
        out.chart_v = lv;
    } else {
        const Length rest = quotient_length(saturate(Jv, Polynomial<Field>::variable(Jv.vars(), Jv.field(), 0), opt), opt);
        out.chart_v = Length::finite(lv.value - rest.value);
    }

    const Ideal<Field> Jw = dehomogenize_ideal(J, 2);  // variables (u, v)
    const Length lw = quotient_length(Jw, opt);
    out.chart_w = lw.infinite ? lw : local_length_at_origin(Jw, static_cast<unsigned>(lw.value) + 2, opt);
    out.total = out.chart_u + out.chart_v + out.chart_w;
    return out;
}

template <class Field>
Length singular_scheme_length(const Polynomial<Field>& F, const GroebnerOptions& opt = {}) {
    return singular_scheme_length_detail(F, opt).total;
}

struct IrreducibilityCertificate {
    enum class Verdict { Irreducible, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    SingularLength evidence;
    int degree = 0;
    std::string verdict_name() const { return verdict == Verdict::Irreducible ? "IRREDUCIBLE" : "INCONCLUSIVE"; }
};

/// A reduced reducible plane curve of degree >= 3 has a singular scheme of
/// length >= 2, so length <= 1 certifies irreducibility. Never asserts reducibility.
template <class Field>
IrreducibilityCertificate irreducibility_certificate(const Polynomial<Field>& F, const GroebnerOptions& opt = {}) {
    if (F.vars().size() != 3 || !F.is_homogeneous()) throw DomainError("expected a homogeneous polynomial in three variables");
    if (F.total_degree() < 3) throw DomainError("irreducibility certificate needs degree at least 3");
    IrreducibilityCertificate c;
    c.degree = F.total_degree();
    c.evidence = singular_scheme_length_detail(F, opt);
    if (!c.evidence.total.infinite && c.evidence.total.value <= 1) c.verdict = IrreducibilityCertificate::Verdict::Irreducible;
    return c;
}

namespace detail {

/// Dehomogenizes at the first nonzero coordinate of P and translates P to the origin.
template <class Field>
Polynomial<Field> localize_at(const Polynomial<Field>& F, const std::vector<typename Field::value_type>& P) {
    if (P.size() != F.vars().size()) throw DomainError("point has wrong number of coordinates");
    std::size_t c = 0;
    while (c < P.size() && is_zero(P[c])) ++c;
    if (c == P.size()) throw DomainError("the zero vector is not a projective point");
    const auto inv = inverse(P[c]);
    const Polynomial<Field> f = dehomogenize(F, c);
    std::vector<Polynomial<Field>> images;
    std::size_t j = 0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (i == c) continue;
        images.push_back(Polynomial<Field>::variable(f.vars(), f.ring(), j++) +
                         Polynomial<Field>::constant(f.vars(), f.ring(), P[i] * inv));
    }
    return substitute(f, images);
}

}  // namespace detail

/// Lowest-degree homogeneous part of f at the origin.
template <class Field>
Polynomial<Field> tangent_cone_at_origin(const Polynomial<Field>& f) {
    if (f.is_zero()) throw DomainError("tangent cone of the zero polynomial");
    const int m = f.min_degree();
    if (m == 0) throw DomainError("point is not on the hypersurface");
    return f.homogeneous_part(static_cast<unsigned>(m));
}

/// Tangent cone of a projective hypersurface at P, in the affine chart of P's first nonzero coordinate.
template <class Field>
Polynomial<Field> tangent_cone(const Polynomial<Field>& F, const std::vector<typename Field::value_type>& P) {
    return tangent_cone_at_origin(detail::localize_at(F, P));
}

template <class Field>
int multiplicity_at(const Polynomial<Field>& F, const std::vector<typename Field::value_type>& P) {
    const auto f = detail::localize_at(F, P);
    if (f.is_zero()) throw DomainError("multiplicity of the zero polynomial");
    return f.min_degree();
}

/// Local intersection multiplicity of two plane curves at a projective point P.
template <class Field>
int intersection_multiplicity(const Polynomial<Field>& F, const Polynomial<Field>& G,
                              const std::vector<typename Field::value_type>& P, const GroebnerOptions& opt = {}) {
    if (!is_zero(evaluate(F, P)) || !is_zero(evaluate(G, P))) throw DomainError("point is not on both curves");
    const auto f = detail::localize_at(F, P), g = detail::localize_at(G, P);
    const Field K = F.ring();
    // line route: restrict the other curve to the line's parameterization
    const Polynomial<Field>* line = nullptr;
    const Polynomial<Field>* other = nullptr;
    if (F.total_degree() == 1) {
        line = &f;
        other = &g;
    } else if (G.total_degree() == 1) {
        line = &g;
        other = &f;
    }
    if (line) {
        const Vars s{"s"};
        const auto a = line->coeff(Monomial::var(0)), b = line->coeff(Monomial::var(1));
        const auto S = Polynomial<Field>::variable(s, K, 0);
        const auto h = substitute(*other, {(-b) * S, a * S});
        if (h.is_zero()) throw DomainError("curves share a component through the point");
        return h.min_degree();
    }
    const Ideal<Field> I(f.vars(), K, {f, g});
    const unsigned bound = static_cast<unsigned>(F.total_degree() * G.total_degree()) + 2;
    const Length l = local_length_at_origin(I, bound, opt);
    if (l.infinite) throw DomainError("intersection is not isolated at the point");
    return static_cast<int>(l.value);
}

/// Chart of a product of projective spaces: one coordinate set to 1 per factor.
struct ProductChart {
    std::vector<std::size_t> one;   // index set to 1 in each factor
    std::vector<std::size_t> zero;  // indices set to 0 (partition mode)
    std::string name;
};

/// Standard affine charts of a product of projective spaces given by variable groups.
/// In partition mode, chart (i_1, ..., i_r) also sets the earlier coordinates of
/// each factor to zero so that the charts partition the product.
inline std::vector<ProductChart> product_charts(const Vars& vars, const std::vector<std::vector<std::size_t>>& groups,
                                                bool partition) {
    std::vector<ProductChart> out{ProductChart{}};
    for (const auto& grp : groups) {
        std::vector<ProductChart> next;
        for (const auto& c : out)
            for (std::size_t k = 0; k < grp.size(); ++k) {
                ProductChart d = c;
                d.one.push_back(grp[k]);
                if (partition)
                    for (std::size_t l = 0; l < k; ++l) d.zero.push_back(grp[l]);
                d.name += (d.name.empty() ? "" : ",") + vars[grp[k]] + "=1";
                next.push_back(std::move(d));
            }
        out = std::move(next);
    }
    return out;
}

/// Restriction of the Jacobian ideal (equation plus all affine partials) to a chart.
template <class Field>
Ideal<Field> chart_jacobian_ideal(const Polynomial<Field>& f, const ProductChart& chart) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < f.vars().size(); ++i)
        if (std::find(chart.one.begin(), chart.one.end(), i) == chart.one.end() &&
            std::find(chart.zero.begin(), chart.zero.end(), i) == chart.zero.end())
            keep.push_back(i);
    std::vector<std::string> names;
    for (auto i : keep) names.push_back(f.vars()[i]);
    const Vars target(names);
    std::vector<Polynomial<Field>> images;
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        if (std::find(chart.one.begin(), chart.one.end(), i) != chart.one.end())
            images.push_back(Polynomial<Field>::constant(target, f.ring(), f.ring().one()));
        else if (std::find(chart.zero.begin(), chart.zero.end(), i) != chart.zero.end())
            images.push_back(Polynomial<Field>(target, f.ring()));
        else
            images.push_back(Polynomial<Field>::variable(target, f.ring(), f.vars()[i]));
    }
    std::vector<Polynomial<Field>> gens{substitute(f, images)};
    // a coordinate fixed at 0 is still a direction in the affine chart
    for (std::size_t i = 0; i < f.vars().size(); ++i)
        if (std::find(chart.one.begin(), chart.one.end(), i) == chart.one.end())
            gens.push_back(substitute(partial_derivative(f, i), images));
    return Ideal<Field>(target, f.ring(), std::move(gens));
}

struct ChartVerdict {
    std::string chart;
    bool empty = false;
    std::size_t basis_size = 0;
};

struct SmoothnessCertificate {
    bool smooth = false;
    std::vector<ChartVerdict> charts;
};

/// Tests 1 in (f, partials) on every standard chart of the product of projective spaces.
template <class Field>
SmoothnessCertificate smoothness_certificate(const Polynomial<Field>& f, const std::vector<std::vector<std::size_t>>& groups,
                                             GroebnerOptions opt = {}) {
    SmoothnessCertificate out;
    out.smooth = true;
    opt.stop_on_unit = true;
    for (const auto& chart : product_charts(f.vars(), groups, false)) {
        const auto g = buchberger(chart_jacobian_ideal(f, chart), MonomialOrder::grevlex(), opt);
        out.charts.push_back({chart.name, g.is_unit(), g.size()});
        if (!g.is_unit()) out.smooth = false;
    }
    return out;
}

/// A singular point with its full homogeneous coordinates.
struct SingularPoint {
    FieldPoint point;
    std::string chart;
};

struct SingularPointSearch {
    std::vector<SingularPoint> points;
    std::uint64_t geometric_count = 0;
    bool complete = false;
};

/// Geometric singular points of a hypersurface in a product of projective spaces over F_q,
/// found by scanning extensions up to degree k_max.
inline SingularPointSearch singular_points(const FPoly& f, const std::vector<std::vector<std::size_t>>& groups, unsigned k_max,
                                           const GroebnerOptions& opt = {}) {
    SingularPointSearch out;
    out.complete = true;
    for (const auto& chart : product_charts(f.vars(), groups, true)) {
        const Ideal<FiniteField> I = chart_jacobian_ideal(f, chart);
        const PointSearch ps = find_points(I, k_max, opt);
        out.geometric_count += ps.expected;
        if (!ps.complete) out.complete = false;
        for (const auto& p : ps.points) {
            std::vector<FFElem> full(f.vars().size(), p.field.zero());
            for (auto i : chart.one) full[i] = p.field.one();
            for (std::size_t k = 0; k < I.vars().size(); ++k) full[f.vars().require(I.vars()[k])] = p.coords[k];
            out.points.push_back({{p.field, full}, chart.name});
        }
    }
    return out;
}

/// gcd of all 2x2 minors of the coefficient matrix of integer linear forms.
inline BigInt minor_gcd(const std::vector<ZPoly>& forms) {
    if (forms.size() < 2) throw DomainError("minor gcd needs at least two forms");
    const Vars& vars = forms.front().vars();
    std::vector<std::vector<BigInt>> rows;
    for (const auto& f : forms) {
        if (f.vars() != vars) throw DomainError("forms over different variables");
        if (!f.is_zero() && (f.total_degree() != 1 || !f.is_homogeneous())) throw DomainError("minor gcd expects linear forms");
        std::vector<BigInt> r;
        for (std::size_t i = 0; i < vars.size(); ++i) r.push_back(f.coeff(Monomial::var(i)));
        rows.push_back(std::move(r));
    }
    BigInt g = 0;
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            for (std::size_t i = 0; i < vars.size(); ++i)
                for (std::size_t j = i + 1; j < vars.size(); ++j) {
                    const BigInt m = rows[a][i] * rows[b][j] - rows[a][j] * rows[b][i];
                    g = boost::multiprecision::gcd(g, BigInt(abs(m)));
                }
    return g;
}

}  // namespace charpair
