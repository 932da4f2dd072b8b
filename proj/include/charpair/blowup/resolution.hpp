#pragma once

// Stratified resolution report for a conic bundle over F_2: the singular
// points of the total space, sorted by the position of their base point
// relative to the discriminant components, with blow-up chains.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "charpair/blowup/local_model.hpp"

namespace charpair {

/// Geometric points of V(gens) in P^2 over F_{2^k}, k <= k_max, first nonzero coordinate 1.
inline std::vector<BasePoint> plane_points(const std::vector<FPoly>& gens, unsigned k_max, bool* complete = nullptr,
                                           const GroebnerOptions& opt = {}) {
    if (gens.empty()) throw DomainError("plane_points needs equations");
    const Vars& vars = gens.front().vars();
    const FiniteField K = gens.front().ring();
    std::vector<BasePoint> out;
    if (complete) *complete = true;
    for (const auto& chart : product_charts(vars, {{0, 1, 2}}, true)) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < 3; ++i)
            if (std::find(chart.one.begin(), chart.one.end(), i) == chart.one.end() &&
                std::find(chart.zero.begin(), chart.zero.end(), i) == chart.zero.end())
                names.push_back(vars[i]);
        const Vars target(names);
        std::vector<FPoly> images;
        for (std::size_t i = 0; i < 3; ++i) {
            if (std::find(chart.one.begin(), chart.one.end(), i) != chart.one.end())
                images.push_back(FPoly::constant(target, K, K.one()));
            else if (std::find(chart.zero.begin(), chart.zero.end(), i) != chart.zero.end())
                images.push_back(FPoly(target, K));
            else
                images.push_back(FPoly::variable(target, K, vars[i]));
        }
        std::vector<FPoly> local;
        for (const auto& g : gens) local.push_back(substitute(g, images));
        if (names.empty()) {
            if (std::all_of(local.begin(), local.end(), [](const FPoly& f) { return f.is_zero(); })) {
                BasePoint P(3, K.zero());
                P[chart.one[0]] = K.one();
                out.push_back(P);
            }
            continue;
        }
        const auto ps = find_points(Ideal<FiniteField>(target, K, local), k_max, opt);
        if (!ps.complete && complete) *complete = false;
        for (const auto& p : ps.points) {
            BasePoint P(3, p.field.zero());
            P[chart.one[0]] = p.field.one();
            for (std::size_t k = 0; k < names.size(); ++k) P[vars.require(names[k])] = p.coords[k];
            out.push_back(P);
        }
    }
    return out;
}

/// Scales a point so that its first nonzero coordinate is 1.
inline BasePoint normalized(BasePoint P) {
    std::size_t c = 0;
    while (c < P.size() && is_zero(P[c])) ++c;
    if (c == P.size()) throw DomainError("the zero vector is not a projective point");
    const FFElem inv = inverse(P[c]);
    for (auto& x : P) x = x * inv;
    return P;
}

/// Points are equal if they agree in a common extension.
inline bool same_point(const BasePoint& a, const BasePoint& b) {
    const unsigned d = std::lcm(field_of(a[0]).degree(), field_of(b[0]).degree());
    const FiniteField L = FiniteField::get(2, d);
    return local_detail::embed_point(normalized(a), L) == local_detail::embed_point(normalized(b), L);
}

enum class StratumKind { OffDiscriminant, SmoothDiscriminant, TriplePoint, Transverse, Tangential, Rejected, Unclassified };

inline std::string to_string(StratumKind k) {
    switch (k) {
        case StratumKind::OffDiscriminant:
            return "off-discriminant";
        case StratumKind::SmoothDiscriminant:
            return "smooth-discriminant";
        case StratumKind::TriplePoint:
            return "triple-point";
        case StratumKind::Transverse:
            return "transverse";
        case StratumKind::Tangential:
            return "tangential";
        case StratumKind::Rejected:
            return "rejected";
        case StratumKind::Unclassified:
            return "unclassified";
    }
    return "?";
}

struct PointAnalysis {
    BasePoint point;
    std::vector<std::string> components;
    ConicTag fibre = ConicTag::SmoothConic;
    int contact = 0;                    // intersection multiplicity of the two branches
    std::size_t singular_points = 0;    // census points above
    std::optional<LocalModelAt> local;
    std::vector<ChainLink> chain;
    std::string note;
};

struct Stratum {
    StratumKind kind = StratumKind::OffDiscriminant;
    std::vector<PointAnalysis> points;   // special points of this stratum
    std::size_t singular_points = 0;     // census points above the stratum
    bool total_space_smooth = true;      // before blowing up
    bool resolved = true;                // after the chains
    std::string note;
};

struct ResolutionReport {
    std::vector<Stratum> strata;
    std::uint64_t census_count = 0;
    bool census_complete = false;
    std::vector<std::string> flags;
    std::string citation;
    /// Every singular point lies over a classified point and every chain ends smooth.
    bool ok = false;

    const Stratum* stratum(StratumKind k) const {
        for (const auto& s : strata)
            if (s.kind == k) return &s;
        return nullptr;
    }
};

inline const char* tangent_cone_theorem() {
    return "no point of the discriminant with a double-line fibre has a tangent cone made of two distinct lines";
}

/// The report for b with a verified factorization of its discriminant.
inline ResolutionReport resolution_report(const FBundle& b, const DiscriminantData<FiniteField>& disc, unsigned k_max = 12,
                                          unsigned N = 0, const GroebnerOptions& opt = {}) {
    if (b.ring().characteristic() != 2 || b.ring().degree() != 1) throw DomainError("resolution report expects a bundle over F_2");
    if (disc.wild) throw DomainError("wild bundle: the discriminant vanishes identically");
    ResolutionReport out;
    out.citation = "criterion: a projective morphism whose fibres over all scheme points are universally CH0-trivial is "
                   "universally CH0-trivial (cited, not computed)";
    const auto census = singular_points(b.equation(total_vars()), {{0, 1, 2}, {3, 4, 5}}, k_max, opt);
    out.census_count = census.geometric_count;
    out.census_complete = census.complete;
    if (!census.complete) out.flags.push_back("singular-point census incomplete within k_max = " + std::to_string(k_max));

    if (disc.D.total_degree() <= 0) {
        out.ok = census.geometric_count == 0;
        if (!out.ok) out.flags.push_back("singular points over a constant discriminant");
        return out;
    }
    if (!disc.factored()) throw DomainError("resolution report needs a verified factorization of the discriminant");
    for (const auto& c : disc.components)
        if (c.multiplicity != 1) throw DomainError("component " + c.name + " is not reduced");

    // special points: pairwise intersections and singular points of components
    std::vector<BasePoint> special;
    auto add_special = [&](const BasePoint& P) {
        for (const auto& Q : special)
            if (same_point(P, Q)) return;
        special.push_back(normalized(P));
    };
    for (std::size_t i = 0; i < disc.components.size(); ++i) {
        const FPoly& Ci = disc.components[i].poly;
        if (Ci.total_degree() > 1) {
            std::vector<FPoly> jac{Ci};
            for (std::size_t k = 0; k < 3; ++k) jac.push_back(partial_derivative(Ci, k));
            for (const auto& P : plane_points(jac, k_max, nullptr, opt)) add_special(P);
        }
        for (std::size_t j = i + 1; j < disc.components.size(); ++j)
            for (const auto& P : plane_points({Ci, disc.components[j].poly}, k_max, nullptr, opt)) add_special(P);
    }

    auto on = [&](const FPoly& f, const BasePoint& P) {
        return is_zero(evaluate(base_change(f, FieldEmbedding(f.ring(), field_of(P[0]))), P));
    };
    auto components_at = [&](const BasePoint& P) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < disc.components.size(); ++i)
            if (on(disc.components[i].poly, P)) idx.push_back(i);
        return idx;
    };

    std::map<StratumKind, Stratum> strata;
    for (auto k : {StratumKind::OffDiscriminant, StratumKind::SmoothDiscriminant, StratumKind::TriplePoint,
                   StratumKind::Transverse, StratumKind::Tangential})
        strata[k].kind = k;

    std::vector<PointAnalysis> analyses;
    std::vector<StratumKind> kinds;
    for (const auto& P : special) {
        PointAnalysis a;
        a.point = P;
        const auto idx = components_at(P);
        for (auto i : idx) a.components.push_back(disc.components[i].name);
        a.fibre = classify(fiber_at(b, P)).tag;
        StratumKind kind = StratumKind::Unclassified;
        const bool double_line = a.fibre != ConicTag::SmoothConic && a.fibre != ConicTag::CrossSplit && a.fibre != ConicTag::CrossConjugate;
        if (double_line) {
            const auto cone = tangent_cone(base_change(disc.D, FieldEmbedding(disc.D.ring(), field_of(P[0]))), P);
            const bool square = std::all_of(cone.terms().begin(), cone.terms().end(), [](const auto& t) {
                return std::all_of(t.m.e.begin(), t.m.e.end(), [](auto e) { return e % 2 == 0; });
            });
            if (cone.total_degree() < 2 || (cone.total_degree() == 2 && !square)) {
                kind = StratumKind::Rejected;
                a.note = "tangent cone " + cone.to_string() + " contradicts the theorem: " + tangent_cone_theorem();
            }
        }
        if (kind != StratumKind::Rejected) {
            const bool all_lines = std::all_of(idx.begin(), idx.end(), [&](auto i) { return disc.components[i].poly.total_degree() == 1; });
            if (idx.size() >= 3 && all_lines) {
                kind = StratumKind::TriplePoint;
            } else if (idx.size() == 2) {
                const FPoly& A = disc.components[idx[0]].poly;
                const FPoly& B = disc.components[idx[1]].poly;
                const FiniteField L = field_of(P[0]);
                a.contact = intersection_multiplicity(base_change(A, FieldEmbedding(A.ring(), L)),
                                                      base_change(B, FieldEmbedding(B.ring(), L)), P, opt);
                const bool line_and_curve = A.total_degree() == 1 || B.total_degree() == 1;
                const bool smooth_branches = multiplicity_at(base_change(A, FieldEmbedding(A.ring(), L)), P) == 1 &&
                                             multiplicity_at(base_change(B, FieldEmbedding(B.ring(), L)), P) == 1;
                if (line_and_curve && smooth_branches) kind = a.contact == 1 ? StratumKind::Transverse : StratumKind::Tangential;
            }
            if (kind == StratumKind::Unclassified) a.note = "point fits none of the analysed shapes";
        }
        analyses.push_back(std::move(a));
        kinds.push_back(kind);
    }

    // sort the census points
    for (const auto& sp : census.points) {
        const BasePoint base(sp.point.coords.begin(), sp.point.coords.begin() + 3);
        bool found = false;
        for (std::size_t i = 0; i < analyses.size() && !found; ++i)
            if (same_point(base, analyses[i].point)) {
                ++analyses[i].singular_points;
                found = true;
            }
        if (found) continue;
        const auto idx = components_at(base);
        if (idx.empty()) {
            ++strata[StratumKind::OffDiscriminant].singular_points;
        } else if (idx.size() == 1) {
            ++strata[StratumKind::SmoothDiscriminant].singular_points;
        } else {
            out.flags.push_back("singular point above " + point_string(base) + " outside every analysed stratum");
        }
    }
    for (auto k : {StratumKind::OffDiscriminant, StratumKind::SmoothDiscriminant}) {
        auto& s = strata[k];
        s.total_space_smooth = s.singular_points == 0;
        s.resolved = s.total_space_smooth;
    }

    std::vector<Stratum> extra;
    for (std::size_t i = 0; i < analyses.size(); ++i) {
        auto& a = analyses[i];
        const StratumKind k = kinds[i];
        if (k == StratumKind::Transverse || k == StratumKind::Tangential) {
            const auto idx = components_at(a.point);
            const FPoly& A = disc.components[idx[0]].poly;
            const FPoly& B = disc.components[idx[1]].poly;
            const BranchData br = A.total_degree() == 1 ? BranchData{A, B} : BranchData{B, A};
            if (a.singular_points > 0) {
                try {
                    a.local = local_model_at(b, a.point, br, N);
                    a.chain = resolution_chain(a.local->model);
                    if (a.local->model.n != static_cast<unsigned>(a.contact))
                        out.flags.push_back("exponent n = " + std::to_string(a.local->model.n) + " at " + point_string(a.point) +
                                            " differs from the contact order " + std::to_string(a.contact));
                } catch (const std::exception& ex) {
                    a.note = std::string("local model failed: ") + ex.what();
                }
            }
        }
        if (k == StratumKind::Rejected || k == StratumKind::Unclassified) {
            Stratum s;
            s.kind = k;
            s.singular_points = a.singular_points;
            s.total_space_smooth = a.singular_points == 0;
            s.resolved = false;
            s.note = a.note;
            s.points.push_back(std::move(a));
            extra.push_back(std::move(s));
            continue;
        }
        auto& s = strata[k];
        s.singular_points += a.singular_points;
        if (a.singular_points > 0) s.total_space_smooth = false;
        const bool chain_ok = a.singular_points == 0 ||
                              (a.singular_points == 1 && !a.chain.empty() &&
                               a.chain.back().exceptional.kind == ExceptionalKind::SmoothQuadric);
        if (!chain_ok) s.resolved = false;
        s.points.push_back(std::move(a));
    }

    out.ok = census.complete;
    for (auto& [k, s] : strata) {
        if (!s.resolved) out.ok = false;
        out.strata.push_back(std::move(s));
    }
    for (auto& s : extra) {
        out.ok = false;
        out.strata.push_back(std::move(s));
    }
    for (const auto& f : out.flags)
        if (f.find("outside every") != std::string::npos) out.ok = false;
    return out;
}

}  // namespace charpair
