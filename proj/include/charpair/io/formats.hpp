#pragma once

// JSON formats read and written by the command-line tools.
//
// Rings are {"p": p, "k": k}; p = 0 stands for characteristic zero (integer
// coefficients for matrices and bundles, rationals elsewhere). Field elements
// and polynomials travel as strings in the polynomial grammar.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "charpair/artinschreier/artin_schreier.hpp"
#include "charpair/blowup/resolution.hpp"
#include "charpair/bundle/fixtures.hpp"

namespace charpair::io {

using Json = nlohmann::ordered_json;

struct RingSpec {
    std::uint32_t p = 0;
    unsigned k = 1;
    std::vector<std::uint32_t> modulus;  // optional, low degree first

    bool char0() const { return p == 0; }
    FiniteField field() const {
        if (p == 0) throw DomainError("ring with p = 0 is not a finite field");
        return modulus.empty() ? FiniteField::get(p, k) : FiniteField::with_modulus(p, modulus);
    }
};

namespace detail {

inline const Json& member(const Json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError("JSON object lacks \"" + key + "\"", 0);
    return j.at(key);
}

inline std::string text_of(const Json& j, const std::string& what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError(what + " must be a string", 0);
}

}  // namespace detail

inline Json ring_json(const FiniteField& K) {
    Json j{{"p", K.characteristic()}, {"k", K.degree()}};
    if (K.degree() > 1) j["modulus"] = K.modulus();
    return j;
}
inline Json ring_json(const RationalField&) { return Json{{"p", 0}, {"k", 1}}; }
inline Json ring_json(const IntegerRing&) { return Json{{"p", 0}, {"k", 1}}; }

inline RingSpec ring_from_json(const Json& j) {
    RingSpec r;
    try {
        r.p = detail::member(j, "p").get<std::uint32_t>();
        if (j.contains("k")) r.k = j.at("k").get<unsigned>();
        if (j.contains("modulus")) r.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad ring: ") + e.what(), 0);
    }
    if (r.p == 0 && r.k != 1) throw DomainError("characteristic 0 ring must have k = 1");
    if (r.p != 0) (void)r.field();  // validates p, k and the modulus
    return r;
}

inline Json vars_json(const Vars& v) { return Json(v.names()); }

inline Vars vars_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("\"vars\" must be a list of names", 0);
    std::vector<std::string> names;
    for (const auto& x : j) names.push_back(detail::text_of(x, "variable name"));
    return Vars(std::move(names));
}

/// {"vars": [...], "ring": {...}, "poly": "..."}
template <class Ring>
Json poly_json(const Polynomial<Ring>& f) {
    return Json{{"vars", vars_json(f.vars())}, {"ring", ring_json(f.ring())}, {"poly", f.to_string()}};
}

/// Parses an envelope over the given ring; the envelope's ring must agree.
template <class Ring>
Polynomial<Ring> poly_from_json(const Json& j, const Ring& ring) {
    const RingSpec r = ring_from_json(detail::member(j, "ring"));
    if constexpr (std::is_same_v<Ring, FiniteField>) {
        if (r.char0() || !(r.field() == ring)) throw DomainError("polynomial ring does not match " + ring.name());
    } else {
        if (!r.char0()) throw DomainError("expected a characteristic 0 polynomial");
    }
    return parse_polynomial(detail::text_of(detail::member(j, "poly"), "\"poly\""), vars_from_json(detail::member(j, "vars")),
                            ring);
}

inline FPoly fpoly_from_json(const Json& j) {
    const RingSpec r = ring_from_json(detail::member(j, "ring"));
    return poly_from_json(j, r.field());
}

template <class Field>
Json ideal_json(const Ideal<Field>& I) {
    Json gens = Json::array();
    for (const auto& g : I.generators()) gens.push_back(g.to_string());
    return Json{{"vars", vars_json(I.vars())}, {"ring", ring_json(I.field())}, {"generators", gens}};
}

template <class Field>
Json basis_json(const GroebnerBasis<Field>& g) {
    Json b = Json::array();
    for (const auto& p : g.polynomials()) b.push_back(p.to_string());
    return b;
}

inline Json length_json(const Length& l) { return l.infinite ? Json("INFINITE") : Json(l.value); }

inline Json singular_length_json(const SingularLength& s) {
    return Json{{"total", length_json(s.total)},
                {"charts", {{"u!=0", length_json(s.chart_u)}, {"u=0,v!=0", length_json(s.chart_v)}, {"(0:0:1)", length_json(s.chart_w)}}}};
}

inline Json irreducibility_json(const IrreducibilityCertificate& c) {
    return Json{{"verdict", c.verdict_name()}, {"degree", c.degree}, {"singular_scheme_length", singular_length_json(c.evidence)}};
}

inline Json smoothness_json(const SmoothnessCertificate& c) {
    Json charts = Json::array();
    for (const auto& v : c.charts) charts.push_back({{"chart", v.chart}, {"empty", v.empty}, {"basis_size", v.basis_size}});
    return Json{{"verdict", c.smooth ? "SMOOTH" : "SINGULAR"}, {"charts", charts}};
}

inline Json point_json(const BasePoint& P) {
    Json c = Json::array();
    for (const auto& x : P) c.push_back(to_string(x));
    return c;
}

inline BasePoint point_from_json(const Json& j, const FiniteField& K) {
    if (!j.is_array() || j.size() != 3) throw ParseError("a point is a list of three field elements", 0);
    BasePoint P;
    for (const auto& x : j) P.push_back(parse_field_element(detail::text_of(x, "coordinate"), K));
    if (!is_projective_point(P)) throw DomainError("point has all coordinates 0");
    return P;
}

/// Six named coefficients, each a string.
template <class K>
Json form_json(const TernaryQuadraticForm<K>& q) {
    Json j = Json::object();
    const auto c = q.coefficients();
    for (std::size_t i = 0; i < 6; ++i) {
        if constexpr (std::is_same_v<K, FFElem>)
            j[coefficient_names()[i]] = to_string(c[i]);
        else
            j[coefficient_names()[i]] = c[i].to_string();
    }
    return j;
}

inline FFQuadraticForm form_from_json(const Json& j, const FiniteField& K) {
    std::array<FFElem, 6> c;
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& name = coefficient_names()[i];
        c[i] = j.contains(name) ? parse_field_element(detail::text_of(j.at(name), name), K) : K.zero();
    }
    return FFQuadraticForm::from_list(c);
}

inline Json class_json(const ConicClass& c) {
    Json j{{"class", to_string(c.tag)}, {"geometry", geometry_of(c.tag)}, {"radical_dims", {c.dims.q, c.dims.b}}};
    if (c.invariant) j["invariant"] = to_string(*c.invariant);
    j["rational_point"] = c.has_rational_point;
    if (c.anisotropy_hypothesis_fails) j["anisotropy_hypothesis_fails"] = true;
    return j;
}

/// A bundle as read from disk: an integral bundle (from a matrix or p = 0
/// coefficients) or one over a finite field.
struct BundleInput {
    std::optional<ZBundle> integral;
    std::optional<FBundle> finite;
    std::optional<ZPoly> half_det;  // det(S)/2 for matrix input

    /// The bundle over F_p (reducing an integral one).
    FBundle mod_p(std::uint32_t p) const {
        if (finite) {
            if (finite->ring().characteristic() != p) throw DomainError("bundle is defined in another characteristic");
            return *finite;
        }
        return reduce_mod_p(*integral, p);
    }
};

inline Json bundle_json(const FBundle& b) {
    return Json{{"ring", ring_json(b.ring())}, {"coeffs", form_json(b.form())}};
}
inline Json bundle_json(const ZBundle& b) {
    return Json{{"ring", ring_json(IntegerRing{})}, {"coeffs", form_json(b.form())}};
}

inline Json matrix_json(const SymmetricMatrix& S) {
    Json m = Json::array();
    for (const auto& row : S) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(e.to_string());
        m.push_back(r);
    }
    return Json{{"matrix", m}};
}

/// A 3x3 list of integral forms in u, v, w.
inline SymmetricMatrix matrix_from_json(const Json& m) {
    if (!m.is_array() || m.size() != 3) throw ParseError("\"matrix\" must be 3x3", 0);
    std::array<std::array<std::string, 3>, 3> text;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!m[i].is_array() || m[i].size() != 3) throw ParseError("\"matrix\" must be 3x3", 0);
        for (std::size_t k = 0; k < 3; ++k) text[i][k] = detail::text_of(m[i][k], "matrix entry");
    }
    return fixtures::parse_matrix(text);
}

inline BundleInput bundle_from_json(const Json& j) {
    BundleInput out;
    if (j.is_object() && j.contains("matrix")) {
        const auto imp = from_symmetric_matrix(matrix_from_json(j.at("matrix")));
        out.integral = imp.bundle;
        out.half_det = imp.D;
        return out;
    }
    const RingSpec r = ring_from_json(detail::member(j, "ring"));
    const Json& c = detail::member(j, "coeffs");
    auto read = [&](const auto& ring) {
        using P = Polynomial<std::decay_t<decltype(ring)>>;
        std::array<P, 6> cs;
        for (std::size_t i = 0; i < 6; ++i) {
            const auto& name = coefficient_names()[i];
            cs[i] = c.contains(name) ? parse_polynomial(detail::text_of(c.at(name), name), base_vars(), ring) : P(base_vars(), ring);
        }
        return ConicBundle<std::decay_t<decltype(ring)>>::from_list(cs);
    };
    if (r.char0())
        out.integral = read(IntegerRing{});
    else
        out.finite = read(r.field());
    return out;
}

inline Json components_json(const std::vector<DiscriminantComponent<FiniteField>>& cs) {
    Json j = Json::array();
    for (const auto& c : cs) j.push_back({{"name", c.name}, {"poly", c.poly.to_string()}, {"multiplicity", c.multiplicity}});
    return j;
}

inline std::vector<DiscriminantComponent<FiniteField>> components_from_json(const Json& j, const FiniteField& K) {
    if (!j.is_array()) throw ParseError("components must be a list", 0);
    std::vector<DiscriminantComponent<FiniteField>> out;
    for (const auto& c : j) {
        DiscriminantComponent<FiniteField> d;
        d.poly = parse_polynomial(detail::text_of(detail::member(c, "poly"), "\"poly\""), base_vars(), K);
        d.name = c.contains("name") ? detail::text_of(c.at("name"), "\"name\"") : d.poly.to_string();
        d.multiplicity = c.contains("multiplicity") ? c.at("multiplicity").get<int>() : 1;
        out.push_back(std::move(d));
    }
    return out;
}

inline Json fiber_table_json(const std::vector<FiberRow>& rows, const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json on = Json::object();
        for (std::size_t i = 0; i < names.size(); ++i) on[names[i]] = static_cast<bool>(r.on_component[i]);
        Json row{{"point", point_json(r.point)}, {"fiber", to_polynomial(r.fiber).to_string()}, {"label", fiber_label(r.cls)}};
        row["class"] = to_string(r.cls.tag);
        row["components"] = on;
        out.push_back(row);
    }
    return out;
}

inline Json reduced_class_json(const ReducedClass& c) {
    return Json{{"field", ring_json(c.field)}, {"class", c.to_string()}, {"trivial", c.is_zero()}};
}

inline Json line_form_json(const LineCoverForm& f) {
    Json j{{"kind", to_string(f.kind)}};
    if (f.kind == LineCoverKind::Trivial) return j;
    j["lambda"] = to_string(f.lambda);
    j["U"] = f.U.to_string();
    j["V"] = f.V.to_string();
    j["branch_point"] = point_json(f.branch_point);
    return j;
}

inline Json certificate_json(const CoverCertificate& c) {
    Json j{{"certified", c.certified}};
    if (c.certified || !c.split_point.empty()) {
        j["split_point"] = point_json(c.split_point);
        j["conjugate_point"] = point_json(c.conjugate_point);
    }
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

/// component -> {"kind": "class|certificate|trivial", "data": ...}
inline Json residue_profile_json(const ResidueProfile& profile) {
    Json out = Json::object();
    for (const auto& e : profile) {
        Json data = Json::object();
        data["nontrivial"] = e.nontrivial;
        if (e.descriptor)
            data["cover"] = {{"a", e.descriptor->a.to_string()}, {"b", e.descriptor->b.to_string()}, {"c", e.descriptor->c.to_string()}};
        if (e.cls) data["class"] = reduced_class_json(*e.cls);
        if (e.line_form) data["normal_form"] = line_form_json(*e.line_form);
        if (e.certificate) data["certificate"] = certificate_json(*e.certificate);
        out[e.component] = Json{{"kind", to_string(e.kind)}, {"data", data}};
    }
    return out;
}

inline Json chain_json(const std::vector<ChainLink>& chain) {
    Json out = Json::array();
    for (const auto& l : chain)
        out.push_back({{"n", l.n}, {"exceptional", to_string(l.exceptional.kind)}, {"rank", l.exceptional.rank},
                       {"quadric", l.exceptional.form.to_string()}});
    return out;
}

inline Json point_analysis_json(const PointAnalysis& a) {
    Json j{{"point", point_json(a.point)}, {"components", a.components}, {"fiber", to_string(a.fibre)}};
    if (a.contact) j["contact"] = a.contact;
    j["singular_points"] = a.singular_points;
    if (a.local) {
        const auto& m = a.local->model;
        j["local_model"] = {{"field", ring_json(a.local->field)},
                            {"coordinates", a.local->coordinates},
                            {"n", m.n},
                            {"N", m.N},
                            {"alpha", LocalConicModel::truncation(m.alpha).to_string()},
                            {"beta", LocalConicModel::truncation(m.beta).to_string()}};
    }
    if (!a.chain.empty()) j["chain"] = chain_json(a.chain);
    if (!a.note.empty()) j["note"] = a.note;
    return j;
}

inline Json resolution_json(const ResolutionReport& r) {
    Json strata = Json::array();
    for (const auto& s : r.strata) {
        Json pts = Json::array();
        for (const auto& a : s.points) pts.push_back(point_analysis_json(a));
        Json j{{"kind", to_string(s.kind)}, {"singular_points", s.singular_points}, {"total_space_smooth", s.total_space_smooth},
               {"resolved", s.resolved}, {"points", pts}};
        if (!s.note.empty()) j["note"] = s.note;
        strata.push_back(j);
    }
    return Json{{"ok", r.ok},
                {"census", {{"count", r.census_count}, {"complete", r.census_complete}}},
                {"strata", strata},
                {"flags", r.flags},
                {"citation", r.citation}};
}

/// Markdown rendering, one section per stratum.
inline std::string resolution_markdown(const ResolutionReport& r) {
    std::string out = "## Resolution\n\n";
    out += "Singular points of the total space: " + std::to_string(r.census_count) +
           (r.census_complete ? "" : " (search incomplete)") + ".\n\n";
    for (const auto& s : r.strata) {
        out += "### " + to_string(s.kind) + "\n\n";
        out += "- singular points above: " + std::to_string(s.singular_points) + "\n";
        out += std::string("- total space ") + (s.total_space_smooth ? "smooth" : "singular") + " here" +
               (s.total_space_smooth ? "" : s.resolved ? ", resolved by the chains below" : ", NOT resolved") + "\n";
        if (!s.note.empty()) out += "- " + s.note + "\n";
        for (const auto& a : s.points) {
            out += "- " + point_string(a.point) + " on";
            for (const auto& c : a.components) out += " " + c;
            out += ", fibre " + to_string(a.fibre);
            if (a.local) out += ", n = " + std::to_string(a.local->model.n);
            if (!a.chain.empty()) {
                out += ", exceptional divisors:";
                for (const auto& l : a.chain) out += " " + to_string(l.exceptional.kind);
            }
            if (!a.note.empty()) out += " (" + a.note + ")";
            out += "\n";
        }
        out += "\n";
    }
    for (const auto& f : r.flags) out += "**flag:** " + f + "\n\n";
    if (!r.citation.empty()) out += "> " + r.citation + "\n";
    return out;
}

}  // namespace charpair::io
