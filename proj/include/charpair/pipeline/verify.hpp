#pragma once

// verify-paper: the machine-checkable claims about the conic bundle X given by
// the symmetric matrix S, its reduction X_(2) mod 2 and the three-line
// bundle, run in a fixed order and collected into one report.

#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "charpair/io/formats.hpp"

namespace charpair {

enum class CheckStatus { Pass, Fail, SkippedResource };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass:
            return "PASS";
        case CheckStatus::Fail:
            return "FAIL";
        case CheckStatus::SkippedResource:
            return "SKIPPED-resource";
    }
    return "?";
}

struct CheckResult {
    std::string id;
    std::string claim;
    CheckStatus status = CheckStatus::Fail;
    io::Json evidence = io::Json::object();
    std::string message;  // failure reason or error text
    double seconds = 0;
    std::string markdown;  // extra rendering for the markdown report
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool waive_skipped = false;

    /// PASS iff no check failed and nothing was skipped (unless waived).
    CheckStatus overall() const {
        bool skipped = false;
        for (const auto& c : checks) {
            if (c.status == CheckStatus::Fail) return CheckStatus::Fail;
            if (c.status == CheckStatus::SkippedResource) skipped = true;
        }
        return skipped && !waive_skipped ? CheckStatus::Fail : CheckStatus::Pass;
    }
    bool passed() const { return overall() == CheckStatus::Pass; }
    const CheckResult* check(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
};

struct VerifyConfig {
    std::vector<std::uint32_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    unsigned k_max = 12;
    unsigned series_order = 0;  // 0: 2n + 4 per point
    bool waive_skipped = false;
    bool timing = true;         // false drops wall times for byte-stable reports
    GroebnerOptions groebner = GroebnerOptions::from_environment();

    SymmetricMatrix matrix = fixtures::matrix_s();
    std::array<std::string, 3> three_line{"u", "w", "v"};  // (a, b, c)

    void validate() const {
        if (primes.empty()) throw DomainError("prime list is empty");
        std::set<std::uint32_t> seen;
        for (auto p : primes) {
            if (p == 2) throw DomainError("prime 2 is not allowed: the irreducibility argument needs p != 2");
            if (!is_probable_prime_small(p)) throw DomainError(std::to_string(p) + " is not a prime");
            if (!seen.insert(p).second) throw DomainError("prime " + std::to_string(p) + " listed twice");
        }
        if (k_max == 0 || k_max > 24) throw DomainError("k_max must lie in 1..24");
    }
};

/// Overrides from a fixture file: {"matrix": [[...]], "three_line": {"a","b","c"}}.
inline void apply_fixture(VerifyConfig& cfg, const io::Json& j) {
    if (!j.is_object()) throw ParseError("fixture must be a JSON object", 0);
    if (j.contains("matrix")) cfg.matrix = io::matrix_from_json(j.at("matrix"));
    if (j.contains("three_line")) {
        const auto& t = j.at("three_line");
        cfg.three_line = {io::detail::text_of(io::detail::member(t, "a"), "a"), io::detail::text_of(io::detail::member(t, "b"), "b"),
                          io::detail::text_of(io::detail::member(t, "c"), "c")};
    }
}

namespace pipeline_detail {

struct Row {
    const char* point;
    const char* label;
    std::vector<bool> on;
};

/// Expected fibre table of X_(2): point, fibre, membership in u, w, u+w, E.
inline const std::vector<Row>& claimed_fiber_table() {
    static const std::vector<Row> rows{
        {"(0:1:0)", "1 double line", {true, true, true, false}},
        {"(0:1:1)", "2 rational lines", {true, false, false, false}},
        {"(1:0:0)", "2 rational lines", {false, true, false, true}},
        {"(1:0:1)", "2 rational lines", {false, false, true, false}},
        {"(0:0:1)", "2 conjugate lines", {true, false, false, true}},
        {"(1:1:0)", "2 conjugate lines", {false, true, false, false}},
        {"(1:1:1)", "2 conjugate lines", {false, false, true, false}},
    };
    return rows;
}

/// Parameterizations of the three lines through (0:1:0).
inline std::map<std::string, LineParameterization> line_parameterizations() {
    return {{"u", {fixtures::point({0, 1, 0}), fixtures::point({0, 0, 1})}},
            {"w", {fixtures::point({1, 0, 0}), fixtures::point({0, 1, 0})}},
            {"u+w", {fixtures::point({1, 0, 1}), fixtures::point({0, 1, 0})}}};
}

/// The branch point (s:t) of a line cover as a point of the plane.
inline BasePoint plane_point(const LineParameterization& L, const BasePoint& st) {
    const FiniteField K = field_of(st[0]);
    const FieldEmbedding e(field_of(L.p0[0]), K);
    BasePoint P;
    for (std::size_t i = 0; i < 3; ++i) P.push_back(st[0] * e(L.p0[i]) + st[1] * e(L.p1[i]));
    return normalized(P);
}

inline FPoly over(const FPoly& f, const BasePoint& P) { return base_change(f, FieldEmbedding(f.ring(), field_of(P[0]))); }

struct Context {
    const VerifyConfig& cfg;
    SymmetricImport imp;
    FBundle x2;
    FPoly D2;
    std::vector<DiscriminantComponent<FiniteField>> comps;  // u, w, u+w, E
};

inline CheckResult run(const std::string& id, const std::string& claim, const std::function<bool(CheckResult&)>& body) {
    CheckResult r;
    r.id = id;
    r.claim = claim;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.status = body(r) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const ResourceError& e) {
        r.status = CheckStatus::SkippedResource;
        r.message = e.what();
    } catch (const PrecisionError& e) {
        r.status = CheckStatus::SkippedResource;
        r.message = e.what();
    } catch (const Error& e) {
        r.status = CheckStatus::Fail;
        r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline bool fail(CheckResult& r, const std::string& why) {
    if (!r.message.empty()) r.message += "; ";
    r.message += why;
    return false;
}

}  // namespace pipeline_detail

/// Runs the nine checks in order.
inline VerificationReport verify_paper(const VerifyConfig& cfg) {
    using namespace pipeline_detail;
    using io::Json;
    cfg.validate();
    VerificationReport rep;
    rep.waive_skipped = cfg.waive_skipped;

    std::optional<Context> ctx;
    rep.checks.push_back(run("discriminant", "D = det(S)/2 is the discriminant of X and reduces to the char-2 discriminant of X_(2)",
                             [&](CheckResult& r) {
                                 ctx.emplace(Context{cfg, from_symmetric_matrix(cfg.matrix), {}, {}, fixtures::mod2_components()});
                                 ctx->x2 = reduce_mod_p(ctx->imp.bundle, 2);
                                 ctx->D2 = reduce_mod_p(ctx->imp.D, 2);
                                 const bool general = discriminant(ctx->imp.bundle, DiscriminantMode::General).D == ctx->imp.D;
                                 const bool char2 = discriminant(ctx->x2, DiscriminantMode::Char2).D == ctx->D2;
                                 r.evidence = {{"matrix", io::matrix_json(cfg.matrix).at("matrix")},
                                               {"D", ctx->imp.D.to_string()},
                                               {"D_mod_2", ctx->D2.to_string()},
                                               {"matches_general_formula", general},
                                               {"mod_2_matches_char2_formula", char2}};
                                 if (!general) fail(r, "det(S)/2 differs from the discriminant formula");
                                 if (!char2) fail(r, "D mod 2 differs from the char-2 discriminant of X_(2)");
                                 return general && char2;
                             }));

    auto needs_ctx = [&](CheckResult& r) {
        if (!ctx) return fail(r, "matrix import failed");
        return true;
    };

    rep.checks.push_back(run("smoothness", "X is smooth over Q: 1 lies in (F, dF) on all nine charts of P2 x P2", [&](CheckResult& r) {
        if (!needs_ctx(r)) return false;
        const auto cert = smoothness_certificate(to_rational(ctx->imp.bundle.equation(total_vars())), {{0, 1, 2}, {3, 4, 5}},
                                                 cfg.groebner);
        r.evidence = io::smoothness_json(cert);
        return cert.smooth || fail(r, "some chart has a nonempty singular scheme");
    }));

    rep.checks.push_back(run("irreducible-mod-p", "D mod p is irreducible: singular scheme of length <= 1", [&](CheckResult& r) {
        if (!needs_ctx(r)) return false;
        Json per = Json::array();
        bool ok = true;
        for (auto p : cfg.primes) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto cert = irreducibility_certificate(reduce_mod_p(ctx->imp.D, p), cfg.groebner);
            Json e = io::irreducibility_json(cert);
            e = Json{{"p", p}, {"verdict", e["verdict"]}, {"degree", e["degree"]}, {"singular_scheme_length", e["singular_scheme_length"]}};
            if (cfg.timing)
                e["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            per.push_back(e);
            if (cert.verdict != IrreducibilityCertificate::Verdict::Irreducible) ok = fail(r, "no certificate mod " + std::to_string(p));
        }
        r.evidence = {{"primes", per}};
        return ok;
    }));

    rep.checks.push_back(run("geometry-of-E", "D mod 2 = u w (u+w) E with E smooth, (0:1:0) off E, lines w, u+w transverse to E, u inflectional at (0:0:1)",
                             [&](CheckResult& r) {
                                 if (!needs_ctx(r)) return false;
                                 bool ok = true;
                                 const auto fac = verify_factorization(ctx->D2, ctx->comps);
                                 r.evidence["factorization"] = {{"components", io::components_json(ctx->comps)}, {"holds", fac.holds}};
                                 if (!fac.holds) ok = fail(r, "D mod 2 is not u w (u+w) E");
                                 const FPoly& E = ctx->comps[3].poly;
                                 const Length sl = singular_scheme_length(E, cfg.groebner);
                                 r.evidence["E_singular_scheme_length"] = io::length_json(sl);
                                 if (!(sl == Length::finite(0))) ok = fail(r, "E is singular");
                                 const bool off = !is_zero(evaluate(E, fixtures::point({0, 1, 0})));
                                 r.evidence["(0:1:0)_off_E"] = off;
                                 if (!off) ok = fail(r, "(0:1:0) lies on E");
                                 Json meets = Json::array();
                                 for (std::size_t i = 0; i < 3; ++i) {
                                     const FPoly& L = ctx->comps[i].poly;
                                     bool complete = true;
                                     const auto pts = plane_points({L, E}, cfg.k_max, &complete, cfg.groebner);
                                     if (!complete) throw ResourceError("intersection of " + ctx->comps[i].name + " and E not found within k_max");
                                     for (const auto& P : pts) {
                                         const int m = intersection_multiplicity(over(L, P), over(E, P), P, cfg.groebner);
                                         meets.push_back({{"line", ctx->comps[i].name}, {"point", io::point_json(P)},
                                                          {"field", io::ring_json(field_of(P[0]))}, {"multiplicity", m}});
                                         const bool is_u = ctx->comps[i].name == "u";
                                         const int want = is_u ? 3 : 1;
                                         if (is_u && point_string(P) != "(0:0:1)") ok = fail(r, "u meets E away from (0:0:1)");
                                         if (m != want)
                                             ok = fail(r, "multiplicity " + std::to_string(m) + " of " + ctx->comps[i].name + " and E at " +
                                                              point_string(P));
                                     }
                                 }
                                 r.evidence["intersections"] = meets;
                                 return ok;
                             }));

    rep.checks.push_back(run("fiber-table", "fibres of X_(2) over the seven F_2-points", [&](CheckResult& r) {
        if (!needs_ctx(r)) return false;
        auto d = discriminant(ctx->x2, DiscriminantMode::Char2);
        d.components = ctx->comps;  // membership columns of the claimed factors, verified or not
        const auto rows = fiber_table(ctx->x2, d);
        const auto names = fixtures::component_names(ctx->comps);
        r.evidence = {{"components", names}, {"rows", io::fiber_table_json(rows, names)}};
        bool ok = true;
        const auto& want = claimed_fiber_table();
        if (rows.size() != want.size()) return fail(r, "table has " + std::to_string(rows.size()) + " rows");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string pt = point_string(rows[i].point), label = fiber_label(rows[i].cls);
            if (pt != want[i].point || label != want[i].label || rows[i].on_component != want[i].on)
                ok = fail(r, "row " + std::to_string(i + 1) + " is " + pt + " " + label + ", expected " + want[i].point + " " +
                                 want[i].label);
        }
        std::string md = "| point | fiber |", sep = "|---|---|";
        for (const auto& n : names) {
            md += " " + n + " |";
            sep += "---|";
        }
        md += "\n" + sep + "\n";
        for (const auto& row : rows) {
            md += "| " + point_string(row.point) + " | " + fiber_label(row.cls) + " |";
            for (bool on : row.on_component) md += on ? " x |" : "  |";
            md += "\n";
        }
        r.markdown = md;
        return ok;
    }));

    auto line_cover_ok = [](CheckResult& r, const ResidueEntry& e, const LineParameterization& L, const std::string& who) {
        if (e.kind != ResidueKind::Class || !e.line_form) return fail(r, who + " " + e.component + ": no line cover");
        if (e.line_form->kind != LineCoverKind::Canonical)
            return fail(r, who + " " + e.component + ": cover is " + to_string(e.line_form->kind) + ", not canonical");
        const BasePoint R = plane_point(L, e.line_form->branch_point);
        if (point_string(R) != "(0:1:0)") return fail(r, who + " " + e.component + ": branch point " + point_string(R));
        return true;
    };

    rep.checks.push_back(run("covers", "X_(2) induces nontrivial double covers of u, w, u+w (normal form x^2 + x + v/u, R = (0:1:0)) and of E",
                             [&](CheckResult& r) {
                                 if (!needs_ctx(r)) return false;
                                 const auto lines = line_parameterizations();
                                 const auto profile = residue_profile(ctx->x2, ctx->D2, ctx->comps, lines, cfg.k_max);
                                 r.evidence = {{"profile", io::residue_profile_json(profile)}};
                                 bool ok = true;
                                 for (const auto& e : profile) {
                                     if (!e.nontrivial) ok = fail(r, e.component + ": trivial cover");
                                     const auto it = lines.find(e.component);
                                     if (it != lines.end()) {
                                         ok = line_cover_ok(r, e, it->second, "X_(2)") && ok;
                                     } else if (e.kind != ResidueKind::Certificate || !e.certificate || !e.certificate->certified) {
                                         ok = fail(r, e.component + ": no Frobenius certificate");
                                     }
                                 }
                                 return ok;
                             }));

    std::optional<FBundle> y;
    rep.checks.push_back(run("three-line-bundle", "the bundle a x^2 + a xz + b y^2 + b yz + c z^2 has discriminant ab(a+b), canonical covers and cross fibres over the lines meeting E",
                             [&](CheckResult& r) {
                                 if (!needs_ctx(r)) return false;
                                 const FiniteField F2 = FiniteField::get(2);
                                 auto p = [&](const std::string& s) { return parse_polynomial(s, base_vars(), F2); };
                                 const FPoly a = p(cfg.three_line[0]), b = p(cfg.three_line[1]), c = p(cfg.three_line[2]);
                                 y = fixtures::three_line_bundle(a, b, c);
                                 const auto d = discriminant(*y, DiscriminantMode::Char2);
                                 const std::vector<DiscriminantComponent<FiniteField>> mine{{"a", a, 1}, {"b", b, 1}, {"a+b", a + b, 1}};
                                 const bool fac = verify_factorization(d.D, mine).holds;
                                 r.evidence["instance"] = {{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}};
                                 r.evidence["bundle"] = io::bundle_json(*y);
                                 r.evidence["discriminant"] = d.D.to_string();
                                 r.evidence["is_ab(a+b)"] = fac;
                                 bool ok = fac || fail(r, "discriminant is not ab(a+b)");
                                 const bool same_lines = a == ctx->comps[0].poly && b == ctx->comps[1].poly && a + b == ctx->comps[2].poly;
                                 r.evidence["lines_match_X_(2)"] = same_lines;
                                 if (!same_lines) ok = fail(r, "lines a, b, a+b are not u, w, u+w");

                                 const auto lines = line_parameterizations();
                                 const std::vector<DiscriminantComponent<FiniteField>> I1(ctx->comps.begin(), ctx->comps.begin() + 3);
                                 const auto profile = residue_profile(*y, d.D, I1, lines, cfg.k_max);
                                 r.evidence["profile"] = io::residue_profile_json(profile);
                                 for (const auto& e : profile) {
                                     if (!e.nontrivial) ok = fail(r, e.component + ": trivial cover");
                                     ok = line_cover_ok(r, e, lines.at(e.component), "three-line bundle") && ok;
                                 }

                                 Json fibres = Json::array();
                                 const FPoly& E = ctx->comps[3].poly;
                                 for (const auto& L : I1) {
                                     bool complete = true;
                                     const auto pts = plane_points({L.poly, E}, cfg.k_max, &complete, cfg.groebner);
                                     if (!complete) throw ResourceError("intersection of " + L.name + " and E not found within k_max");
                                     for (const auto& P : pts) {
                                         const auto cls = classify(fiber_at(*y, P));
                                         fibres.push_back({{"line", L.name}, {"point", io::point_json(P)}, {"fiber", to_string(cls.tag)}});
                                         if (!cls.is_cross()) ok = fail(r, "fibre at " + point_string(P) + " is " + to_string(cls.tag));
                                     }
                                 }
                                 r.evidence["fibres_over_lines_and_E"] = fibres;
                                 return ok;
                             }));

    rep.checks.push_back(run("residue-matching", "on u, w, u+w the covers of X_(2) and of the three-line bundle give the same class", [&](CheckResult& r) {
        if (!needs_ctx(r)) return false;
        if (!y) return fail(r, "three-line bundle unavailable");
        bool ok = true;
        Json per = Json::array();
        for (const auto& [name, L] : line_parameterizations()) {
            const auto cx = cover_descriptor(restrict_to_line(ctx->x2, L.p0, L.p1));
            const auto cy = cover_descriptor(restrict_to_line(*y, L.p0, L.p1));
            const auto kx = reduce(cover_invariant(cx), cfg.k_max), ky = reduce(cover_invariant(cy), cfg.k_max);
            const bool same = equivalent(kx, ky);
            per.push_back({{"line", name}, {"X_(2)", io::reduced_class_json(kx)}, {"three_line", io::reduced_class_json(ky)}, {"equal", same}});
            if (!same) ok = fail(r, "classes differ on " + name);
            if (kx.is_zero()) ok = fail(r, "class on " + name + " is trivial");
        }
        r.evidence = {{"lines", per}};
        return ok;
    }));

    rep.checks.push_back(run("resolution", "7 singular points of X_(2): n = 1 above the six transverse points, n = 3 above (0:0:1); blow-ups resolve them",
                             [&](CheckResult& r) {
                                 if (!needs_ctx(r)) return false;
                                 const auto disc = with_factorization(discriminant(ctx->x2, DiscriminantMode::Char2), ctx->comps);
                                 const auto rr = resolution_report(ctx->x2, disc, cfg.k_max, cfg.series_order, cfg.groebner);
                                 r.evidence = io::resolution_json(rr);
                                 r.markdown = io::resolution_markdown(rr);
                                 bool ok = rr.ok || fail(r, "report not ok");
                                 if (!rr.census_complete) throw ResourceError("singular-point census incomplete within k_max");
                                 if (rr.census_count != 7) ok = fail(r, "census found " + std::to_string(rr.census_count) + " points");
                                 for (const auto& f : rr.flags) ok = fail(r, f);
                                 const auto* tr = rr.stratum(StratumKind::Transverse);
                                 if (!tr || tr->points.size() != 6 || tr->singular_points != 6) {
                                     ok = fail(r, "expected six transverse points with one singular point each");
                                 } else {
                                     for (const auto& a : tr->points)
                                         if (!a.local || a.local->model.n != 1 || a.chain.size() != 1 ||
                                             a.chain[0].exceptional.kind != ExceptionalKind::SmoothQuadric)
                                             ok = fail(r, "transverse point " + point_string(a.point) + " is not n = 1 with a smooth quadric");
                                 }
                                 const auto* tg = rr.stratum(StratumKind::Tangential);
                                 if (!tg || tg->points.size() != 1 || point_string(tg->points[0].point) != "(0:0:1)") {
                                     ok = fail(r, "expected the single tangential point (0:0:1)");
                                 } else {
                                     const auto& a = tg->points[0];
                                     const std::vector<ExceptionalKind> want{ExceptionalKind::ConeOneSingular, ExceptionalKind::ConeOneSingular,
                                                                             ExceptionalKind::SmoothQuadric};
                                     std::vector<ExceptionalKind> got;
                                     for (const auto& l : a.chain) got.push_back(l.exceptional.kind);
                                     if (!a.local || a.local->model.n != 3 || got != want)
                                         ok = fail(r, "(0:0:1) is not n = 3 with exceptional quadrics cone, cone, smooth");
                                 }
                                 return ok;
                             }));
    return rep;
}

// ---------------------------------------------------------------------------
// Rendering.

inline io::Json report_json(const VerificationReport& rep, bool timing = true) {
    io::Json checks = io::Json::array();
    for (const auto& c : rep.checks) {
        io::Json j{{"id", c.id}, {"claim", c.claim}, {"status", to_string(c.status)}};
        if (!c.message.empty()) j["message"] = c.message;
        if (timing) j["wall_time_s"] = c.seconds;
        j["evidence"] = c.evidence;
        checks.push_back(j);
    }
    return io::Json{{"schema", "charpair.verification/1"}, {"overall", to_string(rep.overall())},
                    {"waive_skipped", rep.waive_skipped}, {"checks", checks}};
}

inline std::string report_markdown(const VerificationReport& rep, bool timing = true) {
    std::string out = "# Verification report\n\nOverall: **" + to_string(rep.overall()) + "**\n\n";
    out += timing ? "| # | check | status | time (s) |\n|---|---|---|---|\n" : "| # | check | status |\n|---|---|---|\n";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const auto& c = rep.checks[i];
        char t[32];
        std::snprintf(t, sizeof t, "%.3f", c.seconds);
        out += "| " + std::to_string(i + 1) + " | " + c.id + " | " + to_string(c.status) + (timing ? std::string(" | ") + t : "") + " |\n";
    }
    out += "\n";
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        const auto& c = rep.checks[i];
        out += "## " + std::to_string(i + 1) + ". " + c.id + ": " + to_string(c.status) + "\n\n" + c.claim + "\n\n";
        if (!c.message.empty()) out += "> " + c.message + "\n\n";
        if (!c.markdown.empty()) out += c.markdown + "\n";
    }
    return out;
}

}  // namespace charpair
