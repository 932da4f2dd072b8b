// charpair: command-line front end.
//
// Exit codes: 0 PASS / success, 1 FAIL (a certificate did not fire, a check
// failed), 2 bad input or usage, 3 resource budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "charpair/pipeline/verify.hpp"

using namespace charpair;
using io::Json;

namespace {

constexpr int kPass = 0, kFail = 1, kInput = 2, kResource = 3;

Json read_json(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw DomainError("cannot open " + path);
        ss << in.rdbuf();
    }
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), e.byte);
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

/// The bundle in the input file, or the built-in matrix S.
Json bundle_input(const std::string& path) { return path.empty() ? io::matrix_json(fixtures::matrix_s()) : read_json(path); }

/// The bundle over F_p; integral input is reduced.
FBundle finite_bundle(const Json& j, std::uint32_t p) {
    const auto in = io::bundle_from_json(j);
    if (in.finite) return *in.finite;
    return in.mod_p(p);
}

/// Claimed discriminant components: from the input, or the built-in ones for X_(2).
std::vector<DiscriminantComponent<FiniteField>> components_for(const Json& j, const FBundle& b, bool builtin_default) {
    if (j.contains("components")) return io::components_from_json(j.at("components"), b.ring());
    if (builtin_default && b.ring() == FiniteField::get(2)) return fixtures::mod2_components();
    return {};
}

struct Common {
    std::string input, json_out, md_out;
    unsigned k_max = 12;
};

int run_disc(const Common& c, std::uint32_t p) {
    const Json j = bundle_input(c.input);
    const auto in = io::bundle_from_json(j);
    Json out;
    if (p == 0 && !in.finite) {
        const ZPoly D = in.half_det ? *in.half_det : discriminant(*in.integral, DiscriminantMode::General).D;
        out = {{"mode", in.half_det ? "det(S)/2" : "general"}, {"D", io::poly_json(D)}};
    } else {
        const FBundle b = in.finite ? *in.finite : in.mod_p(p);
        auto d = discriminant(b);
        out = {{"mode", d.mode == DiscriminantMode::Char2 ? "char2" : "general"}, {"wild", d.wild}, {"D", io::poly_json(d.D)}};
        const auto comps = components_for(j, b, false);
        if (!comps.empty()) {
            const auto check = verify_factorization(d.D, comps);
            out["factorization"] = {{"components", io::components_json(comps)}, {"holds", check.holds}};
            write_text(c.json_out, out.dump(2));
            return check.holds ? kPass : kFail;
        }
    }
    write_text(c.json_out, out.dump(2));
    return kPass;
}

int run_mod_p(const Common& c, std::uint32_t p) {
    const Json j = bundle_input(c.input);
    const auto in = io::bundle_from_json(j);
    if (!in.integral) throw DomainError("mod-p needs an integral bundle (a matrix or p = 0 coefficients)");
    const FBundle b = in.mod_p(p);
    Json out = io::bundle_json(b);
    out["D"] = io::poly_json(discriminant(b).D);
    if (in.half_det) out["det(S)/2 mod p"] = io::poly_json(reduce_mod_p(*in.half_det, p));
    write_text(c.json_out, out.dump(2));
    return kPass;
}

int run_fibers(const Common& c, std::uint32_t p, unsigned k) {
    const Json j = bundle_input(c.input);
    FBundle b = finite_bundle(j, p);
    auto comps = components_for(j, b, true);
    if (k > 1) {
        const FiniteField L = FiniteField::get(b.ring().characteristic(), b.ring().degree() * k);
        const FieldEmbedding e(b.ring(), L);
        for (auto& cp : comps) cp.poly = base_change(cp.poly, e);
        b = base_change(b, e);
    }
    auto d = discriminant(b);
    d.components = comps;
    const auto rows = fiber_table(b, d);
    const auto names = fixtures::component_names(comps);
    write_text(c.json_out, Json{{"ring", io::ring_json(b.ring())}, {"components", names}, {"rows", io::fiber_table_json(rows, names)}}.dump(2));
    if (!c.md_out.empty()) write_text(c.md_out, render_fiber_table(rows, names));
    return kPass;
}

int run_classify(const Common& c, const std::string& form_text, std::uint32_t p, unsigned k) {
    FFQuadraticForm q;
    if (!form_text.empty()) {
        q = parse_quadratic_form(form_text, FiniteField::get(p, k));
    } else {
        if (c.input.empty()) throw DomainError("classify needs --form or --input");
        const Json j = read_json(c.input);
        q = io::form_from_json(io::detail::member(j, "coeffs"), io::ring_from_json(io::detail::member(j, "ring")).field());
    }
    write_text(c.json_out, Json{{"form", io::form_json(q)}, {"classification", io::class_json(classify(q))}}.dump(2));
    return kPass;
}

int run_residue(const Common& c) {
    const Json j = bundle_input(c.input);
    const FBundle b = finite_bundle(j, 2);
    const auto comps = components_for(j, b, true);
    std::map<std::string, LineParameterization> lines;
    if (j.contains("lines")) {
        for (const auto& [name, pts] : j.at("lines").items()) {
            if (!pts.is_array() || pts.size() != 2) throw ParseError("a line is given by two points", 0);
            lines[name] = {io::point_from_json(pts[0], b.ring()), io::point_from_json(pts[1], b.ring())};
        }
    } else if (!j.contains("components")) {
        lines = pipeline_detail::line_parameterizations();
    }
    const auto profile = residue_profile(b, discriminant(b).D, comps, lines, c.k_max);
    write_text(c.json_out, io::residue_profile_json(profile).dump(2));
    bool all = !profile.empty();
    for (const auto& e : profile) all = all && e.nontrivial;
    return all ? kPass : kFail;
}

int run_irreducible(const Common& c, const std::vector<std::uint32_t>& primes, const GroebnerOptions& opt) {
    Json out = Json::array();
    bool ok = true;
    auto certify = [&](const FPoly& F, Json tag) {
        const auto cert = irreducibility_certificate(F, opt);
        Json e = io::irreducibility_json(cert);
        tag.update(e);
        out.push_back(tag);
        ok = ok && cert.verdict == IrreducibilityCertificate::Verdict::Irreducible;
    };
    const Json j = c.input.empty() ? Json() : read_json(c.input);
    if (j.is_object() && j.contains("poly")) {
        certify(io::fpoly_from_json(j), Json{{"poly", j.at("poly")}});
    } else {
        const auto in = io::bundle_from_json(c.input.empty() ? io::matrix_json(fixtures::matrix_s()) : j);
        if (!in.integral) throw DomainError("irreducible needs a polynomial envelope or an integral bundle");
        const ZPoly D = in.half_det ? *in.half_det : discriminant(*in.integral, DiscriminantMode::General).D;
        for (auto p : primes) {
            if (p == 2) throw DomainError("prime 2 is not allowed: the irreducibility argument needs p != 2");
            certify(reduce_mod_p(D, p), Json{{"p", p}});
        }
    }
    write_text(c.json_out, out.dump(2));
    return ok ? kPass : kFail;
}

int run_blowup(const Common& c, unsigned N, const GroebnerOptions& opt) {
    const Json j = bundle_input(c.input);
    const FBundle b = finite_bundle(j, 2);
    const auto comps = components_for(j, b, true);
    auto disc = discriminant(b, DiscriminantMode::Char2);
    if (!comps.empty()) disc = with_factorization(disc, comps);
    const auto r = resolution_report(b, disc, c.k_max, N, opt);
    write_text(c.json_out, io::resolution_json(r).dump(2));
    if (!c.md_out.empty()) write_text(c.md_out, io::resolution_markdown(r));
    return r.ok ? kPass : kFail;
}

int run_verify(const Common& c, VerifyConfig cfg, const std::string& fixture, bool no_timing) {
    if (!fixture.empty()) apply_fixture(cfg, read_json(fixture));
    cfg.k_max = c.k_max;
    cfg.timing = !no_timing;
    const auto rep = verify_paper(cfg);
    write_text(c.json_out, report_json(rep, cfg.timing).dump(2));
    if (!c.md_out.empty()) write_text(c.md_out, report_markdown(rep, cfg.timing));
    if (!c.json_out.empty() && c.json_out != "-") {
        for (const auto& ch : rep.checks) std::cerr << to_string(ch.status) << "  " << ch.id << "\n";
        std::cerr << "overall: " << to_string(rep.overall()) << "\n";
    }
    return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conic bundles over P^2 in characteristic 2: discriminants, fibres, covers, resolutions"};
    app.require_subcommand(1);
    Common c;
    std::uint32_t p_disc = 0, p_modp = 2, p_fib = 2, p_cls = 2;
    unsigned k_fib = 1, k_cls = 1, N = 0;
    std::string form_text, fixture;
    bool no_timing = false, waive = false;
    std::vector<std::uint32_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

    auto add_io = [&](CLI::App* s, bool md) {
        s->add_option("-i,--input", c.input, "input JSON file ('-' for stdin); default: the built-in matrix S");
        s->add_option("--json", c.json_out, "write JSON here (default stdout)");
        if (md) s->add_option("--md", c.md_out, "write a text/markdown rendering here");
    };

    auto* disc = app.add_subcommand("disc", "discriminant of a bundle; with \"components\" also checks the factorization");
    add_io(disc, false);
    disc->add_option("-p,--p", p_disc, "reduce mod p first (0: over Z)");

    auto* modp = app.add_subcommand("mod-p", "reduce an integral bundle mod p");
    add_io(modp, false);
    modp->add_option("-p,--p", p_modp, "the prime")->required();

    auto* fibers = app.add_subcommand("fibers", "fibre table over the rational points of the base");
    add_io(fibers, true);
    fibers->add_option("-p,--p", p_fib, "characteristic for integral input")->capture_default_str();
    fibers->add_option("-k,--k", k_fib, "list points over the degree-k extension")->capture_default_str();

    auto* cls = app.add_subcommand("classify", "classify one ternary quadratic form");
    add_io(cls, false);
    cls->add_option("--form", form_text, "form as text in x, y, z, e.g. \"x*y + z^2\"");
    cls->add_option("-p,--p", p_cls, "characteristic for --form")->capture_default_str();
    cls->add_option("-k,--k", k_cls, "field degree for --form")->capture_default_str();

    auto* res = app.add_subcommand("residue", "residue profile: double covers of the discriminant components");
    add_io(res, false);
    res->add_option("--kmax", c.k_max, "largest extension degree searched")->capture_default_str();

    auto* irr = app.add_subcommand("irreducible", "irreducibility certificate of a plane curve, or of D mod p for each prime");
    add_io(irr, false);
    irr->add_option("--primes", primes, "primes for bundle input")->delimiter(',');

    auto* blow = app.add_subcommand("blowup", "singular-point census and resolution report over F_2");
    add_io(blow, true);
    blow->add_option("--kmax", c.k_max, "largest extension degree searched")->capture_default_str();
    blow->add_option("--series-order", N, "truncation order N of local models (0: 2n + 4)")->capture_default_str();

    auto* ver = app.add_subcommand("verify-paper", "run all checks on the built-in example and write the report");
    ver->add_option("--json", c.json_out, "write the JSON report here (default stdout)");
    ver->add_option("--md", c.md_out, "write the markdown report here");
    ver->add_option("--primes", primes, "odd primes for the irreducibility check")->delimiter(',');
    ver->add_option("--kmax", c.k_max, "largest extension degree searched")->capture_default_str();
    ver->add_option("--series-order", N, "truncation order N of local models (0: 2n + 4)")->capture_default_str();
    ver->add_option("--fixture", fixture, "JSON file overriding the matrix S and/or the three-line instance");
    ver->add_flag("--no-timing", no_timing, "omit wall times so reports are byte-identical across runs");
    ver->add_flag("--waive-skipped", waive, "do not fail the run on checks skipped for resource limits");

    CLI11_PARSE(app, argc, argv);

    try {
        const GroebnerOptions opt = GroebnerOptions::from_environment();
        if (disc->parsed()) return run_disc(c, p_disc);
        if (modp->parsed()) return run_mod_p(c, p_modp);
        if (fibers->parsed()) return run_fibers(c, p_fib, k_fib);
        if (cls->parsed()) return run_classify(c, form_text, p_cls, k_cls);
        if (res->parsed()) return run_residue(c);
        if (irr->parsed()) return run_irreducible(c, primes, opt);
        if (blow->parsed()) return run_blowup(c, N, opt);
        if (ver->parsed()) {
            VerifyConfig cfg;
            cfg.primes = primes;
            cfg.series_order = N;
            cfg.waive_skipped = waive;
            cfg.groebner = opt;
            return run_verify(c, cfg, fixture, no_timing);
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const PrecisionError& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return kResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
