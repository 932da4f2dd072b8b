#include <gtest/gtest.h>

#include <random>

#include "charpair/bundle/fixtures.hpp"
#include "charpair/bundle/normal_form.hpp"

using namespace charpair;

namespace {

const FiniteField F2 = FiniteField::get(2);
const FiniteField F4 = FiniteField::get(2, 2);

FPoly p2(const std::string& s, const FiniteField& K = F2) { return parse_polynomial(s, base_vars(), K); }
ZPoly pz(const std::string& s) { return parse_polynomial(s, base_vars(), IntegerRing{}); }

FBundle x2() { return reduce_mod_p(from_symmetric_matrix(fixtures::matrix_s()).bundle, 2); }

Matrix3<FFElem> random_invertible(const FiniteField& K, std::mt19937_64& rng, FFElem& det) {
    std::uniform_int_distribution<std::uint64_t> d(0, K.order() - 1);
    for (;;) {
        Matrix3<FFElem> T;
        for (auto& row : T)
            for (auto& x : row) x = K.element(d(rng));
        det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
              T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
        if (!is_zero(det)) return T;
    }
}

FPoly random_form(const FiniteField& K, unsigned d, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> c(0, K.order() - 1);
    FPoly out(base_vars(), K);
    for (unsigned i = 0; i <= d; ++i)
        for (unsigned j = 0; i + j <= d; ++j)
            out += FPoly::monomial(base_vars(), K, Monomial::from({i, j, d - i - j}), K.element(c(rng)));
    return out;
}

FBundle random_bundle(const FiniteField& K, unsigned d, std::mt19937_64& rng) {
    for (;;) {
        std::array<FPoly, 6> c;
        for (auto& f : c) f = random_form(K, d, rng);
        bool any = false;
        for (auto& f : c) any = any || !f.is_zero();
        if (any) return FBundle::from_list(c);
    }
}

bool unit_at(const FRational& f, const std::vector<FFElem>& pt) { return f.regular_at(pt) && !is_zero(f.value_at(pt)); }

// b = D * factor with factor a unit at P, and D = g * h with h(P) != 0.
bool b_associated_to(const NormalFormData& nf, const FPoly& D, const FPoly& g) {
    const FPoly Dl = dehomogenize(D, nf.chart), gl = dehomogenize(g, nf.chart);
    const FRational factor = nf.discriminant_factor();
    if (!(nf.b == FRational(Dl) * factor) || !unit_at(factor, nf.local_point)) return false;
    const FPoly h = exact_divide(Dl, gl);
    return !is_zero(evaluate(h, nf.local_point));
}

}  // namespace

TEST(Bundle, ImportsMatrix) {
    const auto imp = from_symmetric_matrix(fixtures::matrix_s());
    const auto& b = imp.bundle;
    EXPECT_EQ(b.coefficient("xx"), pz("u*v + 2*v^2 + u*w + w^2"));
    EXPECT_EQ(b.coefficient("xy"), pz("u^2 + u*w + w^2"));
    EXPECT_EQ(b.coefficient("xz"), pz("u*v"));
    EXPECT_EQ(b.coefficient("yy"), pz("u^2 + v*w + w^2"));
    EXPECT_EQ(b.coefficient("yz"), pz("u^2 + v*w + w^2"));
    EXPECT_EQ(b.coefficient("zz"), pz("v^2 + u*w + w^2"));
    EXPECT_EQ(b.degree(), 2U);
    EXPECT_EQ(imp.D.total_degree(), 6);
    // det(S)/2 is the general discriminant formula
    EXPECT_EQ(discriminant(b, DiscriminantMode::General).D, imp.D);
}

TEST(Bundle, ImportSmallCases) {
    SymmetricMatrix S;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) S[i][j] = pz(i == j ? "2" : "0");
    const auto imp = from_symmetric_matrix(S);
    EXPECT_EQ(imp.D, pz("4"));
    EXPECT_EQ(imp.bundle.coefficient("xx"), pz("1"));
    EXPECT_EQ(imp.bundle.coefficient("xy"), pz("0"));
    S[0][0] = pz("u");
    S[1][1] = pz("2*u");
    S[2][2] = pz("2*u");
    EXPECT_THROW(from_symmetric_matrix(S), DomainError);
    S[0][0] = pz("2*u");
    S[0][1] = pz("v");
    EXPECT_THROW(from_symmetric_matrix(S), DomainError);
}

TEST(Bundle, DiscriminantExamples) {
    const FPoly a = p2("u^2 + v*w"), b = p2("v^2 + u*w"), zero = p2("0"), one = p2("1");
    EXPECT_EQ(discriminant_formula(TernaryQuadraticForm<FPoly>{a, b, one, zero, one, zero}, DiscriminantMode::Char2), b);
    const FPoly la = p2("u + v"), lb = p2("w"), lc = p2("u + v + w");
    const auto ehc = fixtures::three_line_bundle(la, lb, lc);
    const auto d = discriminant(ehc, DiscriminantMode::Char2);
    EXPECT_EQ(d.D, la * lb * (la + lb));
    EXPECT_FALSE(d.wild);
    EXPECT_EQ(d.D.total_degree(), 3);
    const auto cross = FBundle(TernaryQuadraticForm<FPoly>{zero, zero, zero, zero, one, zero});
    EXPECT_TRUE(discriminant(cross).wild);
    const auto ts = FBundle(TernaryQuadraticForm<FPoly>{p2("u"), p2("v"), p2("w"), zero, zero, zero});
    EXPECT_TRUE(discriminant(ts).wild);
    EXPECT_THROW(discriminant(ehc, DiscriminantMode::General), DomainError);
    EXPECT_THROW(discriminant(from_symmetric_matrix(fixtures::matrix_s()).bundle, DiscriminantMode::Char2), DomainError);
}

TEST(Bundle, UniversalFormulasAgreeModTwo) {
    const Vars a{"axx", "ayy", "azz", "axy", "axz", "ayz"};
    std::array<ZPoly, 6> zc;
    std::array<FPoly, 6> fc;
    for (std::size_t i = 0; i < 6; ++i) {
        zc[i] = ZPoly::variable(a, IntegerRing{}, i);
        fc[i] = FPoly::variable(a, F2, i);
    }
    const auto general = discriminant_formula(TernaryQuadraticForm<ZPoly>::from_list(zc), DiscriminantMode::General);
    const auto char2 = discriminant_formula(TernaryQuadraticForm<FPoly>::from_list(fc), DiscriminantMode::Char2);
    EXPECT_EQ(reduce_mod_p(general, 2), char2);
}

TEST(Bundle, VerifyFactorization) {
    const auto b = x2();
    const auto d = discriminant(b);
    const auto comps = fixtures::mod2_components();
    const auto ok = verify_factorization(d.D, comps);
    EXPECT_TRUE(ok.holds);
    ASSERT_TRUE(ok.witness.has_value());
    EXPECT_EQ(*ok.witness, F2.one());
    const std::vector<DiscriminantComponent<FiniteField>> bad{
        {"u", p2("u"), 2}, {"w", p2("w"), 1}, {"E", p2(fixtures::elliptic_text()), 1}};
    EXPECT_FALSE(verify_factorization(d.D, bad).holds);
    EXPECT_THROW(with_factorization(d, bad), DomainError);
    const auto ehc = fixtures::three_line_instance();
    EXPECT_TRUE(verify_factorization(discriminant(ehc).D, fixtures::three_line_components()).holds);
    // scalar witness over a larger field
    const FPoly g = p2("u*v + w^2", F4);
    const FFElem s = F4.generator();
    const auto w = verify_factorization(s * g, {{"g", g, 1}});
    EXPECT_TRUE(w.holds);
    EXPECT_EQ(*w.witness, s);
}

TEST(Bundle, ComponentMultiplicitiesAreOne) {
    const auto d = discriminant(x2());
    for (const auto& c : fixtures::mod2_components()) EXPECT_EQ(scheme_multiplicity(d.D, c.poly), 1) << c.name;
    EXPECT_EQ(scheme_multiplicity(d.D * p2("u"), p2("u")), 2);
}

TEST(Bundle, DiscriminantCovariance) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const auto b = random_bundle(F4, 1 + trial % 2, rng);
        FFElem det;
        const auto T = random_invertible(F4, rng, det);
        std::uniform_int_distribution<std::uint64_t> d(1, 3);
        const FFElem s = F4.element(d(rng));
        const auto D = discriminant(b).D;
        EXPECT_EQ(discriminant(b.transform(T, s)).D, s * s * s * det * det * D);
    }
}

TEST(Bundle, FiberExamples) {
    const auto b = x2();
    EXPECT_EQ(fiber_at(b, fixtures::point({0, 1, 0})), parse_quadratic_form("z^2", F2));
    EXPECT_EQ(fiber_at(b, fixtures::point({1, 0, 0})), parse_quadratic_form("x*y + y^2 + y*z", F2));
    EXPECT_EQ(classify(fiber_at(b, fixtures::point({0, 0, 1}))).tag, ConicTag::CrossConjugate);
    EXPECT_THROW(fiber_at(b, fixtures::point({0, 0, 0})), DomainError);
    const FPoly zero = p2("0");
    const auto vanishing = FBundle(TernaryQuadraticForm<FPoly>{p2("u"), zero, zero, zero, p2("u"), zero});
    EXPECT_THROW(fiber_at(vanishing, fixtures::point({0, 1, 0})), DomainError);
}

TEST(Bundle, FiberTableOfReduction) {
    const auto b = x2();
    const auto d = with_factorization(discriminant(b), fixtures::mod2_components());
    const auto rows = fiber_table(b, d);
    struct Expected {
        const char* point;
        const char* label;
        std::vector<bool> flags;
    };
    const std::vector<Expected> expected{
        {"(0:1:0)", "1 double line", {true, true, true, false}},
        {"(0:1:1)", "2 rational lines", {true, false, false, false}},
        {"(1:0:0)", "2 rational lines", {false, true, false, true}},
        {"(1:0:1)", "2 rational lines", {false, false, true, false}},
        {"(0:0:1)", "2 conjugate lines", {true, false, false, true}},
        {"(1:1:0)", "2 conjugate lines", {false, true, false, false}},
        {"(1:1:1)", "2 conjugate lines", {false, false, true, false}},
    };
    ASSERT_EQ(rows.size(), expected.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(point_string(rows[i].point), expected[i].point);
        EXPECT_EQ(fiber_label(rows[i].cls), expected[i].label);
        EXPECT_EQ(rows[i].on_component, expected[i].flags) << expected[i].point;
    }
    const auto text = render_fiber_table(rows, fixtures::component_names(fixtures::mod2_components()));
    EXPECT_NE(text.find("(0:1:0) | 1 double line"), std::string::npos);
}

TEST(Bundle, FiberTableConstantDiscriminant) {
    const FPoly zero = p2("0"), one = p2("1");
    const auto b = FBundle(TernaryQuadraticForm<FPoly>{one, one, one, zero, one, zero});
    const auto d = discriminant(b);
    EXPECT_EQ(d.D, one);
    const auto rows = fiber_table(b, d);
    EXPECT_EQ(rows.size(), 7U);
    for (const auto& r : rows) {
        EXPECT_EQ(r.cls.tag, ConicTag::SmoothConic);
        EXPECT_TRUE(r.on_component.empty());
    }
}

TEST(Bundle, SingularFibresExactlyOverDiscriminant) {
    const auto b = x2();
    const auto D = discriminant(b).D;
    const FieldEmbedding e(F2, F4);
    const FPoly D4 = base_change(D, e);
    for (const auto& P : projective_plane_points(F4)) {
        const auto c = classify(fiber_at(b, P));
        EXPECT_EQ(!c.is_smooth(), is_zero(evaluate(D4, P))) << point_string(P);
    }
}

TEST(Bundle, RestrictToLine) {
    const auto b = x2();
    const auto r = restrict_to_line(b, fixtures::point({0, 1, 0}), fixtures::point({0, 0, 1}));
    const FPoly D = discriminant(b).D;
    const FPoly s = FPoly::variable(line_vars(), F2, 0), t = FPoly::variable(line_vars(), F2, 1);
    EXPECT_EQ(r.discriminant(), substitute(D, {s.zero_like(), s, t}));
    EXPECT_TRUE(r.form.xx.is_homogeneous());
    EXPECT_EQ(r.form.xy.total_degree(), 2);
    EXPECT_THROW(restrict_to_line(b, fixtures::point({0, 1, 0}), fixtures::point({0, 1, 0})), DomainError);
    // a line missing the discriminant of a constant-discriminant bundle
    const FPoly zero = p2("0"), one = p2("1");
    const auto c = FBundle(TernaryQuadraticForm<FPoly>{one, one, one, zero, one, zero});
    const auto rc = restrict_to_line(c, fixtures::point({1, 0, 0}), fixtures::point({0, 1, 0}));
    EXPECT_EQ(rc.discriminant(), rc.form.xx.constant_like(F2.one()));
}

TEST(Bundle, RestrictionCommutesWithReduction) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<ZPoly, 6> coeffs;
        for (auto& f : coeffs) {
            f = ZPoly(base_vars(), IntegerRing{});
            for (unsigned i = 0; i <= 2; ++i)
                for (unsigned j = 0; i + j <= 2; ++j)
                    f += ZPoly::monomial(base_vars(), IntegerRing{}, Monomial::from({i, j, 2 - i - j}), BigInt(c(rng)));
        }
        const ZBundle zb = ZBundle::from_list(coeffs);
        const std::uint32_t p = trial % 2 ? 3 : 2;
        const FiniteField Fp = FiniteField::get(p);
        const std::vector<int> a{c(rng), c(rng), c(rng)}, bb{c(rng), c(rng), c(rng)};
        BasePoint P0, P1;
        for (int i = 0; i < 3; ++i) {
            P0.push_back(Fp.from_int(a[static_cast<std::size_t>(i)]));
            P1.push_back(Fp.from_int(bb[static_cast<std::size_t>(i)]));
        }
        FBundle fb;
        try {
            fb = reduce_mod_p(zb, p);
        } catch (const DomainError&) {
            continue;
        }
        RestrictedConic r;
        try {
            r = restrict_to_line(fb, P0, P1);
        } catch (const DomainError&) {
            continue;
        }
        const Vars st = line_vars();
        const ZPoly s = ZPoly::variable(st, IntegerRing{}, 0), t = ZPoly::variable(st, IntegerRing{}, 1);
        std::vector<ZPoly> images;
        for (std::size_t i = 0; i < 3; ++i) images.push_back(BigInt(a[i]) * s + BigInt(bb[i]) * t);
        const auto zc = zb.form().coefficients();
        const auto rcs = r.form.coefficients();
        for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(reduce_mod_p(substitute(zc[i], images), p), rcs[i]);
    }
}

TEST(Bundle, NormalFormIdentityChain) {
    const FFElem g = F4.generator();
    const FPoly zero = p2("0", F4), one = p2("1", F4);
    const auto b = FBundle(TernaryQuadraticForm<FPoly>{g * one, (g * g) * one, one, zero, one, zero});
    const auto nf = normalize_at_point(b, fixtures::point({1, 0, 0}, F4));
    EXPECT_EQ(nf.a, FRational(dehomogenize(g * one, 0)));
    EXPECT_EQ(nf.b, FRational(dehomogenize((g * g) * one, 0)));
    for (const auto& s : nf.chain) {
        EXPECT_EQ(s.scalar, nf.a.constant_like(F4.one()));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                EXPECT_EQ(s.T[i][j], nf.a.constant_like(i == j ? F4.one() : F4.zero())) << s.name;
    }
}

TEST(Bundle, NormalFormReplaysAndIsRegular) {
    const auto b = x2();
    for (const auto& P : projective_plane_points(F2)) {
        const auto cls = classify(fiber_at(b, P));
        if (!cls.is_smooth() && !cls.is_cross()) {
            EXPECT_THROW(normalize_at_point(b, P), DomainError);
            continue;
        }
        const auto nf = normalize_at_point(b, P);
        const auto q = nf.replay();
        EXPECT_EQ(q.xx, nf.a);
        EXPECT_EQ(q.yy, nf.b);
        EXPECT_TRUE(q.xy.is_zero() && q.yz.is_zero());
        EXPECT_EQ(q.xz, nf.a.constant_like(F2.one()));
        EXPECT_EQ(q.zz, nf.a.constant_like(F2.one()));
        EXPECT_TRUE(nf.a.regular_at(nf.local_point));
        EXPECT_TRUE(nf.b.regular_at(nf.local_point));
        const FRational u = nf.unit();
        EXPECT_TRUE(u.regular_at(nf.local_point));
        EXPECT_FALSE(is_zero(u.value_at(nf.local_point)));
        // b cuts out the discriminant germ
        const FPoly D = discriminant(b).D;
        EXPECT_TRUE(b_associated_to(nf, D, D)) << point_string(P);
    }
}

TEST(Bundle, NormalFormOnLines) {
    // smooth point of u = 0 on the reduction: b is a unit times u
    const auto nf = normalize_at_point(x2(), fixtures::point({0, 1, 1}));
    EXPECT_TRUE(b_associated_to(nf, discriminant(x2()).D, p2("u")));
    // three-line bundle at a point of a = 0 off the other lines
    const auto ehc = fixtures::three_line_instance();
    const auto n2 = normalize_at_point(ehc, fixtures::point({0, 1, 1}));
    EXPECT_TRUE(b_associated_to(n2, discriminant(ehc).D, p2("u")));
    EXPECT_FALSE(b_associated_to(n2, discriminant(ehc).D, p2("w")));
}

TEST(Bundle, NormalFormFallbackBranch) {
    // a_xx and a_zz both vanish at P after the shear: x -> x + z is used
    const FPoly zero = p2("0"), u = p2("u"), v = p2("v"), w = p2("w");
    const auto b = FBundle(TernaryQuadraticForm<FPoly>{u, v, u, zero, w, zero});
    const auto nf = normalize_at_point(b, fixtures::point({0, 1, 1}));
    bool used = false;
    for (const auto& s : nf.chain) used = used || s.name == "x -> x + z";
    EXPECT_TRUE(used);
    const auto q = nf.replay();
    EXPECT_EQ(q.xx, nf.a);
    EXPECT_EQ(q.zz, nf.a.constant_like(F2.one()));
}
