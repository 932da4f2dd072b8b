#include <gtest/gtest.h>

#include <random>

#include "charpair/bundle/fixtures.hpp"
#include "charpair/groebner/curves.hpp"
#include "charpair/poly/parse.hpp"

using namespace charpair;

namespace {

const Vars kXY{"x", "y"};
const Vars kUVW{"u", "v", "w"};

template <class Field>
std::vector<Polynomial<Field>> parse_all(std::initializer_list<const char*> texts, const Vars& vars, const Field& f) {
    std::vector<Polynomial<Field>> out;
    for (const char* t : texts) out.push_back(parse_polynomial(t, vars, f));
    return out;
}

FPoly random_poly(const Vars& vars, const FiniteField& f, std::mt19937_64& rng, int terms, unsigned maxdeg) {
    std::uniform_int_distribution<std::uint64_t> c(0, f.order() - 1);
    std::uniform_int_distribution<unsigned> e(0, maxdeg);
    std::vector<FPoly::Term> out;
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        for (std::size_t j = 0; j < vars.size(); ++j) m.e[j] = static_cast<std::uint16_t>(e(rng));
        out.push_back({m, f.element(c(rng))});
    }
    return FPoly(vars, f, std::move(out));
}

// Every S-polynomial of the basis reduces to zero against it.
template <class Field>
void expect_s_pairs_reduce(const GroebnerBasis<Field>& g) {
    const auto polys = g.polynomials();
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            EXPECT_TRUE(g.normal_form(s_polynomial(polys[i], polys[j], g.order())).is_zero());
}

}  // namespace

TEST(Buchberger, SmallExamples) {
    const FiniteField f3 = FiniteField::get(3);
    const auto g = buchberger(Ideal<FiniteField>(parse_all({"x^2", "y^2"}, kXY, f3)));
    EXPECT_EQ(g.polynomials(), parse_all({"y^2", "x^2"}, kXY, f3));
    const auto h = buchberger(Ideal<FiniteField>(parse_all({"x+y", "y"}, kXY, f3)));
    EXPECT_EQ(h.polynomials(), parse_all({"y", "x"}, kXY, f3));
}

TEST(Buchberger, RandomIdealsSatisfyCriterion) {
    std::mt19937_64 rng(1);
    const FiniteField f5 = FiniteField::get(5);
    for (int i = 0; i < 25; ++i) {
        const FPoly a = random_poly(kXY, f5, rng, 3, 3), b = random_poly(kXY, f5, rng, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        for (const auto& ord : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
            const auto g = buchberger(Ideal<FiniteField>({a, b}), ord);
            expect_s_pairs_reduce(g);
            EXPECT_TRUE(g.contains(a));
            EXPECT_TRUE(g.contains(b));
            // membership of an explicit combination
            const FPoly h1 = random_poly(kXY, f5, rng, 2, 2), h2 = random_poly(kXY, f5, rng, 2, 2);
            EXPECT_TRUE(g.contains(h1 * a + h2 * b));
        }
    }
}

TEST(Buchberger, NormalForm) {
    const FiniteField f2 = FiniteField::get(2);
    const auto g = buchberger(Ideal<FiniteField>(parse_all({"x"}, kXY, f2)));
    EXPECT_TRUE(normal_form(parse_polynomial("x^2", kXY, f2), g).is_zero());
    const RationalField qq;
    const auto gq = buchberger(Ideal<RationalField>(parse_all({"x^2 - y"}, kXY, qq)));
    EXPECT_EQ(normal_form(parse_polynomial("x^2 + y", kXY, qq), gq), parse_polynomial("2*y", kXY, qq));
    // idempotent and linear
    std::mt19937_64 rng(4);
    const FiniteField f7 = FiniteField::get(7);
    const auto g7 = buchberger(Ideal<FiniteField>(parse_all({"x^2 + 3*x*y + 1", "y^3 - x"}, kXY, f7)));
    for (int i = 0; i < 10; ++i) {
        const FPoly a = random_poly(kXY, f7, rng, 4, 4), b = random_poly(kXY, f7, rng, 4, 4);
        EXPECT_EQ(g7.normal_form(g7.normal_form(a)), g7.normal_form(a));
        EXPECT_EQ(g7.normal_form(a + b), g7.normal_form(a) + g7.normal_form(b));
    }
}

TEST(Buchberger, BudgetExhaustion) {
    const FiniteField f7 = FiniteField::get(7);
    GroebnerOptions opt;
    opt.budget = 1;
    EXPECT_THROW(buchberger(Ideal<FiniteField>(parse_all({"x^3 + y^2 + 1", "x*y^2 - x - 1", "x^2*y - y^3"}, kXY, f7)),
                            MonomialOrder::grevlex(), opt),
                 ResourceError);
}

TEST(QuotientLength, Examples) {
    const FiniteField f3 = FiniteField::get(3);
    EXPECT_EQ(quotient_length(Ideal<FiniteField>(parse_all({"x^2", "y^2"}, kXY, f3))), Length::finite(4));
    EXPECT_TRUE(quotient_length(Ideal<FiniteField>(parse_all({"x"}, kXY, f3))).infinite);
    // order independence
    const auto I = Ideal<FiniteField>(parse_all({"x^3 + y^2 + 1", "x*y - 2"}, kXY, f3));
    EXPECT_EQ(quotient_length(buchberger(I, MonomialOrder::grevlex())), quotient_length(buchberger(I, MonomialOrder::lex())));
}

TEST(Saturation, Examples) {
    const FiniteField f5 = FiniteField::get(5);
    const FPoly x = parse_polynomial("x", kXY, f5);
    const auto s = saturate(Ideal<FiniteField>(parse_all({"x*y"}, kXY, f5)), x);
    EXPECT_EQ(buchberger(s).polynomials(), parse_all({"y"}, kXY, f5));
    // (x^2, xy) = x*(x, y): one quotient step gives (x, y), saturation gives (1)
    const Ideal<FiniteField> I(parse_all({"x^2", "x*y"}, kXY, f5));
    EXPECT_EQ(buchberger(ideal_quotient(I, x)).polynomials(), parse_all({"y", "x"}, kXY, f5));
    EXPECT_TRUE(buchberger(saturate(I, x)).is_unit());
    const auto same = saturate(I, parse_polynomial("1", kXY, f5));
    EXPECT_EQ(buchberger(same).polynomials(), buchberger(I).polynomials());
}

TEST(SingularScheme, Examples) {
    const FiniteField f5 = FiniteField::get(5), f2 = FiniteField::get(2);
    EXPECT_EQ(singular_scheme_length(parse_polynomial("u*v*w", kUVW, f5)), Length::finite(3));
    EXPECT_EQ(singular_scheme_length(parse_polynomial("u*v*w", kUVW, f2)), Length::finite(3));
    EXPECT_TRUE(singular_scheme_length(parse_polynomial("u^2*v", kUVW, f5)).infinite);
    EXPECT_THROW(singular_scheme_length(FPoly(kUVW, f5)), DomainError);
    // cusp v^2 w = u^3: one singular point of length 2 (char 5)
    EXPECT_EQ(singular_scheme_length(parse_polynomial("v^2*w - u^3", kUVW, f5)), Length::finite(2));
}

TEST(SingularScheme, IrreducibilityCertificate) {
    const FiniteField f2 = FiniteField::get(2), f5 = FiniteField::get(5);
    const auto e = irreducibility_certificate(parse_polynomial("(v^2+u*v+v*w+w^2)*u + v^3", kUVW, f2));
    EXPECT_EQ(e.verdict, IrreducibilityCertificate::Verdict::Irreducible);
    EXPECT_EQ(e.evidence.total, Length::finite(0));
    const auto c = irreducibility_certificate(parse_polynomial("u*v*w", kUVW, f5));
    EXPECT_EQ(c.verdict, IrreducibilityCertificate::Verdict::Inconclusive);
    EXPECT_EQ(c.evidence.total, Length::finite(3));
    EXPECT_THROW(irreducibility_certificate(parse_polynomial("u*v", kUVW, f5)), DomainError);
}

TEST(Intersection, Multiplicities) {
    const FiniteField f2 = FiniteField::get(2), f4 = FiniteField::get(2, 2);
    const FPoly E = parse_polynomial("(v^2+u*v+v*w+w^2)*u + v^3", kUVW, f2);
    EXPECT_EQ(intersection_multiplicity(E, parse_polynomial("u", kUVW, f2), {f2.zero(), f2.zero(), f2.one()}), 3);
    // E and w = 0 meet at (1:0:0) and at (1:r:0) with r^2 + r + 1 = 0
    const FPoly E4 = base_change(E, FieldEmbedding(f2, f4)), W4 = parse_polynomial("w", kUVW, f4);
    EXPECT_EQ(intersection_multiplicity(E4, W4, {f4.one(), f4.zero(), f4.zero()}), 1);
    const FFElem r = f4.generator();
    EXPECT_EQ(intersection_multiplicity(E4, W4, {f4.one(), r, f4.zero()}), 1);
    EXPECT_EQ(intersection_multiplicity(W4, E4, {f4.one(), r * r, f4.zero()}), 1);
    // two lines
    EXPECT_EQ(intersection_multiplicity(parse_polynomial("u", kUVW, f2), parse_polynomial("v", kUVW, f2),
                                        {f2.zero(), f2.zero(), f2.one()}),
              1);
    // general route agrees with the line route: E against the conic u*w + v^2 at (0:0:1)
    const FiniteField f3 = FiniteField::get(3);
    const FPoly c1 = parse_polynomial("v^2 - u*w", kUVW, f3), c2 = parse_polynomial("v^2 - u*w + u^2", kUVW, f3);
    EXPECT_EQ(intersection_multiplicity(c1, c2, {f3.zero(), f3.zero(), f3.one()}), 4);
    EXPECT_THROW(intersection_multiplicity(c1, c2, {f3.one(), f3.zero(), f3.zero()}), DomainError);
}

TEST(TangentCone, Examples) {
    const FiniteField f2 = FiniteField::get(2);
    const FPoly xy = parse_polynomial("x*y + x^3", kXY, f2);
    EXPECT_EQ(tangent_cone_at_origin(xy), parse_polynomial("x*y", kXY, f2));
    const FPoly F = parse_polynomial("u*w*(u+w)*(v^3 + u*(v^2+u*v+v*w+w^2))", kUVW, f2);
    const FPoly tc = tangent_cone(F, {f2.zero(), f2.one(), f2.zero()});
    EXPECT_EQ(tc, parse_polynomial("u*w*(u+w)", Vars{"u", "w"}, f2));
    const FPoly E = parse_polynomial("(v^2+u*v+v*w+w^2)*u + v^3", kUVW, f2);
    EXPECT_THROW(tangent_cone(E, {f2.zero(), f2.one(), f2.zero()}), DomainError);
}

TEST(Smoothness, ConeAndMinorGcd) {
    const RationalField qq;
    const Vars xyz{"x", "y", "z"};
    const auto cert = smoothness_certificate(parse_polynomial("x^2 + y^2 + z^2", xyz, qq), {});
    EXPECT_FALSE(cert.smooth);
    const auto sm = smoothness_certificate(parse_polynomial("x^2 + y^2 + z^2", xyz, qq), {{0, 1, 2}});
    EXPECT_TRUE(sm.smooth);
    EXPECT_EQ(sm.charts.size(), 3u);

    const IntegerRing zz;
    EXPECT_EQ(minor_gcd(parse_all({"u", "v"}, kUVW, zz)), 1);
    EXPECT_EQ(minor_gcd(parse_all({"2*u", "2*v"}, kUVW, zz)), 4);
    // minors of the first two rows are 0, 2, 4; the first and third rows give det [[1,0],[0,1]] = 1
    EXPECT_EQ(minor_gcd(parse_all({"u+2*v", "2*u+4*v+2*w"}, kUVW, zz)), 2);
    EXPECT_EQ(minor_gcd(parse_all({"u+2*v", "2*u+4*v+2*w", "w"}, kUVW, zz)), 1);
    EXPECT_THROW(minor_gcd(parse_all({"u"}, kUVW, zz)), DomainError);
}

TEST(Smoothness, ThreefoldOverRationals) {
    const auto b = from_symmetric_matrix(fixtures::matrix_s()).bundle;
    const QPoly f = to_rational(b.equation(total_vars()));
    const auto cert = smoothness_certificate(f, {{0, 1, 2}, {3, 4, 5}});
    EXPECT_TRUE(cert.smooth);
    ASSERT_EQ(cert.charts.size(), 9u);
    for (const auto& c : cert.charts) EXPECT_TRUE(c.empty) << c.chart;
    // mod 2 the same equation is singular
    const auto mod2 = smoothness_certificate(reduce_mod_p(b.equation(total_vars()), 2), {{0, 1, 2}, {3, 4, 5}});
    EXPECT_FALSE(mod2.smooth);
}

TEST(Points, GeometricCountAndSearch) {
    const FiniteField f2 = FiniteField::get(2);
    // x^2 + x + 1 = 0, y^3 + y + 1 = 0: 2 * 3 points over F_64
    const Ideal<FiniteField> I(parse_all({"x^2 + x + 1", "y^3 + y + 1"}, kXY, f2));
    EXPECT_EQ(geometric_point_count(I), Length::finite(6));
    const auto ps = find_points(I, 12);
    EXPECT_TRUE(ps.complete);
    EXPECT_EQ(ps.points.size(), 6u);
    EXPECT_EQ(ps.points.front().field.degree(), 6u);
    // a double point counts once
    const Ideal<FiniteField> J(parse_all({"x^2", "y + x"}, kXY, f2));
    EXPECT_EQ(quotient_length(J), Length::finite(2));
    EXPECT_EQ(geometric_point_count(J), Length::finite(1));
    const auto small = find_points(I, 3);
    EXPECT_FALSE(small.complete);
}
