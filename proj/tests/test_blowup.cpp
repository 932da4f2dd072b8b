#include <gtest/gtest.h>

#include <random>

#include "charpair/blowup/resolution.hpp"
#include "charpair/bundle/fixtures.hpp"

using namespace charpair;

namespace {

const FiniteField F2 = FiniteField::get(2);
const FiniteField F4 = FiniteField::get(2, 2);

FPoly pm(const std::string& s, const FiniteField& K = F2) { return parse_polynomial(s, model_vars(), K); }
FPoly p2(const std::string& s, const FiniteField& K = F2) { return parse_polynomial(s, base_vars(), K); }

FBundle x2() { return reduce_mod_p(from_symmetric_matrix(fixtures::matrix_s()).bundle, 2); }

FSeries one(unsigned N, const FiniteField& K = F2) { return FSeries::constant(K, N, K.one()); }

FSeries random_unit(std::mt19937_64& rng, unsigned N, const FiniteField& K = F2) {
    std::uniform_int_distribution<std::uint64_t> d(0, K.order() - 1), nz(1, K.order() - 1);
    FSeries s(K, N);
    for (unsigned deg = 0; deg < N; ++deg)
        for (unsigned j = 0; j <= deg; ++j) s.set(deg - j, j, deg == 0 ? K.element(nz(rng)) : K.element(d(rng)));
    return s;
}

FPoly random_form(const FiniteField& K, unsigned d, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> c(0, K.order() - 1);
    FPoly out(base_vars(), K);
    for (unsigned i = 0; i <= d; ++i)
        for (unsigned j = 0; i + j <= d; ++j)
            out += FPoly::monomial(base_vars(), K, Monomial::from({i, j, d - i - j}), K.element(c(rng)));
    return out;
}

/// Geometric singular points of the total space over F_{2^k} found by evaluating at every point.
std::size_t brute_force_singular(const FBundle& b, const FiniteField& K) {
    const FPoly f = b.equation(total_vars());
    const FieldEmbedding e(F2, K);
    const FPoly fk = base_change(f, e);
    std::vector<FPoly> partials;
    for (std::size_t i = 0; i < 6; ++i) partials.push_back(partial_derivative(fk, i));
    const auto pts = projective_plane_points(K);
    std::size_t count = 0;
    for (const auto& P : pts)
        for (const auto& X : pts) {
            std::vector<FFElem> pt(P);
            pt.insert(pt.end(), X.begin(), X.end());
            if (!is_zero(evaluate(fk, pt))) continue;
            if (std::all_of(partials.begin(), partials.end(), [&](const FPoly& g) { return is_zero(evaluate(g, pt)); })) ++count;
        }
    return count;
}

}  // namespace

TEST(Blowup, ChartsOfModelN1AreSmooth) {
    const LocalConicModel m(1, one(6), one(6), 6);
    const auto charts = blowup_charts(m.hypersurface());
    ASSERT_EQ(charts.size(), 4u);
    for (const auto& c : charts) {
        EXPECT_EQ(c.multiplicity, 2u);
        const auto sp = chart_singular_points(c.strict);
        EXPECT_TRUE(sp.complete);
        EXPECT_TRUE(sp.points.empty()) << c.substitution;
    }
    EXPECT_EQ(charts[3].substitution, "(x,y,u,v) -> (xv,yv,uv,v)");
}

TEST(Blowup, ChartsOfModelN2) {
    const LocalConicModel m(2, one(8), one(8), 8);
    const auto charts = blowup_charts(m.hypersurface());
    EXPECT_EQ(charts[3].strict, pm("x^2 + x*y + y^2 + u^2 + u*v"));
    EXPECT_TRUE(chart_singular_points(charts[0].strict).points.empty());
    const auto sp = chart_singular_points(charts[3].strict);
    ASSERT_EQ(sp.points.size(), 1u);
    for (const auto& c : sp.points[0].coords) EXPECT_TRUE(is_zero(c));
}

TEST(Blowup, TotalTransformIdentity) {
    std::mt19937_64 rng(2);
    for (unsigned n = 1; n <= 3; ++n) {
        const unsigned N = LocalConicModel::default_order(n);
        const LocalConicModel m(n, random_unit(rng, N), random_unit(rng, N), N);
        for (const auto& c : blowup_charts(m.hypersurface())) {
            const FPoly e = FPoly::variable(model_vars(), F2, c.exceptional);
            EXPECT_EQ(c.total, e.pow(c.multiplicity) * c.strict);
            EXPECT_FALSE(divides(e, c.strict));
        }
    }
    const FiniteField F3 = FiniteField::get(3);
    const auto cone = blowup_charts(AffineHypersurface(pm("x^2 + y^2", F3)));
    for (const auto& c : cone) EXPECT_EQ(c.multiplicity, 2u);
    EXPECT_EQ(cone[0].strict, pm("1 + y^2", F3));
    EXPECT_TRUE(chart_singular_points(cone[0].strict).points.empty());
    EXPECT_TRUE(chart_singular_points(cone[1].strict).points.empty());
    EXPECT_THROW(blowup_charts(AffineHypersurface(pm("x^2 + 1"))), DomainError);
}

TEST(Blowup, RecursionExamples) {
    const LocalConicModel m(2, one(8), one(8), 8);
    const auto step = recurse_normal_form(m);
    ASSERT_TRUE(step.next.has_value());
    EXPECT_EQ(step.next->n, 1u);
    EXPECT_EQ(step.next->alpha, one(8));
    EXPECT_EQ(step.next->beta, one(8));
    EXPECT_FALSE(recurse_normal_form(*step.next).next.has_value());
    EXPECT_THROW(LocalConicModel(3, one(6), one(6), 6), PrecisionError);
    EXPECT_THROW(LocalConicModel(1, FSeries(F2, 6), one(6), 6), DomainError);
}

TEST(Blowup, RecursionMatchesChartFourPullback) {
    // alpha' and beta' are the chart-4 pullbacks alpha(uv, v), beta(uv, v)
    std::mt19937_64 rng(9);
    for (int it = 0; it < 20; ++it) {
        const unsigned n = 2 + it % 2;
        const unsigned N = LocalConicModel::default_order(n);
        const LocalConicModel m(n, random_unit(rng, N), random_unit(rng, N), N);
        const auto next = recurse_normal_form(m).next;
        ASSERT_TRUE(next.has_value());
        EXPECT_EQ(next->alpha, blowup_detail::chart4_pullback(m.alpha));
        EXPECT_EQ(next->beta, blowup_detail::chart4_pullback(m.beta));
    }
}

TEST(Blowup, RecursionDecrementsExponent) {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 50; ++it) {
        const unsigned n = 1 + it % 3;
        const FiniteField& K = it % 2 ? F4 : F2;
        const unsigned N = LocalConicModel::default_order(n);
        const LocalConicModel m(n, random_unit(rng, N, K), random_unit(rng, N, K), N);
        const auto chain = resolution_chain(m);
        ASSERT_EQ(chain.size(), n);
        for (std::size_t i = 0; i < chain.size(); ++i) {
            EXPECT_EQ(chain[i].n, n - i);
            EXPECT_EQ(chain[i].exceptional.kind,
                      chain[i].n == 1 ? ExceptionalKind::SmoothQuadric : ExceptionalKind::ConeOneSingular);
        }
        EXPECT_EQ(exceptional_quadric(m).kind, n == 1 ? ExceptionalKind::SmoothQuadric : ExceptionalKind::ConeOneSingular);
    }
}

TEST(Blowup, ExceptionalQuadricExamples) {
    const auto e1 = exceptional_quadric(LocalConicModel(1, one(6), one(6), 6));
    EXPECT_EQ(e1.form, pm("x^2 + x*y + y^2 + u^2 + u*v"));
    EXPECT_EQ(e1.kind, ExceptionalKind::SmoothQuadric);
    const auto e3 = exceptional_quadric(LocalConicModel(3, one(10), one(10), 10));
    EXPECT_EQ(e3.form, pm("x^2 + x*y + y^2 + u^2"));
    EXPECT_EQ(e3.kind, ExceptionalKind::ConeOneSingular);
    const auto e2 = exceptional_quadric(LocalConicModel(2, one(8), one(8), 8));
    EXPECT_EQ(e2.rank, 3u);
}

TEST(Blowup, LocalModelsOfReduction) {
    const auto b = x2();
    const FPoly E = p2(fixtures::elliptic_text());
    const auto tangential = local_model_at(b, fixtures::point({0, 0, 1}), {p2("u"), E});
    EXPECT_EQ(tangential.model.n, 3u);
    EXPECT_EQ(tangential.model.N, 10u);
    const auto chain = resolution_chain(tangential.model);
    ASSERT_EQ(chain.size(), 3u);
    EXPECT_EQ(chain[0].exceptional.kind, ExceptionalKind::ConeOneSingular);
    EXPECT_EQ(chain[1].exceptional.kind, ExceptionalKind::ConeOneSingular);
    EXPECT_EQ(chain[2].exceptional.kind, ExceptionalKind::SmoothQuadric);

    int transverse = 0;
    for (const auto* line : {"w", "u + w"}) {
        bool complete = false;
        for (const auto& P : plane_points({p2(line), E}, 12, &complete)) {
            const auto m = local_model_at(b, P, {p2(line), E});
            EXPECT_EQ(m.model.n, 1u) << point_string(P);
            EXPECT_EQ(intersection_multiplicity(base_change(p2(line), FieldEmbedding(F2, field_of(P[0]))),
                                                base_change(E, FieldEmbedding(F2, field_of(P[0]))), P),
                      1);
            ++transverse;
        }
        EXPECT_TRUE(complete);
    }
    EXPECT_EQ(transverse, 6);

    EXPECT_THROW(local_model_at(b, fixtures::point({0, 1, 0}), {p2("u"), p2("w")}), DomainError);
    EXPECT_THROW(local_model_at(b, fixtures::point({1, 0, 0}), {p2("u"), E}), DomainError);
}

TEST(Blowup, SyntheticModelRoundTrip) {
    // x^2 + xy + y^2 + u (u w + v^2) z^2 in the chart w = 1
    const FPoly w3 = p2("w^3"), zero = p2("0");
    const FBundle b(TernaryQuadraticForm<FPoly>{w3, w3, p2("u*(u*w + v^2)"), w3, zero, zero});
    const auto m = local_model_at(b, fixtures::point({0, 0, 1}), {p2("u"), p2("u*w + v^2")});
    EXPECT_EQ(m.model.n, 2u);
    EXPECT_EQ(m.model.alpha, one(m.model.N));
    EXPECT_EQ(m.model.beta, one(m.model.N));
    EXPECT_EQ(resolution_chain(m.model).size(), 2u);
}

TEST(Blowup, TangentConeAtDoubleLineFibres) {
    std::mt19937_64 rng(17);
    const BasePoint P = fixtures::point({0, 0, 1}, F4);
    const Monomial w2 = Monomial::from({0, 0, 2});
    int tested = 0;
    while (tested < 100) {
        std::array<FPoly, 6> c;
        for (auto& f : c) f = random_form(F4, 2, rng);
        for (std::size_t i = 3; i < 6; ++i) c[i] = c[i] - FPoly::monomial(base_vars(), F4, w2, c[i].coeff(w2));
        if (is_zero(c[0].coeff(w2)) && is_zero(c[1].coeff(w2)) && is_zero(c[2].coeff(w2))) continue;
        const FBundle b(TernaryQuadraticForm<FPoly>::from_list(c));
        const FPoly D = discriminant(b).D;
        if (D.is_zero()) continue;
        ASSERT_FALSE(classify(fiber_at(b, P)).is_cross());
        ASSERT_FALSE(classify(fiber_at(b, P)).is_smooth());
        const FPoly cone = tangent_cone(D, P);
        bool square = true;
        for (const auto& t : cone.terms())
            for (auto e : t.m.e) square = square && e % 2 == 0;
        EXPECT_TRUE(cone.total_degree() >= 3 || (cone.total_degree() == 2 && square)) << cone.to_string();
        ++tested;
    }
}

TEST(Blowup, SingularCensusMatchesBruteForce) {
    const auto b = x2();
    const auto census = singular_points(b.equation(total_vars()), {{0, 1, 2}, {3, 4, 5}}, 12);
    EXPECT_TRUE(census.complete);
    EXPECT_EQ(census.geometric_count, 7u);
    const std::size_t over2 = brute_force_singular(b, F2), over4 = brute_force_singular(b, F4),
                      over8 = brute_force_singular(b, FiniteField::get(2, 3));
    EXPECT_EQ(over2, 2u);
    EXPECT_EQ(over4 + over8 - over2, 7u);
}

TEST(Blowup, ResolutionReportOfReduction) {
    const auto b = x2();
    const auto disc = with_factorization(discriminant(b, DiscriminantMode::Char2), fixtures::mod2_components());
    const auto r = resolution_report(b, disc);
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(r.flags.empty());
    EXPECT_EQ(r.census_count, 7u);
    for (auto k : {StratumKind::OffDiscriminant, StratumKind::SmoothDiscriminant, StratumKind::TriplePoint}) {
        ASSERT_NE(r.stratum(k), nullptr);
        EXPECT_TRUE(r.stratum(k)->total_space_smooth) << to_string(k);
    }
    ASSERT_EQ(r.stratum(StratumKind::TriplePoint)->points.size(), 1u);
    EXPECT_EQ(point_string(r.stratum(StratumKind::TriplePoint)->points[0].point), "(0:1:0)");
    const auto* tr = r.stratum(StratumKind::Transverse);
    EXPECT_EQ(tr->points.size(), 6u);
    EXPECT_EQ(tr->singular_points, 6u);
    for (const auto& a : tr->points) {
        ASSERT_EQ(a.chain.size(), 1u);
        EXPECT_EQ(a.chain[0].exceptional.kind, ExceptionalKind::SmoothQuadric);
    }
    const auto* tg = r.stratum(StratumKind::Tangential);
    ASSERT_EQ(tg->points.size(), 1u);
    EXPECT_EQ(point_string(tg->points[0].point), "(0:0:1)");
    EXPECT_EQ(tg->points[0].contact, 3);
    ASSERT_EQ(tg->points[0].chain.size(), 3u);
    EXPECT_EQ(r.stratum(StratumKind::Rejected), nullptr);
}

TEST(Blowup, ResolutionReportEdgeCases) {
    // constant discriminant
    const FPoly one2 = p2("1"), zero = p2("0");
    const FBundle smooth(TernaryQuadraticForm<FPoly>{zero, one2, one2, zero, one2, zero});
    const auto r = resolution_report(smooth, discriminant(smooth));
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(r.strata.empty());

    // a claimed discriminant with a transverse crossing at the double-line point (0:1:0)
    const auto b = x2();
    auto claimed = discriminant(b, DiscriminantMode::Char2);
    claimed.components = {{"w", p2("w"), 1}, {"u+w", p2("u + w"), 1}, {"E", p2(fixtures::elliptic_text()), 1}};
    claimed.D = p2("w") * p2("u + w") * p2(fixtures::elliptic_text());
    const auto bad = resolution_report(b, claimed);
    EXPECT_FALSE(bad.ok);
    ASSERT_NE(bad.stratum(StratumKind::Rejected), nullptr);
    EXPECT_NE(bad.stratum(StratumKind::Rejected)->note.find("two distinct lines"), std::string::npos);
}
