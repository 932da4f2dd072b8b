#pragma once

// Randomized property suites shared by the unit tests and the acceptance runner.

#include <random>
#include <string>

#include "charpair/artinschreier/artin_schreier.hpp"
#include "charpair/blowup/resolution.hpp"
#include "charpair/bundle/fixtures.hpp"

namespace charpair::properties {

struct SuiteResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    std::string first_failure;

    bool passed() const { return trials > 0 && failures == 0; }
    void record(bool ok, const std::string& what) {
        ++trials;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
};

namespace detail {

inline FPoly random_form(const FiniteField& K, unsigned d, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> c(0, K.order() - 1);
    FPoly out(base_vars(), K);
    for (unsigned i = 0; i <= d; ++i)
        for (unsigned j = 0; i + j <= d; ++j)
            out += FPoly::monomial(base_vars(), K, Monomial::from({i, j, d - i - j}), K.element(c(rng)));
    return out;
}

inline FBundle random_bundle(const FiniteField& K, unsigned d, std::mt19937_64& rng) {
    for (;;) {
        std::array<FPoly, 6> c;
        for (auto& f : c) f = random_form(K, d, rng);
        bool any = false;
        for (auto& f : c) any = any || !f.is_zero();
        if (any) return FBundle::from_list(c);
    }
}

inline Matrix3<FFElem> random_invertible(const FiniteField& K, std::mt19937_64& rng, FFElem& det) {
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

inline FRational random_rational(std::mt19937_64& rng) {
    const FiniteField F2 = FiniteField::get(2);
    std::uniform_int_distribution<int> deg(0, 5), bit(0, 1);
    auto random_poly = [&](int d) {
        FPoly out(affine_line_vars(), F2);
        for (int i = 0; i <= d; ++i)
            if (bit(rng) || i == d)
                out += FPoly::monomial(affine_line_vars(), F2, Monomial::from({static_cast<unsigned>(i)}), F2.one());
        return out;
    };
    return FRational(random_poly(deg(rng)), random_poly(deg(rng)));
}

inline FSeries random_unit(std::mt19937_64& rng, unsigned N, const FiniteField& K) {
    std::uniform_int_distribution<std::uint64_t> d(0, K.order() - 1), nz(1, K.order() - 1);
    FSeries s(K, N);
    for (unsigned deg = 0; deg < N; ++deg)
        for (unsigned j = 0; j <= deg; ++j) s.set(deg - j, j, deg == 0 ? K.element(nz(rng)) : K.element(d(rng)));
    return s;
}

}  // namespace detail

/// D(s * q o T) = s^3 det(T)^2 D(q), alternating F4 (char 2 formula) and F5 (general formula).
inline SuiteResult discriminant_covariance(int trials = 200, std::uint64_t seed = 21) {
    SuiteResult r{"discriminant GL3 covariance"};
    std::mt19937_64 rng(seed);
    const FiniteField F4 = FiniteField::get(2, 2), F5 = FiniteField::get(5);
    for (int t = 0; t < trials; ++t) {
        const FiniteField& K = t % 2 ? F5 : F4;
        const auto b = detail::random_bundle(K, 1 + t % 3 / 2, rng);
        FFElem det;
        const auto T = detail::random_invertible(K, rng, det);
        std::uniform_int_distribution<std::uint64_t> d(1, K.order() - 1);
        const FFElem s = K.element(d(rng));
        const auto lhs = discriminant(b.transform(T, s)).D, rhs = s * s * s * det * det * discriminant(b).D;
        r.record(lhs == rhs, "trial " + std::to_string(t) + ": " + b.to_string());
    }
    return r;
}

/// The general formula over Z reduces mod 2 to the char 2 formula, with generic coefficients.
inline SuiteResult formulas_agree_mod_two() {
    SuiteResult r{"general formula = char 2 formula mod 2"};
    const FiniteField F2 = FiniteField::get(2);
    const Vars a{"axx", "ayy", "azz", "axy", "axz", "ayz"};
    std::array<ZPoly, 6> zc;
    std::array<FPoly, 6> fc;
    for (std::size_t i = 0; i < 6; ++i) {
        zc[i] = ZPoly::variable(a, IntegerRing{}, i);
        fc[i] = FPoly::variable(a, F2, i);
    }
    const auto general = discriminant_formula(TernaryQuadraticForm<ZPoly>::from_list(zc), DiscriminantMode::General);
    const auto char2 = discriminant_formula(TernaryQuadraticForm<FPoly>::from_list(fc), DiscriminantMode::Char2);
    const auto reduced = reduce_mod_p(general, 2);
    r.record(reduced == char2, reduced.to_string() + " vs " + char2.to_string());
    return r;
}

/// reduce(a) and reduce(a + f^2 + f) are equivalent classes.
inline SuiteResult wp_coset_invariance(int trials = 200, std::uint64_t seed = 3) {
    SuiteResult r{"wp-reduction coset invariance"};
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const ArtinSchreierClass a{detail::random_rational(rng)};
        const FRational f = detail::random_rational(rng);
        const auto ra = reduce(a), rb = reduce(a + ArtinSchreierClass{wp(f)});
        r.record(equivalent(ra, rb), ra.to_string() + " vs " + rb.to_string());
    }
    return r;
}

/// A double-line fibre at P forces a tangent cone of degree >= 3 or a squared quadric.
inline SuiteResult tangent_cone_exclusion(int trials = 100, std::uint64_t seed = 17) {
    SuiteResult r{"tangent cone at double-line fibres"};
    std::mt19937_64 rng(seed);
    const FiniteField F4 = FiniteField::get(2, 2);
    const BasePoint P = fixtures::point({0, 0, 1}, F4);
    const Monomial w2 = Monomial::from({0, 0, 2});
    while (r.trials < trials) {
        // off-diagonal coefficients vanish at P, diagonal ones do not all vanish
        std::array<FPoly, 6> c;
        for (auto& f : c) f = detail::random_form(F4, 2, rng);
        for (std::size_t i = 3; i < 6; ++i) c[i] = c[i] - FPoly::monomial(base_vars(), F4, w2, c[i].coeff(w2));
        if (is_zero(c[0].coeff(w2)) && is_zero(c[1].coeff(w2)) && is_zero(c[2].coeff(w2))) continue;
        const FBundle b(TernaryQuadraticForm<FPoly>::from_list(c));
        const FPoly D = discriminant(b).D;
        if (D.is_zero()) continue;
        const auto fibre = classify(fiber_at(b, P));
        if (fibre.is_cross() || fibre.is_smooth()) {
            r.record(false, "fibre at (0:0:1) is not a double line: " + b.to_string());
            continue;
        }
        const FPoly cone = tangent_cone(D, P);
        bool square = true;
        for (const auto& term : cone.terms())
            for (auto e : term.m.e) square = square && e % 2 == 0;
        r.record(cone.total_degree() >= 3 || (cone.total_degree() == 2 && square), "cone " + cone.to_string());
    }
    return r;
}

/// Each blow-up step lowers n by one; the exceptional quadric is a cone until n = 1.
inline SuiteResult recursion_decrement(int trials = 50, std::uint64_t seed = 4) {
    SuiteResult r{"blow-up recursion decrements n"};
    std::mt19937_64 rng(seed);
    const FiniteField F2 = FiniteField::get(2), F4 = FiniteField::get(2, 2);
    for (int t = 0; t < trials; ++t) {
        const unsigned n = 1 + t % 3;
        const FiniteField& K = t % 2 ? F4 : F2;
        const unsigned N = LocalConicModel::default_order(n);
        const LocalConicModel m(n, detail::random_unit(rng, N, K), detail::random_unit(rng, N, K), N);
        const auto chain = resolution_chain(m);
        bool ok = chain.size() == n;
        for (std::size_t i = 0; ok && i < chain.size(); ++i) {
            ok = chain[i].n == n - i &&
                 chain[i].exceptional.kind ==
                     (chain[i].n == 1 ? ExceptionalKind::SmoothQuadric : ExceptionalKind::ConeOneSingular);
        }
        r.record(ok, "model " + std::to_string(t) + " with n = " + std::to_string(n));
    }
    return r;
}

inline std::vector<SuiteResult> all_suites() {
    return {discriminant_covariance(), formulas_agree_mod_two(), wp_coset_invariance(), tangent_cone_exclusion(),
            recursion_decrement()};
}

}  // namespace charpair::properties
