#pragma once

// Blow-ups of A^4 at the origin and the local models
// x^2 + xy + alpha y^2 + beta u (u + v^n) = 0 with alpha, beta unit series.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/groebner/curves.hpp"
#include "charpair/poly/series.hpp"
#include "charpair/quadform/ternary.hpp"

namespace charpair {

inline const Vars& model_vars() {
    static const Vars v{"x", "y", "u", "v"};
    return v;
}

/// A hypersurface in A^4 through the origin. order > 0 means the equation
/// comes from truncated series and is meaningful modulo degree `order`.
struct AffineHypersurface {
    FPoly equation;
    unsigned order = 0;

    AffineHypersurface() = default;
    explicit AffineHypersurface(FPoly f, unsigned N = 0) : equation(std::move(f)), order(N) {
        if (equation.is_zero()) throw DomainError("hypersurface equation is zero");
        for (const auto& name : equation.vars().names())
            if (model_vars().index(name) < 0) throw DomainError("hypersurface variable " + name + " is not one of x,y,u,v");
    }
};

/// The local model with exponent n, units alpha and beta, truncation order N.
struct LocalConicModel {
    unsigned n = 1;
    FSeries alpha, beta;
    unsigned N = 0;

    LocalConicModel() = default;
    LocalConicModel(unsigned exponent, FSeries a, FSeries b, unsigned order)
        : n(exponent), alpha(std::move(a)), beta(std::move(b)), N(order) {
        if (n == 0) throw DomainError("model exponent must be at least 1");
        if (N <= 2 * n) throw PrecisionError("truncation order " + std::to_string(N) + " must exceed 2n = " + std::to_string(2 * n));
        if (alpha.order() < N || beta.order() < N) throw PrecisionError("model series known to lower order than N");
        alpha = alpha.truncated(N).renamed("u", "v");
        beta = beta.truncated(N).renamed("u", "v");
        if (!alpha.is_unit() || !beta.is_unit()) throw DomainError("alpha and beta must be units");
    }

    const FiniteField& field() const { return alpha.field(); }
    static unsigned default_order(unsigned n) { return 2 * n + 4; }

    /// x^2 + xy + alpha y^2 + beta u(u + v^n) with alpha, beta cut at degree N.
    AffineHypersurface hypersurface() const {
        const Vars& V = model_vars();
        const FiniteField K = field();
        auto var = [&](std::size_t i) { return FPoly::variable(V, K, i); };
        const FPoly x = var(0), y = var(1), u = var(2), v = var(3);
        return AffineHypersurface(x * x + x * y + truncation(alpha) * y * y + truncation(beta) * u * (u + v.pow(n)), N);
    }

    /// The series s as a polynomial in (u, v) of degree < its order.
    static FPoly truncation(const FSeries& s) {
        const Vars& V = model_vars();
        FPoly out(V, s.field());
        for (unsigned d = 0; d < s.order(); ++d)
            for (unsigned j = 0; j <= d; ++j)
                if (!is_zero(s.coeff(d - j, j)))
                    out += FPoly::monomial(V, s.field(), Monomial::from({0, 0, d - j, j}), s.coeff(d - j, j));
        return out;
    }
};

struct ChartTransform {
    unsigned index = 0;  // 1..4
    std::string substitution;
    std::string exceptional;
    unsigned multiplicity = 0;
    FPoly total, strict;
};

/// The four standard charts of the blow-up of A^4 at the origin.
inline std::vector<ChartTransform> blowup_charts(const AffineHypersurface& h) {
    const FPoly f = rebase(h.equation, model_vars());
    const Vars& V = model_vars();
    const FiniteField K = f.ring();
    if (!is_zero(f.constant_value())) throw DomainError("hypersurface does not pass through the origin");
    const unsigned m = static_cast<unsigned>(f.min_degree());
    std::vector<ChartTransform> out;
    for (std::size_t e = 0; e < 4; ++e) {
        ChartTransform c;
        c.index = static_cast<unsigned>(e + 1);
        c.exceptional = V[e];
        c.multiplicity = m;
        std::vector<FPoly> images;
        std::string image_text;
        for (std::size_t i = 0; i < 4; ++i) {
            const FPoly xi = FPoly::variable(V, K, i);
            images.push_back(i == e ? xi : xi * FPoly::variable(V, K, e));
            image_text += (i ? "," : "") + (i == e ? V[i] : V[i] + V[e]);
        }
        c.substitution = "(x,y,u,v) -> (" + image_text + ")";
        c.total = substitute(f, images);
        std::vector<FPoly::Term> terms;
        for (const auto& t : c.total.terms()) {
            if (t.m.e[e] < m) throw DomainError("total transform not divisible by the exceptional power (internal error)");
            Monomial q = t.m;
            q.e[e] -= m;
            terms.push_back({q, t.c});
        }
        c.strict = FPoly(V, K, std::move(terms));
        out.push_back(std::move(c));
    }
    return out;
}

struct ChartPointSearch {
    std::vector<FieldPoint> points;
    std::uint64_t expected = 0;
    bool complete = false;
};

/// Points where an affine equation and all its partials vanish, over F_{2^k}, k <= k_max.
inline ChartPointSearch chart_singular_points(const FPoly& f, unsigned k_max = 12, const GroebnerOptions& opt = {}) {
    std::vector<FPoly> gens{f};
    for (std::size_t i = 0; i < f.vars().size(); ++i) gens.push_back(partial_derivative(f, i));
    const auto ps = find_points(Ideal<FiniteField>(f.vars(), f.ring(), std::move(gens)), k_max, opt);
    return {ps.points, ps.expected, ps.complete};
}

namespace blowup_detail {

/// s(U V, V) for a series s in (u, v).
inline FSeries chart4_pullback(const FSeries& s) {
    const FiniteField K = s.field();
    const unsigned N = s.order();
    return s.compose(FSeries::u(K, N) * FSeries::v(K, N), FSeries::v(K, N));
}

/// s / (u (u + v^n)), exact in the series ring.
inline FSeries divide_by_branches(const FSeries& s, unsigned n) {
    const FiniteField K = s.field();
    const FSeries g = s.divide_by_monomial(1, 0);
    const unsigned M = g.order();
    const FSeries U = FSeries::u(K, M), V = FSeries::v(K, M);
    // in coordinates (w, v) with w = u + v^n, u = w + v^n
    const FSeries in_w = g.compose(U + V.pow(n), V).divide_by_monomial(1, 0);
    const unsigned M2 = in_w.order();
    return in_w.compose(FSeries::u(K, M2) + FSeries::v(K, M2).pow(n), FSeries::v(K, M2));
}

/// Series of a polynomial in model_vars() involving only u, v.
inline FSeries uv_series(const FPoly& f, unsigned order) {
    const Vars uv{"u", "v"};
    return FSeries::from_polynomial(rebase(f, uv), order);
}

}  // namespace blowup_detail

struct RecursionStep {
    std::optional<LocalConicModel> next;  // empty: the blow-up is smooth
    ChartTransform chart4;
};

/// One blow-up: SMOOTH for n = 1, otherwise the model read off the chart-4
/// strict transform x^2 + xy + alpha' y^2 + beta' u (u + v^(n-1)).
inline RecursionStep recurse_normal_form(const LocalConicModel& m) {
    RecursionStep out;
    const unsigned N = m.N;
    const auto charts = blowup_charts(m.hypersurface());
    out.chart4 = charts[3];
    if (m.n == 1) return out;

    const FPoly& s = out.chart4.strict;
    const Vars& V = model_vars();
    const FiniteField K = m.field();
    FPoly rest(V, K), ycoef(V, K);
    for (const auto& t : s.terms()) {
        const unsigned ex = t.m.e[0], ey = t.m.e[1];
        if (ex == 0 && ey == 0) {
            rest += FPoly(V, K, {t});
        } else if (ex == 0 && ey == 2) {
            Monomial q = t.m;
            q.e[1] = 0;
            ycoef += FPoly::monomial(V, K, q, t.c);
        } else if (!((ex == 2 && ey == 0) || (ex == 1 && ey == 1)) || t.c != K.one() || t.m.e[2] || t.m.e[3]) {
            throw DomainError("chart-4 strict transform is not of the model shape: " + s.to_string());
        }
    }
    const FSeries alpha = blowup_detail::uv_series(ycoef, N);
    // rest is exact below degree N + 2, and the division costs two degrees
    const FSeries beta = blowup_detail::divide_by_branches(blowup_detail::uv_series(rest, N + 2), m.n - 1);
    out.next = LocalConicModel(m.n - 1, alpha, beta, N);
    return out;
}

enum class ExceptionalKind { SmoothQuadric, ConeOneSingular };

inline std::string to_string(ExceptionalKind k) {
    return k == ExceptionalKind::SmoothQuadric ? "SMOOTH_QUADRIC" : "CONE_ONE_SINGULAR";
}

struct ExceptionalQuadric {
    FPoly form;  // in x, y, u, v
    ExceptionalKind kind = ExceptionalKind::SmoothQuadric;
    std::size_t rank = 0;
};

/// Quadratic part of the model: x^2 + xy + a0 y^2 + b0 u^2 (+ b0 uv when n = 1).
inline ExceptionalQuadric exceptional_quadric(const LocalConicModel& m) {
    const FPoly f = m.hypersurface().equation;
    ExceptionalQuadric out;
    out.form = f.homogeneous_part(2);
    const QuadraticForm q = QuadraticForm::from_polynomial(out.form);
    out.rank = q.rank();
    if (out.rank == 4)
        out.kind = ExceptionalKind::SmoothQuadric;
    else if (out.rank == 3)
        out.kind = ExceptionalKind::ConeOneSingular;
    else
        throw DomainError("exceptional quadric of rank " + std::to_string(out.rank) + " (internal error)");
    return out;
}

struct ChainLink {
    unsigned n = 0;
    ExceptionalQuadric exceptional;
};

/// Repeated blow-ups until smooth; one link per blow-up.
inline std::vector<ChainLink> resolution_chain(LocalConicModel m) {
    std::vector<ChainLink> out;
    for (;;) {
        out.push_back({m.n, exceptional_quadric(m)});
        auto step = recurse_normal_form(m);
        if (!step.next) return out;
        if (step.next->n + 1 != m.n) throw DomainError("recursion did not lower the exponent (internal error)");
        m = *step.next;
    }
}

}  // namespace charpair
