#pragma once

// Local model of a conic bundle over F_2 at a point where the discriminant
// is a line meeting a smooth branch: the fibre normal form
// x^2 + xy + c_yy y^2 + c_zz z^2 with c_zz = beta u (u + v^n).

#include <string>
#include <utility>
#include <vector>

#include "charpair/blowup/blowup.hpp"
#include "charpair/bundle/normal_form.hpp"

namespace charpair {

/// The two branches of the discriminant through the point.
struct BranchData {
    FPoly line;
    FPoly curve;
};

struct LocalModelAt {
    BasePoint point;
    FiniteField field;             // field of the computation
    LocalConicModel model;
    FFElem shift;                  // c in x -> x + c y making c_yy a unit
    std::string coordinates;       // description of (u, v)
};

namespace local_detail {

inline BasePoint embed_point(const BasePoint& P, const FiniteField& L) {
    const FieldEmbedding e(field_of(P[0]), L);
    BasePoint out;
    for (const auto& c : P) out.push_back(e(c));
    return out;
}

/// f (in the two affine variables) translated so that `at` becomes the origin.
inline FPoly translate(const FPoly& f, const std::vector<FFElem>& at) {
    std::vector<FPoly> images;
    for (std::size_t i = 0; i < at.size(); ++i)
        images.push_back(FPoly::variable(f.vars(), f.ring(), i) + FPoly::constant(f.vars(), f.ring(), at[i]));
    return substitute(f, images);
}

inline FSeries series_of(const FRational& r, const std::vector<FFElem>& at, unsigned M) {
    const FSeries num = FSeries::from_polynomial(translate(r.numerator(), at), M);
    const FSeries den = FSeries::from_polynomial(translate(r.denominator(), at), M);
    if (!den.is_unit()) throw DomainError("rational function has a pole at the point");
    return num * den.invert();
}

/// Lowest j with g_{0,j} != 0 for a series in v only.
inline unsigned v_valuation(const FSeries& g) {
    for (unsigned j = 0; j < g.order(); ++j)
        if (!is_zero(g.coeff(0, j))) return j;
    throw PrecisionError("branch agrees with the line to order " + std::to_string(g.order()));
}

struct Coordinates {
    FSeries s1, s2;  // old affine coordinates as series in the new (u, v)
    unsigned n = 0;
    std::string text;
};

/// New coordinates (u, v) with u = line and the curve equal to a unit times u + v^n.
inline Coordinates branch_coordinates(const FPoly& line, const FPoly& curve, unsigned M) {
    const FiniteField K = line.ring();
    const Monomial m1 = Monomial::from({1, 0}), m2 = Monomial::from({0, 1});
    const FFElem l1 = line.coeff(m1), l2 = line.coeff(m2);
    const FFElem e1 = curve.coeff(m1), e2 = curve.coeff(m2);
    if (!is_zero(line.constant_value()) || line.total_degree() != 1) throw DomainError("line does not pass through the point");
    if (!is_zero(curve.constant_value())) throw DomainError("curve does not pass through the point");
    if (is_zero(e1) && is_zero(e2)) throw DomainError("curve branch is singular at the point");
    // v: a coordinate independent of the line, transverse to the curve
    const std::vector<std::pair<FFElem, FFElem>> candidates{{K.zero(), K.one()}, {K.one(), K.zero()}, {K.one(), K.one()}};
    for (const auto& [m1c, m2c] : candidates) {
        const FFElem det = l1 * m2c - l2 * m1c;
        if (is_zero(det) || is_zero(e1 * m2c - e2 * m1c)) continue;
        const FFElem di = inverse(det);
        const FSeries U = FSeries::u(K, M), V = FSeries::v(K, M);
        Coordinates c;
        c.s1 = di * (m2c * U - l2 * V);
        c.s2 = di * (l1 * V - m1c * U);
        c.text = "u = " + line.to_string() + ", v = " + (is_zero(m1c) ? "" : line.vars()[0]) +
                 (!is_zero(m1c) && !is_zero(m2c) ? " + " : "") + (is_zero(m2c) ? "" : line.vars()[1]);
        return c;
    }
    throw DomainError("no linear coordinate transverse to the curve (internal error)");
}

/// Implicit branch u = g(v) of E(u, v) = 0, E_u(0) != 0.
inline FSeries implicit_branch(const FSeries& E) {
    const FiniteField K = E.field();
    const unsigned M = E.order();
    const FFElem c1 = E.coeff(1, 0);
    if (is_zero(c1)) throw DomainError("curve is tangent to the chosen v-axis (internal error)");
    const FFElem ci = inverse(c1);
    const FSeries V = FSeries::v(K, M);
    FSeries g(K, M);
    for (unsigned it = 0; it <= M; ++it) {
        const FSeries next = g - ci * E.compose(g, V);
        if (next == g) break;
        g = next;
    }
    if (!E.compose(g, V).is_zero()) throw PrecisionError("implicit branch did not converge");
    return g;
}

}  // namespace local_detail

/// Replays the local normal form at P and reads off n, alpha = c_yy, beta.
/// N = 0 picks 2n + 4.
inline LocalModelAt local_model_at(const FBundle& b, const BasePoint& P, const BranchData& br, unsigned N = 0) {
    using namespace local_detail;
    if (b.ring().characteristic() != 2) throw DomainError("local models need characteristic 2");
    if (br.line.total_degree() != 1) throw DomainError("first branch must be a line");
    for (const auto* f : {&br.line, &br.curve})
        if (!is_zero(evaluate(base_change(*f, FieldEmbedding(f->ring(), field_of(P[0]))), P)))
            throw DomainError("branch " + f->to_string() + " does not pass through " + point_string(P));
    const FPoly D = discriminant(b, DiscriminantMode::Char2).D;
    const FPoly lc = br.line * br.curve;
    if (!divides(lc, D)) throw DomainError("discriminant is not divisible by line * curve");
    {
        const FPoly cof = exact_divide(D, lc);
        if (is_zero(evaluate(base_change(cof, FieldEmbedding(cof.ring(), field_of(P[0]))), P)))
            throw DomainError("discriminant germ at " + point_string(P) + " has more than the two given branches");
    }
    const ConicClass fibre = classify(fiber_at(b, P));
    if (!fibre.is_cross()) throw DomainError("fibre at " + point_string(P) + " is " + to_string(fibre.tag) + ", not a cross of lines");

    // fibre normal form a x^2 + b y^2 + xz + z^2, i.e. X^2 + XY + a Y^2 + b Z^2
    FiniteField K = field_of(P[0]);
    BasePoint Q = P;
    NormalFormData nf = normalize_at_point(b, Q);
    auto pick_shift = [&](const FFElem& a0) -> std::optional<FFElem> {
        for (const auto& c : K.elements())
            if (!is_zero(c * c + c + a0)) return c;
        return std::nullopt;
    };
    auto shift = pick_shift(nf.a.value_at(nf.local_point));
    if (!shift) {
        K = FiniteField::get(2, 2 * K.degree());
        Q = embed_point(P, K);
        nf = normalize_at_point(b, Q);
        shift = pick_shift(nf.a.value_at(nf.local_point));
    }

    auto local_poly = [&](const FPoly& f) {
        return translate(base_change(dehomogenize(f, nf.chart), FieldEmbedding(f.ring(), K)), nf.local_point);
    };
    const FPoly line = local_poly(br.line), curve = local_poly(br.curve);

    auto build = [&](unsigned M) {
        const auto coords = branch_coordinates(line, curve, M);
        auto to_uv = [&](const FSeries& f) { return f.compose(coords.s1, coords.s2); };
        const FSeries E = to_uv(FSeries::from_polynomial(curve, M));
        const FSeries g = implicit_branch(E);
        const unsigned n = v_valuation(g);
        const FSeries root = g.divide_by_monomial(0, n).nth_root(n);
        const unsigned Mr = root.order();
        const FSeries U = FSeries::u(K, Mr), V = FSeries::v(K, Mr);
        const auto [psi_u, psi_v] = invert_map(U, V * root);
        auto to_model = [&](const FSeries& f) { return to_uv(f).compose(psi_u, psi_v); };
        const FFElem c = *shift;
        const FSeries alpha = to_model(series_of(nf.a, nf.local_point, M)) + FSeries::constant(K, M, c * c + c);
        const FSeries czz = to_model(series_of(nf.b, nf.local_point, M));
        const FSeries beta = blowup_detail::divide_by_branches(czz, n);
        return std::tuple{n, alpha, beta, coords.text};
    };

    // first pass finds n; the second works at the precision N needs
    unsigned M = 12;
    unsigned n = 0;
    for (;; M *= 2) {
        try {
            n = std::get<0>(build(M));
            break;
        } catch (const PrecisionError&) {
            if (M >= 64) throw;
        }
    }
    if (N == 0) N = LocalConicModel::default_order(n);
    // dividing out v^n costs n degrees, an even root halves the rest, beta costs two more
    M = std::max(M, (n % 2 == 0 ? 2 * (N + 2) : N + 2) + n + 2);
    auto [n2, alpha, beta, text] = build(M);
    if (n2 != n) throw PrecisionError("contact order changed with precision");
    if (beta.order() < N || alpha.order() < N)
        throw PrecisionError("local model known only to order " + std::to_string(std::min(alpha.order(), beta.order())));
    LocalModelAt out;
    out.point = P;
    out.field = K;
    out.model = LocalConicModel(n, alpha, beta, N);
    out.shift = *shift;
    out.coordinates = text;
    return out;
}

}  // namespace charpair
