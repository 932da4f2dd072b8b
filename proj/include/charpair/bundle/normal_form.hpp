#pragma once

// Local normal form a x^2 + b y^2 + xz + z^2 of a conic bundle around a
// point whose fibre is a smooth conic or a cross of lines.

#include <string>
#include <utility>
#include <vector>

#include "charpair/bundle/conic_bundle.hpp"
#include "charpair/poly/rational_function.hpp"

namespace charpair {

/// One substitution q -> s * q(T X).
struct ChainStep {
    std::string name;
    Matrix3<FRational> T;
    FRational scalar;
};

struct NormalFormData {
    BasePoint point;
    std::size_t chart = 0;         // index of the base coordinate set to 1
    Vars affine;                   // the two remaining coordinates
    std::vector<FFElem> local_point;
    FRational a, b;
    std::vector<ChainStep> chain;
    RFQuadraticForm start;         // dehomogenized bundle before the chain

    /// Applies the chain to the starting form.
    RFQuadraticForm replay() const {
        RFQuadraticForm q = start;
        for (const auto& s : chain) q = q.transform(s.T, s.scalar);
        return q;
    }
    /// Product of the scalars: the unit relating the final and original equations.
    FRational unit() const {
        FRational u = start.xx.constant_like(start.xx.ring().one());
        for (const auto& s : chain) u = u * s.scalar;
        return u;
    }
    /// The factor by which the chain multiplies the discriminant: b = D * factor.
    FRational discriminant_factor() const {
        FRational f = unit().pow(3);
        for (const auto& s : chain) f = f * determinant(s.T).pow(2);
        return f;
    }
};

namespace nf_detail {

inline Matrix3<FRational> identity(const FRational& one) {
    const FRational zero = one.zero_like();
    return {{{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}};
}

inline Matrix3<FRational> swap_matrix(const FRational& one, std::size_t i, std::size_t j) {
    const FRational zero = one.zero_like();
    Matrix3<FRational> T{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
    std::array<std::size_t, 3> perm{0, 1, 2};
    std::swap(perm[i], perm[j]);
    for (std::size_t r = 0; r < 3; ++r) T[r][perm[r]] = one;
    return T;
}

}  // namespace nf_detail

/// Replays the substitution chain of the local normal form lemma at P.
inline NormalFormData normalize_at_point(const FBundle& b, const BasePoint& P) {
    const FFQuadraticForm fiber = fiber_at(b, P);
    const ConicClass cls = classify(fiber);
    if (!cls.is_smooth() && !cls.is_cross())
        throw DomainError("fibre at " + point_string(P) + " is " + to_string(cls.tag) +
                          "; the normal form needs a smooth conic or a cross of lines");

    NormalFormData out;
    out.point = P;
    while (is_zero(P[out.chart])) ++out.chart;
    const FBundle bb = bundle_over(b, field_of(P[0]));
    out.affine = bb.base().without(out.chart);
    const FFElem scale = inverse(P[out.chart]);
    for (std::size_t i = 0; i < 3; ++i)
        if (i != out.chart) out.local_point.push_back(P[i] * scale);

    const auto c = bb.form().coefficients();
    std::array<FRational, 6> rc;
    for (std::size_t i = 0; i < 6; ++i) rc[i] = FRational(dehomogenize(c[i], out.chart));
    out.start = RFQuadraticForm::from_list(rc);

    const FRational one = rc[0].constant_like(bb.ring().one());
    const FRational zero = one.zero_like();
    auto at_p = [&](const FRational& f) { return f.value_at(out.local_point); };
    RFQuadraticForm q = out.start;
    auto apply = [&](std::string name, Matrix3<FRational> T, FRational s) {
        q = q.transform(T, s);
        out.chain.push_back({std::move(name), std::move(T), std::move(s)});
    };

    // preference order a_xz, a_xy, a_yz among the mixed coefficients that are units at P
    if (is_zero(at_p(q.xz))) {
        if (!is_zero(at_p(q.xy)))
            apply("swap y,z", nf_detail::swap_matrix(one, 1, 2), one);
        else
            apply("swap x,y", nf_detail::swap_matrix(one, 0, 1), one);
    }

    auto T = nf_detail::identity(one);
    T[0][0] = one / q.xz;
    apply("x -> x/a_xz", T, one);

    T = nf_detail::identity(one);
    T[0][1] = q.yz;
    T[2][1] = q.xy;
    apply("x -> x + a_yz*y, z -> z + a_xy*y", T, one);

    if (is_zero(at_p(q.zz))) {
        if (!is_zero(at_p(q.xx))) {
            apply("swap x,z", nf_detail::swap_matrix(one, 0, 2), one);
        } else {
            T = nf_detail::identity(one);
            T[0][2] = one;
            apply("x -> x + z", T, one);
        }
    }

    T = nf_detail::identity(one);
    T[0][0] = q.zz;
    apply("divide by a_zz, x -> a_zz*x", T, one / q.zz);

    if (!(q.xy.is_zero() && q.yz.is_zero() && q.xz == one && q.zz == one))
        throw DomainError("normal form chain did not reach a x^2 + b y^2 + xz + z^2");
    if (q.yy.is_zero()) throw DomainError("b vanishes identically: the bundle is wild near " + point_string(P));
    out.a = q.xx;
    out.b = q.yy;
    return out;
}

}  // namespace charpair
