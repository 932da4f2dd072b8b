#pragma once

// Built-in example data: the integral symmetric matrix S, the mod-2
// factorization of its discriminant, and the three-line bundle
// a x^2 + a xz + b y^2 + b yz + c z^2.

#include <array>
#include <string>
#include <vector>

#include "charpair/bundle/conic_bundle.hpp"
#include "charpair/poly/parse.hpp"

namespace charpair::fixtures {

inline const std::array<std::array<std::string, 3>, 3>& matrix_s_text() {
    static const std::array<std::array<std::string, 3>, 3> s{{
        {"2*u*v + 4*v^2 + 2*u*w + 2*w^2", "u^2 + u*w + w^2", "u*v"},
        {"u^2 + u*w + w^2", "2*u^2 + 2*v*w + 2*w^2", "u^2 + v*w + w^2"},
        {"u*v", "u^2 + v*w + w^2", "2*v^2 + 2*u*w + 2*w^2"},
    }};
    return s;
}

inline SymmetricMatrix parse_matrix(const std::array<std::array<std::string, 3>, 3>& text) {
    SymmetricMatrix S;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) S[i][j] = parse_polynomial(text[i][j], base_vars(), IntegerRing{});
    return S;
}

inline SymmetricMatrix matrix_s() { return parse_matrix(matrix_s_text()); }

inline const std::string& gamma_text() {
    static const std::string g = "v^2 + u*v + v*w + w^2";
    return g;
}

/// The cubic gamma*u + v^3.
inline const std::string& elliptic_text() {
    static const std::string e = "(v^2 + u*v + v*w + w^2)*u + v^3";
    return e;
}

/// Components of D mod 2: the lines u, w, u+w and the cubic E.
inline std::vector<DiscriminantComponent<FiniteField>> mod2_components() {
    const FiniteField F2 = FiniteField::get(2);
    auto p = [&](const std::string& s) { return parse_polynomial(s, base_vars(), F2); };
    return {{"u", p("u"), 1}, {"w", p("w"), 1}, {"u+w", p("u + w"), 1}, {"E", p(elliptic_text()), 1}};
}

inline std::vector<std::string> component_names(const std::vector<DiscriminantComponent<FiniteField>>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs) out.push_back(c.name);
    return out;
}

/// a x^2 + a xz + b y^2 + b yz + c z^2.
inline FBundle three_line_bundle(const FPoly& a, const FPoly& b, const FPoly& c) {
    const FPoly zero = a.zero_like();
    return FBundle(TernaryQuadraticForm<FPoly>{a, b, c, zero, a, b});
}

/// The instantiation (a, b, c) = (u, w, v) over F_2.
inline FBundle three_line_instance() {
    const FiniteField F2 = FiniteField::get(2);
    const FPoly u = FPoly::variable(base_vars(), F2, 0), v = FPoly::variable(base_vars(), F2, 1),
                w = FPoly::variable(base_vars(), F2, 2);
    return three_line_bundle(u, w, v);
}

/// Components of the discriminant ab(a+b) for (a, b) = (u, w).
inline std::vector<DiscriminantComponent<FiniteField>> three_line_components() {
    const FiniteField F2 = FiniteField::get(2);
    auto p = [&](const std::string& s) { return parse_polynomial(s, base_vars(), F2); };
    return {{"u", p("u"), 1}, {"w", p("w"), 1}, {"u+w", p("u + w"), 1}};
}

inline BasePoint point(std::initializer_list<int> coords, const FiniteField& K = FiniteField::get(2)) {
    BasePoint p;
    for (int c : coords) p.push_back(K.from_int(c));
    return p;
}

}  // namespace charpair::fixtures
