#pragma once

// Dense univariate polynomials over a field, used for root finding,
// radicals, minimal polynomials and partial fractions.

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "charpair/algebra/finite_field.hpp"
#include "charpair/error.hpp"

namespace charpair {

template <class Field>
class UPoly {
public:
    using C = typename Field::value_type;

    UPoly() = default;
    explicit UPoly(Field f) : field_(f) {}
    UPoly(Field f, std::vector<C> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

    static UPoly constant(Field f, C c) { return UPoly(f, {c}); }
    static UPoly x(Field f) { return UPoly(f, {f.zero(), f.one()}); }
    /// x - r
    static UPoly linear(Field f, C r) { return UPoly(f, {-r, f.one()}); }

    const Field& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<C>& coeffs() const { return c_; }
    C coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    C lead() const { return c_.empty() ? field_.zero() : c_.back(); }

    C operator()(const C& x) const {
        C acc = field_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<C> out(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = out[i] + b.c_[i];
        return UPoly(a.field_, std::move(out));
    }
    friend UPoly operator-(const UPoly& a) {
        std::vector<C> out = a.c_;
        for (auto& c : out) c = -c;
        return UPoly(a.field_, std::move(out));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
        std::vector<C> out(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (charpair::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(a.field_, std::move(out));
    }
    friend UPoly operator*(const C& s, const UPoly& a) {
        std::vector<C> out = a.c_;
        for (auto& c : out) c = s * c;
        return UPoly(a.field_, std::move(out));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<C> r = c_;
        const int dd = d.degree();
        if (degree() < dd) return {UPoly(field_), *this};
        std::vector<C> q(static_cast<std::size_t>(degree() - dd + 1), field_.zero());
        const C inv_lead = inverse(d.lead());
        for (int i = degree(); i >= dd; --i) {
            const C c = r[static_cast<std::size_t>(i)] * inv_lead;
            q[static_cast<std::size_t>(i - dd)] = c;
            if (charpair::is_zero(c)) continue;
            for (int j = 0; j <= dd; ++j)
                r[static_cast<std::size_t>(i - dd + j)] = r[static_cast<std::size_t>(i - dd + j)] - c * d.c_[static_cast<std::size_t>(j)];
        }
        return {UPoly(field_, std::move(q)), UPoly(field_, std::move(r))};
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return inverse(lead()) * (*this);
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly(field_);
        std::vector<C> out(c_.size() - 1, field_.zero());
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = field_.from_int(static_cast<std::int64_t>(i)) * c_[i];
        return UPoly(field_, std::move(out));
    }

    std::string to_string(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (charpair::is_zero(c_[i])) continue;
            if (!out.empty()) out += " + ";
            const std::string cs = charpair::to_string(c_[i]);
            const bool unit = cs == "1";
            if (i == 0) out += cs;
            else {
                if (!unit) out += "(" + cs + ")*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && charpair::is_zero(c_.back())) c_.pop_back();
    }
    Field field_;
    std::vector<C> c_;
};

template <class Field>
UPoly<Field> gcd(UPoly<Field> a, UPoly<Field> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class Field>
std::tuple<UPoly<Field>, UPoly<Field>, UPoly<Field>> xgcd(const UPoly<Field>& a, const UPoly<Field>& b) {
    const Field f = a.field();
    UPoly<Field> r0 = a, r1 = b, s0 = UPoly<Field>::constant(f, f.one()), s1(f), t0(f), t1 = UPoly<Field>::constant(f, f.one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const auto inv = inverse(r0.lead());
    return {inv * r0, inv * s0, inv * t0};
}

inline UPoly<FiniteField> map_coefficients(const UPoly<FiniteField>& a, const FieldEmbedding& e) {
    std::vector<FFElem> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) out.push_back(e(c));
    return UPoly<FiniteField>(e.target(), std::move(out));
}

/// p-th root of a polynomial whose derivative vanishes (all exponents divisible by p) over a finite field.
inline UPoly<FiniteField> pth_root(const UPoly<FiniteField>& a) {
    const FiniteField f = a.field();
    const std::uint32_t p = f.characteristic();
    std::vector<FFElem> out;
    for (std::size_t i = 0; i < a.coeffs().size(); i += p) {
        // c^(1/p) = c^(p^(k-1))
        FFElem c = a.coeffs()[i];
        for (unsigned j = 1; j < f.degree(); ++j) c = pow(c, p);
        out.push_back(c);
    }
    return UPoly<FiniteField>(f, std::move(out));
}

/// Product of the distinct monic irreducible factors (squarefree kernel) over a finite field.
inline UPoly<FiniteField> radical(const UPoly<FiniteField>& a) {
    if (a.degree() <= 0) return UPoly<FiniteField>::constant(a.field(), a.field().one());
    const auto d = a.derivative();
    if (d.is_zero()) return radical(pth_root(a));
    const auto g = gcd(a, d);
    const auto w = a.divmod(g).first.monic();
    if (g.degree() == 0) return w;
    const auto rg = radical(g);
    const auto common = gcd(w, rg);
    return (w * rg).divmod(common).first.monic();
}

/// All roots in the coefficient field by exhaustive scan, with multiplicities.
inline std::vector<std::pair<FFElem, int>> roots_by_scan(const UPoly<FiniteField>& a) {
    if (a.is_zero()) throw DomainError("roots of the zero polynomial");
    std::vector<std::pair<FFElem, int>> out;
    if (a.degree() <= 0) return out;
    const FiniteField f = a.field();
    if (f.order() > (std::uint64_t{1} << 22)) throw ResourceError("field too large for root scan: " + f.name());
    for (const FFElem& r : f.elements()) {
        if (!is_zero(a(r))) continue;
        int m = 0;
        UPoly<FiniteField> cur = a;
        const auto lin = UPoly<FiniteField>::linear(f, r);
        while (true) {
            auto [q, rem] = cur.divmod(lin);
            if (!rem.is_zero()) break;
            ++m;
            cur = q;
        }
        out.emplace_back(r, m);
    }
    return out;
}

}  // namespace charpair
