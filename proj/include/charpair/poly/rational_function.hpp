#pragma once

// Quotients of polynomials over a field.
//
// Canonical form: the denominator has leading coefficient 1 and no monomial
// factor is shared with the numerator. In one variable the full gcd is
// cancelled as well.

#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/univariate.hpp"
#include "charpair/poly/polynomial.hpp"

namespace charpair {

/// Dense univariate view of a one-variable polynomial.
template <class Field>
UPoly<Field> to_upoly(const Polynomial<Field>& f, std::size_t var = 0) {
    std::vector<typename Field::value_type> c(static_cast<std::size_t>(std::max(f.degree_in(var), 0)) + 1, f.ring().zero());
    for (const auto& t : f.terms()) {
        for (std::size_t i = 0; i < f.vars().size(); ++i)
            if (i != var && t.m.e[i]) throw DomainError("polynomial is not univariate in " + f.vars()[var]);
        c[t.m.e[var]] = t.c;
    }
    return UPoly<Field>(f.ring(), std::move(c));
}

template <class Field>
Polynomial<Field> from_upoly(const UPoly<Field>& a, const Vars& vars, std::size_t var = 0) {
    std::vector<typename Polynomial<Field>::Term> terms;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (!is_zero(a.coeffs()[i])) terms.push_back({Monomial::var(var, static_cast<unsigned>(i)), a.coeffs()[i]});
    return Polynomial<Field>(vars, a.field(), std::move(terms));
}

template <class Field>
class RationalFunction {
public:
    using P = Polynomial<Field>;
    using C = typename Field::value_type;

    RationalFunction() = default;
    explicit RationalFunction(P num) : num_(std::move(num)), den_(num_.constant_like(num_.ring().one())) {}
    RationalFunction(P num, P den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        normalize();
    }

    const P& numerator() const { return num_; }
    const P& denominator() const { return den_; }
    const Vars& vars() const { return num_.vars(); }
    const Field& ring() const { return num_.ring(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RationalFunction zero_like() const { return RationalFunction(num_.zero_like()); }
    RationalFunction constant_like(const C& c) const { return RationalFunction(num_.constant_like(c)); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_, raw_tag{}); }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator*(const C& s, const RationalFunction& a) { return RationalFunction(s * a.num_, a.den_); }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction pow(unsigned e) const { return RationalFunction(num_.pow(e), den_.pow(e), raw_tag{}); }

    /// True iff the denominator does not vanish at the point.
    bool regular_at(const std::vector<C>& point) const { return !charpair::is_zero(evaluate(den_, point)); }
    C value_at(const std::vector<C>& point) const {
        const C d = evaluate(den_, point);
        if (charpair::is_zero(d)) throw DomainError("rational function not regular at point");
        return evaluate(num_, point) / d;
    }

    std::string to_string() const {
        if (den_.is_constant()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    struct raw_tag {};
    RationalFunction(P num, P den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = num_.constant_like(num_.ring().one());
            return;
        }
        if (num_.vars().size() == 1) {
            const auto g = gcd(to_upoly(num_), to_upoly(den_));
            if (g.degree() > 0) {
                const P gp = from_upoly(g, num_.vars());
                num_ = exact_divide(num_, gp);
                den_ = exact_divide(den_, gp);
            }
        } else {
            Monomial common = num_.terms().front().m;
            for (const auto& t : num_.terms()) common = gcd(common, t.m);
            for (const auto& t : den_.terms()) common = gcd(common, t.m);
            if (!common.is_one()) {
                num_ = divide_by_monomial(num_, common);
                den_ = divide_by_monomial(den_, common);
            }
        }
        const C lc = inverse(den_.lead().c);
        num_ = lc * num_;
        den_ = lc * den_;
    }
    static P divide_by_monomial(const P& f, const Monomial& m) {
        std::vector<typename P::Term> out;
        for (const auto& t : f.terms()) out.push_back({m.quotient_of(t.m), t.c});
        return P(f.vars(), f.ring(), std::move(out));
    }

    P num_;
    P den_;
};

using FRational = RationalFunction<FiniteField>;

}  // namespace charpair
