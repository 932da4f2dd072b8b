#pragma once

// Sparse multivariate polynomials over an exact coefficient ring.
//
// Terms are kept sorted by decreasing graded reverse lexicographic order,
// with no zero coefficients stored; this is also the printing order.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/finite_field.hpp"
#include "charpair/algebra/rationals.hpp"
#include "charpair/error.hpp"
#include "charpair/poly/monomial.hpp"

namespace charpair {

template <class Ring>
class Polynomial {
public:
    using C = typename Ring::value_type;
    struct Term {
        Monomial m;
        C c;
    };

    Polynomial() = default;
    Polynomial(Vars vars, Ring ring) : vars_(std::move(vars)), ring_(ring) {}
    Polynomial(Vars vars, Ring ring, std::vector<Term> terms) : vars_(std::move(vars)), ring_(ring), terms_(std::move(terms)) {
        normalize();
    }

    static Polynomial constant(Vars vars, Ring ring, const C& c) { return Polynomial(vars, ring, {Term{Monomial{}, c}}); }
    static Polynomial constant(Vars vars, Ring ring, std::int64_t n) { return constant(vars, ring, ring.from_int(n)); }
    static Polynomial variable(Vars vars, Ring ring, std::size_t i) {
        if (i >= vars.size()) throw DomainError("variable index out of range");
        return Polynomial(vars, ring, {Term{Monomial::var(i), ring.one()}});
    }
    static Polynomial variable(Vars vars, Ring ring, const std::string& name) {
        const std::size_t i = vars.require(name);
        return variable(std::move(vars), ring, i);
    }
    static Polynomial monomial(Vars vars, Ring ring, const Monomial& m, const C& c) {
        return Polynomial(vars, ring, {Term{m, c}});
    }

    const Vars& vars() const { return vars_; }
    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    C constant_value() const {
        if (terms_.empty()) return ring_.zero();
        return terms_.back().m.is_one() ? terms_.back().c : ring_.zero();
    }
    /// Leading term in grevlex order.
    const Term& lead() const {
        if (terms_.empty()) throw DomainError("leading term of zero polynomial");
        return terms_.front();
    }
    C coeff(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.m == m) return t.c;
        return ring_.zero();
    }

    int total_degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.degree()));
        return d;
    }
    int min_degree() const {
        int d = -1;
        for (const auto& t : terms_) d = d < 0 ? static_cast<int>(t.m.degree()) : std::min(d, static_cast<int>(t.m.degree()));
        return d;
    }
    int degree_in(std::size_t var) const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.e[var]));
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const unsigned d = terms_.front().m.degree();
        return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.m.degree() == d; });
    }
    /// Part of total degree exactly d.
    Polynomial homogeneous_part(unsigned d) const {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (t.m.degree() == d) out.push_back(t);
        return Polynomial(vars_, ring_, std::move(out));
    }
    bool uses_var(std::size_t i) const {
        return std::any_of(terms_.begin(), terms_.end(), [i](const Term& t) { return t.m.e[i] != 0; });
    }

    Polynomial zero_like() const { return Polynomial(vars_, ring_); }
    Polynomial constant_like(const C& c) const { return constant(vars_, ring_, c); }
    Polynomial var(std::size_t i) const { return variable(vars_, ring_, i); }
    Polynomial var(const std::string& name) const { return variable(vars_, ring_, name); }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        std::vector<Term> out;
        out.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && grevlex_greater(a.terms_[i].m, b.terms_[j].m))) {
                out.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || grevlex_greater(b.terms_[j].m, a.terms_[i].m)) {
                out.push_back(b.terms_[j++]);
            } else {
                C c = a.terms_[i].c + b.terms_[j].c;
                if (!charpair::is_zero(c)) out.push_back(Term{a.terms_[i].m, std::move(c)});
                ++i;
                ++j;
            }
        }
        Polynomial r(a.vars_, a.ring_);
        r.terms_ = std::move(out);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) out.push_back(Term{s.m * t.m, s.c * t.c});
        return Polynomial(a.vars_, a.ring_, std::move(out));
    }
    friend Polynomial operator*(const C& s, const Polynomial& a) {
        std::vector<Term> out;
        out.reserve(a.terms_.size());
        for (const auto& t : a.terms_) {
            C c = s * t.c;
            if (!charpair::is_zero(c)) out.push_back(Term{t.m, std::move(c)});
        }
        Polynomial r(a.vars_, a.ring_);
        r.terms_ = std::move(out);
        return r;
    }
    Polynomial times_monomial(const Monomial& m, const C& c) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            C x = c * t.c;
            if (!charpair::is_zero(x)) out.push_back(Term{t.m * m, std::move(x)});
        }
        Polynomial r(vars_, ring_);
        r.terms_ = std::move(out);  // multiplication by a monomial preserves the order
        return r;
    }
    Polynomial pow(unsigned e) const {
        Polynomial r = constant(vars_, ring_, ring_.one()), b = *this;
        while (e) {
            if (e & 1U) r = r * b;
            e >>= 1U;
            if (e) b = b * b;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].m != b.terms_[i].m || !(a.terms_[i].c == b.terms_[i].c)) return false;
        return a.vars_ == b.vars_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Canonical text form; parses back to an equal polynomial.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& t : terms_) {
            std::string cs = coeff_string(t.c);
            bool negative = false;
            if (!cs.empty() && cs[0] == '-') {
                negative = true;
                cs = cs.substr(1);
            }
            if (out.empty()) out += negative ? "-" : "";
            else out += negative ? " - " : " + ";
            if (t.m.is_one()) {
                out += cs;
            } else {
                if (cs != "1") out += (needs_parens(cs) ? "(" + cs + ")" : cs) + "*";
                out += t.m.to_string(vars_);
            }
        }
        return out;
    }

private:
    static std::string coeff_string(const C& c) { return charpair::to_string(c); }
    static bool needs_parens(const std::string& s) { return s.find('+') != std::string::npos || s.find('-') != std::string::npos; }

    void check_compatible(const Polynomial& o) const {
        if (vars_ != o.vars_) throw DomainError("polynomials over different variable lists");
        if (!(ring_ == o.ring_)) throw DomainError("polynomials over different coefficient rings");
    }
    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return grevlex_greater(a.m, b.m); });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) out.back().c = out.back().c + t.c;
            else out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return charpair::is_zero(t.c); }), out.end());
        terms_ = std::move(out);
    }

    Vars vars_;
    Ring ring_{};
    std::vector<Term> terms_;
};

using ZPoly = Polynomial<IntegerRing>;
using QPoly = Polynomial<RationalField>;
using FPoly = Polynomial<FiniteField>;

template <class Ring>
Polynomial<Ring> partial_derivative(const Polynomial<Ring>& f, std::size_t var) {
    std::vector<typename Polynomial<Ring>::Term> out;
    for (const auto& t : f.terms()) {
        if (t.m.e[var] == 0) continue;
        auto c = f.ring().from_int(t.m.e[var]) * t.c;
        if (is_zero(c)) continue;
        Monomial m = t.m;
        --m.e[var];
        out.push_back({m, c});
    }
    return Polynomial<Ring>(f.vars(), f.ring(), std::move(out));
}

template <class Ring>
Polynomial<Ring> partial_derivative(const Polynomial<Ring>& f, const std::string& var) {
    return partial_derivative(f, f.vars().require(var));
}

/// Evaluates f at a point given as one coefficient per variable.
template <class Ring>
typename Ring::value_type evaluate(const Polynomial<Ring>& f, const std::vector<typename Ring::value_type>& point) {
    if (point.size() != f.vars().size()) throw DomainError("evaluation point has wrong arity");
    using C = typename Ring::value_type;
    C acc = f.ring().zero();
    for (const auto& t : f.terms()) {
        C x = t.c;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (unsigned k = 0; k < t.m.e[i]; ++k) x = x * point[i];
        acc = acc + x;
    }
    return acc;
}

/// Ring homomorphism sending variable i of f to images[i]; all images share one target ring.
template <class Ring, class Target>
Target substitute(const Polynomial<Ring>& f, const std::vector<Target>& images, const Target& zero,
                  const std::function<Target(const typename Ring::value_type&)>& lift) {
    if (images.size() != f.vars().size()) throw DomainError("substitution must assign every variable");
    // cache powers per variable
    std::vector<std::vector<Target>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const Target& {
        auto& p = powers[i];
        if (p.empty()) p.push_back(lift(f.ring().one()));
        while (p.size() <= e) p.push_back(p.back() * images[i]);
        return p[e];
    };
    Target acc = zero;
    for (const auto& t : f.terms()) {
        Target x = lift(t.c);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.m.e[i]) x = x * power(i, t.m.e[i]);
        acc = acc + x;
    }
    return acc;
}

/// Substitution of polynomials over the same coefficient ring.
template <class Ring>
Polynomial<Ring> substitute(const Polynomial<Ring>& f, const std::vector<Polynomial<Ring>>& images) {
    if (images.empty()) {
        if (!f.vars().size()) return f;
        throw DomainError("substitution must assign every variable");
    }
    const Polynomial<Ring> zero = images.front().zero_like();
    std::function<Polynomial<Ring>(const typename Ring::value_type&)> lift = [&zero](const typename Ring::value_type& c) {
        return zero.constant_like(c);
    };
    return substitute<Ring, Polynomial<Ring>>(f, images, zero, lift);
}

/// Substitution given by name; unnamed variables map to themselves (in the target list, by name).
template <class Ring>
Polynomial<Ring> substitute(const Polynomial<Ring>& f, const std::map<std::string, Polynomial<Ring>>& assignment,
                            const Vars& target) {
    std::vector<Polynomial<Ring>> images;
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        auto it = assignment.find(f.vars()[i]);
        if (it != assignment.end()) {
            if (it->second.vars() != target) throw DomainError("substitution image over wrong variables");
            images.push_back(it->second);
        } else {
            if (f.uses_var(i) && target.index(f.vars()[i]) < 0)
                throw DomainError("substitution does not cover variable " + f.vars()[i]);
            images.push_back(target.index(f.vars()[i]) >= 0 ? Polynomial<Ring>::variable(target, f.ring(), f.vars()[i])
                                                            : Polynomial<Ring>(target, f.ring()));
        }
    }
    if (images.empty()) return Polynomial<Ring>::constant(target, f.ring(), f.constant_value());
    return substitute(f, images);
}

/// Moves f into another variable list by name (every used variable must exist there).
template <class Ring>
Polynomial<Ring> rebase(const Polynomial<Ring>& f, const Vars& target) {
    std::vector<std::size_t> map(f.vars().size());
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        const int j = target.index(f.vars()[i]);
        if (j < 0) {
            if (f.uses_var(i)) throw DomainError("variable " + f.vars()[i] + " missing in target list");
            map[i] = kMaxVars;
        } else {
            map[i] = static_cast<std::size_t>(j);
        }
    }
    std::vector<typename Polynomial<Ring>::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < f.vars().size(); ++i)
            if (t.m.e[i]) m.e[map[i]] = t.m.e[i];
        out.push_back({m, t.c});
    }
    return Polynomial<Ring>(target, f.ring(), std::move(out));
}

/// Sets variable idx to 1 and drops it from the variable list.
template <class Ring>
Polynomial<Ring> dehomogenize(const Polynomial<Ring>& f, std::size_t idx) {
    const Vars target = f.vars().without(idx);
    std::vector<typename Polynomial<Ring>::Term> out;
    for (const auto& t : f.terms()) {
        Monomial m;
        std::size_t j = 0;
        for (std::size_t i = 0; i < f.vars().size(); ++i) {
            if (i == idx) continue;
            m.e[j++] = t.m.e[i];
        }
        out.push_back({m, t.c});
    }
    return Polynomial<Ring>(target, f.ring(), std::move(out));
}

/// Homogenizes f in a new variable inserted at position idx, to degree d (default: total degree).
template <class Ring>
Polynomial<Ring> homogenize(const Polynomial<Ring>& f, const Vars& target, std::size_t idx, int d = -1) {
    if (d < 0) d = f.total_degree();
    std::vector<typename Polynomial<Ring>::Term> out;
    for (const auto& t : f.terms()) {
        Monomial m;
        std::size_t j = 0;
        for (std::size_t i = 0; i < target.size(); ++i) {
            if (i == idx) continue;
            m.e[i] = t.m.e[j++];
        }
        m.e[idx] = static_cast<std::uint16_t>(d - static_cast<int>(t.m.degree()));
        out.push_back({m, t.c});
    }
    return Polynomial<Ring>(target, f.ring(), std::move(out));
}

/// Applies a coefficient map into another ring.
template <class Target, class Ring, class Fn>
Polynomial<Target> map_coefficients(const Polynomial<Ring>& f, const Target& ring, Fn&& fn) {
    std::vector<typename Polynomial<Target>::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) out.push_back({t.m, fn(t.c)});
    return Polynomial<Target>(f.vars(), ring, std::move(out));
}

/// Coefficientwise reduction of an integer polynomial to F_p.
inline FPoly reduce_mod_p(const ZPoly& f, std::uint32_t p) {
    const FiniteField field = FiniteField::get(p, 1);
    return map_coefficients(f, field, [&](const BigInt& c) { return field.from_integer(c); });
}

inline QPoly to_rational(const ZPoly& f) {
    return map_coefficients(f, RationalField{}, [](const BigInt& c) { return Rational(c); });
}

/// Base change of a finite-field polynomial along an embedding.
inline FPoly base_change(const FPoly& f, const FieldEmbedding& e) {
    if (!(f.ring() == e.source())) throw DomainError("base change from wrong field");
    return map_coefficients(f, e.target(), [&](const FFElem& c) { return e(c); });
}

/// Result of dividing f by g: quotient and remainder with f = q*g + r.
template <class Ring>
struct DivisionResult {
    Polynomial<Ring> quotient;
    Polynomial<Ring> remainder;
};

/// Multivariate division by a single polynomial in grevlex order. Over Z the
/// leading coefficient must divide exactly for a term to be reduced.
template <class Ring>
DivisionResult<Ring> divide(const Polynomial<Ring>& f, const Polynomial<Ring>& g) {
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    using C = typename Ring::value_type;
    Polynomial<Ring> q = f.zero_like(), r = f.zero_like(), h = f;
    const auto& lt = g.lead();
    while (!h.is_zero()) {
        const auto t = h.lead();
        std::optional<C> c;
        if (lt.m.divides(t.m)) {
            if constexpr (Ring::is_field) {
                c = t.c / lt.c;
            } else {
                if (t.c % lt.c == 0) c = t.c / lt.c;
            }
        }
        if (c) {
            const Monomial m = lt.m.quotient_of(t.m);
            q = q + Polynomial<Ring>::monomial(f.vars(), f.ring(), m, *c);
            h = h - g.times_monomial(m, *c);
        } else {
            r = r + Polynomial<Ring>::monomial(f.vars(), f.ring(), t.m, t.c);
            h = h - Polynomial<Ring>::monomial(f.vars(), f.ring(), t.m, t.c);
        }
    }
    return {q, r};
}

/// Exact quotient f / g; throws NotDivisibleError with the remainder as witness.
template <class Ring>
Polynomial<Ring> exact_divide(const Polynomial<Ring>& f, const Polynomial<Ring>& g) {
    auto res = divide(f, g);
    if (!res.remainder.is_zero()) throw NotDivisibleError(res.remainder.to_string());
    return res.quotient;
}

template <class Ring>
bool divides(const Polynomial<Ring>& g, const Polynomial<Ring>& f) {
    return divide(f, g).remainder.is_zero();
}

/// Largest m with g^m dividing f (f nonzero, g nonconstant).
template <class Ring>
int divisibility_count(Polynomial<Ring> f, const Polynomial<Ring>& g) {
    if (f.is_zero() || g.is_constant()) throw DomainError("divisibility count needs nonzero f and nonconstant g");
    int m = 0;
    while (true) {
        auto res = divide(f, g);
        if (!res.remainder.is_zero()) return m;
        f = res.quotient;
        ++m;
    }
}

}  // namespace charpair
