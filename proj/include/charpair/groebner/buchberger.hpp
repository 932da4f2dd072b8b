#pragma once

// Buchberger's algorithm with the normal selection strategy and the
// Gebauer-Moeller pair criteria, over any exact field.
//
// Pairs are taken by smallest lcm, sugar only breaking ties. Sugar-first
// selection made coefficients over Q double at every step on the
// Jacobian ideals of the threefold, while normal selection keeps them linear.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "charpair/error.hpp"
#include "charpair/groebner/order.hpp"
#include "charpair/poly/polynomial.hpp"

namespace charpair {

struct GroebnerOptions {
    /// Maximal number of S-pair reductions before a ResourceError.
    std::uint64_t budget = 1000000;
    /// Return {1} as soon as a nonzero constant appears.
    bool stop_on_unit = false;

    /// Options with the budget taken from CHARPAIR_BUDGET when set.
    static GroebnerOptions from_environment() {
        GroebnerOptions o;
        if (const char* env = std::getenv("CHARPAIR_BUDGET")) {
            char* end = nullptr;
            const unsigned long long b = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0' || b == 0) throw DomainError("CHARPAIR_BUDGET must be a positive integer");
            o.budget = b;
        }
        return o;
    }
};

template <class Field>
class Ideal {
public:
    using P = Polynomial<Field>;

    Ideal() = default;
    Ideal(Vars vars, Field field, std::vector<P> gens) : vars_(std::move(vars)), field_(field) {
        for (auto& g : gens) add(std::move(g));
    }
    explicit Ideal(std::vector<P> gens) {
        if (gens.empty()) throw DomainError("ideal needs at least one generator to fix its ring");
        vars_ = gens.front().vars();
        field_ = gens.front().ring();
        for (auto& g : gens) add(std::move(g));
    }

    void add(P g) {
        if (g.vars() != vars_ || !(g.ring() == field_)) throw DomainError("ideal generator over a different ring");
        if (!g.is_zero()) gens_.push_back(std::move(g));
    }
    Ideal operator+(const Ideal& o) const {
        Ideal r = *this;
        for (const auto& g : o.gens_) r.add(g);
        return r;
    }

    const Vars& vars() const { return vars_; }
    const Field& field() const { return field_; }
    const std::vector<P>& generators() const { return gens_; }

private:
    Vars vars_;
    Field field_{};
    std::vector<P> gens_;
};

namespace detail {

template <class C>
struct GTerm {
    Monomial m;
    C c;
};

template <class C>
using GVec = std::vector<GTerm<C>>;

template <class Field>
GVec<typename Field::value_type> to_gvec(const Polynomial<Field>& f, const MonomialOrder& ord) {
    GVec<typename Field::value_type> v;
    v.reserve(f.size());
    for (const auto& t : f.terms()) v.push_back({t.m, t.c});
    if (ord.kind != MonomialOrder::Kind::Grevlex)
        std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return ord.greater(a.m, b.m); });
    return v;
}

template <class Field>
Polynomial<Field> from_gvec(const GVec<typename Field::value_type>& v, const Vars& vars, const Field& field) {
    std::vector<typename Polynomial<Field>::Term> t;
    t.reserve(v.size());
    for (const auto& x : v) t.push_back({x.m, x.c});
    return Polynomial<Field>(vars, field, std::move(t));
}

template <class C>
void make_monic(GVec<C>& v) {
    if (v.empty()) return;
    const C inv = inverse(v.front().c);
    for (auto& t : v) t.c = t.c * inv;
}

// a - c * m * b, skipping the first `skip_a` terms of a and `skip_b` of b.
template <class C>
GVec<C> sub_mul(const GVec<C>& a, std::size_t skip_a, const C& c, const Monomial& m, const GVec<C>& b, std::size_t skip_b,
                const MonomialOrder& ord) {
    GVec<C> out;
    out.reserve(a.size() - skip_a + b.size() - skip_b);
    std::size_t i = skip_a, j = skip_b;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        const Monomial bm = b[j].m * m;
        if (i == a.size() || ord.greater(bm, a[i].m)) {
            out.push_back({bm, -(c * b[j].c)});
            ++j;
        } else if (ord.greater(a[i].m, bm)) {
            out.push_back(a[i++]);
        } else {
            C x = a[i].c - c * b[j].c;
            if (!is_zero(x)) out.push_back({bm, std::move(x)});
            ++i;
            ++j;
        }
    }
    return out;
}

// Full reduction of f by the polynomials whose indices are listed (all monic).
template <class C>
GVec<C> reduce_full(GVec<C> h, const std::vector<GVec<C>>& basis, const std::vector<std::size_t>& active,
                    const MonomialOrder& ord) {
    GVec<C> result;
    while (!h.empty()) {
        const GTerm<C>& lt = h.front();
        const GVec<C>* div = nullptr;
        for (std::size_t k : active) {
            if (basis[k].front().m.divides(lt.m)) {
                div = &basis[k];
                break;
            }
        }
        if (div) {
            const Monomial q = div->front().m.quotient_of(lt.m);
            h = sub_mul(h, 1, lt.c, q, *div, 1, ord);
        } else {
            result.push_back(lt);
            h.erase(h.begin());
        }
    }
    return result;
}

}  // namespace detail

/// Reduced Groebner basis together with the order it is reduced for.
template <class Field>
class GroebnerBasis {
public:
    using C = typename Field::value_type;
    using P = Polynomial<Field>;

    GroebnerBasis() = default;
    GroebnerBasis(Vars vars, Field field, MonomialOrder ord, std::vector<detail::GVec<C>> basis)
        : vars_(std::move(vars)), field_(field), order_(ord), basis_(std::move(basis)) {}

    const Vars& vars() const { return vars_; }
    const Field& field() const { return field_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t size() const { return basis_.size(); }
    bool is_unit() const { return basis_.size() == 1 && basis_.front().size() == 1 && basis_.front().front().m.is_one(); }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> out;
        for (const auto& g : basis_) out.push_back(g.front().m);
        return out;
    }
    std::vector<P> polynomials() const {
        std::vector<P> out;
        for (const auto& g : basis_) out.push_back(detail::from_gvec(g, vars_, field_));
        return out;
    }
    const std::vector<detail::GVec<C>>& raw() const { return basis_; }

    P normal_form(const P& f) const {
        if (f.vars() != vars_) throw DomainError("normal form over different variables");
        std::vector<std::size_t> all(basis_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return detail::from_gvec(detail::reduce_full(detail::to_gvec(f, order_), basis_, all, order_), vars_, field_);
    }
    bool contains(const P& f) const { return normal_form(f).is_zero(); }

private:
    Vars vars_;
    Field field_{};
    MonomialOrder order_;
    std::vector<detail::GVec<C>> basis_;
};

template <class Field>
GroebnerBasis<Field> buchberger(const Ideal<Field>& ideal, const MonomialOrder& ord = MonomialOrder::grevlex(),
                                const GroebnerOptions& opt = {}) {
    static_assert(Field::is_field, "Groebner bases need field coefficients");
    using C = typename Field::value_type;
    using V = detail::GVec<C>;

    std::vector<V> basis;
    std::vector<unsigned> sugar;
    std::vector<bool> alive;
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        unsigned sugar;
    };
    std::vector<Pair> pairs;

    auto unit_basis = [&]() {
        V one{{Monomial{}, ideal.field().one()}};
        return GroebnerBasis<Field>(ideal.vars(), ideal.field(), ord, {one});
    };

    auto active_list = [&]() {
        std::vector<std::size_t> a;
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (alive[k]) a.push_back(k);
        return a;
    };

    // Gebauer-Moeller update with a new element h.
    auto update = [&](V h, unsigned hs) {
        const std::size_t n = basis.size();
        const Monomial lh = h.front().m;
        basis.push_back(std::move(h));
        sugar.push_back(hs);
        alive.push_back(true);

        std::vector<Pair> cand;
        for (std::size_t k = 0; k < n; ++k) {
            if (!alive[k]) continue;
            const Monomial lk = basis[k].front().m;
            const Monomial l = lcm(lk, lh);
            const unsigned s = std::max(sugar[k] + l.degree() - lk.degree(), hs + l.degree() - lh.degree());
            cand.push_back({k, n, l, s});
        }
        // chain criterion among new pairs, keeping coprime ones for the product criterion below
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            const Pair& p = cand[a];
            const bool coprime = basis[p.i].front().m.coprime(lh);
            bool drop = false;
            if (!coprime) {
                for (std::size_t b = 0; b < cand.size() && !drop; ++b) {
                    if (a == b) continue;
                    if (cand[b].lcm.divides(p.lcm) && (cand[b].lcm != p.lcm || b < a)) drop = true;
                }
            } else {
                for (std::size_t b = 0; b < cand.size() && !drop; ++b)
                    if (b != a && cand[b].lcm.divides(p.lcm) && cand[b].lcm != p.lcm) drop = true;
            }
            if (!drop) kept.push_back(p);
        }
        // product criterion
        std::vector<Pair> fresh;
        for (const auto& p : kept)
            if (!basis[p.i].front().m.coprime(lh)) fresh.push_back(p);
        // old pairs made redundant by h
        std::vector<Pair> old;
        for (const auto& p : pairs) {
            const Monomial li = lcm(basis[p.i].front().m, lh), lj = lcm(basis[p.j].front().m, lh);
            if (lh.divides(p.lcm) && li != p.lcm && lj != p.lcm) continue;
            old.push_back(p);
        }
        pairs = std::move(old);
        for (auto& p : fresh) pairs.push_back(p);
        for (std::size_t k = 0; k < n; ++k)
            if (alive[k] && lh.divides(basis[k].front().m)) alive[k] = false;
    };

    // initial generators, reduced against each other as they arrive
    std::vector<V> input;
    for (const auto& g : ideal.generators()) {
        V v = detail::to_gvec(g, ord);
        detail::make_monic(v);
        input.push_back(std::move(v));
    }
    std::sort(input.begin(), input.end(), [&](const V& a, const V& b) { return ord.greater(b.front().m, a.front().m); });
    for (auto& v : input) {
        V h = detail::reduce_full(std::move(v), basis, active_list(), ord);
        if (h.empty()) continue;
        detail::make_monic(h);
        if (h.front().m.is_one() && opt.stop_on_unit) return unit_basis();
        unsigned s = 0;
        for (const auto& t : h) s = std::max(s, t.m.degree());
        update(std::move(h), s);
    }

    std::uint64_t steps = 0;
    while (!pairs.empty()) {
        // smallest lcm, then minimal sugar
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const Pair& a = pairs[k];
            const Pair& b = pairs[best];
            if (ord.greater(b.lcm, a.lcm) || (a.lcm == b.lcm && a.sugar < b.sugar)) best = k;
        }
        const Pair p = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
        if (++steps > opt.budget)
            throw ResourceError("Groebner basis budget of " + std::to_string(opt.budget) + " S-pair reductions exhausted");

        const V& f = basis[p.i];
        const V& g = basis[p.j];
        const Monomial mf = f.front().m.quotient_of(p.lcm), mg = g.front().m.quotient_of(p.lcm);
        // S = mf*f - mg*g (both monic)
        V mff;
        mff.reserve(f.size());
        for (std::size_t k = 1; k < f.size(); ++k) mff.push_back({f[k].m * mf, f[k].c});
        V s = detail::sub_mul(mff, 0, ideal.field().one(), mg, g, 1, ord);
        V h = detail::reduce_full(std::move(s), basis, active_list(), ord);
        if (h.empty()) continue;
        detail::make_monic(h);
        if (h.front().m.is_one() && opt.stop_on_unit) return unit_basis();
        update(std::move(h), p.sugar);
    }

    // interreduce
    std::vector<V> min;
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (alive[k]) min.push_back(basis[k]);
    std::vector<V> reduced;
    for (std::size_t k = 0; k < min.size(); ++k) {
        bool redundant = false;
        for (std::size_t l = 0; l < min.size() && !redundant; ++l)
            if (l != k && min[l].front().m.divides(min[k].front().m) &&
                (min[l].front().m != min[k].front().m || l < k))
                redundant = true;
        if (!redundant) reduced.push_back(min[k]);
    }
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        std::vector<std::size_t> others;
        for (std::size_t l = 0; l < reduced.size(); ++l)
            if (l != k) others.push_back(l);
        V tail(reduced[k].begin() + 1, reduced[k].end());
        V t = detail::reduce_full(std::move(tail), reduced, others, ord);
        V r{reduced[k].front()};
        r.insert(r.end(), t.begin(), t.end());
        reduced[k] = std::move(r);
    }
    std::sort(reduced.begin(), reduced.end(), [&](const V& a, const V& b) { return ord.greater(b.front().m, a.front().m); });
    return GroebnerBasis<Field>(ideal.vars(), ideal.field(), ord, std::move(reduced));
}

/// Normal form of f with respect to a Groebner basis.
template <class Field>
Polynomial<Field> normal_form(const Polynomial<Field>& f, const GroebnerBasis<Field>& g) {
    return g.normal_form(f);
}

/// S-polynomial of two polynomials in a given order (used to audit bases).
template <class Field>
Polynomial<Field> s_polynomial(const Polynomial<Field>& a, const Polynomial<Field>& b, const MonomialOrder& ord) {
    auto va = detail::to_gvec(a, ord), vb = detail::to_gvec(b, ord);
    const Monomial l = lcm(va.front().m, vb.front().m);
    const auto ca = inverse(va.front().c), cb = inverse(vb.front().c);
    const Polynomial<Field> ta = Polynomial<Field>::monomial(a.vars(), a.ring(), va.front().m.quotient_of(l), ca);
    const Polynomial<Field> tb = Polynomial<Field>::monomial(a.vars(), a.ring(), vb.front().m.quotient_of(l), cb);
    return ta * a - tb * b;
}

}  // namespace charpair
