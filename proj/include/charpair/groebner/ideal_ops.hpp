#pragma once

// Zero-dimensional ideal computations: standard monomials, quotient length,
// saturation, local length at the origin, minimal polynomials and points.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "charpair/algebra/univariate.hpp"
#include "charpair/groebner/buchberger.hpp"
#include "charpair/poly/rational_function.hpp"

namespace charpair {

/// Dimension of a quotient ring: a count or INFINITE.
struct Length {
    bool infinite = false;
    std::uint64_t value = 0;

    static Length finite(std::uint64_t n) { return {false, n}; }
    static Length infinity() { return {true, 0}; }
    friend bool operator==(const Length& a, const Length& b) { return a.infinite == b.infinite && a.value == b.value; }
    friend Length operator+(const Length& a, const Length& b) {
        if (a.infinite || b.infinite) return infinity();
        return finite(a.value + b.value);
    }
    std::string to_string() const { return infinite ? "INFINITE" : std::to_string(value); }
};

namespace detail {

inline bool divisible_by_any(const Monomial& m, const std::vector<Monomial>& leads) {
    return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
}

inline void enumerate_standard(std::size_t var, std::size_t n, Monomial& cur, const std::vector<Monomial>& leads,
                               std::vector<Monomial>& out, std::uint64_t cap) {
    if (var == n) {
        out.push_back(cur);
        if (out.size() > cap) throw ResourceError("too many standard monomials");
        return;
    }
    const std::uint16_t saved = cur.e[var];
    while (!divisible_by_any(cur, leads)) {
        enumerate_standard(var + 1, n, cur, leads, out, cap);
        ++cur.e[var];
    }
    cur.e[var] = saved;
}

}  // namespace detail

/// True iff every variable has a pure power among the leading monomials.
inline bool is_zero_dimensional(const std::vector<Monomial>& leads, std::size_t nvars) {
    for (std::size_t i = 0; i < nvars; ++i) {
        bool found = false;
        for (const auto& l : leads) {
            if (l.e[i] == 0) continue;
            bool pure = true;
            for (std::size_t j = 0; j < kMaxVars; ++j)
                if (j != i && l.e[j]) pure = false;
            if (pure) found = true;
        }
        if (!found) return false;
    }
    return true;
}

/// Monomials not divisible by any leading monomial; empty optional when there are infinitely many.
template <class Field>
std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis<Field>& g, std::uint64_t cap = 1000000) {
    const auto leads = g.leading_monomials();
    if (g.is_unit()) return std::vector<Monomial>{};
    if (!is_zero_dimensional(leads, g.vars().size())) return std::nullopt;
    std::vector<Monomial> out;
    Monomial cur;
    detail::enumerate_standard(0, g.vars().size(), cur, leads, out, cap);
    return out;
}

template <class Field>
Length quotient_length(const GroebnerBasis<Field>& g) {
    const auto s = standard_monomials(g);
    if (!s) return Length::infinity();
    return Length::finite(s->size());
}

template <class Field>
Length quotient_length(const Ideal<Field>& I, const GroebnerOptions& opt = {}) {
    if (I.generators().empty()) return I.vars().size() ? Length::infinity() : Length::finite(1);
    return quotient_length(buchberger(I, MonomialOrder::grevlex(), opt));
}

/// Moves every generator into a variable list extended by one leading variable.
template <class Field>
Ideal<Field> lift_ideal(const Ideal<Field>& I, const Vars& extended) {
    std::vector<Polynomial<Field>> g;
    for (const auto& f : I.generators()) g.push_back(rebase(f, extended));
    return Ideal<Field>(extended, I.field(), std::move(g));
}

/// Fresh variable name not in the list.
inline std::string fresh_name(const Vars& vars, const std::string& base = "t_") {
    std::string n = base;
    while (vars.index(n) >= 0) n += "_";
    return n;
}

/// Elimination ideal of I with respect to its first variable, in the remaining variables.
template <class Field>
Ideal<Field> eliminate_first(const Ideal<Field>& I, const GroebnerOptions& opt = {}) {
    const auto g = buchberger(I, MonomialOrder::block(1), opt);
    const Vars rest = I.vars().without(0);
    std::vector<Polynomial<Field>> out;
    for (const auto& p : g.polynomials())
        if (!p.uses_var(0)) out.push_back(dehomogenize(p, 0));
    return Ideal<Field>(rest, I.field(), std::move(out));
}

/// (I : f^infinity) via the Rabinowitsch trick and elimination.
template <class Field>
Ideal<Field> saturate(const Ideal<Field>& I, const Polynomial<Field>& f, const GroebnerOptions& opt = {}) {
    if (f.is_zero()) throw DomainError("saturation by zero");
    if (f.is_constant()) return I;
    const Vars ext = I.vars().with_prepended(fresh_name(I.vars()));
    Ideal<Field> J = lift_ideal(I, ext);
    const auto t = Polynomial<Field>::variable(ext, I.field(), 0);
    J.add(t * rebase(f, ext) - Polynomial<Field>::constant(ext, I.field(), I.field().one()));
    return eliminate_first(J, opt);
}

/// Ideal quotient (I : f), from I intersected with (f) by elimination.
template <class Field>
Ideal<Field> ideal_quotient(const Ideal<Field>& I, const Polynomial<Field>& f, const GroebnerOptions& opt = {}) {
    if (f.is_zero()) throw DomainError("ideal quotient by zero");
    const Vars ext = I.vars().with_prepended(fresh_name(I.vars()));
    const auto t = Polynomial<Field>::variable(ext, I.field(), 0);
    const auto one = Polynomial<Field>::constant(ext, I.field(), I.field().one());
    Ideal<Field> J(ext, I.field(), {});
    for (const auto& g : I.generators()) J.add(t * rebase(g, ext));
    J.add((one - t) * rebase(f, ext));
    const Ideal<Field> meet = eliminate_first(J, opt);
    std::vector<Polynomial<Field>> out;
    for (const auto& g : meet.generators()) out.push_back(exact_divide(g, f));
    return Ideal<Field>(I.vars(), I.field(), std::move(out));
}

/// All monomials of total degree d in n variables.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d) {
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == n) {
            cur.e[i] = static_cast<std::uint16_t>(left);
            out.push_back(cur);
            cur.e[i] = 0;
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            cur.e[i] = static_cast<std::uint16_t>(k);
            rec(i + 1, left - k);
        }
        cur.e[i] = 0;
    };
    if (n == 0) return {Monomial{}};
    rec(0, d);
    return out;
}

/// Length of the local ring of V(I) at the origin: len(I + m^N) for N large,
/// detected by stabilization. Infinite if the origin is not isolated (no
/// stabilization before max_n).
template <class Field>
Length local_length_at_origin(const Ideal<Field>& I, unsigned max_n = 64, const GroebnerOptions& opt = {}) {
    const std::size_t n = I.vars().size();
    // not on V(I) at all
    for (const auto& f : I.generators())
        if (!is_zero(f.constant_value())) return Length::finite(0);
    std::uint64_t prev = 0;
    for (unsigned N = 1; N <= max_n; ++N) {
        Ideal<Field> J = I;
        for (const auto& m : monomials_of_degree(n, N)) J.add(Polynomial<Field>::monomial(I.vars(), I.field(), m, I.field().one()));
        const Length l = quotient_length(J, opt);
        if (l.infinite) throw DomainError("local length computation lost zero-dimensionality");
        if (N > 1 && l.value == prev) return l;
        prev = l.value;
    }
    return Length::infinity();
}

/// Translates every generator so that the given point becomes the origin.
template <class Field>
Ideal<Field> translate_to_origin(const Ideal<Field>& I, const std::vector<typename Field::value_type>& point) {
    std::vector<Polynomial<Field>> images;
    for (std::size_t i = 0; i < I.vars().size(); ++i)
        images.push_back(Polynomial<Field>::variable(I.vars(), I.field(), i) +
                         Polynomial<Field>::constant(I.vars(), I.field(), point[i]));
    std::vector<Polynomial<Field>> g;
    for (const auto& f : I.generators()) g.push_back(substitute(f, images));
    return Ideal<Field>(I.vars(), I.field(), std::move(g));
}

/// Minimal polynomial of variable `var` in the quotient by a zero-dimensional ideal.
template <class Field>
UPoly<Field> minimal_polynomial(const GroebnerBasis<Field>& g, std::size_t var) {
    using C = typename Field::value_type;
    const auto std_mons = standard_monomials(g);
    if (!std_mons) throw DomainError("minimal polynomial needs a zero-dimensional ideal");
    const Field F = g.field();
    if (std_mons->empty()) return UPoly<Field>::constant(F, F.one());
    const std::size_t L = std_mons->size();
    auto coords = [&](const Polynomial<Field>& nf) {
        std::vector<C> v(L, F.zero());
        for (const auto& t : nf.terms()) {
            const auto it = std::find(std_mons->begin(), std_mons->end(), t.m);
            v[static_cast<std::size_t>(it - std_mons->begin())] = t.c;
        }
        return v;
    };
    // rows: reduced vectors with their combination of powers
    std::vector<std::vector<C>> rows, combos;
    std::vector<std::size_t> pivots;
    Polynomial<Field> power = Polynomial<Field>::constant(g.vars(), F, F.one());
    const auto x = Polynomial<Field>::variable(g.vars(), F, var);
    for (std::size_t k = 0; k <= L; ++k) {
        std::vector<C> v = coords(g.normal_form(power));
        std::vector<C> combo(L + 1, F.zero());
        combo[k] = F.one();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const C c = v[pivots[r]];
            if (is_zero(c)) continue;
            for (std::size_t i = 0; i < L; ++i) v[i] = v[i] - c * rows[r][i];
            for (std::size_t i = 0; i <= L; ++i) combo[i] = combo[i] - c * combos[r][i];
        }
        std::size_t piv = L;
        for (std::size_t i = 0; i < L; ++i)
            if (!is_zero(v[i])) {
                piv = i;
                break;
            }
        if (piv == L) {
            combo.resize(k + 1);
            return UPoly<Field>(F, std::move(combo)).monic();
        }
        const C inv = inverse(v[piv]);
        for (auto& c : v) c = c * inv;
        for (auto& c : combo) c = c * inv;
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivots.push_back(piv);
        power = g.normal_form(power * x);
    }
    throw DomainError("no linear dependency among powers (internal error)");
}

/// Number of distinct geometric points of a zero-dimensional ideal over a finite field.
inline Length geometric_point_count(const Ideal<FiniteField>& I, const GroebnerOptions& opt = {}) {
    const auto g = buchberger(I, MonomialOrder::grevlex(), opt);
    if (g.is_unit()) return Length::finite(0);
    if (!standard_monomials(g)) return Length::infinity();
    Ideal<FiniteField> R = I;
    for (std::size_t i = 0; i < I.vars().size(); ++i)
        R.add(from_upoly(radical(minimal_polynomial(g, i)), I.vars(), i));
    return quotient_length(R, opt);
}

/// A point with coordinates in some finite field.
struct FieldPoint {
    FiniteField field;
    std::vector<FFElem> coords;
};

/// Degree over F_p of the smallest subfield containing x.
inline unsigned element_degree(const FFElem& x) {
    const FiniteField f = field_of(x);
    for (unsigned d = 1; d <= f.degree(); ++d) {
        if (f.degree() % d) continue;
        FFElem y = x;
        for (unsigned i = 0; i < d; ++i) y = pow(y, f.characteristic());
        if (y == x) return d;
    }
    return f.degree();
}

struct PointSearch {
    std::vector<FieldPoint> points;
    std::uint64_t expected = 0;
    bool complete = false;  // all geometric points found within the bound
};

/// Finds the geometric points of a zero-dimensional ideal over F_q by scanning
/// extension fields F_{q^j}, j <= k_max / deg(F_q). Each geometric point is
/// reported once, in the smallest scanned field containing it.
inline PointSearch find_points(const Ideal<FiniteField>& I, unsigned k_max, const GroebnerOptions& opt = {}) {
    PointSearch out;
    const auto g = buchberger(I, MonomialOrder::grevlex(), opt);
    if (g.is_unit()) {
        out.complete = true;
        return out;
    }
    if (!standard_monomials(g)) throw DomainError("point search needs a zero-dimensional ideal");
    const FiniteField base = I.field();
    const std::size_t n = I.vars().size();
    std::vector<UPoly<FiniteField>> rads;
    Ideal<FiniteField> R = I;
    for (std::size_t i = 0; i < n; ++i) {
        rads.push_back(radical(minimal_polynomial(g, i)));
        R.add(from_upoly(rads.back(), I.vars(), i));
    }
    out.expected = quotient_length(R, opt).value;
    const unsigned k0 = base.degree();
    for (unsigned j = 1; k0 * j <= k_max && out.points.size() < out.expected; ++j) {
        const FiniteField ext = FiniteField::get(base.characteristic(), k0 * j);
        const FieldEmbedding e(base, ext);
        std::vector<std::vector<FFElem>> roots(n);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [r, m] : roots_by_scan(map_coefficients(rads[i], e))) roots[i].push_back(r);
        std::vector<FPoly> gens;
        for (const auto& f : I.generators()) gens.push_back(base_change(f, e));
        std::vector<std::size_t> idx(n, 0);
        if (std::any_of(roots.begin(), roots.end(), [](const auto& r) { return r.empty(); })) continue;
        while (true) {
            std::vector<FFElem> pt(n);
            unsigned deg = 1;
            for (std::size_t i = 0; i < n; ++i) {
                pt[i] = roots[i][idx[i]];
                deg = std::lcm(deg, element_degree(pt[i]));
            }
            // minimal level containing both the coordinates and the base field
            const unsigned level = std::lcm(deg, k0) / k0;
            if (level == j && std::all_of(gens.begin(), gens.end(), [&](const FPoly& f) { return is_zero(evaluate(f, pt)); }))
                out.points.push_back({ext, pt});
            std::size_t i = 0;
            while (i < n && ++idx[i] == roots[i].size()) idx[i++] = 0;
            if (i == n) break;
        }
    }
    out.complete = out.points.size() == out.expected;
    return out;
}

}  // namespace charpair
