#pragma once

// Bivariate power series in (u, v) truncated at total degree N.
//
// A series of order N knows its coefficients for total degree < N. Binary
// operations work at the smaller of the two orders; dividing by a variable
// loses one degree of precision.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/finite_field.hpp"
#include "charpair/error.hpp"
#include "charpair/poly/polynomial.hpp"

namespace charpair {

template <class Field>
class TruncatedSeries {
public:
    using C = typename Field::value_type;

    TruncatedSeries() = default;
    TruncatedSeries(Field f, unsigned order, std::string u = "u", std::string v = "v")
        : field_(f), n_(order), u_(std::move(u)), v_(std::move(v)), c_(size_for(order), f.zero()) {
        if (order == 0) throw DomainError("truncation order must be positive");
    }

    static TruncatedSeries constant(Field f, unsigned order, const C& c) {
        TruncatedSeries s(f, order);
        s.c_[0] = c;
        return s;
    }
    /// u^i v^j as a series; zero if beyond the order.
    static TruncatedSeries monomial(Field f, unsigned order, unsigned i, unsigned j, const C& c) {
        TruncatedSeries s(f, order);
        if (i + j < order) s.c_[idx(i, j)] = c;
        return s;
    }
    static TruncatedSeries u(Field f, unsigned order) { return monomial(f, order, 1, 0, f.one()); }
    static TruncatedSeries v(Field f, unsigned order) { return monomial(f, order, 0, 1, f.one()); }
    /// Polynomial in two variables, the first playing u and the second v.
    static TruncatedSeries from_polynomial(const Polynomial<Field>& p, unsigned order) {
        if (p.vars().size() != 2) throw DomainError("series need a polynomial in two variables");
        TruncatedSeries s(p.ring(), order, p.vars()[0], p.vars()[1]);
        for (const auto& t : p.terms())
            if (t.m.degree() < order) s.c_[idx(t.m.e[0], t.m.e[1])] = t.c;
        return s;
    }

    const Field& field() const { return field_; }
    unsigned order() const { return n_; }
    /// Same coefficients, printed with other variable names.
    TruncatedSeries renamed(std::string u, std::string v) const {
        TruncatedSeries s = *this;
        s.u_ = std::move(u);
        s.v_ = std::move(v);
        return s;
    }
    C coeff(unsigned i, unsigned j) const {
        if (i + j >= n_) throw PrecisionError("coefficient beyond truncation order");
        return c_[idx(i, j)];
    }
    void set(unsigned i, unsigned j, const C& c) {
        if (i + j >= n_) throw PrecisionError("coefficient beyond truncation order");
        c_[idx(i, j)] = c;
    }
    C constant_term() const { return c_[0]; }
    bool is_unit() const { return !charpair::is_zero(c_[0]); }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const C& c) { return charpair::is_zero(c); });
    }
    /// Lowest total degree with a nonzero coefficient, or the order if none.
    unsigned valuation() const {
        for (unsigned d = 0; d < n_; ++d)
            for (unsigned j = 0; j <= d; ++j)
                if (!charpair::is_zero(c_[idx(d - j, j)])) return d;
        return n_;
    }

    TruncatedSeries truncated(unsigned order) const {
        if (order > n_) throw PrecisionError("cannot raise truncation order");
        TruncatedSeries s(field_, order, u_, v_);
        std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(size_for(order)), s.c_.begin());
        return s;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        const unsigned n = std::min(a.n_, b.n_);
        TruncatedSeries s(a.field_, n, a.u_, a.v_);
        for (std::size_t k = 0; k < s.c_.size(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a) {
        TruncatedSeries s = a;
        for (auto& c : s.c_) c = -c;
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const unsigned n = std::min(a.n_, b.n_);
        TruncatedSeries s(a.field_, n, a.u_, a.v_);
        for (unsigned d1 = 0; d1 < n; ++d1)
            for (unsigned j1 = 0; j1 <= d1; ++j1) {
                const C& x = a.c_[idx(d1 - j1, j1)];
                if (charpair::is_zero(x)) continue;
                for (unsigned d2 = 0; d1 + d2 < n; ++d2)
                    for (unsigned j2 = 0; j2 <= d2; ++j2) {
                        const C& y = b.c_[idx(d2 - j2, j2)];
                        if (charpair::is_zero(y)) continue;
                        C& z = s.c_[idx(d1 - j1 + d2 - j2, j1 + j2)];
                        z = z + x * y;
                    }
            }
        return s;
    }
    friend TruncatedSeries operator*(const C& k, const TruncatedSeries& a) {
        TruncatedSeries s = a;
        for (auto& c : s.c_) c = k * c;
        return s;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        const unsigned n = std::min(a.n_, b.n_);
        for (std::size_t k = 0; k < size_for(n); ++k)
            if (!(a.c_[k] == b.c_[k])) return false;
        return true;
    }

    TruncatedSeries pow(unsigned e) const {
        TruncatedSeries r = constant(field_, n_, field_.one()), b = *this;
        while (e) {
            if (e & 1U) r = r * b;
            e >>= 1U;
            if (e) b = b * b;
        }
        return r;
    }

    /// Multiplicative inverse of a unit.
    TruncatedSeries invert() const {
        if (!is_unit()) throw DomainError("series is not a unit");
        // r = c0^{-1} * sum_k (-x)^k with x = s/c0 - 1
        const C c0inv = inverse(c_[0]);
        TruncatedSeries x = c0inv * (*this);
        x.c_[0] = field_.zero();
        TruncatedSeries r = constant(field_, n_, field_.one());
        TruncatedSeries term = r;
        const TruncatedSeries negx = -x;
        for (unsigned k = 1; k < n_; ++k) {
            term = term * negx;
            r = r + term;
        }
        return c0inv * r;
    }

    /// Exact division by u^i v^j; coefficients below must vanish. Loses i+j degrees of precision.
    TruncatedSeries divide_by_monomial(unsigned i, unsigned j) const {
        if (i + j >= n_) throw PrecisionError("division exhausts the truncation order");
        TruncatedSeries s(field_, n_ - i - j, u_, v_);
        for (unsigned d = 0; d < n_; ++d)
            for (unsigned b = 0; b <= d; ++b) {
                const unsigned a = d - b;
                const C& c = c_[idx(a, b)];
                if (charpair::is_zero(c)) continue;
                if (a < i || b < j) throw DomainError("series not divisible by monomial");
                s.c_[idx(a - i, b - j)] = c;
            }
        return s;
    }

    /// Substitutes u -> phi_u, v -> phi_v (both without constant term).
    TruncatedSeries compose(const TruncatedSeries& phi_u, const TruncatedSeries& phi_v) const {
        if (!charpair::is_zero(phi_u.constant_term()) || !charpair::is_zero(phi_v.constant_term()))
            throw DomainError("composition needs series without constant term");
        const unsigned n = std::min({n_, phi_u.n_, phi_v.n_});
        std::vector<TruncatedSeries> up(n), vp(n);
        up[0] = vp[0] = constant(field_, n, field_.one());
        for (unsigned k = 1; k < n; ++k) {
            up[k] = up[k - 1] * phi_u;
            vp[k] = vp[k - 1] * phi_v;
        }
        TruncatedSeries r(field_, n, u_, v_);
        for (unsigned d = 0; d < n; ++d)
            for (unsigned b = 0; b <= d; ++b) {
                const C& c = c_[idx(d - b, b)];
                if (charpair::is_zero(c)) continue;
                r = r + c * (up[d - b] * vp[b]);
            }
        return r;
    }

    /// Square root in characteristic 2; only even exponents may occur. Precision halves.
    TruncatedSeries frobenius_sqrt_series() const {
        if (field_.characteristic() != 2) throw DomainError("series square root requires characteristic 2");
        const unsigned m = (n_ + 1) / 2;
        TruncatedSeries s(field_, m, u_, v_);
        for (unsigned d = 0; d < n_; ++d)
            for (unsigned b = 0; b <= d; ++b) {
                const unsigned a = d - b;
                const C& c = c_[idx(a, b)];
                if (charpair::is_zero(c)) continue;
                if (a % 2 || b % 2) throw DomainError("series is not a square");
                s.c_[idx(a / 2, b / 2)] = charpair::frobenius_sqrt(c);
            }
        return s;
    }

    /// Some r with r^n = s for a unit s; n prime to the characteristic uses Newton iteration.
    TruncatedSeries nth_root(unsigned n) const {
        if (n == 0) throw DomainError("zeroth root");
        if (!is_unit()) throw DomainError("root of a non-unit series");
        const auto p = field_.characteristic();
        if (n % p == 0) {
            if (p != 2) throw DomainError("p-th roots only in characteristic 2");
            return frobenius_sqrt_series().nth_root(n / 2);
        }
        if (n == 1) return *this;
        // constant term root by scanning the field
        std::optional<C> r0;
        for (const C& x : field_.elements())
            if (charpair::pow(x, n) == c_[0]) {
                r0 = x;
                break;
            }
        if (!r0) throw DomainError("constant term has no n-th root in " + field_.name());
        TruncatedSeries r = constant(field_, n_, *r0);
        const C n_inv = inverse(field_.from_int(n));
        for (unsigned it = 0; it < n_ + 1; ++it) {
            const TruncatedSeries rn1 = r.pow(n - 1);
            TruncatedSeries next = r - n_inv * ((rn1 * r - *this) * rn1.invert());
            if (next == r) break;
            r = next;
        }
        return r;
    }

    std::string to_string() const {
        std::string out;
        for (unsigned d = 0; d < n_; ++d)
            for (unsigned b = 0; b <= d; ++b) {
                const unsigned a = d - b;
                const C& c = c_[idx(a, b)];
                if (charpair::is_zero(c)) continue;
                if (!out.empty()) out += " + ";
                std::string mono;
                if (a) mono += u_ + (a > 1 ? "^" + std::to_string(a) : "");
                if (b) mono += (mono.empty() ? "" : "*") + v_ + (b > 1 ? "^" + std::to_string(b) : "");
                const std::string cs = charpair::to_string(c);
                if (mono.empty()) out += cs;
                else if (cs == "1") out += mono;
                else out += "(" + cs + ")*" + mono;
            }
        return (out.empty() ? "0" : out) + " + O(" + std::to_string(n_) + ")";
    }

private:
    static std::size_t size_for(unsigned n) { return static_cast<std::size_t>(n) * (n + 1) / 2; }
    static std::size_t idx(unsigned i, unsigned j) {
        const std::size_t d = i + j;
        return d * (d + 1) / 2 + j;
    }

    Field field_{};
    unsigned n_ = 0;
    std::string u_ = "u", v_ = "v";
    std::vector<C> c_;
};

using FSeries = TruncatedSeries<FiniteField>;

/// Inverse of a map germ (phi_u, phi_v) with invertible linear part, by fixed-point iteration.
template <class Field>
std::pair<TruncatedSeries<Field>, TruncatedSeries<Field>> invert_map(const TruncatedSeries<Field>& phi_u,
                                                                   const TruncatedSeries<Field>& phi_v) {
    using S = TruncatedSeries<Field>;
    const Field f = phi_u.field();
    const unsigned n = std::min(phi_u.order(), phi_v.order());
    if (n < 2) throw PrecisionError("map inversion needs order at least 2");
    using C = typename Field::value_type;
    const C a = phi_u.coeff(1, 0), b = phi_u.coeff(0, 1), c = phi_v.coeff(1, 0), d = phi_v.coeff(0, 1);
    const C det = a * d - b * c;
    if (is_zero(det)) throw DomainError("map germ has singular linear part");
    const C di = inverse(det);
    const S U = S::u(f, n), V = S::v(f, n);
    // nonlinear parts
    const S hu = phi_u - (a * U + b * V), hv = phi_v - (c * U + d * V);
    S psi_u = U, psi_v = V;
    for (unsigned it = 0; it <= n; ++it) {
        const S ru = U - hu.compose(psi_u, psi_v), rv = V - hv.compose(psi_u, psi_v);
        // apply L^{-1} = det^{-1} [[d, -b], [-c, a]]
        const S nu = di * (d * ru - b * rv), nv = di * (a * rv - c * ru);
        if (nu == psi_u && nv == psi_v) break;
        psi_u = nu;
        psi_v = nv;
    }
    return {psi_u, psi_v};
}

}  // namespace charpair
