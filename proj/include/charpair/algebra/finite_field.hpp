#pragma once

// Finite fields F_{p^k} = F_p[g]/(modulus).
//
// Field descriptors are interned in a process-wide registry and never freed,
// so elements carry a plain pointer to their descriptor. Descriptors are
// immutable after construction; the registry lock only guards creation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charpair/algebra/rationals.hpp"
#include "charpair/error.hpp"

namespace charpair {

namespace detail {

// Dense polynomial over F_p with coefficients in [0, p), low degree first.
using DigitPoly = std::vector<std::uint32_t>;

inline void trim(DigitPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw DomainError("element not invertible mod p");
    return static_cast<std::uint32_t>((t % static_cast<std::int64_t>(p) + p) % p);
}

// Remainder of a modulo monic b.
inline DigitPoly digit_mod(DigitPoly a, const DigitPoly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db && !a.empty()) {
        const std::uint32_t c = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * static_cast<std::uint64_t>(b[i])) % p);
        trim(a);
    }
    return a;
}

inline bool is_irreducible_by_trial_division(const DigitPoly& f, std::uint32_t p) {
    const std::size_t k = f.size() - 1;
    if (k <= 1) return k == 1;
    // every monic divisor of degree d, 1 <= d <= k/2
    for (std::size_t d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            DigitPoly g(d + 1);
            std::uint64_t x = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            g[d] = 1;
            if (digit_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

struct FieldData {
    std::uint32_t p = 0;
    unsigned k = 0;
    std::uint64_t q = 0;
    DigitPoly modulus;  // monic, degree k (empty for k == 1)
    bool tables = false;
    std::vector<std::uint32_t> log;  // log[v] for v != 0
    std::vector<std::uint64_t> exp;  // exp[i], i < 2(q-1)
    std::uint64_t primitive = 0;

    DigitPoly unpack(std::uint64_t v) const {
        DigitPoly d(k, 0);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        return d;
    }
    std::uint64_t pack(const DigitPoly& d) const {
        std::uint64_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
        return v;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (k == 1) return (a + b) % p;
        if (p == 2) return a ^ b;
        DigitPoly x = unpack(a), y = unpack(b);
        for (unsigned i = 0; i < k; ++i) x[i] = (x[i] + y[i]) % p;
        return pack(x);
    }
    std::uint64_t neg(std::uint64_t a) const {
        if (k == 1) return (p - a) % p;
        if (p == 2) return a;
        DigitPoly x = unpack(a);
        for (auto& c : x) c = (p - c) % p;
        return pack(x);
    }
    std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
        if (k == 1) return (a * b) % p;
        if (p == 2) {
            std::uint64_t r = 0;
            for (unsigned i = 0; i < k; ++i)
                if ((b >> i) & 1U) r ^= a << i;
            std::uint64_t mod = 0;
            for (unsigned i = 0; i <= k; ++i)
                if (modulus[i]) mod |= std::uint64_t{1} << i;
            for (unsigned i = 2 * k; i-- > k;)
                if ((r >> i) & 1U) r ^= mod << (i - k);
            return r;
        }
        DigitPoly x = unpack(a), y = unpack(b), z(2 * k, 0);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j)
                z[i + j] = static_cast<std::uint32_t>((z[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % p);
        return pack(digit_mod(std::move(z), modulus, p));
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        if (tables) return exp[log[a] + log[b]];
        return slow_mul(a, b);
    }
    std::uint64_t slow_pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1U) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1U;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw DomainError("division by zero in finite field");
        if (tables) return exp[(q - 1 - log[a]) % (q - 1)];
        if (k == 1) return inv_mod(static_cast<std::uint32_t>(a), p);
        return slow_pow(a, q - 2);
    }

    void build_tables() {
        if (q > (std::uint64_t{1} << 16)) return;
        std::vector<std::uint64_t> primes;
        std::uint64_t m = q - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(m);
        for (std::uint64_t g = 1; g < q; ++g) {
            bool ok = true;
            for (auto l : primes)
                if (slow_pow(g, (q - 1) / l) == 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            primitive = g;
            break;
        }
        log.assign(q, 0);
        exp.assign(2 * (q - 1), 0);
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i < q - 1; ++i) {
            exp[i] = exp[i + q - 1] = x;
            log[x] = static_cast<std::uint32_t>(i);
            x = slow_mul(x, primitive);
        }
        tables = true;
    }
};

inline DigitPoly first_irreducible(std::uint32_t p, unsigned k) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        DigitPoly f(k + 1);
        std::uint64_t x = idx;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        f[k] = 1;
        if (is_irreducible_by_trial_division(f, p)) return f;
    }
    throw DomainError("no irreducible polynomial found");
}

class FieldRegistry {
public:
    static FieldRegistry& instance() {
        static FieldRegistry r;
        return r;
    }
    const FieldData* get(std::uint32_t p, unsigned k, const DigitPoly* modulus) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!modulus) {
            auto a = defaults_.find({p, k});
            if (a != defaults_.end()) return a->second;
        }
        // keyed by the actual modulus so an explicit default modulus gives the same field
        DigitPoly m = k > 1 ? (modulus ? *modulus : first_irreducible(p, k)) : DigitPoly{};
        auto key = std::make_pair(std::make_pair(p, k), m);
        auto it = fields_.find(key);
        if (it != fields_.end()) {
            if (!modulus) defaults_[{p, k}] = it->second.get();
            return it->second.get();
        }
        auto d = std::make_unique<FieldData>();
        d->p = p;
        d->k = k;
        d->q = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (d->q > (std::uint64_t{1} << 62) / p) throw DomainError("field too large");
            d->q *= p;
        }
        if (k > 1) {
            d->modulus = m;
            if (d->modulus.size() != k + 1 || d->modulus.back() != 1)
                throw DomainError("modulus must be monic of degree k");
            if (!is_irreducible_by_trial_division(d->modulus, p))
                throw DomainError("modulus is reducible");
        }
        d->build_tables();
        const FieldData* out = d.get();
        fields_.emplace(std::move(key), std::move(d));
        if (!modulus) defaults_[{p, k}] = out;
        return out;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::pair<std::uint32_t, unsigned>, DigitPoly>, std::unique_ptr<FieldData>> fields_;
    std::map<std::pair<std::uint32_t, unsigned>, const FieldData*> defaults_;
};

}  // namespace detail

/// Element of a finite field. Trivially copyable; the descriptor outlives it.
struct FFElem {
    const detail::FieldData* f = nullptr;
    std::uint64_t v = 0;

    friend bool operator==(const FFElem& a, const FFElem& b) { return a.f == b.f && a.v == b.v; }
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }
    friend bool operator<(const FFElem& a, const FFElem& b) { return a.v < b.v; }

    FFElem& operator+=(const FFElem& o) { return *this = *this + o; }
    FFElem& operator-=(const FFElem& o) { return *this = *this - o; }
    FFElem& operator*=(const FFElem& o) { return *this = *this * o; }

    friend FFElem operator+(const FFElem& a, const FFElem& b) {
        check(a, b);
        return {a.f, a.f->add(a.v, b.v)};
    }
    friend FFElem operator-(const FFElem& a, const FFElem& b) {
        check(a, b);
        return {a.f, a.f->add(a.v, a.f->neg(b.v))};
    }
    friend FFElem operator-(const FFElem& a) { return {a.f, a.f->neg(a.v)}; }
    friend FFElem operator*(const FFElem& a, const FFElem& b) {
        check(a, b);
        return {a.f, a.f->mul(a.v, b.v)};
    }
    friend FFElem operator/(const FFElem& a, const FFElem& b) {
        check(a, b);
        return {a.f, a.f->mul(a.v, a.f->inv(b.v))};
    }

private:
    static void check(const FFElem& a, const FFElem& b) {
        if (a.f != b.f || a.f == nullptr) throw DomainError("finite field elements from different fields");
    }
};

inline bool is_zero(const FFElem& a) { return a.v == 0; }
inline FFElem inverse(const FFElem& a) { return {a.f, a.f->inv(a.v)}; }

inline FFElem pow(FFElem a, std::uint64_t e) {
    FFElem r{a.f, 1};
    if (a.f->tables && a.v != 0) {
        if (e == 0) return r;
        const std::uint64_t idx = (static_cast<std::uint64_t>(a.f->log[a.v]) * (e % (a.f->q - 1))) % (a.f->q - 1);
        return {a.f, a.f->exp[idx]};
    }
    while (e) {
        if (e & 1U) r = r * a;
        a = a * a;
        e >>= 1U;
    }
    return r;
}

/// Prints as an integer for prime fields and as a polynomial in the generator "g" otherwise.
inline std::string to_string(const FFElem& a) {
    if (a.f == nullptr) return "<invalid>";
    if (a.f->k == 1) return std::to_string(a.v);
    const auto d = a.f->unpack(a.v);
    std::string out;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += "+";
        const bool unit = d[i] == 1;
        if (i == 0) {
            out += std::to_string(d[i]);
            continue;
        }
        if (!unit) out += std::to_string(d[i]) + "*";
        out += "g";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

/// Handle on a finite field F_{p^k}; cheap to copy.
class FiniteField {
public:
    using value_type = FFElem;
    static constexpr bool is_field = true;

    FiniteField() = default;
    explicit FiniteField(const detail::FieldData* d) : d_(d) {}

    /// F_{p^k} with the lexicographically first monic irreducible modulus.
    static FiniteField get(std::uint32_t p, unsigned k = 1) {
        validate(p, k);
        return FiniteField(detail::FieldRegistry::instance().get(p, k, nullptr));
    }
    /// F_{p^k} with an explicit modulus (low degree first, monic).
    static FiniteField with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
        const unsigned k = static_cast<unsigned>(modulus.size()) - 1;
        validate(p, k);
        return FiniteField(detail::FieldRegistry::instance().get(p, k, &modulus));
    }

    std::uint32_t characteristic() const { return d_->p; }
    unsigned degree() const { return d_->k; }
    std::uint64_t order() const { return d_->q; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
    const detail::FieldData* data() const { return d_; }

    FFElem zero() const { return {d_, 0}; }
    FFElem one() const { return {d_, 1}; }
    FFElem from_int(std::int64_t n) const {
        const std::int64_t p = d_->p;
        return {d_, static_cast<std::uint64_t>(((n % p) + p) % p)};
    }
    FFElem from_integer(const BigInt& n) const {
        BigInt r = n % d_->p;
        if (r < 0) r += d_->p;
        return {d_, static_cast<std::uint64_t>(r)};
    }
    /// Element from its packed base-p digit encoding (digit i = coefficient of g^i).
    FFElem element(std::uint64_t packed) const {
        if (packed >= d_->q) throw DomainError("packed element out of range");
        return {d_, packed};
    }
    FFElem generator() const { return d_->k == 1 ? FFElem{d_, d_->primitive ? d_->primitive : 1} : FFElem{d_, d_->p}; }
    std::vector<FFElem> elements() const {
        std::vector<FFElem> out;
        out.reserve(d_->q);
        for (std::uint64_t v = 0; v < d_->q; ++v) out.push_back({d_, v});
        return out;
    }
    bool contains(const FFElem& a) const { return a.f == d_; }

    std::string name() const {
        if (d_->k == 1) return "GF(" + std::to_string(d_->p) + ")";
        return "GF(" + std::to_string(d_->p) + "^" + std::to_string(d_->k) + ")";
    }

    friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.d_ == b.d_; }
    friend bool operator!=(const FiniteField& a, const FiniteField& b) { return a.d_ != b.d_; }

private:
    static void validate(std::uint32_t p, unsigned k) {
        if (!is_probable_prime_small(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
        if (k == 0) throw DomainError("extension degree must be positive");
    }
    const detail::FieldData* d_ = nullptr;
};

inline FiniteField field_of(const FFElem& a) { return FiniteField(a.f); }

/// Square root in characteristic 2, computed as c^(2^(k-1)).
inline FFElem frobenius_sqrt(const FFElem& c) {
    if (c.f->p != 2) throw DomainError("frobenius_sqrt requires characteristic 2");
    FFElem r = c;
    for (unsigned i = 1; i < c.f->k; ++i) r = r * r;
    return r;
}

/// Absolute trace c + c^p + ... + c^(p^(k-1)), returned as an element of the prime field.
inline FFElem absolute_trace(const FFElem& c) {
    FFElem acc = c, x = c;
    for (unsigned i = 1; i < c.f->k; ++i) {
        x = pow(x, c.f->p);
        acc = acc + x;
    }
    // the trace lies in F_p, i.e. only the constant digit is set
    return FiniteField::get(c.f->p, 1).element(acc.v);
}

/// Solves x^2 + x = c over F_{2^k}; returns the smaller (by encoding) of the two roots.
inline std::optional<FFElem> artin_schreier_solve(const FFElem& c) {
    if (c.f->p != 2) throw DomainError("artin_schreier_solve requires characteristic 2");
    if (absolute_trace(c).v != 0) return std::nullopt;
    const unsigned k = c.f->k;
    // x -> x^2 + x is F_2-linear; solve the k x k system over F_2 by elimination.
    std::vector<std::uint64_t> cols(k);
    for (unsigned i = 0; i < k; ++i) {
        const FFElem b{c.f, std::uint64_t{1} << i};
        cols[i] = (b * b + b).v;
    }
    // rows: equation for output bit r; augmented with c's bit
    std::vector<std::uint64_t> rows(k, 0);
    for (unsigned r = 0; r < k; ++r) {
        std::uint64_t row = 0;
        for (unsigned i = 0; i < k; ++i)
            if ((cols[i] >> r) & 1U) row |= std::uint64_t{1} << i;
        if ((c.v >> r) & 1U) row |= std::uint64_t{1} << k;
        rows[r] = row;
    }
    std::vector<int> pivot_col;
    unsigned rank = 0;
    for (unsigned col = 0; col < k && rank < k; ++col) {
        unsigned sel = rank;
        while (sel < k && !((rows[sel] >> col) & 1U)) ++sel;
        if (sel == k) continue;
        std::swap(rows[sel], rows[rank]);
        for (unsigned r = 0; r < k; ++r)
            if (r != rank && ((rows[r] >> col) & 1U)) rows[r] ^= rows[rank];
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    std::uint64_t x = 0;
    for (unsigned r = 0; r < rank; ++r)
        if ((rows[r] >> k) & 1U) x |= std::uint64_t{1} << pivot_col[r];
    const FFElem sol{c.f, x};
    const FFElem other = sol + FFElem{c.f, 1};
    return other.v < sol.v ? other : sol;
}

/// Embedding F_{p^a} -> F_{p^b} for a | b, sending the generator to the smallest root of its modulus.
class FieldEmbedding {
public:
    FieldEmbedding() = default;
    FieldEmbedding(FiniteField from, FiniteField to) : from_(from), to_(to) {
        if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0)
            throw DomainError("no embedding " + from.name() + " -> " + to.name());
        if (from.degree() == 1 || from == to) {
            gen_image_ = from == to ? to.generator() : to.one();
            return;
        }
        const auto& mod = from.modulus();
        for (const FFElem& r : to.elements()) {
            FFElem acc = to.zero();
            for (std::size_t i = mod.size(); i-- > 0;) acc = acc * r + to.from_int(mod[i]);
            if (is_zero(acc)) {
                gen_image_ = r;
                return;
            }
        }
        throw DomainError("modulus has no root in target field");
    }

    FiniteField source() const { return from_; }
    FiniteField target() const { return to_; }

    FFElem operator()(const FFElem& a) const {
        if (a.f != from_.data()) throw DomainError("element not in embedding source");
        if (from_ == to_) return a;
        if (from_.degree() == 1) return to_.from_int(static_cast<std::int64_t>(a.v));
        const auto digits = a.f->unpack(a.v);
        FFElem acc = to_.zero();
        for (std::size_t i = digits.size(); i-- > 0;) acc = acc * gen_image_ + to_.from_int(digits[i]);
        return acc;
    }

private:
    FiniteField from_, to_;
    FFElem gen_image_;
};

}  // namespace charpair

template <>
struct std::hash<charpair::FFElem> {
    std::size_t operator()(const charpair::FFElem& a) const noexcept { return std::hash<std::uint64_t>{}(a.v); }
};
