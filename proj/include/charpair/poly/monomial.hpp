#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "charpair/error.hpp"

namespace charpair {

inline constexpr std::size_t kMaxVars = 10;

/// Ordered list of variable names shared between polynomials of one ring.
class Vars {
public:
    Vars() : names_(std::make_shared<const std::vector<std::string>>()) {}
    Vars(std::initializer_list<std::string> names) : Vars(std::vector<std::string>(names)) {}
    explicit Vars(std::vector<std::string> names)
        : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
        if (names_->size() > kMaxVars) throw DomainError("too many variables (max " + std::to_string(kMaxVars) + ")");
        for (std::size_t i = 0; i < names_->size(); ++i)
            for (std::size_t j = i + 1; j < names_->size(); ++j)
                if ((*names_)[i] == (*names_)[j]) throw DomainError("duplicate variable " + (*names_)[i]);
    }

    std::size_t size() const { return names_->size(); }
    const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }

    /// Index of a variable name, or -1.
    int index(const std::string& name) const {
        for (std::size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == name) return static_cast<int>(i);
        return -1;
    }
    std::size_t require(const std::string& name) const {
        const int i = index(name);
        if (i < 0) throw DomainError("unknown variable " + name);
        return static_cast<std::size_t>(i);
    }

    Vars without(std::size_t i) const {
        std::vector<std::string> n = *names_;
        n.erase(n.begin() + static_cast<std::ptrdiff_t>(i));
        return Vars(std::move(n));
    }
    Vars with_prepended(const std::string& name) const {
        std::vector<std::string> n = *names_;
        n.insert(n.begin(), name);
        return Vars(std::move(n));
    }

    friend bool operator==(const Vars& a, const Vars& b) { return a.names_ == b.names_ || *a.names_ == *b.names_; }
    friend bool operator!=(const Vars& a, const Vars& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector padded with zeros up to kMaxVars.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    static Monomial var(std::size_t i, unsigned power = 1) {
        Monomial m;
        m.e[i] = static_cast<std::uint16_t>(power);
        return m;
    }
    static Monomial from(const std::vector<unsigned>& exps) {
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i) m.e[i] = static_cast<std::uint16_t>(exps[i]);
        return m;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](std::uint16_t x) { return x == 0; });
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    /// Requires divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(o.e[i] - e[i]);
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            const unsigned s = unsigned{a.e[i]} + b.e[i];
            if (s > 0xFFFFU) throw DomainError("exponent overflow");
            r.e[i] = static_cast<std::uint16_t>(s);
        }
        return r;
    }
    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }
    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::min(a.e[i], b.e[i]);
        return r;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

    std::string to_string(const Vars& vars) const {
        std::string out;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (e[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += vars[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
        return out.empty() ? "1" : out;
    }
};

/// Graded reverse lexicographic comparison: returns true if a > b.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = kMaxVars; i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}

inline bool lex_greater(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

}  // namespace charpair
