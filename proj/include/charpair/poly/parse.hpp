#pragma once

// Recursive-descent parser for polynomial text.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' integer]
//   atom   := integer | identifier | '(' expr ')'
//
// Division is only accepted by a nonzero constant over a field. Over an
// extension field the identifier "g" denotes the field generator unless it
// is one of the variables.

#include <cctype>
#include <string>
#include <string_view>

#include "charpair/poly/polynomial.hpp"

namespace charpair {

namespace detail {

template <class Ring>
class PolyParser {
public:
    PolyParser(std::string_view text, const Vars& vars, const Ring& ring) : s_(text), vars_(vars), ring_(ring) {}

    Polynomial<Ring> parse() {
        auto p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    using P = Polynomial<Ring>;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    P expr() {
        P acc(vars_, ring_);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        P t = term();
        acc = neg ? -t : t;
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    P term() {
        P acc = factor();
        while (true) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                P d = factor();
                if constexpr (!Ring::is_field) {
                    pos_ = at;
                    fail("division is not available over " + ring_.name());
                } else {
                    if (!d.is_constant() || d.is_zero()) {
                        pos_ = at;
                        fail("division only by a nonzero constant");
                    }
                    acc = inverse(d.constant_value()) * acc;
                }
            } else {
                break;
            }
        }
        return acc;
    }

    P factor() {
        P base = atom();
        if (eat('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            const std::string digits(s_.substr(start, pos_ - start));
            if (digits.size() > 5 || std::stoul(digits) > 0xFFFFUL) {
                pos_ = start;
                fail("exponent too large");
            }
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    P atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            P inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const BigInt n(std::string(s_.substr(start, pos_ - start)));
            return P::constant(vars_, ring_, ring_.from_integer(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            const int idx = vars_.index(name);
            if (idx >= 0) return P::variable(vars_, ring_, static_cast<std::size_t>(idx));
            if constexpr (std::is_same_v<Ring, FiniteField>) {
                if (name == "g" && ring_.degree() > 1) return P::constant(vars_, ring_, ring_.element(ring_.characteristic()));
            }
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    const Vars& vars_;
    const Ring& ring_;
};

}  // namespace detail

template <class Ring>
Polynomial<Ring> parse_polynomial(std::string_view text, const Vars& vars, const Ring& ring) {
    return detail::PolyParser<Ring>(text, vars, ring).parse();
}

/// Parses a field element written in the generator symbol "g".
inline FFElem parse_field_element(std::string_view text, const FiniteField& field) {
    const auto p = parse_polynomial(text, Vars{}, field);
    return p.constant_value();
}

inline Rational parse_rational(std::string_view text) { return parse_polynomial(text, Vars{}, RationalField{}).constant_value(); }

}  // namespace charpair
