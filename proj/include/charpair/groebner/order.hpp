#pragma once

#include <string>

#include "charpair/poly/monomial.hpp"

namespace charpair {

/// Admissible monomial order: grevlex, lex, or a two-block elimination order
/// (grevlex on the first `split` variables, ties broken by grevlex on the rest).
struct MonomialOrder {
    enum class Kind { Grevlex, Lex, Block };
    Kind kind = Kind::Grevlex;
    std::size_t split = 0;

    static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
    static MonomialOrder lex() { return {Kind::Lex, 0}; }
    static MonomialOrder block(std::size_t split) { return {Kind::Block, split}; }

    /// True if a > b.
    bool greater(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::Grevlex:
                return grevlex_greater(a, b);
            case Kind::Lex:
                return lex_greater(a, b);
            case Kind::Block: {
                Monomial a1, b1, a2, b2;
                for (std::size_t i = 0; i < kMaxVars; ++i) {
                    (i < split ? a1 : a2).e[i] = a.e[i];
                    (i < split ? b1 : b2).e[i] = b.e[i];
                }
                if (a1 != b1) return grevlex_greater(a1, b1);
                return grevlex_greater(a2, b2);
            }
        }
        return false;
    }

    std::string name() const {
        switch (kind) {
            case Kind::Grevlex:
                return "grevlex";
            case Kind::Lex:
                return "lex";
            case Kind::Block:
                return "block(" + std::to_string(split) + ")";
        }
        return "?";
    }
};

}  // namespace charpair
