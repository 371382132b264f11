#pragma once

// Recursive-descent parser for polynomial literals such as "T^3+2*T+1" or
// "(a+1)*T^2+a".  The arithmetic is supplied by an Ops object so the same
// grammar serves F_p[a] moduli and F_q[T] values.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (['*'] factor)*
//   factor  := primary ['^' integer]
//   primary := integer | identifier | '(' expr ')'

#include <cctype>
#include <string>
#include <string_view>

#include "fflcm/gf.hpp"

namespace fflcm::detail {

template <class Ops>
class ExprParser {
public:
    using Value = typename Ops::Value;

    ExprParser(std::string_view text, const Ops& ops) : s_(text), ops_(ops) {}

    Value parse() {
        Value v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected token");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::string tok = pos_ < s_.size() ? std::string(1, s_[pos_]) : std::string("<end>");
        throw ValidationError("malformed polynomial literal \"" + std::string(s_) + "\": " + what +
                              " at position " + std::to_string(pos_) + " (token '" + tok + "')");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '(';
    }

    Value expr() {
        bool negate = false;
        if (peek('-')) {
            negate = true;
            ++pos_;
        } else if (peek('+')) {
            ++pos_;
        }
        Value acc = term();
        if (negate) acc = ops_.neg(acc);
        for (;;) {
            if (peek('+')) {
                ++pos_;
                acc = ops_.add(acc, term());
            } else if (peek('-')) {
                ++pos_;
                acc = ops_.sub(acc, term());
            } else {
                return acc;
            }
        }
    }

    Value term() {
        Value acc = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = ops_.mul(acc, factor());
            } else if (starts_primary()) {
                acc = ops_.mul(acc, factor());
            } else {
                return acc;
            }
        }
    }

    Value factor() {
        Value base = primary();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            base = ops_.pow(base, integer());
        }
        return base;
    }

    unsigned long long integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        unsigned long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > (1ull << 40)) fail("integer too large");
            ++pos_;
        }
        return v;
    }

    Value primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return ops_.from_int(static_cast<long long>(integer()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            auto name = s_.substr(start, 1);
            auto v = ops_.ident(name);
            if (!v) {
                pos_ = start;
                fail("unknown identifier");
            }
            return *v;
        }
        fail("unexpected token");
    }

    std::string_view s_;
    const Ops& ops_;
    std::size_t pos_ = 0;
};

}  // namespace fflcm::detail
