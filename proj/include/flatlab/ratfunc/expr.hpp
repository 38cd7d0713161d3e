#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>

#include "flatlab/errors.hpp"
#include "flatlab/exactnum/rational.hpp"
#include "flatlab/ratfunc/ratfunc.hpp"

namespace flatlab {

/// Recursive-descent parser for the expression grammar
///
///   expr   := ['-'] term (('+' | '-') ['-'] term)*
///   term   := factor (('*' | '/') factor)*
///   factor := base ('^' unsigned-integer)?
///   base   := 't' | 'x' | integer | '(' expr ')'
///
/// A rational literal a/b is the quotient of two integers. Whitespace is
/// ignored. Either `t` or `x` may name the variable, but not both.
template <class K>
class ExprParser {
public:
    using value_type = typename K::value_type;

    ExprParser(std::string_view text, K field) : text_(text), field_(std::move(field)) {}

    RatFunc<K> parse() {
        RatFunc<K> r = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return r;
    }

    /// The variable letter seen while parsing ('t' if none appeared).
    char variable() const { return var_ == 0 ? 't' : var_; }

private:
    static constexpr unsigned long kMaxExponent = 100000;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc<K> signed_term() {
        if (accept('-')) return -term();
        return term();
    }

    RatFunc<K> expr() {
        RatFunc<K> acc = signed_term();
        while (true) {
            if (accept('+')) {
                acc = acc + signed_term();
            } else if (accept('-')) {
                acc = acc - signed_term();
            } else {
                return acc;
            }
        }
    }

    RatFunc<K> term() {
        RatFunc<K> acc = factor();
        while (true) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                RatFunc<K> d = factor();
                if (d.is_zero()) throw DivisionByZero("division by zero at position " + std::to_string(at));
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RatFunc<K> factor() {
        RatFunc<K> b = base();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == start) fail("expected unsigned integer exponent");
            const std::string digits(text_.substr(start, pos_ - start));
            if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) fail("exponent too large");
            b = b.pow(static_cast<long long>(std::stoul(digits)));
        }
        return b;
    }

    RatFunc<K> base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == 't' || c == 'x') {
            if (var_ != 0 && var_ != c) fail("mixed variable names");
            var_ = c;
            ++pos_;
            return RatFunc<K>::identity(field_);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const BigInt n(std::string(text_.substr(start, pos_ - start)));
            return RatFunc<K>::constant(field_, field_.from_bigint(n));
        }
        if (c == '(') {
            ++pos_;
            RatFunc<K> inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    K field_;
    std::size_t pos_ = 0;
    char var_ = 0;
};

template <class K>
RatFunc<K> rf_parse(std::string_view text, const K& field) {
    return ExprParser<K>(text, field).parse();
}

namespace detail {

template <class K>
bool is_negative(const K&, const typename K::value_type& v) {
    if constexpr (std::is_same_v<K, Rationals>) {
        return v < 0;
    } else {
        return false;
    }
}

template <class K>
bool needs_parens(const K& field, const typename K::value_type& v) {
    if constexpr (std::is_same_v<K, Rationals>) {
        return false;
    } else {
        return !field.in_prime_field(v);
    }
}

}  // namespace detail

/// Prints in the parser's grammar, highest degree first, e.g. "t^3 - 3*t + 1/2".
template <class K>
std::string to_string(const Poly<K>& p, char var = 't') {
    const K& f = p.field();
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        auto c = p.coeffs()[i];
        if (f.is_zero(c)) continue;
        const bool negative = detail::is_negative(f, c);
        if (negative) c = f.neg(c);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string coeff = f.to_string(c);
        if (detail::needs_parens(f, c)) coeff = "(" + coeff + ")";
        if (i == 0) {
            out += coeff;
            continue;
        }
        if (!f.is_one(c)) out += coeff + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

template <class K>
std::string to_string(const RatFunc<K>& r, char var = 't') {
    const std::string num = to_string(r.num(), var);
    if (r.is_polynomial()) return num;
    auto is_single_term = [&](const Poly<K>& p) {
        std::size_t nonzero = 0;
        for (const auto& c : p.coeffs()) nonzero += r.field().is_zero(c) ? 0 : 1;
        return nonzero == 1;
    };
    std::string out = is_single_term(r.num()) ? num : "(" + num + ")";
    const bool bare_den = is_single_term(r.den());  // den is monic, so a single term is t^k
    out += "/";
    out += bare_den ? to_string(r.den(), var) : "(" + to_string(r.den(), var) + ")";
    return out;
}

}  // namespace flatlab
