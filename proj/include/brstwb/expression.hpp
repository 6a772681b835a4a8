#pragma once

#include "supoly.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace brstwb {

inline std::string format_monomial(const Roster& r, const Monomial& m) {
    std::string s;
    for (const auto& f : m) {
        if (!s.empty()) s += '*';
        s += r.name_of(f.var);
        if (f.exp > 1) s += "^" + std::to_string(f.exp);
    }
    return s;
}

inline std::string format_canonical(const SuPoly& p) {
    if (p.is_zero()) return "0";
    const Roster& r = *p.roster();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool negative = sgn(c) < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (m.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += format_monomial(r, m);
        } else {
            out += mag.get_str() + "*" + format_monomial(r, m);
        }
    }
    return out;
}

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, RosterPtr roster)
        : text_(text), roster_(std::move(roster)) {}

    SuPoly parse() {
        skip();
        if (pos_ == text_.size()) throw SyntaxError("empty expression", pos_);
        SuPoly e = expr();
        skip();
        if (pos_ != text_.size()) throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    SuPoly expr() {
        SuPoly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    SuPoly term() {
        bool negate = false;
        for (;;) {
            if (accept('-')) {
                negate = !negate;
            } else if (!accept('+')) {
                break;
            }
        }
        SuPoly acc = factor();
        while (accept('*')) acc = acc * factor();
        return negate ? -acc : acc;
    }

    SuPoly factor() {
        SuPoly base = atom();
        if (!accept('^')) return base;
        skip();
        std::size_t start = pos_;
        std::string digits = read_digits();
        if (digits.empty()) throw SyntaxError("expected exponent", start);
        unsigned long e = std::stoul(digits);
        SuPoly out = SuPoly::constant(roster_, 1);
        for (unsigned long i = 0; i < e; ++i) {
            out = out * base;
            if (out.is_zero()) break;
        }
        return out;
    }

    SuPoly atom() {
        skip();
        if (pos_ == text_.size()) throw SyntaxError("unexpected end of expression", pos_);
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            SuPoly e = expr();
            if (!accept(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num = read_digits();
            skip();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip();
                std::size_t start = pos_;
                std::string den = read_digits();
                if (den.empty()) throw SyntaxError("expected denominator", start);
                if (den.find_first_not_of('0') == std::string::npos) {
                    throw SyntaxError("zero denominator", start);
                }
                num += "/" + den;
            }
            return SuPoly::constant(roster_, parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string ident(text_.substr(start, pos_ - start));
            std::optional<VarKey> key;
            try {
                key = roster_->lookup(ident);
            } catch (const JetOrderOverflow&) {
                throw UnknownIdentifier(ident, start);
            }
            if (!key) throw UnknownIdentifier(ident, start);
            return SuPoly::variable(roster_, *key);
        }
        throw SyntaxError("unexpected '" + std::string(1, ch) + "'", pos_);
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    RosterPtr roster_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline SuPoly parse_expression(std::string_view text, const RosterPtr& roster) {
    return detail::ExpressionParser(text, roster).parse();
}

} // namespace brstwb
