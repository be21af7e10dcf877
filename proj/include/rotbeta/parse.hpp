#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <string>

#include "rotbeta/quadext.hpp"
#include "rotbeta/rational.hpp"

namespace rotbeta {

/**
 * Recursive-descent evaluator for the element grammar:
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor (('*' | '/') factor)*
 *   factor := ('-')* base ('^' integer)?
 *   base   := rational | symbol | '(' expr ')'
 *
 * Rationals are written p or p/q; the available symbols (beta, omega) are
 * supplied by the caller. No decimal literals and no embedded radicals:
 * roots enter through the field construction, never through the grammar.
 */
template <class S>
class ExprParser {
public:
    ExprParser(std::string text, std::map<std::string, S> symbols, std::function<S(const Rat&)> from_rat)
        : text_(std::move(text)), symbols_(std::move(symbols)), from_rat_(std::move(from_rat)) {}

    S parse() {
        S v = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected trailing input", pos_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    S parse_expr() {
        S acc = parse_term();
        while (true) {
            if (consume('+'))
                acc = acc + parse_term();
            else if (consume('-'))
                acc = acc - parse_term();
            else
                return acc;
        }
    }

    S parse_term() {
        S acc = parse_factor();
        while (true) {
            if (consume('*'))
                acc = acc * parse_factor();
            else if (consume('/')) {
                size_t at = pos_;
                S d = parse_factor();
                if (d.is_zero()) throw parse_error("division by zero", at);
                acc = acc / d;
            } else
                return acc;
        }
    }

    S parse_factor() {
        if (consume('-')) return -parse_factor();
        S base = parse_base();
        skip_ws();
        if (consume('^')) {
            skip_ws();
            bool negative = consume('-');
            size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
                throw parse_error("expected integer exponent", pos_);
            long e = 0;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
                e = e * 10 + (text_[pos_] - '0');
                if (e > 64) throw parse_error("exponent too large", at);
                ++pos_;
            }
            S acc = from_rat_(Rat(1));
            for (long i = 0; i < e; ++i) acc = acc * base;
            if (negative) {
                if (acc.is_zero()) throw parse_error("zero to a negative power", at);
                acc = from_rat_(Rat(1)) / acc;
            }
            return acc;
        }
        return base;
    }

    S parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            S v = parse_expr();
            if (!consume(')')) throw parse_error("expected ')'", pos_);
            return v;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '.')
                throw parse_error("decimal literals are not supported; write p/q", pos_);
            // p/q is handled by ordinary division in the term parser
            return from_rat_(rat_from_string(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            auto it = symbols_.find(name);
            if (it == symbols_.end())
                throw parse_error("unknown symbol '" + name + "'", start);
            return it->second;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string text_;
    std::map<std::string, S> symbols_;
    std::function<S(const Rat&)> from_rat_;
    size_t pos_ = 0;
};

// The symbol `beta` names the distinguished root of the declared field.
inline FieldElement parse_element(const std::string& text, const FieldPtr& K) {
    std::map<std::string, FieldElement> syms{{"beta", FieldElement::generator(K)}};
    return ExprParser<FieldElement>(text, std::move(syms),
                                    [&](const Rat& r) { return FieldElement::rational(K, r); })
        .parse();
}

// Both `beta` (base-field root) and `omega` are available.
inline QuadExtElement parse_quadext_element(const std::string& text, const QuadExtPtr& E) {
    std::map<std::string, QuadExtElement> syms{
        {"beta", QuadExtElement::from_base(E, FieldElement::generator(E->base_field()))},
        {"omega", QuadExtElement::omega(E)}};
    return ExprParser<QuadExtElement>(text, std::move(syms),
                                      [&](const Rat& r) { return QuadExtElement::rational(E, r); })
        .parse();
}

} // namespace rotbeta

