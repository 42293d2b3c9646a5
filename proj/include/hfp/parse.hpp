#pragma once

// Text grammar for polynomials over a GeneratorSet:
//
//   poly   := sign? term (sign term)*
//   sign   := '+' | '-'
//   term   := coeff? factor*          (factors separated by '*' or spaces)
//   coeff  := int ('/' int)?
//   factor := name ('^' int)?
//   name   := [A-Za-z_][A-Za-z0-9_']* ('[' ... ']')?
//
// A factor whose name is a parameter (and not a generator) multiplies the
// coefficient by the parameter's value.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

#include "hfp/graded.hpp"

namespace hfp {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t column)
        : std::runtime_error(msg + " (column " + std::to_string(column + 1) + ")"), column_(column)
    {
    }
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

using ParamMap = std::map<std::string, Rational>;

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, GeneratorSetPtr set, const ParamMap& params)
        : s_(text), set_(std::move(set)), params_(params)
    {
    }

    Polynomial parse()
    {
        Polynomial out(set_);
        skip_ws();
        if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            out += term() * Rational(sign);
            skip_ws();
            if (pos_ == s_.size()) break;
        }
        return out;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool name_char(char c)
    {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    long integer()
    {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", pos_);
        return std::stol(s_.substr(start, pos_ - start));
    }

    std::string name()
    {
        const std::size_t start = pos_;
        if (!name_start(peek())) throw ParseError("expected generator name", pos_);
        while (name_char(peek())) ++pos_;
        if (peek() == '[') {
            int depth = 0;
            do {
                if (peek() == '[') ++depth;
                if (peek() == ']') --depth;
                if (pos_ == s_.size()) throw ParseError("unbalanced '['", start);
                ++pos_;
            } while (depth > 0);
        }
        return s_.substr(start, pos_ - start);
    }

    Polynomial term()
    {
        Rational coeff = 1;
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Rational num = Rational(integer());
            if (peek() == '/') {
                ++pos_;
                const std::size_t at = pos_;
                const long den = integer();
                if (den == 0) throw ParseError("zero denominator", at);
                num /= Rational(den);
            }
            coeff = num;
            any = true;
        }
        Monomial m(set_->size());
        bool factor = false;  // a generator or parameter has been read
        while (true) {
            skip_ws();
            if (peek() == '*') {
                if (!any) throw ParseError("'*' without a left factor", pos_);
                ++pos_;
                skip_ws();
            } else if (!name_start(peek())) {
                break;
            } else if (factor) {
                throw ParseError("expected '*' between factors", pos_);
            }
            const std::size_t at = pos_;
            const std::string n = name();
            long e = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                e = integer();
            }
            if (auto id = set_->find(n)) {
                m[*id] += static_cast<int>(e);
            } else if (auto p = params_.find(n); p != params_.end()) {
                for (long i = 0; i < e; ++i) coeff *= p->second;
            } else {
                throw ParseError("unknown generator or parameter '" + n + "'", at);
            }
            any = factor = true;
        }
        if (!any) throw ParseError("expected a term", pos_);
        return Polynomial::monomial(set_, m, 1) * coeff;
    }

    const std::string& s_;
    GeneratorSetPtr set_;
    const ParamMap& params_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/**
 * Parses a polynomial. Factors inside one term are read as a commutative
 * product in canonical generator order (no sign from the written order).
 */
inline Polynomial parse_polynomial(const std::string& text, const GeneratorSetPtr& set,
                                   const ParamMap& params = {})
{
    return detail::PolyParser(text, set, params).parse();
}

}  // namespace hfp
