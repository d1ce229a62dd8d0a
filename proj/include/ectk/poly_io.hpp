#pragma once

#include <cctype>
#include <map>
#include <string>

#include "ectk/poly.hpp"

namespace ectk {

// Text format for univariate polynomials over Q: sums of terms like
// `x^3-3*x^2+3`, `-1/2*x+7`. Parser and printer round-trip exactly.

inline std::string poly_to_string(const QPoly& f, const std::string& var = "x") {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const Rational& c = f[i];
        if (c.is_zero()) continue;
        bool first = out.empty();
        if (c.sign() < 0) out += "-";
        else if (!first) out += "+";
        Rational a = c.abs();
        if (i == 0) {
            out += a.str();
        } else {
            if (!a.is_one()) out += a.str() + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace detail {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    std::string var; // inferred from first identifier seen

    explicit PolyParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Integer parse_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw parse_error("expected number", start);
        return Integer(s.substr(start, pos - start));
    }

    Rational parse_coeff() {
        Integer num = parse_uint();
        if (peek() == '/') {
            ++pos;
            Integer den = parse_uint();
            if (sgn(den) == 0) throw parse_error("zero denominator", pos);
            return Rational(num, den);
        }
        return Rational(num);
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size() ||
            !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            throw parse_error("expected variable", pos);
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    // term := coeff ['*' var ['^' n]] | var ['^' n]
    void parse_term(int sign, std::map<int, Rational>& acc) {
        Rational coeff(sign);
        int deg = 0;
        bool have_var = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff *= parse_coeff();
            if (peek() == '*') {
                ++pos;
                have_var = true;
            }
        } else {
            have_var = true;
        }
        if (have_var) {
            std::size_t at = pos;
            std::string name = parse_ident();
            if (var.empty()) var = name;
            else if (name != var)
                throw parse_error("unexpected second variable '" + name + "'", at);
            deg = 1;
            if (peek() == '^') {
                ++pos;
                Integer e = parse_uint();
                if (!e.fits_sint_p() || e.get_si() > 100000)
                    throw parse_error("exponent too large", pos);
                deg = static_cast<int>(e.get_si());
            }
        }
        auto it = acc.find(deg);
        if (it == acc.end()) acc.emplace(deg, coeff);
        else it->second += coeff;
    }
};

} // namespace detail

inline QPoly poly_parse(const std::string& text, std::string* var_out = nullptr) {
    detail::PolyParser p(text);
    std::map<int, Rational> acc;
    if (p.eof()) throw parse_error("empty polynomial", 0);
    int sign = 1;
    if (p.peek() == '+' || p.peek() == '-') {
        sign = p.peek() == '-' ? -1 : 1;
        ++p.pos;
    }
    p.parse_term(sign, acc);
    while (!p.eof()) {
        char c = p.peek();
        if (c != '+' && c != '-') throw parse_error("expected '+' or '-'", p.pos);
        ++p.pos;
        p.parse_term(c == '-' ? -1 : 1, acc);
    }
    int maxdeg = acc.rbegin()->first;
    std::vector<Rational> coeffs(static_cast<std::size_t>(maxdeg) + 1, Rational());
    for (auto& [d, c] : acc) coeffs[static_cast<std::size_t>(d)] = c;
    if (var_out) *var_out = p.var.empty() ? "x" : p.var;
    return QPoly(std::move(coeffs));
}

} // namespace ectk
