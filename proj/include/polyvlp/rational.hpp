#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>

#include "polyvlp/errors.hpp"

namespace polyvlp {

// mpq_class keeps numerator/denominator canonical (denominator > 0, reduced,
// zero is 0/1) after every arithmetic operation.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Parses "[+-]digits[/digits]". The denominator must be positive.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    auto digits = [&](std::size_t from) {
        std::size_t end = from;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        return end;
    };
    std::size_t num_end = digits(pos);
    if (num_end == pos) return fail();
    std::string num(text.substr(pos, num_end - pos));
    std::string den = "1";
    if (num_end < text.size()) {
        if (text[num_end] != '/') return fail();
        std::size_t den_end = digits(num_end + 1);
        if (den_end == num_end + 1 || den_end != text.size()) return fail();
        den = std::string(text.substr(num_end + 1, den_end - num_end - 1));
    }
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (sgn(d) == 0) return fail();
    Rational r(negative ? mpz_class(-n) : n, d);
    r.canonicalize();
    return r;
}

/// "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Rounded decimal rendering, for annotation only.
inline std::string to_decimal(const Rational& r, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, r.get_d());
    return buf;
}

}  // namespace polyvlp
