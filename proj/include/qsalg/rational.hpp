#ifndef QSALG_RATIONAL_HPP
#define QSALG_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qsalg {

using Rational = mpq_class;

inline Rational pow(const Rational &base, unsigned exponent)
{
    Rational result = 1;
    Rational b = base;
    while (exponent) {
        if (exponent & 1u)
            result *= b;
        exponent >>= 1u;
        if (exponent)
            b *= b;
    }
    return result;
}

inline Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline bool is_zero(const Rational &q) { return sgn(q) == 0; }

/// "p/q" or an integer; optional leading sign, no whitespace inside.
inline Rational parse_rational(std::string_view text)
{
    auto valid_integer = [](std::string_view s, bool allow_sign) {
        if (s.empty())
            return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+'))
            ++i;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw ParseError("not a rational: \"" + std::string(text) + "\"");
    std::string n(num);
    if (!n.empty() && n[0] == '+')
        n.erase(0, 1);
    mpz_class zn(n), zd{std::string(den)};
    if (zd == 0)
        throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    Rational q(zn, zd);
    q.canonicalize();
    return q;
}

/// Canonical "p/q" rendering; integers render without a denominator.
inline std::string to_string(const Rational &q) { return q.get_str(); }

} // namespace qsalg

#endif
