#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace jv {

// Exact rational coefficients. Floats appear only at evaluation time.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "3", "0.25" -> exact rational. Digits only (signs handled by the parser).
inline Rational rational_from_decimal(const std::string& text)
{
    auto strip = [](std::string s) {
        // avoid the octal reading of leading zeros
        size_t k = 0;
        while (k + 1 < s.size() && s[k] == '0')
            ++k;
        return s.substr(k);
    };
    auto dot = text.find('.');
    if (dot == std::string::npos)
        return Rational(Integer(strip(text)));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty())
        throw Error("malformed number '" + text + "'");
    Integer den = 1;
    for (size_t k = 0; k < text.size() - dot - 1; ++k)
        den *= 10;
    return Rational(Integer(strip(digits)), den);
}

inline std::string to_string(const Rational& r)
{
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

} // namespace jv
