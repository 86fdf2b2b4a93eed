#pragma once

// Exact scalars. Rational is GMP's mpq_t behind Boost.Multiprecision, so every
// value is kept canonical (gcd(num, den) = 1, den > 0, zero is 0/1).

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rankloci {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// a / b as an exact rational.
inline Rational frac(long a, long b) { return Rational(a) / Rational(b); }

inline bool is_zero(const Rational& r) { return r.is_zero(); }

inline int sign(const Rational& r) { return r.sign(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p", "-p", "p/q". Anything else (floats, junk, q = 0) throws std::invalid_argument.
inline Rational parse_rational(std::string_view text)
{
    static const std::regex pattern(R"(\s*([+-]?[0-9]+)(?:\s*/\s*([+-]?[0-9]+))?\s*)");
    std::cmatch match;
    if (!std::regex_match(text.begin(), text.end(), match, pattern))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::string num_text = match[1].str();
    if (num_text.front() == '+') num_text.erase(0, 1);
    Rational num{Integer(num_text)};
    if (!match[2].matched) return num;
    std::string den_text = match[2].str();
    if (den_text.front() == '+') den_text.erase(0, 1);
    Integer den(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return num / Rational(den);
}

inline Rational factorial(int n)
{
    Integer acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return Rational(acc);
}

/// n! / (n-k)!
inline Rational falling_factorial(int n, int k)
{
    Integer acc = 1;
    for (int i = 0; i < k; ++i) acc *= (n - i);
    return Rational(acc);
}

inline std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    std::int64_t acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

} // namespace rankloci
