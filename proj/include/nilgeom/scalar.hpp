#pragma once
// Exact rational scalars. Every computation in the library runs over Q.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilgeom {

// Expression templates off: values are small and `auto` must mean a value.
using Scalar = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                             boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

inline bool is_integer(const Scalar& s)
{
    return boost::multiprecision::denominator(s) == 1;
}

/// Canonical text: "p" for integers, "p/q" otherwise (q > 0, reduced).
inline std::string to_string(const Scalar& s)
{
    const Integer num = boost::multiprecision::numerator(s);
    const Integer den = boost::multiprecision::denominator(s);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

/// Parses "p", "-p", "p/q". Returns nullopt on malformed text or q == 0.
inline std::optional<Scalar> parse_scalar(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    auto valid_int = [](std::string_view s) {
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+'))
            ++i;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s[0] == '+')
            s.remove_prefix(1);
        return Integer(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_int(text))
            return std::nullopt;
        return Scalar(to_int(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_int(num) || den.empty() || den[0] == '-' || den[0] == '+' || !valid_int(den))
        return std::nullopt;
    const Integer d = to_int(den);
    if (d == 0)
        return std::nullopt;
    return Scalar(to_int(num), d);
}

/// Height of a rational: max(|numerator|, denominator).
inline Integer height(const Scalar& s)
{
    Integer num = boost::multiprecision::abs(boost::multiprecision::numerator(s));
    Integer den = boost::multiprecision::denominator(s);
    return num > den ? num : den;
}

/// Exact square root when s is the square of a rational.
inline std::optional<Scalar> rational_sqrt(const Scalar& s)
{
    if (s < 0)
        return std::nullopt;
    const Integer num = boost::multiprecision::numerator(s);
    const Integer den = boost::multiprecision::denominator(s);
    const Integer rn = boost::multiprecision::sqrt(num);
    const Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den)
        return std::nullopt;
    return Scalar(rn, rd);
}

} // namespace nilgeom
