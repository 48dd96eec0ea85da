#include "nordfreq/rational.hpp"

#include "nordfreq/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace nordfreq {

Rational parse_decimal(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;

    if (i < n && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }

    BigInt digits = 0;
    std::size_t int_digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits = digits * 10 + (text[i] - '0');
        ++int_digits;
        ++i;
    }

    std::size_t frac_digits = 0;
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits = digits * 10 + (text[i] - '0');
            ++frac_digits;
            ++i;
        }
    }

    if (i != n || (int_digits == 0 && frac_digits == 0)) {
        throw ParseError("not a decimal number: '" + text + "'");
    }

    BigInt den = 1;
    for (std::size_t k = 0; k < frac_digits; ++k) {
        den *= 10;
    }
    if (negative) {
        digits = -digits;
    }
    return Rational(digits, den);
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw DomainError("cannot represent a non-finite double exactly");
    }
    if (value == 0.0) {
        return Rational(0);
    }

    int exp = 0;
    // mant in [0.5, 1); value = mant * 2^exp, and mant * 2^53 is integral.
    const double mant = std::frexp(value, &exp);
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;

    Rational result(scaled);
    if (exp > 0) {
        result *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        result /= Rational(BigInt(1) << -exp);
    }
    return result;
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

std::string format_fixed(const Rational& value, int decimals) {
    BigInt scale = 1;
    for (int k = 0; k < decimals; ++k) {
        scale *= 10;
    }

    Rational scaled = value * scale;
    BigInt num = boost::multiprecision::numerator(scaled);
    BigInt den = boost::multiprecision::denominator(scaled); // > 0 canonically

    const bool negative = num < 0;
    if (negative) {
        num = -num;
    }
    // round half away from zero
    BigInt q = (2 * num + den) / (2 * den);

    std::string digits = q.convert_to<std::string>();
    if (static_cast<int>(digits.size()) <= decimals) {
        digits.insert(0, decimals + 1 - digits.size(), '0');
    }

    std::string out;
    if (negative && q != 0) {
        out += '-';
    }
    if (decimals == 0) {
        out += digits;
    } else {
        out += digits.substr(0, digits.size() - decimals);
        out += '.';
        out += digits.substr(digits.size() - decimals);
    }
    return out;
}

} // namespace nordfreq
