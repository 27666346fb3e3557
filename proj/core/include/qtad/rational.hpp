// Copyright 2026 The qtad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <string>

#include "qtad/errors.hpp"

namespace qtad {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational. The exact-enumeration oracle does all of
/// its probability bookkeeping in this type.
using Rational = boost::rational<BigInt>;

inline double to_double(const Rational& r) {
    return static_cast<double>(boost::multiprecision::cpp_rational(
        r.numerator(), r.denominator()));
}

/// Every finite double is a dyadic rational; this conversion is exact.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw ConfigError("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num = scaled;
    if (exp >= 0) {
        num <<= exp;
        return Rational(num);
    }
    BigInt den = BigInt(1) << (-exp);
    return Rational(num, den);
}

namespace detail {

// cpp_int's string constructor honors leading-zero octal and 0x hex
// prefixes; decimal literals like "0.25" must not go through that.
inline BigInt decimal_bigint(const std::string& text) {
    std::string digits = text;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        negative = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty()) throw ConfigError("not a decimal integer: " + text);
    BigInt value = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') throw ConfigError("not a decimal integer: " + text);
        value = value * 10 + (c - '0');
    }
    return negative ? -value : value;
}

}  // namespace detail

/// Parses "3/8", "1", or a terminating decimal like "0.375" exactly.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ConfigError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num = detail::decimal_bigint(text.substr(0, slash));
        BigInt den = detail::decimal_bigint(text.substr(slash + 1));
        if (den == 0) throw ConfigError("rational with zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(detail::decimal_bigint(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(detail::decimal_bigint(digits), den);
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

}  // namespace qtad
