#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubicfano {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown whenever an exact division that must land in Z does not.
class IntegralityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

inline bool is_integral(const Rational &r) { return boost::multiprecision::denominator(r) == 1; }

inline Integer to_integer(const Rational &r, const std::string &context) {
    if (!is_integral(r)) {
        throw IntegralityError(context + ": non-integral value " + r.str());
    }
    return boost::multiprecision::numerator(r);
}

inline Integer ipow(const Integer &base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

inline Integer binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace cubicfano
