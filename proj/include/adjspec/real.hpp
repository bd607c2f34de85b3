#pragma once

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>

namespace adjspec {

// Arbitrary-precision real scalar. The backend's default precision is
// process-global, so the library never relies on it: every inexact value is
// constructed with an explicit digit count, and precision then propagates
// through arithmetic (results carry the widest operand precision).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Exact integer for walk counting.
using BigInt = boost::multiprecision::cpp_int;

inline constexpr unsigned min_digits = 15;
inline constexpr unsigned max_digits = 512;

// Invalid models, assignments, file contents, or call arguments.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Failures of the numerics themselves (non-convergence, vanishing denominators).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline unsigned check_digits(unsigned digits) {
    if (digits < min_digits || digits > max_digits)
        throw input_error("working precision must be between " + std::to_string(min_digits) +
                          " and " + std::to_string(max_digits) + " digits, got " +
                          std::to_string(digits));
    return digits;
}

inline Real make_real(double v, unsigned digits) { return Real(v, check_digits(digits)); }
inline Real make_real(const std::string& s, unsigned digits) {
    check_digits(digits);
    Real r;
    try {
        r = Real(s, digits);
    } catch (const std::exception&) {
        throw input_error("not a decimal number: '" + s + "'");
    }
    if (!boost::math::isfinite(r)) throw input_error("not a finite number: '" + s + "'");
    return r;
}

// Value-preserving precision re-anchor, so later arithmetic runs at `digits`.
inline Real at_precision(const Real& v, unsigned digits) {
    Real r(v);
    r.precision(digits);
    return r;
}

inline Real pow10(int exponent, unsigned digits) {
    return pow(Real(10, digits), exponent);
}

inline std::string to_decimal(const Real& v, unsigned digits) { return v.str(digits); }

} // namespace adjspec
