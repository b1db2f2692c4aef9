#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace canard {

// Configurable-precision real scalar. Precision is a global-per-computation
// parameter measured in decimal digits (default 120); all values created
// after set_precision() carry that precision. Rounding is to-nearest.
using BigReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

// Current working precision in decimal digits.
unsigned precision();

// Set the working precision for all subsequently created values.
void set_precision(unsigned digits);

// RAII guard: set precision on entry, restore on exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(precision()) { set_precision(digits); }
    ~PrecisionGuard() { set_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// pi at the current working precision.
BigReal big_pi();

// Parse a decimal string (rejects empty/garbage input).
BigReal parse_decimal(const std::string& text);

// Full-precision decimal representation; round-trips exactly at the same P.
std::string to_decimal_string(const BigReal& x);

// Shortened representation for logs and reports.
std::string to_decimal_string(const BigReal& x, int digits);

// 10^e at working precision.
BigReal pow10(long e);

} // namespace canard
