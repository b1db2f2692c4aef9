#include "canard/bigreal.hpp"

#include "canard/errors.hpp"

#include <mpfr.h>

#include <sstream>

namespace canard {

unsigned precision() { return BigReal::default_precision(); }

void set_precision(unsigned digits) {
    if (digits < 20)
        throw ConfigError("working precision must be at least 20 decimal digits");
    BigReal::default_precision(digits);
}

namespace {
struct PrecisionInit {
    PrecisionInit() { BigReal::default_precision(120); }
};
const PrecisionInit init_precision;
} // namespace

BigReal big_pi() {
    BigReal r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

BigReal parse_decimal(const std::string& text) {
    if (text.empty())
        throw ConfigError("empty decimal string");
    try {
        return BigReal(text);
    } catch (const std::exception&) {
        throw ConfigError("not a decimal number: '" + text + "'");
    }
}

std::string to_decimal_string(const BigReal& x) {
    return x.str(precision(), std::ios_base::scientific);
}

std::string to_decimal_string(const BigReal& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

BigReal pow10(long e) {
    return boost::multiprecision::pow(BigReal(10), static_cast<int>(e));
}

} // namespace canard
