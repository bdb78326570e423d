#pragma once
#include <boost/multiprecision/mpfr.hpp>

namespace qs {

using BigFloat = boost::multiprecision::mpfr_float;

// Sets the calling thread's default mpfr precision for the guard's lifetime.
// Boost keeps that default thread-local, so concurrent guards do not interfere.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits);
    }
    ~PrecisionGuard() { BigFloat::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

} // namespace qs
