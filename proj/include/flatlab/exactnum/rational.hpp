#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "flatlab/errors.hpp"

namespace flatlab {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Serializes as "a/b" with b >= 1, including integers ("-2/1", "0/1").
inline std::string to_fraction_string(const BigRational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// The field of rational numbers, as a coefficient domain for Poly and RatFunc.
class Rationals {
public:
    using value_type = BigRational;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(long long v) const { return value_type(BigInt(std::to_string(v))); }
    value_type from_bigint(const BigInt& v) const { return value_type(v); }
    value_type from_rational(const BigRational& v) const { return v; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (a == 0) throw DivisionByZero();
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const {
        if (b == 0) throw DivisionByZero();
        return a / b;
    }

    bool is_zero(const value_type& a) const { return a == 0; }
    bool is_one(const value_type& a) const { return a == 1; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    std::uint64_t characteristic() const { return 0; }

    std::string to_string(const value_type& a) const { return a.get_str(); }

    bool operator==(const Rationals&) const = default;
};

}  // namespace flatlab
