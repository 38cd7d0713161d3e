#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flatlab/errors.hpp"
#include "flatlab/exactnum/rational.hpp"

namespace flatlab {

/// Largest supported extension degree k of F_{p^k}.
inline constexpr unsigned kMaxExtensionDegree = 16;

/// Raw element of F_{p^k}: coefficients of a polynomial of degree < k over F_p,
/// constant term first. Slots at index >= k are always zero.
struct FqRaw {
    std::array<std::uint32_t, kMaxExtensionDegree> c{};

    friend auto operator<=>(const FqRaw&, const FqRaw&) = default;
};

/// Descriptor of a finite field F_{p^k} = F_p[a] / (modulus(a)).
struct FieldDesc {
    std::uint64_t p = 0;
    unsigned k = 1;
    /// Monic irreducible of degree k, constant term first; empty when k = 1.
    std::vector<std::uint32_t> modulus;
    BigInt order;
};

bool is_prime(std::uint64_t n);

/// Handle to a finite field. Cheap to copy; all copies share one descriptor.
///
/// Arithmetic is performed on raw values through the handle, so polynomials can
/// store bare coefficients. FFElem bundles a raw value with its field for
/// checked standalone arithmetic.
class GaloisField {
public:
    using value_type = FqRaw;

    explicit GaloisField(std::shared_ptr<const FieldDesc> desc);

    const FieldDesc& desc() const { return *desc_; }
    std::uint64_t characteristic() const { return desc_->p; }
    unsigned degree() const { return desc_->k; }
    const BigInt& order() const { return desc_->order; }
    /// Field order as a machine integer; throws if it does not fit in 63 bits.
    std::uint64_t small_order() const;

    value_type zero() const { return {}; }
    value_type one() const {
        value_type r;
        r.c[0] = 1;
        return r;
    }
    /// The class of the indeterminate `a` (a primitive element of the basis).
    value_type generator() const;
    value_type from_int(long long v) const;
    value_type from_bigint(const BigInt& v) const;
    value_type from_rational(const BigRational& v) const;
    value_type from_coeffs(std::span<const std::uint32_t> coeffs) const;

    value_type add(const value_type& a, const value_type& b) const;
    value_type sub(const value_type& a, const value_type& b) const;
    value_type neg(const value_type& a) const;
    value_type mul(const value_type& a, const value_type& b) const;
    value_type inv(const value_type& a) const;
    value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
    value_type pow(value_type base, const BigInt& exponent) const;
    value_type pow(const value_type& base, std::uint64_t exponent) const;
    value_type frobenius(const value_type& a) const { return pow(a, desc_->p); }
    /// Unique b with b^p = a.
    value_type pth_root(const value_type& a) const;

    bool is_zero(const value_type& a) const { return a == value_type{}; }
    bool is_one(const value_type& a) const { return a == one(); }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    /// True when a lies in the prime subfield F_p.
    bool in_prime_field(const value_type& a) const;

    /// Enumeration index in [0, q): sum of c_i p^i.
    std::uint64_t index_of(const value_type& a) const;
    value_type from_index(std::uint64_t index) const;
    /// All q elements in index order. Throws for q > 2^20.
    std::vector<value_type> elements() const;

    template <class Rng>
    value_type random(Rng& rng) const {
        std::uniform_int_distribution<std::uint64_t> dist(0, desc_->p - 1);
        value_type r;
        for (unsigned i = 0; i < desc_->k; ++i) r.c[i] = static_cast<std::uint32_t>(dist(rng));
        return r;
    }

    std::string to_string(const value_type& a) const;

    /// Product of dense prime-field polynomials; returns false when k > 1 so the
    /// caller falls back to the generic path.
    bool poly_mul_prime(std::span<const value_type> a, std::span<const value_type> b,
                        std::vector<value_type>& out) const;

    bool operator==(const GaloisField& other) const;

private:
    std::uint32_t reduce(std::uint64_t v) const { return static_cast<std::uint32_t>(v % desc_->p); }

    std::shared_ptr<const FieldDesc> desc_;
};

/// Builds F_{p^k}. For k > 1 the modulus is the first monic irreducible of
/// degree k in increasing order of sum(c_i p^i) over its lower coefficients.
GaloisField field_create(std::uint64_t p, unsigned k);

/// An element bundled with its field; mixed-field arithmetic throws FieldMismatch.
class FFElem {
public:
    FFElem(GaloisField field, FqRaw raw) : field_(std::move(field)), raw_(raw) {}
    FFElem(GaloisField field, long long v) : field_(field), raw_(field.from_int(v)) {}

    const GaloisField& field() const { return field_; }
    const FqRaw& raw() const { return raw_; }
    bool is_zero() const { return field_.is_zero(raw_); }

    FFElem operator+(const FFElem& o) const { return {check(o), field_.add(raw_, o.raw_)}; }
    FFElem operator-(const FFElem& o) const { return {check(o), field_.sub(raw_, o.raw_)}; }
    FFElem operator*(const FFElem& o) const { return {check(o), field_.mul(raw_, o.raw_)}; }
    FFElem operator/(const FFElem& o) const { return {check(o), field_.div(raw_, o.raw_)}; }
    FFElem operator-() const { return {field_, field_.neg(raw_)}; }
    FFElem pow(const BigInt& e) const { return {field_, field_.pow(raw_, e)}; }

    bool operator==(const FFElem& o) const { return field_ == o.field_ && raw_ == o.raw_; }

    std::string to_string() const { return field_.to_string(raw_); }

private:
    const GaloisField& check(const FFElem& o) const {
        if (!(field_ == o.field_)) throw FieldMismatch();
        return field_;
    }

    GaloisField field_;
    FqRaw raw_;
};

enum class FieldOp { add, sub, mul, div };

FFElem ff_arith(const FFElem& a, const FFElem& b, FieldOp op);
/// Square-and-multiply with an arbitrary-precision (possibly negative) exponent.
FFElem ff_pow(const FFElem& a, const BigInt& exponent);
FFElem ff_pth_root(const FFElem& a);

}  // namespace flatlab
