#include "flatlab/exactnum/galois_field.hpp"

#include <limits>
#include <sstream>

#include "flatlab/ratfunc/factor.hpp"

namespace flatlab {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

GaloisField::GaloisField(std::shared_ptr<const FieldDesc> desc) : desc_(std::move(desc)) {}

std::uint64_t GaloisField::small_order() const {
    if (mpz_sizeinbase(desc_->order.get_mpz_t(), 2) > 63) throw Error("field order exceeds 63 bits");
    return desc_->order.get_ui();
}

GaloisField::value_type GaloisField::generator() const {
    value_type r;
    if (desc_->k == 1) {
        // F_p has no adjoined root; a = 0 by convention
        return r;
    }
    r.c[1] = 1;
    return r;
}

GaloisField::value_type GaloisField::from_int(long long v) const {
    const auto p = static_cast<long long>(desc_->p);
    long long m = v % p;
    if (m < 0) m += p;
    value_type r;
    r.c[0] = static_cast<std::uint32_t>(m);
    return r;
}

GaloisField::value_type GaloisField::from_bigint(const BigInt& v) const {
    BigInt m = v % BigInt(static_cast<unsigned long>(desc_->p));
    if (m < 0) m += static_cast<unsigned long>(desc_->p);
    value_type r;
    r.c[0] = static_cast<std::uint32_t>(m.get_ui());
    return r;
}

GaloisField::value_type GaloisField::from_rational(const BigRational& v) const {
    value_type den = from_bigint(v.get_den());
    if (is_zero(den)) throw DivisionByZero("denominator vanishes modulo " + std::to_string(desc_->p));
    return div(from_bigint(v.get_num()), den);
}

GaloisField::value_type GaloisField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > desc_->k) throw Error("too many coefficients for field element");
    value_type r;
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.c[i] = reduce(coeffs[i]);
    return r;
}

GaloisField::value_type GaloisField::add(const value_type& a, const value_type& b) const {
    value_type r;
    const std::uint64_t p = desc_->p;
    for (unsigned i = 0; i < desc_->k; ++i) {
        std::uint64_t s = std::uint64_t{a.c[i]} + b.c[i];
        r.c[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
    return r;
}

GaloisField::value_type GaloisField::sub(const value_type& a, const value_type& b) const {
    value_type r;
    const std::uint64_t p = desc_->p;
    for (unsigned i = 0; i < desc_->k; ++i) {
        std::uint64_t s = std::uint64_t{a.c[i]} + p - b.c[i];
        r.c[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
    return r;
}

GaloisField::value_type GaloisField::neg(const value_type& a) const {
    value_type r;
    for (unsigned i = 0; i < desc_->k; ++i) {
        r.c[i] = a.c[i] == 0 ? 0 : static_cast<std::uint32_t>(desc_->p - a.c[i]);
    }
    return r;
}

GaloisField::value_type GaloisField::mul(const value_type& a, const value_type& b) const {
    const std::uint64_t p = desc_->p;
    const unsigned k = desc_->k;
    value_type r;
    if (k == 1) {
        r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p);
        return r;
    }
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> tmp{};
    for (unsigned i = 0; i < k; ++i) {
        if (a.c[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j) {
            tmp[i + j] = (tmp[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p;
        }
    }
    const auto& mod = desc_->modulus;
    for (unsigned i = 2 * k - 2; i >= k; --i) {
        const std::uint64_t t = tmp[i];
        if (t == 0) continue;
        const std::uint64_t negt = p - t;
        for (unsigned j = 0; j < k; ++j) {
            tmp[i - k + j] = (tmp[i - k + j] + negt * mod[j]) % p;
        }
        tmp[i] = 0;
    }
    for (unsigned i = 0; i < k; ++i) r.c[i] = static_cast<std::uint32_t>(tmp[i]);
    return r;
}

GaloisField::value_type GaloisField::inv(const value_type& a) const {
    if (is_zero(a)) throw DivisionByZero();
    if (desc_->k == 1) {
        // extended Euclid on residues
        long long t = 0, new_t = 1;
        long long r = static_cast<long long>(desc_->p), new_r = a.c[0];
        while (new_r != 0) {
            long long q = r / new_r;
            long long tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += static_cast<long long>(desc_->p);
        value_type res;
        res.c[0] = static_cast<std::uint32_t>(t);
        return res;
    }
    return pow(a, desc_->order - 2);
}

GaloisField::value_type GaloisField::pow(value_type base, const BigInt& exponent) const {
    if (exponent < 0) return pow(inv(base), BigInt(-exponent));
    value_type result = one();
    const std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (mpz_tstbit(exponent.get_mpz_t(), i)) result = mul(result, base);
    }
    return result;
}

GaloisField::value_type GaloisField::pow(const value_type& base, std::uint64_t exponent) const {
    value_type result = one();
    value_type b = base;
    while (exponent > 0) {
        if (exponent & 1U) result = mul(result, b);
        exponent >>= 1U;
        if (exponent > 0) b = mul(b, b);
    }
    return result;
}

GaloisField::value_type GaloisField::pth_root(const value_type& a) const {
    // x -> x^p has inverse x -> x^{p^{k-1}}
    value_type r = a;
    for (unsigned i = 1; i < desc_->k; ++i) r = frobenius(r);
    return r;
}

bool GaloisField::in_prime_field(const value_type& a) const {
    for (unsigned i = 1; i < desc_->k; ++i) {
        if (a.c[i] != 0) return false;
    }
    return true;
}

std::uint64_t GaloisField::index_of(const value_type& a) const {
    std::uint64_t idx = 0;
    for (unsigned i = desc_->k; i-- > 0;) idx = idx * desc_->p + a.c[i];
    return idx;
}

GaloisField::value_type GaloisField::from_index(std::uint64_t index) const {
    value_type r;
    for (unsigned i = 0; i < desc_->k; ++i) {
        r.c[i] = static_cast<std::uint32_t>(index % desc_->p);
        index /= desc_->p;
    }
    return r;
}

std::vector<GaloisField::value_type> GaloisField::elements() const {
    const std::uint64_t q = small_order();
    if (q > (1U << 20)) throw Error("field too large to enumerate");
    std::vector<value_type> out;
    out.reserve(q);
    for (std::uint64_t i = 0; i < q; ++i) out.push_back(from_index(i));
    return out;
}

std::string GaloisField::to_string(const value_type& a) const {
    if (desc_->k == 1) return std::to_string(a.c[0]);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = desc_->k; i-- > 0;) {
        if (a.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << a.c[i];
            continue;
        }
        if (a.c[i] != 1) os << a.c[i] << "*";
        os << "a";
        if (i > 1) os << "^" << i;
    }
    return first ? "0" : os.str();
}

bool GaloisField::poly_mul_prime(std::span<const value_type> a, std::span<const value_type> b,
                                 std::vector<value_type>& out) const {
    if (desc_->k != 1) return false;
    const std::uint64_t p = desc_->p;
    const std::size_t n = a.size() + b.size() - 1;
    std::vector<std::uint64_t> acc(n, 0);
    // products are < 2^62; reduce every few additions to stay below 2^64
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (p - 1) * (p - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t ai = a[i].c[0];
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t& slot = acc[i + j];
            slot += ai * b[j].c[0];
            if (slot >= limit) slot %= p;
        }
    }
    out.assign(n, value_type{});
    for (std::size_t i = 0; i < n; ++i) out[i].c[0] = static_cast<std::uint32_t>(acc[i] % p);
    return true;
}

bool GaloisField::operator==(const GaloisField& other) const {
    if (desc_ == other.desc_) return true;
    return desc_->p == other.desc_->p && desc_->k == other.desc_->k && desc_->modulus == other.desc_->modulus;
}

namespace {

std::shared_ptr<FieldDesc> make_desc(std::uint64_t p, unsigned k) {
    auto desc = std::make_shared<FieldDesc>();
    desc->p = p;
    desc->k = k;
    mpz_ui_pow_ui(desc->order.get_mpz_t(), p, k);
    return desc;
}

}  // namespace

GaloisField field_create(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (p >= (1ULL << 31)) throw Error("characteristic must be below 2^31");
    if (k == 0 || k > kMaxExtensionDegree) {
        throw Error("extension degree must lie in [1, " + std::to_string(kMaxExtensionDegree) + "]");
    }
    if (k == 1) return GaloisField(make_desc(p, 1));

    const GaloisField base(make_desc(p, 1));
    std::vector<std::uint32_t> coeffs(k, 0);
    // lexicographic walk over the lower coefficients, c_0 varying fastest
    while (true) {
        std::vector<FqRaw> c;
        c.reserve(k + 1);
        for (unsigned i = 0; i < k; ++i) c.push_back(base.from_int(coeffs[i]));
        c.push_back(base.one());
        FqPoly candidate(base, std::move(c));
        if (coeffs[0] != 0 && is_irreducible(candidate)) {
            auto desc = make_desc(p, k);
            desc->modulus = coeffs;
            desc->modulus.push_back(1);
            return GaloisField(std::move(desc));
        }
        unsigned i = 0;
        while (i < k && ++coeffs[i] == p) coeffs[i++] = 0;
        if (i == k) throw InternalError("no irreducible polynomial found");
    }
}

FFElem ff_arith(const FFElem& a, const FFElem& b, FieldOp op) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
        case FieldOp::div: return a / b;
    }
    throw InternalError("unknown field op");
}

FFElem ff_pow(const FFElem& a, const BigInt& exponent) { return a.pow(exponent); }

FFElem ff_pth_root(const FFElem& a) { return {a.field(), a.field().pth_root(a.raw())}; }

}  // namespace flatlab
