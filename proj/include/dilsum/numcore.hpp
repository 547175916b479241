#ifndef DILSUM_NUMCORE_HPP
#define DILSUM_NUMCORE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dilsum/errors.hpp"

namespace dilsum {

// Default guard for every enumeration/refinement in the library.
inline constexpr std::size_t kDefaultSizeCap = std::size_t(1) << 22;

// ---------------------------------------------------------------------------
// PrimeTable: exact list of primes <= limit, 1-indexed access to p_j.
// ---------------------------------------------------------------------------
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;

    // p_j, j >= 1 (p_1 = 2).
    std::uint64_t prime(std::size_t j) const {
        if (j < 1 || j > primes.size())
            throw InvalidArgumentError("PrimeTable: index " + std::to_string(j) +
                                       " out of range (have " +
                                       std::to_string(primes.size()) + " primes)");
        return primes[j - 1];
    }
    std::size_t count() const { return primes.size(); }
};

PrimeTable sieve_primes(std::uint64_t limit);

// Sieve guaranteed to contain at least n primes.
PrimeTable sieve_first_primes(std::size_t n);

// ---------------------------------------------------------------------------
// gcd on positive integers (both machine-word and arbitrary precision).
// ---------------------------------------------------------------------------
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
mpz_class gcd(const mpz_class& a, const mpz_class& b);

// ---------------------------------------------------------------------------
// DyadicRational: exact num / 2^exp.  Canonical form keeps num odd (or zero)
// unless exp == 0.  Used for exact sample points in [0,1).
// ---------------------------------------------------------------------------
class DyadicRational {
public:
    DyadicRational() : num_(0), exp_(0) {}
    DyadicRational(mpz_class numerator, unsigned long exponent)
        : num_(std::move(numerator)), exp_(exponent) {
        canonicalize();
    }
    static DyadicRational from_integer(const mpz_class& n) { return DyadicRational(n, 0); }

    const mpz_class& numerator() const { return num_; }
    unsigned long exponent() const { return exp_; }

    mpq_class value() const;
    double to_double() const;

    DyadicRational operator+(const DyadicRational& o) const;
    DyadicRational operator-(const DyadicRational& o) const;
    DyadicRational times(const mpz_class& k) const;

    // Fractional part in [0,1) (floor convention, exact).
    DyadicRational frac() const;

    int cmp(const DyadicRational& o) const;
    bool operator<(const DyadicRational& o) const { return cmp(o) < 0; }
    bool operator==(const DyadicRational& o) const { return cmp(o) == 0; }

    bool is_zero() const { return num_ == 0; }
    std::string str() const;

private:
    void canonicalize();
    mpz_class num_;
    unsigned long exp_;
};

// ---------------------------------------------------------------------------
// ScaledInteger: value 2^shift * base with base >= 1 kept odd, so the huge
// power-of-two shifts of the block construction stay symbolic.  The shift is
// itself arbitrary precision: shift exponents grow geometrically with the
// block index and overflow any machine word long before the value would.
// ---------------------------------------------------------------------------
class ScaledInteger {
public:
    ScaledInteger() : shift_(0), base_(1) {}
    ScaledInteger(mpz_class shift, mpz_class base) : shift_(std::move(shift)), base_(std::move(base)) {
        normalize();
    }
    static ScaledInteger from_integer(const mpz_class& v);
    static ScaledInteger from_u64(std::uint64_t v) { return from_integer(mpz_class(static_cast<unsigned long>(v))); }

    const mpz_class& shift() const { return shift_; }
    const mpz_class& base() const { return base_; }

    // Full expansion 2^shift * base; throws SizeLimitError beyond max_bits.
    mpz_class expanded(std::size_t max_bits = std::size_t(1) << 26) const;

    bool fits_u64() const;
    std::uint64_t to_u64() const;

    // Exact bit length of the value: shift + bitlen(base).
    mpz_class bit_length() const;

    // log2 of the value as a double (inf for astronomically large shifts).
    double log2_value() const;
    double log_value() const;

    // Comparison without expanding 2^shift.
    int cmp(const ScaledInteger& o) const;
    bool operator<(const ScaledInteger& o) const { return cmp(o) < 0; }
    bool operator==(const ScaledInteger& o) const { return cmp(o) == 0; }

    bool divisible_by_pow2(const mpz_class& p) const { return shift_ >= p; }

    ScaledInteger times_pow2(const mpz_class& k) const { return ScaledInteger(shift_ + k, base_); }

    std::string str() const;

private:
    void normalize();
    mpz_class shift_;
    mpz_class base_;
};

ScaledInteger gcd(const ScaledInteger& a, const ScaledInteger& b);

// ---------------------------------------------------------------------------
// IntegerSequence: strictly increasing positive integers n_1 < n_2 < ...
// ---------------------------------------------------------------------------
class IntegerSequence {
public:
    IntegerSequence() = default;
    explicit IntegerSequence(std::vector<ScaledInteger> terms);

    static IntegerSequence from_u64(const std::vector<std::uint64_t>& values);
    static IntegerSequence from_mpz(const std::vector<mpz_class>& values);

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const ScaledInteger& operator[](std::size_t i) const { return terms_[i]; }
    const std::vector<ScaledInteger>& terms() const { return terms_; }

    mpz_class max_shift() const;
    bool all_fit_u64() const;
    std::vector<std::uint64_t> as_u64() const;

    // Parses "c m" (meaning 2^c * m) or a plain integer, one term per line.
    static IntegerSequence parse(std::istream& in);
    void print(std::ostream& out) const;

private:
    std::vector<ScaledInteger> terms_;
};

// ---------------------------------------------------------------------------
// exponent_box_set: all (e+1)^r products prod p_i^{a_i}, 0 <= a_i <= e,
// sorted ascending.
// ---------------------------------------------------------------------------
IntegerSequence exponent_box_set(const std::vector<std::uint64_t>& primes,
                                 unsigned e,
                                 std::size_t size_cap = kDefaultSizeCap);

}  // namespace dilsum

#endif
