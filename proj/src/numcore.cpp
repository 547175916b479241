#include "dilsum/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dilsum {

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw InvalidArgumentError("sieve_primes: limit must be >= 2");
    std::vector<bool> composite(limit + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        table.primes.push_back(p);
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return table;
}

PrimeTable sieve_first_primes(std::size_t n) {
    if (n == 0) throw InvalidArgumentError("sieve_first_primes: n must be >= 1");
    // p_n < n (ln n + ln ln n) for n >= 6; pad the small cases.
    double nd = static_cast<double>(std::max<std::size_t>(n, 6));
    std::uint64_t limit =
        static_cast<std::uint64_t>(nd * (std::log(nd) + std::log(std::log(nd)))) + 16;
    for (;;) {
        PrimeTable t = sieve_primes(limit);
        if (t.count() >= n) return t;
        limit *= 2;
    }
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    if (a < 1 || b < 1) throw InvalidArgumentError("gcd: arguments must be positive");
    return std::gcd(a, b);
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    if (a < 1 || b < 1) throw InvalidArgumentError("gcd: arguments must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// ---------------------------------------------------------------------------
// DyadicRational
// ---------------------------------------------------------------------------

void DyadicRational::canonicalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    if (exp_ == 0) return;
    unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
    unsigned long drop = std::min(tz, exp_);
    if (drop > 0) {
        num_ >>= drop;
        exp_ -= drop;
    }
}

mpq_class DyadicRational::value() const {
    mpz_class den = 1;
    den <<= exp_;
    mpq_class q(num_, den);
    q.canonicalize();
    return q;
}

double DyadicRational::to_double() const { return value().get_d(); }

DyadicRational DyadicRational::operator+(const DyadicRational& o) const {
    unsigned long e = std::max(exp_, o.exp_);
    mpz_class a = num_ << (e - exp_);
    mpz_class b = o.num_ << (e - o.exp_);
    return DyadicRational(a + b, e);
}

DyadicRational DyadicRational::operator-(const DyadicRational& o) const {
    unsigned long e = std::max(exp_, o.exp_);
    mpz_class a = num_ << (e - exp_);
    mpz_class b = o.num_ << (e - o.exp_);
    return DyadicRational(a - b, e);
}

DyadicRational DyadicRational::times(const mpz_class& k) const {
    return DyadicRational(num_ * k, exp_);
}

DyadicRational DyadicRational::frac() const {
    mpz_class rem, den;
    den = 1;
    den <<= exp_;
    // floor mod: result in [0, 2^exp)
    mpz_fdiv_r(rem.get_mpz_t(), num_.get_mpz_t(), den.get_mpz_t());
    return DyadicRational(rem, exp_);
}

int DyadicRational::cmp(const DyadicRational& o) const {
    unsigned long e = std::max(exp_, o.exp_);
    mpz_class a = num_ << (e - exp_);
    mpz_class b = o.num_ << (e - o.exp_);
    return ::cmp(a, b);
}

std::string DyadicRational::str() const {
    std::ostringstream os;
    os << num_.get_str() << "/2^" << exp_;
    return os.str();
}

// ---------------------------------------------------------------------------
// ScaledInteger
// ---------------------------------------------------------------------------

void ScaledInteger::normalize() {
    if (base_ < 1) throw InvalidArgumentError("ScaledInteger: base must be >= 1");
    if (shift_ < 0) throw InvalidArgumentError("ScaledInteger: shift must be >= 0");
    unsigned long tz = mpz_scan1(base_.get_mpz_t(), 0);
    if (tz > 0) {
        base_ >>= tz;
        shift_ += tz;
    }
}

ScaledInteger ScaledInteger::from_integer(const mpz_class& v) {
    if (v < 1) throw InvalidArgumentError("ScaledInteger: value must be >= 1");
    return ScaledInteger(0, v);
}

mpz_class ScaledInteger::expanded(std::size_t max_bits) const {
    if (shift_ > static_cast<unsigned long>(max_bits))
        throw SizeLimitError("ScaledInteger: expansion of 2^" + shift_.get_str() +
                             " exceeds " + std::to_string(max_bits) + " bits");
    mpz_class v = base_;
    v <<= shift_.get_ui();
    return v;
}

bool ScaledInteger::fits_u64() const {
    if (!shift_.fits_ulong_p() || shift_.get_ui() >= 64) return false;
    std::size_t bits = mpz_sizeinbase(base_.get_mpz_t(), 2) + shift_.get_ui();
    return bits <= 64;
}

std::uint64_t ScaledInteger::to_u64() const {
    if (!fits_u64()) throw SizeLimitError("ScaledInteger: value does not fit in 64 bits");
    mpz_class v = base_;
    v <<= shift_.get_ui();
    std::uint64_t lo = mpz_get_ui(v.get_mpz_t());
    if (sizeof(unsigned long) >= 8) return lo;
    mpz_class hi = v >> 32;
    return (static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32) | lo;
}

mpz_class ScaledInteger::bit_length() const {
    return shift_ + static_cast<unsigned long>(mpz_sizeinbase(base_.get_mpz_t(), 2));
}

double ScaledInteger::log2_value() const {
    signed long e;
    double d = mpz_get_d_2exp(&e, base_.get_mpz_t());
    return shift_.get_d() + static_cast<double>(e) + std::log2(d);
}

double ScaledInteger::log_value() const { return log2_value() * std::log(2.0); }

int ScaledInteger::cmp(const ScaledInteger& o) const {
    mpz_class l1 = bit_length();
    mpz_class l2 = o.bit_length();
    int c = ::cmp(l1, l2);
    if (c != 0) return c;
    // Equal bit lengths: the shift difference is bounded by the base widths,
    // so aligning the bases is cheap.
    mpz_class d = shift_ - o.shift_;
    if (d >= 0) {
        mpz_class a = base_ << d.get_ui();
        return ::cmp(a, o.base_);
    }
    mpz_class b = o.base_ << mpz_class(-d).get_ui();
    return ::cmp(base_, b);
}

std::string ScaledInteger::str() const {
    if (shift_ == 0) return base_.get_str();
    std::ostringstream os;
    os << "2^" << shift_.get_str() << "*" << base_.get_str();
    return os.str();
}

ScaledInteger gcd(const ScaledInteger& a, const ScaledInteger& b) {
    mpz_class shift = std::min(a.shift(), b.shift());
    return ScaledInteger(shift, gcd(a.base(), b.base()));
}

// ---------------------------------------------------------------------------
// IntegerSequence
// ---------------------------------------------------------------------------

IntegerSequence::IntegerSequence(std::vector<ScaledInteger> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        if (!(terms_[i - 1] < terms_[i]))
            throw InvalidSetError("IntegerSequence: terms must be strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
}

IntegerSequence IntegerSequence::from_u64(const std::vector<std::uint64_t>& values) {
    std::vector<ScaledInteger> t;
    t.reserve(values.size());
    for (std::uint64_t v : values) t.push_back(ScaledInteger::from_u64(v));
    return IntegerSequence(std::move(t));
}

IntegerSequence IntegerSequence::from_mpz(const std::vector<mpz_class>& values) {
    std::vector<ScaledInteger> t;
    t.reserve(values.size());
    for (const mpz_class& v : values) t.push_back(ScaledInteger::from_integer(v));
    return IntegerSequence(std::move(t));
}

mpz_class IntegerSequence::max_shift() const {
    mpz_class m = 0;
    for (const auto& t : terms_) m = std::max(m, t.shift());
    return m;
}

bool IntegerSequence::all_fit_u64() const {
    for (const auto& t : terms_)
        if (!t.fits_u64()) return false;
    return true;
}

std::vector<std::uint64_t> IntegerSequence::as_u64() const {
    std::vector<std::uint64_t> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.to_u64());
    return out;
}

IntegerSequence IntegerSequence::parse(std::istream& in) {
    std::vector<ScaledInteger> t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a) || a[0] == '#') continue;
        if (ls >> b) {
            t.push_back(ScaledInteger(mpz_class(a), mpz_class(b)));
        } else {
            t.push_back(ScaledInteger::from_integer(mpz_class(a)));
        }
    }
    return IntegerSequence(std::move(t));
}

void IntegerSequence::print(std::ostream& out) const {
    for (const auto& t : terms_) {
        if (t.shift() == 0)
            out << t.base().get_str() << "\n";
        else
            out << t.shift().get_str() << " " << t.base().get_str() << "\n";
    }
}

// ---------------------------------------------------------------------------
// exponent_box_set
// ---------------------------------------------------------------------------

IntegerSequence exponent_box_set(const std::vector<std::uint64_t>& primes,
                                 unsigned e,
                                 std::size_t size_cap) {
    if (primes.empty()) throw InvalidArgumentError("exponent_box_set: need at least one prime");
    if (e < 1) throw InvalidArgumentError("exponent_box_set: max exponent must be >= 1");
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j])
                throw InvalidArgumentError("exponent_box_set: primes must be distinct");

    double log_count = primes.size() * std::log2(double(e) + 1.0);
    if (log_count > 62 || (std::size_t(1) << std::size_t(log_count + 1)) > size_cap * 2) {
        // precise check
        mpz_class count = 1;
        for (std::size_t i = 0; i < primes.size(); ++i) count *= (e + 1);
        if (count > static_cast<unsigned long>(size_cap))
            throw SizeLimitError("exponent_box_set: (e+1)^r = " + count.get_str() +
                                 " exceeds cap " + std::to_string(size_cap));
    }

    std::vector<mpz_class> out;
    out.push_back(1);
    for (std::uint64_t p : primes) {
        std::size_t n = out.size();
        if (n * (e + 1) > size_cap)
            throw SizeLimitError("exponent_box_set: output exceeds cap " +
                                 std::to_string(size_cap));
        out.reserve(n * (e + 1));
        mpz_class pw = 1;
        for (unsigned a = 1; a <= e; ++a) {
            pw *= static_cast<unsigned long>(p);
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return IntegerSequence::from_mpz(out);
}

}  // namespace dilsum
