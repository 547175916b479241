#include "doctest.h"

#include <cstdint>
#include <sstream>
#include <vector>

#include "dilsum/numcore.hpp"

using namespace dilsum;

// Independent oracle: trial division primality.
namespace {
bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Independent oracle: Euclid by remainder, no library calls.
std::uint64_t gcd_euclid(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

TEST_CASE("sieve_primes basics") {
    CHECK(sieve_primes(10).primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(2).primes == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(sieve_primes(1), InvalidArgumentError);

    PrimeTable t = sieve_primes(100);
    CHECK(t.count() == 25);
    CHECK(t.primes.back() == 97);
    for (std::uint64_t n = 2; n <= 100; ++n) {
        bool in_table = std::find(t.primes.begin(), t.primes.end(), n) != t.primes.end();
        CHECK(in_table == is_prime_trial(n));
    }
    CHECK(t.prime(1) == 2);
    CHECK(t.prime(25) == 97);
    CHECK_THROWS_AS(t.prime(26), InvalidArgumentError);
    CHECK_THROWS_AS(t.prime(0), InvalidArgumentError);
}

TEST_CASE("sieve_first_primes contains at least n primes") {
    PrimeTable t = sieve_first_primes(1000);
    CHECK(t.count() >= 1000);
    CHECK(t.prime(1000) == 7919);
}

TEST_CASE("gcd basics and oracle") {
    CHECK(gcd(std::uint64_t(4), std::uint64_t(6)) == 2);
    CHECK(gcd(std::uint64_t(7), std::uint64_t(7)) == 7);
    CHECK_THROWS_AS(gcd(std::uint64_t(0), std::uint64_t(3)), InvalidArgumentError);

    // 2^20*3 vs 2^18*5 -> 2^18
    std::uint64_t a = (std::uint64_t(1) << 20) * 3;
    std::uint64_t b = (std::uint64_t(1) << 18) * 5;
    CHECK(gcd(a, b) == (std::uint64_t(1) << 18));
    CHECK(gcd(a, b) == gcd_euclid(a, b));

    // pseudo-random pairs against the Euclid oracle
    std::uint64_t x = 88172645463325252ull;
    for (int i = 0; i < 500; ++i) {
        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
        std::uint64_t p = (x % 100000) + 1;
        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
        std::uint64_t q = (x % 100000) + 1;
        CHECK(gcd(p, q) == gcd_euclid(p, q));
        CHECK(gcd(p, q) == gcd(q, p));
    }
}

TEST_CASE("gcd properties: associativity-compatibility and scaling") {
    std::vector<std::uint64_t> vals = {1, 2, 3, 6, 12, 17, 360, 1024, 729, 5040};
    for (std::uint64_t a : vals)
        for (std::uint64_t b : vals)
            for (std::uint64_t c : vals)
                CHECK(gcd(a, gcd(b, c)) == gcd(gcd(a, b), c));
    for (std::uint64_t k = 1; k <= 1000; k += 37)
        for (std::uint64_t a : {6u, 15u, 28u})
            for (std::uint64_t b : {4u, 9u, 35u})
                CHECK(gcd(k * a, k * b) == k * gcd(std::uint64_t(a), std::uint64_t(b)));
}

TEST_CASE("exponent_box_set small cases") {
    CHECK(exponent_box_set({2}, 1).as_u64() == std::vector<std::uint64_t>{1, 2});
    CHECK(exponent_box_set({2, 3}, 1).as_u64() == std::vector<std::uint64_t>{1, 2, 3, 6});

    IntegerSequence s = exponent_box_set({2, 3}, 2);
    CHECK(s.size() == 9);
    CHECK(s[8].to_u64() == 36);
    // direct enumeration oracle
    std::vector<std::uint64_t> expect;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            std::uint64_t v = 1;
            for (int i = 0; i < a; ++i) v *= 2;
            for (int i = 0; i < b; ++i) v *= 3;
            expect.push_back(v);
        }
    std::sort(expect.begin(), expect.end());
    CHECK(s.as_u64() == expect);
}

TEST_CASE("exponent_box_set size and divisibility properties") {
    for (unsigned e = 1; e <= 3; ++e) {
        std::vector<std::uint64_t> primes = {2, 3, 5};
        IntegerSequence s = exponent_box_set(primes, e);
        std::size_t expect = 1;
        for (std::size_t i = 0; i < primes.size(); ++i) expect *= (e + 1);
        CHECK(s.size() == expect);
        mpz_class big = 1;
        for (std::uint64_t p : primes) big *= static_cast<unsigned long>(p);
        mpz_class cap;
        mpz_pow_ui(cap.get_mpz_t(), big.get_mpz_t(), e);
        for (std::size_t i = 0; i < s.size(); ++i) {
            mpz_class v = s[i].expanded();
            CHECK(mpz_divisible_p(cap.get_mpz_t(), v.get_mpz_t()) != 0);
        }
    }
    CHECK_THROWS_AS(exponent_box_set({2, 3, 5, 7, 11, 13, 17, 19}, 15), SizeLimitError);
    CHECK_THROWS_AS(exponent_box_set({2, 2}, 1), InvalidArgumentError);
}

TEST_CASE("DyadicRational canonical form and exact arithmetic") {
    DyadicRational a(mpz_class(6), 3);  // 6/8 -> 3/4
    CHECK(a.numerator() == 3);
    CHECK(a.exponent() == 2);
    CHECK(a.to_double() == 0.75);

    DyadicRational b(mpz_class(1), 2);  // 1/4
    CHECK((a + b).value() == mpq_class(1));
    CHECK((a - b).value() == mpq_class(1, 2));
    CHECK(a.times(3).value() == mpq_class(9, 4));

    // reduce mod 1
    DyadicRational c(mpz_class(11), 2);  // 11/4
    CHECK(c.frac().value() == mpq_class(3, 4));
    DyadicRational neg(mpz_class(-1), 3);  // -1/8 -> 7/8
    CHECK(neg.frac().value() == mpq_class(7, 8));

    // round-trip: value reconstruction is bit-identical
    std::uint64_t x = 424242;
    for (int i = 0; i < 200; ++i) {
        x ^= x << 13; x ^= x >> 7; x ^= x << 17;
        mpz_class num(static_cast<unsigned long>(x % 100000));
        unsigned long e = x % 40;
        DyadicRational d(num, e);
        mpq_class v = d.value();
        // reconstruct from value
        mpq_class back = d.numerator();
        mpz_class den = 1;
        den <<= d.exponent();
        back /= mpq_class(den);
        CHECK(v == back);
    }
}

TEST_CASE("ScaledInteger canonical form, comparison, gcd") {
    ScaledInteger a(4, 6);  // 2^4*6 = 2^5*3
    CHECK(a.shift() == 5);
    CHECK(a.base() == 3);
    CHECK(a.to_u64() == 96);

    // comparisons never expand the shift
    ScaledInteger huge1(mpz_class("123456789123456789"), 3);
    ScaledInteger huge2(mpz_class("123456789123456789"), 5);
    ScaledInteger huge3(mpz_class("123456789123456790"), 3);
    CHECK(huge1 < huge2);
    CHECK(huge1 < huge3);
    CHECK(huge2 < huge3);  // 2^c*5 < 2^(c+1)*3
    ScaledInteger same_len1(100, 5);  // bitlen 103
    ScaledInteger same_len2(101, 3);  // bitlen 103: 2^101*3 > 2^100*5
    CHECK(same_len1 < same_len2);
    CHECK(same_len1 == same_len1);

    // gcd(2^20*3, 2^18*5) = 2^18
    ScaledInteger g = gcd(ScaledInteger(20, 3), ScaledInteger(18, 5));
    CHECK(g.shift() == 18);
    CHECK(g.base() == 1);

    CHECK_THROWS_AS(ScaledInteger(mpz_class("99999999999999"), 1).expanded(1 << 20),
                    SizeLimitError);
    CHECK_THROWS_AS(ScaledInteger(0, 0), InvalidArgumentError);
}

TEST_CASE("IntegerSequence validation and io") {
    CHECK_THROWS_AS(IntegerSequence::from_u64({3, 3}), InvalidSetError);
    CHECK_THROWS_AS(IntegerSequence::from_u64({5, 4}), InvalidSetError);

    IntegerSequence s = IntegerSequence::from_u64({1, 2, 3, 6});
    CHECK(s.size() == 4);
    CHECK(s.all_fit_u64());
    CHECK(s.max_shift() == 1);  // 6 = 2^1*3... max over {1,2,3,6}: 2=2^1

    std::istringstream in("1\n2\n# comment\n10 3\n");
    IntegerSequence p = IntegerSequence::parse(in);
    CHECK(p.size() == 3);
    CHECK(p[2].shift() == 10);
    CHECK(p[2].base() == 3);

    std::ostringstream out;
    p.print(out);
    std::istringstream in2(out.str());
    IntegerSequence q = IntegerSequence::parse(in2);
    CHECK(q.size() == p.size());
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(q[i] == p[i]);
}
