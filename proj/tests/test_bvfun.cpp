#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dilsum/bvfun.hpp"

#ifndef M_PI
#define M_PI 3.14159265358979323846
#endif

using namespace dilsum;

TEST_CASE("sawtooth shape") {
    PeriodicBVFunction f = PeriodicBVFunction::sawtooth();
    CHECK(f.eval01(mpq_class(1, 4)) == mpq_class(-1, 4));
    CHECK(f.eval01(mpq_class(0)) == mpq_class(-1, 2));  // right-continuous
    CHECK(f.mean() == 0);
    CHECK(f.second_moment() == mpq_class(1, 12));
    CHECK(f.total_variation() == 1);
    CHECK(f.sup_abs() == mpq_class(1, 2));
    CHECK(f.is_sawtooth());
    // G(u) = (u^2 - u)/2
    CHECK(f.antiderivative01(mpq_class(1, 4)) == mpq_class(-3, 32));
    CHECK(f.antiderivative01(mpq_class(0)) == 0);
    CHECK(f.antiderivative01(mpq_class(1)) == 0);
}

TEST_CASE("square wave shape") {
    PeriodicBVFunction f = PeriodicBVFunction::square_wave();
    CHECK(f.eval01(mpq_class(1, 4)) == 1);
    CHECK(f.eval01(mpq_class(3, 4)) == -1);
    CHECK(f.eval01(mpq_class(1, 2)) == -1);  // right-continuous at the jump
    CHECK(f.mean() == 0);
    CHECK(f.total_variation() == 2);
    CHECK(f.second_moment() == 1);
    CHECK(!f.is_sawtooth());
}

TEST_CASE("mean-zero validation") {
    CHECK_THROWS_AS(PeriodicBVFunction::from_pieces(
                        {mpq_class(0)}, {AffinePiece{mpq_class(0), mpq_class(1)}}),
                    InvalidArgumentError);
    CHECK_THROWS_AS(PeriodicBVFunction::from_pieces(
                        {mpq_class(1, 2)}, {AffinePiece{mpq_class(1), mpq_class(-1, 2)}}),
                    InvalidArgumentError);
}

TEST_CASE("function file round trip") {
    std::istringstream in("# sawtooth\n0 1 -1/2\n");
    PeriodicBVFunction f = PeriodicBVFunction::parse(in);
    CHECK(f.is_sawtooth());
    std::ostringstream out;
    f.print(out);
    std::istringstream in2(out.str());
    PeriodicBVFunction g = PeriodicBVFunction::parse(in2);
    CHECK(g.is_sawtooth());

    std::istringstream bad("0 0 1\n1/2 0 -1\n# mean is 0, fine\n");
    CHECK_NOTHROW(PeriodicBVFunction::parse(bad));
    std::istringstream bad2("0 0 1\n");
    CHECK_THROWS_AS(PeriodicBVFunction::parse(bad2), InvalidArgumentError);
}

TEST_CASE("eval_dilate exact argument reduction") {
    PeriodicBVFunction f = PeriodicBVFunction::sawtooth();
    // n = 2, x = 3/8 -> f(3/4) = 1/4
    CHECK(eval_dilate_exact(f, ScaledInteger::from_u64(2), DyadicRational(mpz_class(3), 3)) ==
          mpq_class(1, 4));
    // n = 2^10*3, x = 1/2^12 -> {3/4} -> 1/4
    CHECK(eval_dilate_exact(f, ScaledInteger(10, 3), DyadicRational(mpz_class(1), 12)) ==
          mpq_class(1, 4));
    // n = 1, x = 0 -> -1/2
    CHECK(eval_dilate_exact(f, ScaledInteger::from_u64(1), DyadicRational()) == mpq_class(-1, 2));
    // shift beyond resolution: exact zero fractional part
    CHECK(eval_dilate_exact(f, ScaledInteger(40, 1), DyadicRational(mpz_class(5), 8)) ==
          mpq_class(-1, 2));
    CHECK(eval_dilate(f, ScaledInteger::from_u64(2), DyadicRational(mpz_class(3), 3)) == 0.25);
    CHECK_THROWS_AS(eval_dilate_exact(f, ScaledInteger::from_u64(1), DyadicRational(mpz_class(9), 3)),
                    InvalidArgumentError);
}

TEST_CASE("exact inner products: sawtooth gcd identity") {
    PeriodicBVFunction f = PeriodicBVFunction::sawtooth();
    CHECK(exact_inner_product(f, 1, 1) == mpq_class(1, 12));
    CHECK(exact_inner_product(f, 4, 6) == mpq_class(1, 72));
    // coprime pairs: 1/(12 m n)
    CHECK(exact_inner_product(f, 3, 5) == mpq_class(1, 12 * 15));
    CHECK(exact_inner_product(f, 7, 11) == mpq_class(1, 12 * 77));
    // spot checks of gcd^2/(12 m n) on a small grid (full grid in acceptance)
    for (unsigned long m = 1; m <= 24; ++m)
        for (unsigned long n = m; n <= 24; ++n) {
            mpq_class expect(gcd(m, n) * gcd(m, n), 12 * m * n);
            expect.canonicalize();
            CHECK(exact_inner_product(f, m, n) == expect);
        }
    CHECK_THROWS_AS(exact_inner_product(f, mpz_class("99999999999"), 1), SizeLimitError);
}

TEST_CASE("exact inner products: square wave oracle values") {
    PeriodicBVFunction f = PeriodicBVFunction::square_wave();
    CHECK(exact_inner_product(f, 1, 1) == 1);
    CHECK(exact_inner_product(f, 1, 2) == 0);
    CHECK(exact_inner_product(f, 1, 3) == mpq_class(1, 3));
    CHECK(exact_inner_product(f, 2, 6) == mpq_class(1, 3));  // same ratio, scaled
}

TEST_CASE("dilation invariance of the L2 norm") {
    PeriodicBVFunction saw = PeriodicBVFunction::sawtooth();
    for (unsigned long n = 1; n <= 1000; n = (n < 32) ? n + 1 : n * 3 + 1)
        CHECK(exact_inner_product(saw, n, n) == saw.second_moment());
    PeriodicBVFunction sq = PeriodicBVFunction::square_wave();
    for (unsigned long n : {1, 2, 3, 10, 64, 99})
        CHECK(exact_inner_product(sq, n, n) == sq.second_moment());
}

TEST_CASE("fourier decay: sawtooth coefficients and BV bound") {
    PeriodicBVFunction saw = PeriodicBVFunction::sawtooth();
    auto rows = fourier_decay_check(saw, 100);
    for (const auto& r : rows) {
        CHECK(std::abs(r.a) < 1e-12);                      // odd function: no cosine part
        CHECK(r.b == doctest::Approx(-1.0 / (M_PI * r.k)).epsilon(1e-9));
        CHECK(r.k_abs_b == doctest::Approx(1.0 / M_PI).epsilon(1e-9));
    }

    // sup_k k|coef| <= V(f) for BV functions, numerically
    for (const auto& f : {PeriodicBVFunction::sawtooth(), PeriodicBVFunction::square_wave()}) {
        double v = f.total_variation().get_d();
        for (const auto& r : fourier_decay_check(f, 1000)) {
            CHECK(r.k_abs_a <= v + 1e-8);
            CHECK(r.k_abs_b <= v + 1e-8);
        }
    }
}
