#ifndef DILSUM_BVFUN_HPP
#define DILSUM_BVFUN_HPP

#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "dilsum/numcore.hpp"

namespace dilsum {

// One affine piece: value = slope*x + intercept on its half-open interval.
struct AffinePiece {
    mpq_class slope;
    mpq_class intercept;
};

// Period-1, mean-zero, piecewise-linear function with jumps.  Piece i covers
// [breakpoints[i], breakpoints[i+1]) (the last piece wraps to 1); values are
// right-continuous at breakpoints.  Total variation is taken on the closed
// interval [0,1] of the representative branch, i.e. slopes plus interior
// jumps; the periodic re-entry jump at 1 is not counted.
class PeriodicBVFunction {
public:
    // f(x) = x - 1/2 on [0,1).
    static PeriodicBVFunction sawtooth();
    // +1 on [0,1/2), -1 on [1/2,1).
    static PeriodicBVFunction square_wave();
    // Validates: first breakpoint 0, ascending in [0,1), exact mean zero.
    static PeriodicBVFunction from_pieces(std::vector<mpq_class> breakpoints,
                                          std::vector<AffinePiece> pieces);

    // Text format, one piece per line: "<breakpoint> <slope> <intercept>",
    // each an exact rational "p/q".  Mean-zero is validated on load.
    static PeriodicBVFunction parse(std::istream& in);
    void print(std::ostream& out) const;

    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<mpq_class>& breakpoints() const { return breakpoints_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

    // Exact evaluation for x in [0,1).
    mpq_class eval01(const mpq_class& x) const;
    // Exact evaluation of the periodic extension at any rational x.
    mpq_class eval(const mpq_class& x) const;
    // Fast floating path (x reduced mod 1 by the caller when it matters).
    double eval_d(double x) const;

    mpq_class mean() const;
    // G(u) = int_0^u f, exact, for u in [0,1]; G(0) = G(1) = 0.
    mpq_class antiderivative01(const mpq_class& u) const;
    double antiderivative01_d(double u) const;
    mpq_class second_moment() const;  // int_0^1 f^2
    mpq_class total_variation() const;
    mpq_class sup_abs() const;  // sup |f| over [0,1)

    bool is_sawtooth() const;

private:
    PeriodicBVFunction(std::vector<mpq_class> bps, std::vector<AffinePiece> pcs);
    std::size_t locate(const mpq_class& x) const;  // piece index for x in [0,1)

    std::vector<mpq_class> breakpoints_;
    std::vector<AffinePiece> pieces_;
    std::vector<mpq_class> cum_integral_;  // integral up to each breakpoint
    std::vector<double> breakpoints_d_;
    std::vector<double> slopes_d_;
    std::vector<double> intercepts_d_;
};

// Exact fractional part {n*x} of a scaled integer times a dyadic rational.
DyadicRational dilate_frac(const ScaledInteger& n, const DyadicRational& x);

// f({n*x}) with the argument reduced exactly in dyadic arithmetic.
double eval_dilate(const PeriodicBVFunction& f, const ScaledInteger& n, const DyadicRational& x);
mpq_class eval_dilate_exact(const PeriodicBVFunction& f, const ScaledInteger& n,
                            const DyadicRational& x);

// Exact int_0^1 f(mx) f(nx) dx by common breakpoint refinement.
// For the sawtooth this equals gcd(m,n)^2 / (12 m n); the refinement path
// here stays independent of that identity so it can serve as its oracle.
mpq_class exact_inner_product(const PeriodicBVFunction& f, const mpz_class& m, const mpz_class& n,
                              std::size_t size_cap = kDefaultSizeCap);

struct FourierRow {
    unsigned k;
    double a;  // cosine coefficient
    double b;  // sine coefficient
    double k_abs_a;
    double k_abs_b;
};

// k*|a_k|, k*|b_k| for k <= K; bounded by V(f) for BV functions.
std::vector<FourierRow> fourier_decay_check(const PeriodicBVFunction& f, unsigned K);

}  // namespace dilsum

#endif
