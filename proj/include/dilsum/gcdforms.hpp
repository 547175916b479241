#ifndef DILSUM_GCDFORMS_HPP
#define DILSUM_GCDFORMS_HPP

#include <chrono>
#include <cstdint>
#include <vector>

#include "dilsum/numcore.hpp"

namespace dilsum {

// Lower endpoint of the admissible alpha interval I = (log 2/log 3, 1).
double alpha_interval_low();
bool alpha_in_interval(double alpha);

enum class FormMethod { naive, box_closed_form };

struct GcdFormReport {
    double alpha = 1.0;
    std::size_t n = 0;
    double value = 0.0;
    FormMethod method = FormMethod::naive;
    std::chrono::duration<double> elapsed{0};
};

// Normalized quadratic form (1/N) sum_{k,l} gcd(n_k,n_l)^{2a} / (n_k n_l)^a.
// Row-major compensated summation; `threads` partitions rows into fixed
// chunks whose partial sums are combined in chunk order, so the value is
// independent of the thread count.
GcdFormReport gcd_form(const IntegerSequence& seq, double alpha, unsigned threads = 1);

// Sorts, rejects duplicates (InvalidSetError), then evaluates.
GcdFormReport gcd_form_values(std::vector<mpz_class> values, double alpha, unsigned threads = 1);

// Exact rational value of the form at alpha = 1.
mpq_class gcd_form_exact_alpha1(const IntegerSequence& seq);

// Closed form on the exponent box over `primes` with cap e:
//   prod_i (1/(e+1)) [ (e+1) + 2 sum_{d=1}^{e} (e+1-d) p_i^{-d a} ].
GcdFormReport gcd_form_box(const std::vector<std::uint64_t>& primes, unsigned e, double alpha);

// ---------------------------------------------------------------------------
// Product upper bound for Gamma(N) with xi = 2:
//   prod_{j=1}^{r_N} (1-v_j)^{-1} (1-v_j^{-1} tau_j^2)^{-1}
//     * prod_{k=r_N+1}^{N-1} (1-v_{r_N}^{-1} tau_k^2)^{-1}
//     + exp(C sum_{l=1}^{N-1} t_l^2),
// with t_j = p_j^{-a}, tau_j = 2 p_j^{-a}, v_j = max(tau_j, (2a-1)^{-1/2}
// tau_{r_N}), r_N = [2 log N] + 1.  The first product splits at
//   s_N = max{1 <= j <= r_N : tau_j >= (2a-1)^{-1/2} tau_{r_N}}
// into P1 (j <= s_N) and P2 (s_N < j <= r_N); the second product is P3.
//
// Factors are evaluated literally from j = 1.  The factor at j = 1 (p = 2)
// is singular for every alpha < 1 since tau_1 = 2^{1-a} >= 1; singular
// factors are excluded from the reported products and listed with their
// indices instead of being clamped.  With strict = true the first singular
// factor raises SingularFactorError.
// ---------------------------------------------------------------------------
struct BoundParameters {
    double alpha = 0.9;
    std::size_t N = 1000;
    double xi = 2.0;   // fixed by the formula; kept for provenance
    double C = 1.0;    // absolute constant of the exp term (configurable)
    std::size_t N0 = 16;
    bool strict = false;
};

struct SingularFactor {
    int sub_product;           // 1, 2 or 3
    std::size_t index;         // j (P1/P2) or k (P3)
    double expression_value;   // the offending 1 - ... value
};

struct ProductBoundReport {
    double alpha = 0;
    std::size_t N = 0;
    std::size_t r_N = 0;
    std::size_t s_N = 0;
    double log_p1 = 0, log_p2 = 0, log_p3 = 0;
    double p1 = 1, p2 = 1, p3 = 1;
    double t_square_sum = 0;
    double exp_term = 1;  // exp(C sum t^2)
    double total = 0;     // p1 p2 p3 + exp_term
    std::vector<SingularFactor> singular;
    bool strict_bound = true;  // false when singular factors were excluded
};

ProductBoundReport gamma_upper_bound_product(const BoundParameters& params,
                                             const PrimeTable& primes);
ProductBoundReport gamma_upper_bound_product(const BoundParameters& params);

// Simplified bound exp( C4/(1-a) * (log N)^{1-a} ) for a in I.
double gamma_upper_bound_simple(double alpha, std::size_t N, double C4);

// ---------------------------------------------------------------------------
// Parameter schedule:
//   J^{e/2} = (log N)^{1/2} exp((2 C6/e) (log N)^{e/2})
//   log J   = (1/e) loglog N + (4 C6/e^2) (log N)^{e/2}
//   rm_norm_factor = (log N) exp(-(C6/e) (log N)^{e/2})
// With e = 1/loglog N: (log N)^{e/2} = e^{1/2} and
//   log J = (1 + 4 C6 e^{1/2}) (loglog N)^2,
//   rm_norm_factor = (log N)^{1 - C6 e^{1/2}}.
// ---------------------------------------------------------------------------
struct ScheduleReport {
    std::size_t N = 0;
    double epsilon = 0;
    double C6 = 4;
    double log_n = 0;
    double loglog_n = 0;
    double logN_pow_eps_half = 0;  // (log N)^{e/2}
    double logJ = 0;
    double J = 0;  // exp(logJ); may overflow to inf, logJ is primary
    double rm_norm_factor = 0;
    bool epsilon_canonical = false;        // epsilon == 1/loglog N
    double logJ_closed_form = 0;           // (1+4 C6 e^{1/2})(loglog N)^2 if canonical
    double rm_closed_form_exponent = 0;    // 1 - C6 e^{1/2} if canonical
};

ScheduleReport schedule_eval(std::size_t N, double epsilon, double C6);
// epsilon = 1/loglog N
ScheduleReport schedule_eval_auto(std::size_t N, double C6);

}  // namespace dilsum

#endif
