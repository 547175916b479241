#include "dilsum/gcdforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace dilsum {

double alpha_interval_low() { return std::log(2.0) / std::log(3.0); }

bool alpha_in_interval(double alpha) { return alpha > alpha_interval_low() && alpha < 1.0; }

namespace {

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Shift magnitude beyond which 2^{-alpha*d} underflows any double.
const long kShiftUnderflow = 1 << 20;

// One pair term gcd(a,b)^{2alpha} / (ab)^{alpha} for symbolic terms.
double pair_term_symbolic(const ScaledInteger& a, const ScaledInteger& b, double alpha) {
    mpz_class dshift = a.shift() - b.shift();
    mpz_class ad = abs(dshift);
    if (ad > kShiftUnderflow) return 0.0;
    mpz_class g = gcd(a.base(), b.base());
    signed long e1, e2, e3;
    double m1 = mpz_get_d_2exp(&e1, g.get_mpz_t());
    double m2 = mpz_get_d_2exp(&e2, a.base().get_mpz_t());
    double m3 = mpz_get_d_2exp(&e3, b.base().get_mpz_t());
    double log2term = 2.0 * (std::log2(m1) + e1) - (std::log2(m2) + e2) - (std::log2(m3) + e3) -
                      ad.get_d();
    return std::exp2(alpha * log2term);
}

// Dense u64 kernel: one full row of the pair matrix.
double row_sum_u64(const std::vector<std::uint64_t>& v, std::size_t k, double alpha,
                   const std::vector<double>& inv_pow, const std::vector<double>& gcd_pow_cache) {
    Kahan acc;
    std::uint64_t nk = v[k];
    if (alpha == 1.0) {
        double invk = inv_pow[k];
        for (std::size_t l = 0; l < v.size(); ++l) {
            double g = static_cast<double>(std::gcd(nk, v[l]));
            acc.add(g * invk * g * inv_pow[l]);
        }
    } else {
        double invk = inv_pow[k];
        for (std::size_t l = 0; l < v.size(); ++l) {
            std::uint64_t g = std::gcd(nk, v[l]);
            double gp = (g < gcd_pow_cache.size()) ? gcd_pow_cache[g]
                                                   : std::pow(static_cast<double>(g), 2.0 * alpha);
            acc.add(gp * invk * inv_pow[l]);
        }
    }
    return acc.sum;
}

}  // namespace

GcdFormReport gcd_form(const IntegerSequence& seq, double alpha, unsigned threads) {
    if (seq.empty()) throw InvalidArgumentError("gcd_form: empty sequence");
    if (!(alpha > 0.5) || !(alpha <= 1.0))
        throw InvalidArgumentError("gcd_form: alpha must lie in (1/2, 1]");
    if (threads == 0) threads = 1;
    auto t0 = std::chrono::steady_clock::now();

    std::size_t n = seq.size();
    std::vector<double> chunk_sums;
    const std::size_t chunk = 64;  // fixed partition; combination order below
    std::size_t nchunks = (n + chunk - 1) / chunk;
    chunk_sums.assign(nchunks, 0.0);

    if (seq.all_fit_u64()) {
        std::vector<std::uint64_t> v = seq.as_u64();
        std::vector<double> inv_pow(n);
        for (std::size_t i = 0; i < n; ++i)
            inv_pow[i] = std::pow(static_cast<double>(v[i]), -alpha);
        std::vector<double> gcd_pow_cache;
        if (alpha != 1.0) {
            gcd_pow_cache.resize(1 << 16);
            for (std::size_t g = 0; g < gcd_pow_cache.size(); ++g)
                gcd_pow_cache[g] = std::pow(static_cast<double>(g), 2.0 * alpha);
        }
        auto work = [&](unsigned tid) {
            for (std::size_t c = tid; c < nchunks; c += threads) {
                Kahan acc;
                std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
                for (std::size_t k = lo; k < hi; ++k)
                    acc.add(row_sum_u64(v, k, alpha, inv_pow, gcd_pow_cache));
                chunk_sums[c] = acc.sum;
            }
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
    } else {
        auto work = [&](unsigned tid) {
            for (std::size_t c = tid; c < nchunks; c += threads) {
                Kahan acc;
                std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
                for (std::size_t k = lo; k < hi; ++k)
                    for (std::size_t l = 0; l < n; ++l)
                        acc.add(pair_term_symbolic(seq[k], seq[l], alpha));
                chunk_sums[c] = acc.sum;
            }
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
    }

    Kahan total;
    for (double s : chunk_sums) total.add(s);

    GcdFormReport rep;
    rep.alpha = alpha;
    rep.n = n;
    rep.value = total.sum / static_cast<double>(n);
    rep.method = FormMethod::naive;
    rep.elapsed = std::chrono::steady_clock::now() - t0;
    return rep;
}

GcdFormReport gcd_form_values(std::vector<mpz_class> values, double alpha, unsigned threads) {
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] == values[i - 1])
            throw InvalidSetError("gcd_form: duplicate element " + values[i].get_str());
    return gcd_form(IntegerSequence::from_mpz(values), alpha, threads);
}

mpq_class gcd_form_exact_alpha1(const IntegerSequence& seq) {
    if (seq.empty()) throw InvalidArgumentError("gcd_form: empty sequence");
    std::size_t n = seq.size();
    mpq_class sum = static_cast<unsigned long>(n);  // diagonal terms are all 1
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            mpz_class d = abs(mpz_class(seq[k].shift() - seq[l].shift()));
            if (d > static_cast<unsigned long>(kDefaultSizeCap))
                throw SizeLimitError("gcd_form_exact: shift gap " + d.get_str() +
                                     " too large for exact rational arithmetic");
            mpz_class g = gcd(seq[k].base(), seq[l].base());
            mpz_class num = g * g;
            mpz_class den = seq[k].base() * seq[l].base();
            den <<= d.get_ui();
            mpq_class term(num, den);
            term.canonicalize();
            sum += 2 * term;
        }
    return sum / static_cast<unsigned long>(n);
}

GcdFormReport gcd_form_box(const std::vector<std::uint64_t>& primes, unsigned e, double alpha) {
    if (primes.empty()) throw InvalidArgumentError("gcd_form_box: need at least one prime");
    if (e < 1) throw InvalidArgumentError("gcd_form_box: max exponent must be >= 1");
    if (!(alpha > 0.5) || !(alpha <= 1.0))
        throw InvalidArgumentError("gcd_form_box: alpha must lie in (1/2, 1]");
    auto t0 = std::chrono::steady_clock::now();
    double value = 1.0;
    for (std::uint64_t p : primes) {
        double s = 0.0;
        for (unsigned d = 1; d <= e; ++d)
            s += (e + 1.0 - d) * std::pow(static_cast<double>(p), -static_cast<double>(d) * alpha);
        value *= ((e + 1.0) + 2.0 * s) / (e + 1.0);
    }
    GcdFormReport rep;
    rep.alpha = alpha;
    rep.n = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) rep.n *= (e + 1);
    rep.value = value;
    rep.method = FormMethod::box_closed_form;
    rep.elapsed = std::chrono::steady_clock::now() - t0;
    return rep;
}

// ---------------------------------------------------------------------------

ProductBoundReport gamma_upper_bound_product(const BoundParameters& params,
                                             const PrimeTable& primes) {
    if (!alpha_in_interval(params.alpha))
        throw InvalidArgumentError("gamma_upper_bound_product: alpha must lie in (log2/log3, 1)");
    if (params.N < params.N0)
        throw InvalidArgumentError("gamma_upper_bound_product: N below N0 = " +
                                   std::to_string(params.N0));
    const double a = params.alpha;
    const std::size_t N = params.N;
    std::size_t r_N = static_cast<std::size_t>(std::floor(2.0 * std::log(double(N)))) + 1;
    if (primes.count() < std::max<std::size_t>(r_N, N - 1))
        throw InvalidArgumentError("gamma_upper_bound_product: need at least " +
                                   std::to_string(std::max<std::size_t>(r_N, N - 1)) + " primes");

    auto tau = [&](std::size_t j) { return 2.0 * std::pow(double(primes.prime(j)), -a); };
    const double thresh = std::pow(2.0 * a - 1.0, -0.5) * tau(r_N);

    // tau is decreasing in j, so s_N is a prefix cutoff.
    std::size_t s_N = 0;
    for (std::size_t j = 1; j <= r_N; ++j) {
        if (tau(j) >= thresh)
            s_N = j;
        else
            break;
    }

    ProductBoundReport rep;
    rep.alpha = a;
    rep.N = N;
    rep.r_N = r_N;
    rep.s_N = s_N;

    auto note_singular = [&](int which, std::size_t idx, double expr) {
        if (params.strict)
            throw SingularFactorError("gamma_upper_bound_product: singular factor in P" +
                                          std::to_string(which) + " at index " +
                                          std::to_string(idx) + " (value " +
                                          std::to_string(expr) + ")",
                                      static_cast<long>(idx));
        rep.singular.push_back(SingularFactor{which, idx, expr});
        rep.strict_bound = false;
    };

    Kahan lp1, lp2, lp3;
    for (std::size_t j = 1; j <= r_N; ++j) {
        double tj = tau(j);
        double vj = std::max(tj, thresh);
        int which = (j <= s_N) ? 1 : 2;
        Kahan& lp = (j <= s_N) ? lp1 : lp2;
        double f1 = 1.0 - vj;
        double f2 = 1.0 - tj * tj / vj;
        if (f1 <= 0.0)
            note_singular(which, j, f1);
        else
            lp.add(-std::log(f1));
        if (f2 <= 0.0)
            note_singular(which, j, f2);
        else
            lp.add(-std::log(f2));
    }
    double v_rN = std::max(tau(r_N), thresh);
    for (std::size_t k = r_N + 1; k + 1 <= N; ++k) {
        double tk = tau(k);
        double f = 1.0 - tk * tk / v_rN;
        if (f <= 0.0)
            note_singular(3, k, f);
        else
            lp3.add(-std::log(f));
    }

    Kahan tsq;
    for (std::size_t l = 1; l + 1 <= N; ++l) {
        double t = std::pow(double(primes.prime(l)), -a);
        tsq.add(t * t);
    }

    rep.log_p1 = lp1.sum;
    rep.log_p2 = lp2.sum;
    rep.log_p3 = lp3.sum;
    rep.p1 = std::exp(lp1.sum);
    rep.p2 = std::exp(lp2.sum);
    rep.p3 = std::exp(lp3.sum);
    rep.t_square_sum = tsq.sum;
    rep.exp_term = std::exp(params.C * tsq.sum);
    rep.total = std::exp(lp1.sum + lp2.sum + lp3.sum) + rep.exp_term;
    return rep;
}

ProductBoundReport gamma_upper_bound_product(const BoundParameters& params) {
    std::size_t r_N = static_cast<std::size_t>(std::floor(2.0 * std::log(double(params.N)))) + 1;
    std::size_t need = std::max<std::size_t>(r_N, params.N > 0 ? params.N - 1 : 1);
    return gamma_upper_bound_product(params, sieve_first_primes(need));
}

double gamma_upper_bound_simple(double alpha, std::size_t N, double C4) {
    if (!alpha_in_interval(alpha))
        throw InvalidArgumentError("gamma_upper_bound_simple: alpha must lie in (log2/log3, 1)");
    if (N < 2) throw InvalidArgumentError("gamma_upper_bound_simple: N must be >= 2");
    if (!(C4 > 0)) throw InvalidArgumentError("gamma_upper_bound_simple: C4 must be positive");
    return std::exp(C4 / (1.0 - alpha) * std::pow(std::log(double(N)), 1.0 - alpha));
}

// ---------------------------------------------------------------------------

ScheduleReport schedule_eval(std::size_t N, double epsilon, double C6) {
    if (N < 16) throw InvalidArgumentError("schedule_eval: N must be >= 16 so loglog N > 0");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw InvalidArgumentError("schedule_eval: epsilon must lie in (0,1)");
    if (!(C6 >= 4.0)) throw InvalidArgumentError("schedule_eval: C6 must be >= 4");

    ScheduleReport rep;
    rep.N = N;
    rep.epsilon = epsilon;
    rep.C6 = C6;
    rep.log_n = std::log(double(N));
    rep.loglog_n = std::log(rep.log_n);
    if (!(rep.loglog_n > 0.0)) throw InvalidArgumentError("schedule_eval: loglog N <= 0");

    rep.logN_pow_eps_half = std::exp(epsilon / 2.0 * rep.loglog_n);
    rep.logJ = rep.loglog_n / epsilon + 4.0 * C6 / (epsilon * epsilon) * rep.logN_pow_eps_half;
    rep.J = std::exp(rep.logJ);
    rep.rm_norm_factor = rep.log_n * std::exp(-C6 / epsilon * rep.logN_pow_eps_half);

    rep.epsilon_canonical = std::abs(epsilon * rep.loglog_n - 1.0) < 1e-9;
    if (rep.epsilon_canonical) {
        double root_e = std::exp(0.5);
        rep.logJ_closed_form = (1.0 + 4.0 * C6 * root_e) * rep.loglog_n * rep.loglog_n;
        rep.rm_closed_form_exponent = 1.0 - C6 * root_e;
    }
    return rep;
}

ScheduleReport schedule_eval_auto(std::size_t N, double C6) {
    if (N < 16) throw InvalidArgumentError("schedule_eval: N must be >= 16 so loglog N > 0");
    double eps = 1.0 / std::log(std::log(double(N)));
    return schedule_eval(N, eps, C6);
}

}  // namespace dilsum
