#include "dilsum/galgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace dilsum {

namespace {

// Smallest r with (e+1)^r >= psi.
unsigned min_prime_count(std::size_t psi, unsigned e) {
    unsigned r = 1;
    mpz_class count = e + 1;
    while (count < static_cast<unsigned long>(psi)) {
        count *= (e + 1);
        ++r;
    }
    return r;
}

// e ~ max(1, round(log r)) and r minimal with (e+1)^r >= psi.  The two rules
// feed each other and can oscillate between two candidates; in that case the
// candidate with the smaller box excess over psi wins.
void choose_box_parameters(std::size_t psi, unsigned& r_out, unsigned& e_out) {
    unsigned e = 1;
    std::map<std::pair<unsigned, unsigned>, bool> seen;
    std::vector<std::pair<unsigned, unsigned>> visited;
    for (int iter = 0; iter < 16; ++iter) {
        unsigned r = min_prime_count(psi, e);
        unsigned e_next = std::max(1l, std::lround(std::log(static_cast<double>(r))));
        if (e_next == e) {
            r_out = r;
            e_out = e;
            return;
        }
        auto key = std::make_pair(r, e);
        if (seen[key]) break;
        seen[key] = true;
        visited.push_back(key);
        e = e_next;
    }
    // pick the visited candidate with minimal box size (ties: smaller e)
    mpz_class best_size = 0;
    for (const auto& [r, e_cand] : visited) {
        mpz_class size;
        mpz_ui_pow_ui(size.get_mpz_t(), e_cand + 1, r);
        if (best_size == 0 || size < best_size ||
            (size == best_size && e_cand < e_out)) {
            best_size = size;
            r_out = r;
            e_out = e_cand;
        }
    }
}

// Exact pair weight gcd(a,b)^2/(a b) at alpha = 1.
mpq_class pair_weight(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpq_class w(g * g, a * b);
    w.canonicalize();
    return w;
}

double pair_weight_d(std::uint64_t a, std::uint64_t b) {
    double g = static_cast<double>(std::gcd(a, b));
    return g / static_cast<double>(a) * g / static_cast<double>(b);
}

}  // namespace

GalSet build_gal_set(std::size_t psi, std::size_t size_cap, unsigned threads) {
    if (psi < 2) throw InvalidArgumentError("build_gal_set: psi must be >= 2");
    unsigned r = 1, e = 1;
    choose_box_parameters(psi, r, e);
    PrimeTable primes = sieve_first_primes(r);
    std::vector<std::uint64_t> plist(primes.primes.begin(), primes.primes.begin() + r);
    IntegerSequence box = exponent_box_set(plist, e, size_cap);

    // box oracle: the enumerated box must reproduce the closed form
    {
        double naive = gcd_form(box, 1.0, threads).value;
        double closed = gcd_form_box(plist, e, 1.0).value;
        if (std::abs(naive - closed) > 1e-10 * closed)
            throw Error("build_gal_set: box oracle mismatch: naive " + std::to_string(naive) +
                        " vs closed form " + std::to_string(closed));
    }

    GalSet out;
    out.construction.prime_count = r;
    out.construction.max_exponent = e;

    if (box.size() == psi) {
        out.construction.truncation = "none";
        out.elements = std::move(box);
        out.form_value = gcd_form(out.elements, 1.0, threads).value;
        return out;
    }

    // Greedy truncation: repeatedly drop the element with the smallest row
    // sum (its removal decreases the pair sum the least).  Row sums are kept
    // incrementally; the final form is recomputed from scratch.
    out.construction.truncation = "greedy-leave-one-out";
    if (box.all_fit_u64()) {
        std::vector<std::uint64_t> v = box.as_u64();
        std::size_t n = v.size();
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double w = pair_weight_d(v[i], v[j]);
                row[i] += w;
                row[j] += w;
            }
            row[i] += 1.0;  // diagonal
        }
        std::vector<bool> dead(n, false);
        for (std::size_t alive = n; alive > psi; --alive) {
            std::size_t best = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!dead[i] && (best == n || row[i] < row[best])) best = i;
            dead[best] = true;
            for (std::size_t j = 0; j < n; ++j)
                if (!dead[j]) row[j] -= pair_weight_d(v[best], v[j]);
        }
        std::vector<std::uint64_t> kept;
        kept.reserve(psi);
        for (std::size_t i = 0; i < n; ++i)
            if (!dead[i]) kept.push_back(v[i]);
        out.elements = IntegerSequence::from_u64(kept);
    } else {
        std::vector<mpz_class> v;
        v.reserve(box.size());
        for (std::size_t i = 0; i < box.size(); ++i) v.push_back(box[i].expanded());
        std::size_t n = v.size();
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double w = pair_weight(v[i], v[j]).get_d();
                row[i] += w;
                row[j] += w;
            }
            row[i] += 1.0;
        }
        std::vector<bool> dead(n, false);
        for (std::size_t alive = n; alive > psi; --alive) {
            std::size_t best = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!dead[i] && (best == n || row[i] < row[best])) best = i;
            dead[best] = true;
            for (std::size_t j = 0; j < n; ++j)
                if (!dead[j]) row[j] -= pair_weight(v[best], v[j]).get_d();
        }
        std::vector<mpz_class> kept;
        for (std::size_t i = 0; i < n; ++i)
            if (!dead[i]) kept.push_back(v[i]);
        out.elements = IntegerSequence::from_mpz(kept);
    }
    out.form_value = gcd_form(out.elements, 1.0, threads).value;
    return out;
}

GalSet local_search_improve(const GalSet& start, std::size_t budget, std::uint64_t pool_limit) {
    GalSet cur = start;
    if (budget == 0 || cur.elements.empty()) return cur;

    std::vector<mpz_class> v;
    v.reserve(cur.elements.size());
    for (std::size_t i = 0; i < cur.elements.size(); ++i) v.push_back(cur.elements[i].expanded());
    const std::size_t n = v.size();

    // exact pair sum S and row sums at alpha = 1
    std::vector<mpq_class> row(n, 0);
    mpq_class S = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            mpq_class w = pair_weight(v[i], v[j]);
            row[i] += w;
            row[j] += w;
            S += 2 * w;
        }
        row[i] += 1;
        S += 1;
    }

    auto in_set = [&](const mpz_class& c) {
        return std::binary_search(v.begin(), v.end(), c);
    };

    std::size_t accepted = 0;
    bool improved = true;
    while (accepted < budget && improved) {
        improved = false;
        for (std::uint64_t cu = 1; cu <= pool_limit && !improved; ++cu) {
            mpz_class c(static_cast<unsigned long>(cu));
            if (in_set(c)) continue;
            // cross weight of the candidate against the whole current set
            mpq_class c_full = 0;
            std::vector<mpq_class> wc(n);
            for (std::size_t j = 0; j < n; ++j) {
                wc[j] = pair_weight(c, v[j]);
                c_full += wc[j];
            }
            for (std::size_t i = 0; i < n && !improved; ++i) {
                // swap out v[i], swap in c
                mpq_class S_new = S - 2 * row[i] + 1 + 2 * (c_full - wc[i]) + 1;
                if (S_new > S) {
                    // apply: update row sums, replace the element, re-sort
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == i) continue;
                        row[j] += wc[j] - pair_weight(v[i], v[j]);
                    }
                    row[i] = c_full - wc[i] + 1;
                    S = S_new;
                    v[i] = c;
                    // keep v sorted; carry the row sum along
                    while (i + 1 < n && v[i + 1] < v[i]) {
                        std::swap(v[i + 1], v[i]);
                        std::swap(row[i + 1], row[i]);
                        ++i;
                    }
                    while (i > 0 && v[i] < v[i - 1]) {
                        std::swap(v[i - 1], v[i]);
                        std::swap(row[i - 1], row[i]);
                        --i;
                    }
                    ++accepted;
                    improved = true;
                }
            }
        }
    }

    GalSet out;
    out.construction = cur.construction;
    out.construction.truncation = cur.construction.truncation + "+local-search";
    out.elements = IntegerSequence::from_mpz(v);
    mpq_class form = S / static_cast<unsigned long>(n);
    out.form_value = form.get_d();
    return out;
}

std::vector<GrowthRow> verify_gal_growth(const std::vector<std::size_t>& psi_list,
                                         unsigned threads) {
    std::vector<GrowthRow> rows;
    rows.reserve(psi_list.size());
    for (std::size_t psi : psi_list) {
        if (psi < 16) throw InvalidArgumentError("verify_gal_growth: psi must be >= 16");
        GalSet g = build_gal_set(psi, kDefaultSizeCap, threads);
        double ll = std::log(std::log(static_cast<double>(psi)));
        rows.push_back(GrowthRow{psi, g.form_value, g.form_value / (ll * ll)});
    }
    return rows;
}

}  // namespace dilsum
