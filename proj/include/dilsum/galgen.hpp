#ifndef DILSUM_GALGEN_HPP
#define DILSUM_GALGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dilsum/gcdforms.hpp"
#include "dilsum/numcore.hpp"

namespace dilsum {

struct GalConstruction {
    unsigned prime_count = 0;   // r
    unsigned max_exponent = 0;  // e
    std::string truncation;     // "none" or "greedy-leave-one-out"
};

// Candidate extremal set: psi distinct integers with large normalized GCD
// form at alpha = 1.
struct GalSet {
    IntegerSequence elements;
    GalConstruction construction;
    double form_value = 0.0;  // gcd_form(elements, 1)
};

// Exponent box over the first r primes with cap e, with e ~ max(1, round(log r))
// and r minimal so (e+1)^r >= psi, truncated to exactly psi elements by
// greedily removing the element whose deletion decreases the form least.
// The untruncated box is validated against the closed-form oracle first.
GalSet build_gal_set(std::size_t psi, std::size_t size_cap = kDefaultSizeCap,
                     unsigned threads = 1);

// Hill climbing over single-element swaps, exact rational objective at
// alpha = 1, first-improvement scan in ascending candidate order; swaps are
// accepted only on strict increase, so a uniformly scaled copy (equal form)
// is never accepted.  budget = maximum number of accepted swaps.
GalSet local_search_improve(const GalSet& start, std::size_t budget, std::uint64_t pool_limit);

struct GrowthRow {
    std::size_t psi = 0;
    double form_value = 0.0;
    double ratio = 0.0;  // form_value / (loglog psi)^2
};

std::vector<GrowthRow> verify_gal_growth(const std::vector<std::size_t>& psi_list,
                                         unsigned threads = 1);

}  // namespace dilsum

#endif
