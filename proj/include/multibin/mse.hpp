#ifndef MULTIBIN_MSE_HPP_
#define MULTIBIN_MSE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "multibin/errors.hpp"

namespace multibin::mse {

// Multiset estimate over the ordinal scale [1, l] (level 1 best), stored in
// position form: counts[i] is the number of elements at level i+1. The
// cardinality eta is the sum of counts. An estimate is "interval" when its
// occupied levels form a contiguous range; the assessment scale consists of
// interval estimates only, but integration can leave the interval condition
// behind, so the flag is a derived property rather than an invariant.
class MsEstimate {
  public:
    MsEstimate(int levels, std::vector<int> counts);

    int levels() const { return levels_; }
    int eta() const { return eta_; }
    const std::vector<int>& counts() const { return counts_; }

    bool is_interval() const;

    // Element levels in ascending order, e.g. (2,1,0) -> {1,1,2}.
    std::vector<int> sorted_elements() const;

    // Sum of element levels; the coarse "how far from all-best" measure that
    // orders the canonical enumeration.
    int quality_sum() const;

    // "l,eta:[c1,c2,...]" round-trip text form.
    std::string str() const;
    static MsEstimate parse(const std::string& text);

    friend bool operator==(const MsEstimate& a, const MsEstimate& b) {
        return a.levels_ == b.levels_ && a.counts_ == b.counts_;
    }

    // Canonical total order: quality_sum ascending, then counts vector
    // lexicographically ascending. Lists the assessment scale best-first and
    // breaks median/selection ties deterministically.
    static bool canonical_less(const MsEstimate& a, const MsEstimate& b);

  private:
    int levels_;
    int eta_;
    std::vector<int> counts_;
};

// Minimal number of one-step element moves transforming one estimate into
// another, split by direction: improvements (level going down) and
// degradations (level going up).
struct Proximity {
    int delta_minus = 0;
    int delta_plus = 0;

    int total() const { return delta_minus + delta_plus; }
    friend bool operator==(const Proximity&, const Proximity&) = default;
};

enum class Ordering { Better, Worse, Equal, Incomparable };

// Number of multisets of cardinality eta over a set of l elements,
// l(l+1)...(l+eta-1)/eta!. Throws OverflowError instead of wrapping.
std::uint64_t multiset_coefficient(int l, int eta);

// All interval estimates of the assessment scale P^{l,eta} in canonical
// order.
std::vector<MsEstimate> enumerate_scale(int l, int eta);

// Componentwise sum of the counts vectors. All inputs must share l; the
// result need not be interval.
MsEstimate integrate(const std::vector<MsEstimate>& estimates);

// Requires equal l and eta.
Proximity proximity(const MsEstimate& a, const MsEstimate& b);

// Dominance on the scale poset: a is Better than b when a's sorted element
// sequence is componentwise <= b's with at least one strict inequality.
// Requires equal l and eta.
Ordering compare(const MsEstimate& a, const MsEstimate& b);

// Dominance extended to estimates of different cardinality: the shorter
// sorted sequence is padded with a virtual level l+1 (worse than every real
// level), so a larger multiset of good elements dominates any sub-multiset.
// Coincides with compare() on equal cardinalities. Used to order integrated
// estimates of solutions of different sizes.
Ordering compare_padded(const MsEstimate& a, const MsEstimate& b);

// Estimate of the assessment scale minimizing the total proximity to E;
// first minimizer in canonical order. All members must share (l, eta).
MsEstimate generalized_median(const std::vector<MsEstimate>& estimates);

// As generalized_median but restricted to E itself; first minimizer in input
// order.
MsEstimate set_median(const std::vector<MsEstimate>& estimates);

// Total proximity of m to every member of E.
int total_proximity(const MsEstimate& m, const std::vector<MsEstimate>& estimates);

}  // namespace multibin::mse

#endif
