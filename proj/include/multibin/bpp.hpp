#ifndef MULTIBIN_BPP_HPP_
#define MULTIBIN_BPP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "multibin/rational.hpp"

namespace multibin::bpp {

struct Item {
    int id = 0;
    Rational weight;
};

// One-dimensional packing instance: items with exact rational weights, a
// common bin capacity and, for inverse/fixed-k problems, an optional bin
// budget.
struct PackInstance {
    std::vector<Item> items;
    Rational capacity;
    std::optional<int> max_bins;

    // Enforces unique ids and 0 < weight <= capacity.
    void check() const;
    const Item& item(int id) const;
};

// Assignment of items to bins. Bin-internal order is significant once
// precedence relations apply. Items in `unassigned` wait (inverse problems).
struct PackSolution {
    std::vector<std::vector<int>> bins;
    std::vector<int> unassigned;

    int bins_used() const { return static_cast<int>(bins.size()); }
    bool is_complete() const { return unassigned.empty(); }
};

struct Violation {
    std::string kind;   // "overflow", "missing_item", "duplicate_item",
                        // "unknown_item", "empty_bin", "too_many_bins"
    int bin_index = -1; // 1-based; -1 when not bin-specific
    int item_id = -1;   // -1 when not item-specific
    Rational overflow;  // amount over capacity for "overflow"
    std::string detail;
};

struct FeasibilityReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks per-bin capacity, the exact-partition property (every instance item
// exactly once across bins and unassigned) and the bin budget when present.
// Unknown ids are reported as structural violations rather than thrown, so a
// report always comes back; callers that need hard failure check ok().
FeasibilityReport validate(const PackInstance& instance, const PackSolution& solution);

enum class FitPolicy { NextFit, FirstFit, BestFit, WorstFit };
enum class ItemOrder { AsGiven, Decreasing };

// Classical fitting heuristics. Decreasing sorts by weight descending with
// ties by id ascending; BestFit picks the feasible bin with least residual
// capacity, WorstFit the one with most, ties by lowest bin index.
PackSolution fit_pack(const PackInstance& instance, FitPolicy policy, ItemOrder order);

// Continuous bound: ceil(total weight / capacity).
int lower_bound(const PackInstance& instance);

// Provably minimal bin count by branch and bound over item-to-bin
// assignments; item i may open at most one new bin (index current max + 1).
// Throws SizeLimitError beyond max_items.
PackSolution exact_min_bins(const PackInstance& instance, int max_items = 20);

std::string policy_name(FitPolicy policy, ItemOrder order);

}  // namespace multibin::bpp

#endif
