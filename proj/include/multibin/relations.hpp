#ifndef MULTIBIN_RELATIONS_HPP_
#define MULTIBIN_RELATIONS_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multibin/bpp.hpp"
#include "multibin/rational.hpp"

namespace multibin::rel {

using ItemPair = std::pair<int, int>;

// The additional constraint families over items and bins. All components are
// optional; an absent component constrains nothing. Grades are kept as data
// even where only "grade zero forbids" is enforced.
struct RelationSet {
    // (item, bin index) -> ordinal grade, 0 = forbidden. Absent pairs are
    // unconstrained.
    std::map<ItemPair, int> correspondence;
    // Unordered conflicting pairs (stored with first < second).
    std::set<ItemPair> conflicts;
    // Unordered pair -> compatibility grade; 0 forbids co-binning, positive
    // grades are advisory.
    std::map<ItemPair, int> compatibility;
    // Directed precedence edges (a before b); must be acyclic.
    std::vector<ItemPair> precedence;
    // Directed dominance edges over items (a at least as important as b).
    std::vector<ItemPair> item_dominance;
    // Directed importance edges over bin indices (1-based).
    std::vector<ItemPair> bin_importance;

    void add_conflict(int a, int b);
    void add_compatibility(int a, int b, int grade);
    std::optional<int> compatibility_grade(int a, int b) const;

    // Acyclicity of precedence and both dominance graphs, irreflexivity of
    // pair relations.
    void check() const;
    bool empty() const;
};

struct ConstraintViolation {
    std::string requirement;  // "correspondence", "dominance", "precedence",
                              // "conflict", "compatibility"
    int item_a = -1;
    int item_b = -1;
    int bin_index = -1;  // 1-based
    std::string detail;
};

// One record per breach of the five constraint families. Precedence is
// checked within bins (order of the stored lists) and across bins (the
// earlier item must not sit in a later bin). Dominance flags the single
// excluded pattern: dominating item waiting while the dominated one is
// packed.
std::vector<ConstraintViolation> check_constraints(const bpp::PackInstance& instance,
                                                   const RelationSet& relations,
                                                   const bpp::PackSolution& solution);

// Conflict graph over item ids; construction from an instance adds every
// pair whose combined weight exceeds the capacity.
class ConflictGraph {
  public:
    ConflictGraph() = default;
    explicit ConflictGraph(const std::set<ItemPair>& edges);
    static ConflictGraph from_instance(const bpp::PackInstance& instance,
                                       const std::set<ItemPair>& declared);

    bool in_conflict(int a, int b) const;
    const std::set<ItemPair>& edges() const { return edges_; }
    bool conflicts_with_any(int item, const std::vector<int>& bin) const;

  private:
    std::set<ItemPair> edges_;
};

enum class SolveMode { Exact, Greedy };

// Minimal (exact) or first-fit-decreasing (greedy) bin count such that no
// conflicting pair shares a bin.
bpp::PackSolution conflict_pack(const bpp::PackInstance& instance, const ConflictGraph& graph,
                                SolveMode mode, int max_items = 20);

// Packs a profit-maximal subset into max_bins equal bins; unit profits make
// this the maximum cardinality problem. Unassigned items form the wait set.
bpp::PackSolution inverse_pack(const bpp::PackInstance& instance,
                               const std::map<int, Rational>& profits, SolveMode mode,
                               int max_items = 20);

Rational profit_of(const bpp::PackSolution& solution, const std::map<int, Rational>& profits);

// Reorders every bin into a topological order under the precedence edges
// restricted to the bin, ties by item id.
bpp::PackSolution order_within_bins(const bpp::PackSolution& solution,
                                    const std::vector<ItemPair>& precedence);

}  // namespace multibin::rel

#endif
