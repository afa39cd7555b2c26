#ifndef MULTIBIN_MSE_PACKING_HPP_
#define MULTIBIN_MSE_PACKING_HPP_

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "multibin/mse.hpp"
#include "multibin/rational.hpp"
#include "multibin/relations.hpp"

namespace multibin::msepack {

// Item of the knapsack/assignment model family. Which optional fields must
// be present depends on the model and objective; solvers reject items
// missing what they need.
struct MseItem {
    int id = 0;
    Rational weight;
    std::optional<Rational> profit;
    std::optional<mse::MsEstimate> estimate;
    std::optional<int> group;
    // Position-dependent data for the generalized assignment model,
    // keyed by 1-based container index.
    std::map<int, mse::MsEstimate> position_estimates;
    std::map<int, Rational> position_profits;
    int wait_age = 0;
};

struct MseSolution {
    // item id -> 1-based container index. Single-container models use 1.
    std::map<int, int> assignment;
    int cardinality = 0;
    std::optional<mse::MsEstimate> objective_estimate;
    std::optional<Rational> objective_value;

    std::vector<int> selected_ids() const;
};

enum class Objective { Scalar, Integrated, Median };
enum class AssignMode { MustAssignAll, AllowPartial };
enum class ModelKind { Knapsack, MultipleChoice, MultipleKnapsack, Assignment, InverseBpp,
                       ConflictInverse };

// Instance bundle shared by the solvers and the bi-objective front.
struct MseInstance {
    std::vector<MseItem> items;
    Rational capacity;                 // knapsack and equal-bin models
    std::vector<Rational> capacities;  // multiple knapsack / assignment
    int bins = 1;                      // equal-bin count (inverse models)
    std::set<rel::ItemPair> conflicts;
    AssignMode assign_mode = AssignMode::AllowPartial;
};

struct SearchLimits {
    int max_subset_items = 20;  // one-container subset search
    int max_assign_items = 12;  // multi-container assignment search
    int max_assign_bins = 4;

    // A single override applied to every cap.
    static SearchLimits scaled(int limit) { return {limit, limit, limit}; }
};

// Capacity-feasible subset whose objective estimate is poset-maximal: no
// feasible subset strictly dominates it (integrated estimates of different
// cardinalities ordered by mse::compare_padded). Ties by larger cardinality,
// then canonical estimate order, then lexicographic id set.
MseSolution knapsack_mse(const std::vector<MseItem>& items, const Rational& capacity,
                         Objective objective, const SearchLimits& limits = {});

// Exactly one item per group under the shared capacity, median objective by
// default. Throws InfeasibleError listing group minima when no complete
// selection fits.
MseSolution multiple_choice_mse(const std::vector<MseItem>& items, const Rational& capacity,
                                Objective objective = Objective::Median,
                                const SearchLimits& limits = {});

// Each item in at most one knapsack, per-knapsack capacities.
MseSolution multiple_knapsack_mse(const std::vector<MseItem>& items,
                                  const std::vector<Rational>& capacities, Objective objective,
                                  const SearchLimits& limits = {});

// Position-dependent profits/estimates; MustAssignAll enforces one container
// per item and reports infeasibility when no complete assignment fits.
MseSolution generalized_assignment_mse(const std::vector<MseItem>& items,
                                       const std::vector<Rational>& capacities,
                                       Objective objective, AssignMode mode,
                                       const SearchLimits& limits = {});

// Multiple knapsack with k equal bins; bin symmetry broken during search.
MseSolution inverse_bpp_mse(const std::vector<MseItem>& items, int bins, const Rational& capacity,
                            Objective objective, const SearchLimits& limits = {});

// inverse_bpp_mse with co-binned conflict pairs rejected.
MseSolution conflict_inverse_mse(const std::vector<MseItem>& items, int bins,
                                 const Rational& capacity, const rel::ConflictGraph& graph,
                                 Objective objective, const SearchLimits& limits = {});

// All feasible solutions not dominated in the product order (objective
// estimate, cardinality); one representative per distinct (estimate,
// cardinality) pair, chosen by the deterministic tie-break.
std::vector<MseSolution> pareto_front_biobjective(ModelKind kind, const MseInstance& instance,
                                                  Objective objective = Objective::Integrated,
                                                  const SearchLimits& limits = {});

}  // namespace multibin::msepack

#endif
