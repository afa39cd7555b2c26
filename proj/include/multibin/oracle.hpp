#ifndef MULTIBIN_ORACLE_HPP_
#define MULTIBIN_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "multibin/bpp.hpp"
#include "multibin/coloring.hpp"
#include "multibin/mse.hpp"
#include "multibin/mse_packing.hpp"
#include "multibin/rational.hpp"
#include "multibin/relations.hpp"

// Brute-force reference implementations, deliberately written as plain
// enumerations with no pruning, bounding or shared code with the solvers
// they check. They back the --oracle flag and the verification suites.
namespace multibin::oracle {

// Shortest path in the one-step-move graph over all multisets of the
// estimate's cardinality (not only interval ones).
int proximity_bfs(const mse::MsEstimate& a, const mse::MsEstimate& b);

// Exhaustive median scan re-deriving distances through the BFS metric.
mse::MsEstimate generalized_median_scan(const std::vector<mse::MsEstimate>& estimates);
int median_total_bfs(const mse::MsEstimate& median, const std::vector<mse::MsEstimate>& estimates);

// All multisets of cardinality eta over [1, l] (no interval filter),
// canonical order.
std::vector<mse::MsEstimate> all_multisets(int l, int eta);

// Minimal bin count by enumerating set partitions.
int min_bins_partition(const bpp::PackInstance& instance);
int min_bins_partition_conflicts(const bpp::PackInstance& instance,
                                 const rel::ConflictGraph& graph);

// Maximal total profit over all assignments of items to k capacity-b bins.
Rational max_profit_enumeration(const bpp::PackInstance& instance,
                                const std::map<int, Rational>& profits);

// Raw feasible solutions of an mse model, one entry per (item id, container)
// assignment. Enumerates every container choice directly.
std::vector<std::vector<std::pair<int, int>>> enumerate_feasible(
    msepack::ModelKind kind, const msepack::MseInstance& instance);

struct EvaluatedSolution {
    std::vector<std::pair<int, int>> assignment;
    std::optional<mse::MsEstimate> estimate;
    std::optional<Rational> scalar;
    int cardinality = 0;
};

EvaluatedSolution evaluate(const msepack::MseInstance& instance, msepack::ModelKind kind,
                           msepack::Objective objective,
                           const std::vector<std::pair<int, int>>& assignment);

// True when no feasible solution strictly dominates the candidate's
// objective estimate.
bool is_maximal(msepack::ModelKind kind, const msepack::MseInstance& instance,
                msepack::Objective objective, const msepack::MseSolution& candidate);

// Best scalar objective value over all feasible solutions.
Rational best_scalar(msepack::ModelKind kind, const msepack::MseInstance& instance);

// Bi-objective front as the set of (estimate, cardinality) pairs surviving a
// pairwise dominance filter.
std::set<std::pair<std::string, int>> front_points(msepack::ModelKind kind,
                                                   const msepack::MseInstance& instance,
                                                   msepack::Objective objective);

// Labeled proper colorings by full k^n enumeration.
std::uint64_t count_colorings_enumeration(const coloring::Graph& graph, int k);
int chromatic_enumeration(const coloring::Graph& graph);

// Palette-restricted colorability by full |palette|^n enumeration.
bool colorable_with(const coloring::Graph& graph, const std::vector<int>& palette);

// Quality vectors of the compatibility-coloring front by pairwise filter
// over every configuration.
std::vector<coloring::QualityVector> compat_front_enumeration(const coloring::CompatGraph& graph);

// Minimal induced chromatic number over all representative choices.
int partition_chromatic_enumeration(const coloring::Graph& graph,
                                    const std::vector<std::vector<int>>& parts);

// Cheapest open-path cost over all permutations.
int path_cost_enumeration(const std::vector<std::vector<int>>& cost,
                          const std::optional<std::vector<int>>& start_cost);

// Best mean completion over all permutations of the weights.
Rational best_mean_completion_enumeration(const std::vector<Rational>& weights);

// Maximum subset cardinality under the capacity.
int max_cardinality_enumeration(const std::vector<Rational>& weights, const Rational& capacity);

}  // namespace multibin::oracle

#endif
