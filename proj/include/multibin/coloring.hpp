#ifndef MULTIBIN_COLORING_HPP_
#define MULTIBIN_COLORING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "multibin/bpp.hpp"
#include "multibin/mse.hpp"
#include "multibin/rational.hpp"

namespace multibin::coloring {

// Simple undirected graph over vertices 0..n-1.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);

    void add_edge(int u, int v);
    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    bool adjacent(int u, int v) const;

    // Graph induced by a vertex subset; result vertices are renumbered in
    // the order given.
    Graph induced(const std::vector<int>& vertices) const;

    bool proper(const std::vector<int>& colors) const;

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
};

struct ColoringResult {
    int colors_used = 0;
    std::vector<int> coloring;  // per vertex, colors 1..colors_used
};

// Exact chromatic number by iterative deepening over k with backtracking,
// vertices ordered by degree. With max_colors set, fails with
// InfeasibleError when chi exceeds it.
ColoringResult chromatic_coloring(const Graph& graph, std::optional<int> max_colors = {},
                                  int max_vertices = 20);

// Number of proper colorings from a fixed labeled k-palette (no symmetry
// quotient).
std::uint64_t count_proper_colorings(const Graph& graph, int k, int max_vertices = 20);

struct WeightedColoringResult {
    std::vector<int> coloring;     // palette colors 1..k
    std::vector<int> used_colors;  // ascending palette indices
    Rational total_weight;
};

// Proper coloring minimizing the total weight of used palette colors; unit
// weights reduce to the chromatic number.
WeightedColoringResult min_weight_coloring(const Graph& graph,
                                           const std::vector<Rational>& palette_weights,
                                           int max_vertices = 20);

struct VectorWeightPoint {
    std::vector<int> used_colors;
    std::vector<Rational> weight;
    std::vector<int> coloring;
};

// Pareto front of used-color weight vectors under componentwise <=.
std::vector<VectorWeightPoint> min_weight_coloring_front(
    const Graph& graph, const std::vector<std::vector<Rational>>& palette_weights,
    int max_vertices = 20);

// --- coloring with correspondence and compatibility -----------------------

struct CandidateColor {
    std::string name;
    int grade = 1;  // correspondence of the color to the vertex, 1 best
};

// Per-vertex color candidates plus compatibility grades for candidate pairs
// on adjacent vertices. Pairs without an entry get the best grade.
struct CompatGraph {
    Graph graph;
    std::vector<std::string> vertex_names;
    std::vector<std::vector<CandidateColor>> candidates;
    // (u, candidate index of u, v, candidate index of v) with u < v.
    std::map<std::tuple<int, int, int, int>, int> compatibility;
    int best_compatibility = 4;

    void set_compatibility(int u, int cu, int v, int cv, int grade);
    int compatibility_grade(int u, int cu, int v, int cv) const;
    int grade_levels() const;
    void check() const;
};

// N(S) = (w; e): minimum pairwise compatibility over adjacent vertices and
// the counts-by-grade vector of the chosen candidates.
struct QualityVector {
    int w = 0;
    mse::MsEstimate e;

    std::string str() const;
    friend bool operator==(const QualityVector&, const QualityVector&) = default;
};

// Product order: better w and dominating-or-equal e, at least one strict.
mse::Ordering quality_compare(const QualityVector& a, const QualityVector& b);

QualityVector evaluate_configuration(const CompatGraph& graph, const std::vector<int>& choice);

struct CompatSolution {
    std::vector<int> choice;  // candidate index per vertex
    QualityVector quality;
};

// Enumerates all one-color-per-vertex configurations, keeps w >= 1 and
// returns the non-dominated set under quality_compare; one representative
// per distinct quality vector.
std::vector<CompatSolution> compat_coloring_pareto(const CompatGraph& graph,
                                                   std::uint64_t max_configurations = 1000000);

// --- partition coloring ----------------------------------------------------

struct PartitionColoringResult {
    std::vector<int> representatives;  // one vertex per part, part order
    std::vector<int> coloring;         // colors of the representatives
    int colors_used = 0;
};

// One representative per part minimizing the chromatic number of the induced
// subgraph; ties by lexicographic representative tuple.
PartitionColoringResult partition_coloring(const Graph& graph,
                                           const std::vector<std::vector<int>>& parts,
                                           std::uint64_t max_configurations = 1000000);

// --- colored bin packing ----------------------------------------------------

struct ColoredItem {
    int id = 0;
    Rational weight;
    std::string color;
};

struct ColoredPackResult {
    bpp::PackSolution solution;
    std::vector<std::string> bin_colors;                   // per bin
    std::vector<std::pair<std::string, int>> color_spans;  // first-appearance order
    int bins_used = 0;
    Rational alpha;  // bins_used / lower_bound(all items)
    Rational beta;   // max over colors of span / lower_bound(color)
};

// Monochromatic-bin policy: per-color packing, exact when the color group is
// small enough, first-fit-decreasing otherwise.
ColoredPackResult colored_pack(const std::vector<ColoredItem>& items, const Rational& capacity,
                               int exact_limit = 20);

}  // namespace multibin::coloring

#endif
