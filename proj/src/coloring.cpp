#include "multibin/coloring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "multibin/errors.hpp"

namespace multibin::coloring {

Graph::Graph(int n) : n_(n), adjacency_(n) {
    if (n < 0) throw SchemaError("negative vertex count");
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw SchemaError("edge endpoint out of range");
    if (u == v) throw SchemaError("self-loops are not allowed");
    if (adjacent(u, v)) return;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
}

bool Graph::adjacent(int u, int v) const {
    const auto& nb = adjacency_[u];
    return std::find(nb.begin(), nb.end(), v) != nb.end();
}

Graph Graph::induced(const std::vector<int>& vertices) const {
    Graph sub(static_cast<int>(vertices.size()));
    std::map<int, int> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || vertices[i] >= n_) throw SchemaError("vertex out of range");
        index[vertices[i]] = static_cast<int>(i);
    }
    for (const auto& [u, v] : edges_) {
        const auto iu = index.find(u);
        const auto iv = index.find(v);
        if (iu != index.end() && iv != index.end()) sub.add_edge(iu->second, iv->second);
    }
    return sub;
}

bool Graph::proper(const std::vector<int>& colors) const {
    if (static_cast<int>(colors.size()) != n_) return false;
    for (const auto& [u, v] : edges_) {
        if (colors[u] == colors[v]) return false;
    }
    return true;
}

namespace {

std::vector<int> degree_order(const Graph& graph) {
    std::vector<int> order(graph.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return graph.neighbors(a).size() > graph.neighbors(b).size();
    });
    return order;
}

// Tries to color with at most k colors; colors assigned in the given vertex
// order, each vertex tries 1..min(k, used+1) so color classes appear in
// canonical order.
bool try_k_coloring(const Graph& graph, int k, const std::vector<int>& order,
                    const std::vector<int>& allowed_palette, std::vector<int>& out) {
    const int n = graph.vertex_count();
    std::vector<int> color(n, 0);
    std::function<bool(int, int)> place = [&](int pos, int used) {
        if (pos == n) return true;
        const int v = order[pos];
        const int tryable = std::min(k, used + 1);
        for (int c = 1; c <= tryable; ++c) {
            bool ok = true;
            for (const int nb : graph.neighbors(v)) {
                if (color[nb] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[v] = c;
            if (place(pos + 1, std::max(used, c))) return true;
            color[v] = 0;
        }
        return false;
    };
    if (!place(0, 0)) return false;
    out.resize(n);
    for (int v = 0; v < n; ++v) {
        out[v] = allowed_palette.empty() ? color[v] : allowed_palette[color[v] - 1];
    }
    return true;
}

}  // namespace

ColoringResult chromatic_coloring(const Graph& graph, std::optional<int> max_colors,
                                  int max_vertices) {
    if (graph.vertex_count() > max_vertices) {
        throw SizeLimitError("exact coloring limited to " + std::to_string(max_vertices) +
                             " vertices, got " + std::to_string(graph.vertex_count()));
    }
    if (graph.vertex_count() == 0) return {0, {}};
    const std::vector<int> order = degree_order(graph);
    const int upper = max_colors.value_or(graph.vertex_count());
    for (int k = 1; k <= upper; ++k) {
        std::vector<int> coloring;
        if (try_k_coloring(graph, k, order, {}, coloring)) {
            return {*std::max_element(coloring.begin(), coloring.end()), coloring};
        }
    }
    throw InfeasibleError("graph is not colorable with " + std::to_string(upper) + " colors");
}

std::uint64_t count_proper_colorings(const Graph& graph, int k, int max_vertices) {
    if (k < 0) throw SchemaError("palette size must be non-negative");
    if (graph.vertex_count() > max_vertices) {
        throw SizeLimitError("coloring count limited to " + std::to_string(max_vertices) +
                             " vertices, got " + std::to_string(graph.vertex_count()));
    }
    const int n = graph.vertex_count();
    std::vector<int> color(n, 0);
    std::uint64_t count = 0;
    std::function<void(int)> walk = [&](int v) {
        if (v == n) {
            ++count;
            return;
        }
        for (int c = 1; c <= k; ++c) {
            bool ok = true;
            for (const int nb : graph.neighbors(v)) {
                if (color[nb] == c) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[v] = c;
            walk(v + 1);
            color[v] = 0;
        }
    };
    walk(0);
    return count;
}

namespace {

std::vector<int> used_colors_of(const std::vector<int>& coloring) {
    std::set<int> used(coloring.begin(), coloring.end());
    return {used.begin(), used.end()};
}

// All palette subsets that admit a proper coloring, each with one coloring.
template <typename Visit>
void for_each_colorable_subset(const Graph& graph, int palette_size, Visit visit) {
    const std::vector<int> order = degree_order(graph);
    const int chi = chromatic_coloring(graph, {}, graph.vertex_count()).colors_used;
    for (std::uint32_t mask = 0; mask < (1u << palette_size); ++mask) {
        std::vector<int> subset;
        for (int c = 0; c < palette_size; ++c) {
            if (mask & (1u << c)) subset.push_back(c + 1);
        }
        if (static_cast<int>(subset.size()) < chi) continue;
        std::vector<int> coloring;
        if (try_k_coloring(graph, static_cast<int>(subset.size()), order, subset, coloring)) {
            visit(subset, coloring);
        }
    }
}

}  // namespace

WeightedColoringResult min_weight_coloring(const Graph& graph,
                                           const std::vector<Rational>& palette_weights,
                                           int max_vertices) {
    if (graph.vertex_count() > max_vertices) {
        throw SizeLimitError("weighted coloring limited to " + std::to_string(max_vertices) +
                             " vertices");
    }
    if (palette_weights.empty() || palette_weights.size() > 20) {
        throw SchemaError("palette must have between 1 and 20 colors");
    }
    std::optional<WeightedColoringResult> best;
    for_each_colorable_subset(
        graph, static_cast<int>(palette_weights.size()),
        [&](const std::vector<int>&, const std::vector<int>& coloring) {
            const std::vector<int> used = used_colors_of(coloring);
            Rational total(0);
            for (const int c : used) total += palette_weights[c - 1];
            if (!best || total < best->total_weight ||
                (total == best->total_weight && used < best->used_colors)) {
                best = WeightedColoringResult{coloring, used, total};
            }
        });
    if (!best) throw InfeasibleError("graph is not colorable with the given palette");
    return *best;
}

std::vector<VectorWeightPoint> min_weight_coloring_front(
    const Graph& graph, const std::vector<std::vector<Rational>>& palette_weights,
    int max_vertices) {
    if (graph.vertex_count() > max_vertices) {
        throw SizeLimitError("weighted coloring limited to " + std::to_string(max_vertices) +
                             " vertices");
    }
    if (palette_weights.empty() || palette_weights.size() > 20) {
        throw SchemaError("palette must have between 1 and 20 colors");
    }
    const std::size_t dim = palette_weights.front().size();
    for (const auto& w : palette_weights) {
        if (w.size() != dim) throw SchemaError("all color weight vectors need equal length");
    }

    std::vector<VectorWeightPoint> front;
    const auto dominates = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        bool strict = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) return false;
            if (a[i] < b[i]) strict = true;
        }
        return strict;
    };
    for_each_colorable_subset(
        graph, static_cast<int>(palette_weights.size()),
        [&](const std::vector<int>&, const std::vector<int>& coloring) {
            const std::vector<int> used = used_colors_of(coloring);
            std::vector<Rational> weight(dim, Rational(0));
            for (const int c : used) {
                for (std::size_t i = 0; i < dim; ++i) weight[i] += palette_weights[c - 1][i];
            }
            for (auto it = front.begin(); it != front.end();) {
                if (dominates(it->weight, weight)) return;
                if (it->weight == weight) {
                    if (used < it->used_colors) *it = {used, weight, coloring};
                    return;
                }
                if (dominates(weight, it->weight)) {
                    it = front.erase(it);
                } else {
                    ++it;
                }
            }
            front.push_back({used, weight, coloring});
        });
    if (front.empty()) throw InfeasibleError("graph is not colorable with the given palette");
    std::sort(front.begin(), front.end(), [](const VectorWeightPoint& a,
                                             const VectorWeightPoint& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.used_colors < b.used_colors;
    });
    return front;
}

void CompatGraph::set_compatibility(int u, int cu, int v, int cv, int grade) {
    if (u == v) throw SchemaError("compatibility needs two distinct vertices");
    if (u > v) {
        std::swap(u, v);
        std::swap(cu, cv);
    }
    const auto key = std::make_tuple(u, cu, v, cv);
    const auto it = compatibility.find(key);
    if (it != compatibility.end() && it->second != grade) {
        throw SchemaError("contradictory compatibility grades for one candidate pair");
    }
    compatibility[key] = grade;
}

int CompatGraph::compatibility_grade(int u, int cu, int v, int cv) const {
    if (u > v) {
        std::swap(u, v);
        std::swap(cu, cv);
    }
    const auto it = compatibility.find(std::make_tuple(u, cu, v, cv));
    return it == compatibility.end() ? best_compatibility : it->second;
}

int CompatGraph::grade_levels() const {
    int levels = 1;
    for (const auto& list : candidates) {
        for (const auto& c : list) levels = std::max(levels, c.grade);
    }
    return levels;
}

void CompatGraph::check() const {
    if (static_cast<int>(candidates.size()) != graph.vertex_count()) {
        throw SchemaError("every vertex needs a candidate color list");
    }
    for (std::size_t v = 0; v < candidates.size(); ++v) {
        if (candidates[v].empty()) {
            throw SchemaError("vertex " + std::to_string(v) + " has no candidate colors");
        }
        for (const auto& c : candidates[v]) {
            if (c.grade < 1) throw SchemaError("correspondence grades start at 1");
        }
    }
}

std::string QualityVector::str() const {
    std::ostringstream os;
    os << '(' << w << ';';
    for (int i = 0; i < e.levels(); ++i) {
        if (i) os << ',';
        os << e.counts()[i];
    }
    os << ')';
    return os.str();
}

mse::Ordering quality_compare(const QualityVector& a, const QualityVector& b) {
    using mse::Ordering;
    const Ordering ew = a.w > b.w ? Ordering::Better
                                  : (a.w < b.w ? Ordering::Worse : Ordering::Equal);
    const Ordering ee = mse::compare(a.e, b.e);
    if (ew == Ordering::Equal) return ee;
    if (ee == Ordering::Equal) return ew;
    if (ew == ee) return ew;
    return Ordering::Incomparable;
}

QualityVector evaluate_configuration(const CompatGraph& graph, const std::vector<int>& choice) {
    graph.check();
    const int n = graph.graph.vertex_count();
    if (static_cast<int>(choice.size()) != n) {
        throw SchemaError("configuration needs one candidate per vertex");
    }
    int w = graph.best_compatibility;
    for (const auto& [u, v] : graph.graph.edges()) {
        w = std::min(w, graph.compatibility_grade(u, choice[u], v, choice[v]));
    }
    std::vector<int> counts(graph.grade_levels(), 0);
    for (int v = 0; v < n; ++v) {
        const auto& cand = graph.candidates[v];
        if (choice[v] < 0 || choice[v] >= static_cast<int>(cand.size())) {
            throw SchemaError("candidate index out of range");
        }
        ++counts[cand[choice[v]].grade - 1];
    }
    return {w, mse::MsEstimate(graph.grade_levels(), counts)};
}

std::vector<CompatSolution> compat_coloring_pareto(const CompatGraph& graph,
                                                   std::uint64_t max_configurations) {
    graph.check();
    const int n = graph.graph.vertex_count();
    std::uint64_t total = 1;
    for (const auto& list : graph.candidates) {
        total *= list.size();
        if (total > max_configurations) {
            throw SizeLimitError("configuration space exceeds the cap of " +
                                 std::to_string(max_configurations));
        }
    }

    std::vector<CompatSolution> front;
    std::vector<int> choice(n, 0);
    const auto consider = [&] {
        const QualityVector q = evaluate_configuration(graph, choice);
        if (q.w < 1) return;
        for (auto it = front.begin(); it != front.end();) {
            switch (quality_compare(it->quality, q)) {
                case mse::Ordering::Better:
                    return;
                case mse::Ordering::Equal:
                    if (choice < it->choice) it->choice = choice;
                    return;
                case mse::Ordering::Worse:
                    it = front.erase(it);
                    break;
                case mse::Ordering::Incomparable:
                    ++it;
                    break;
            }
        }
        front.push_back({choice, q});
    };
    std::function<void(int)> walk = [&](int v) {
        if (v == n) {
            consider();
            return;
        }
        for (std::size_t c = 0; c < graph.candidates[v].size(); ++c) {
            choice[v] = static_cast<int>(c);
            walk(v + 1);
        }
        choice[v] = 0;
    };
    walk(0);

    std::sort(front.begin(), front.end(), [](const CompatSolution& a, const CompatSolution& b) {
        if (a.quality.w != b.quality.w) return a.quality.w > b.quality.w;
        if (!(a.quality.e == b.quality.e)) {
            return mse::MsEstimate::canonical_less(a.quality.e, b.quality.e);
        }
        return a.choice < b.choice;
    });
    return front;
}

PartitionColoringResult partition_coloring(const Graph& graph,
                                           const std::vector<std::vector<int>>& parts,
                                           std::uint64_t max_configurations) {
    if (parts.empty()) throw SchemaError("partition coloring needs at least one part");
    std::set<int> seen;
    for (const auto& part : parts) {
        if (part.empty()) throw SchemaError("empty part");
        for (const int v : part) {
            if (v < 0 || v >= graph.vertex_count()) throw SchemaError("part vertex out of range");
            if (!seen.insert(v).second) throw SchemaError("parts must be disjoint");
        }
    }
    if (static_cast<int>(seen.size()) != graph.vertex_count()) {
        throw SchemaError("parts must cover every vertex");
    }
    std::uint64_t total = 1;
    for (const auto& part : parts) {
        total *= part.size();
        if (total > max_configurations) {
            throw SizeLimitError("representative space exceeds the cap of " +
                                 std::to_string(max_configurations));
        }
    }

    std::optional<PartitionColoringResult> best;
    std::vector<int> reps(parts.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t p) {
        if (p == parts.size()) {
            std::vector<int> vertices;
            vertices.reserve(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) vertices.push_back(parts[i][reps[i]]);
            const Graph sub = graph.induced(vertices);
            try {
                // The incumbent bounds the search; transversals needing more
                // colors fail fast and are skipped.
                const ColoringResult result = chromatic_coloring(
                    sub, best ? std::optional<int>(best->colors_used) : std::nullopt,
                    sub.vertex_count());
                if (!best || result.colors_used < best->colors_used ||
                    (result.colors_used == best->colors_used &&
                     vertices < best->representatives)) {
                    best = PartitionColoringResult{vertices, result.coloring,
                                                   result.colors_used};
                }
            } catch (const InfeasibleError&) {
                // worse than the incumbent
            }
            return;
        }
        for (std::size_t i = 0; i < parts[p].size(); ++i) {
            reps[p] = static_cast<int>(i);
            walk(p + 1);
        }
        reps[p] = 0;
    };
    walk(0);
    return *best;
}

ColoredPackResult colored_pack(const std::vector<ColoredItem>& items, const Rational& capacity,
                               int exact_limit) {
    std::vector<std::string> color_order;
    std::map<std::string, std::vector<ColoredItem>> by_color;
    for (const auto& item : items) {
        if (!by_color.count(item.color)) color_order.push_back(item.color);
        by_color[item.color].push_back(item);
    }

    ColoredPackResult result;
    bpp::PackInstance all;
    all.capacity = capacity;
    for (const auto& item : items) all.items.push_back({item.id, item.weight});
    all.check();

    Rational beta(0);
    for (const auto& color : color_order) {
        bpp::PackInstance group;
        group.capacity = capacity;
        for (const auto& item : by_color[color]) group.items.push_back({item.id, item.weight});
        const bpp::PackSolution packed =
            static_cast<int>(group.items.size()) <= exact_limit
                ? bpp::exact_min_bins(group, exact_limit)
                : bpp::fit_pack(group, bpp::FitPolicy::FirstFit, bpp::ItemOrder::Decreasing);
        const int span = packed.bins_used();
        result.color_spans.emplace_back(color, span);
        const Rational color_beta = Rational(span) / Rational(bpp::lower_bound(group));
        beta = std::max(beta, color_beta);
        for (const auto& bin : packed.bins) {
            result.solution.bins.push_back(bin);
            result.bin_colors.push_back(color);
        }
    }
    result.bins_used = result.solution.bins_used();
    result.alpha = items.empty() ? Rational(1)
                                 : Rational(result.bins_used) / Rational(bpp::lower_bound(all));
    result.beta = items.empty() ? Rational(1) : beta;
    return result;
}

}  // namespace multibin::coloring
