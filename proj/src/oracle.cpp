#include "multibin/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "multibin/errors.hpp"
#include "multibin/pipelines.hpp"

namespace multibin::oracle {

using mse::MsEstimate;

std::vector<MsEstimate> all_multisets(int l, int eta) {
    std::vector<MsEstimate> out;
    std::vector<int> counts(l, 0);
    std::function<void(int, int)> build = [&](int level, int remaining) {
        if (level == l - 1) {
            counts[level] = remaining;
            out.emplace_back(l, counts);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[level] = c;
            build(level + 1, remaining - c);
        }
        counts[level] = 0;
    };
    build(0, eta);
    std::sort(out.begin(), out.end(), MsEstimate::canonical_less);
    return out;
}

int proximity_bfs(const MsEstimate& a, const MsEstimate& b) {
    if (a.levels() != b.levels() || a.eta() != b.eta()) {
        throw SchemaError("proximity oracle needs equal scale and cardinality");
    }
    const int l = a.levels();
    const auto key = [](const MsEstimate& e) { return e.counts(); };
    std::map<std::vector<int>, int> distance;
    std::queue<std::vector<int>> frontier;
    distance[key(a)] = 0;
    frontier.push(key(a));
    while (!frontier.empty()) {
        const std::vector<int> current = frontier.front();
        frontier.pop();
        if (current == key(b)) return distance[current];
        const int d = distance[current];
        for (int level = 0; level < l; ++level) {
            if (current[level] == 0) continue;
            for (const int delta : {-1, +1}) {
                const int target = level + delta;
                if (target < 0 || target >= l) continue;
                std::vector<int> moved = current;
                --moved[level];
                ++moved[target];
                if (!distance.count(moved)) {
                    distance[moved] = d + 1;
                    frontier.push(moved);
                }
            }
        }
    }
    throw Error("one-step-move graph is connected; unreachable");
}

int median_total_bfs(const MsEstimate& median, const std::vector<MsEstimate>& estimates) {
    int total = 0;
    for (const auto& e : estimates) total += proximity_bfs(median, e);
    return total;
}

MsEstimate generalized_median_scan(const std::vector<MsEstimate>& estimates) {
    if (estimates.empty()) throw SchemaError("median of an empty estimate set");
    const auto domain = mse::enumerate_scale(estimates.front().levels(),
                                             estimates.front().eta());
    const MsEstimate* best = nullptr;
    int best_total = 0;
    for (const auto& m : domain) {
        const int total = median_total_bfs(m, estimates);
        if (!best || total < best_total) {
            best = &m;
            best_total = total;
        }
    }
    return *best;
}

namespace {

// Visits every partition of items into unordered blocks.
void walk_partitions(const std::vector<bpp::Item>& items, std::size_t pos,
                     std::vector<std::vector<const bpp::Item*>>& blocks,
                     const std::function<void(const std::vector<std::vector<const bpp::Item*>>&)>&
                         visit) {
    if (pos == items.size()) {
        visit(blocks);
        return;
    }
    const bpp::Item* item = &items[pos];
    // index loop: recursion grows and shrinks the block vector
    const std::size_t existing = blocks.size();
    for (std::size_t b = 0; b < existing; ++b) {
        blocks[b].push_back(item);
        walk_partitions(items, pos + 1, blocks, visit);
        blocks[b].pop_back();
    }
    blocks.emplace_back();
    blocks.back().push_back(item);
    walk_partitions(items, pos + 1, blocks, visit);
    blocks.pop_back();
}

bool block_fits(const std::vector<const bpp::Item*>& block, const Rational& capacity) {
    Rational load(0);
    for (const auto* item : block) load += item->weight;
    return load <= capacity;
}

}  // namespace

int min_bins_partition(const bpp::PackInstance& instance) {
    if (instance.items.empty()) return 0;
    int best = static_cast<int>(instance.items.size());
    std::vector<std::vector<const bpp::Item*>> blocks;
    walk_partitions(instance.items, 0, blocks, [&](const auto& partition) {
        for (const auto& block : partition) {
            if (!block_fits(block, instance.capacity)) return;
        }
        best = std::min(best, static_cast<int>(partition.size()));
    });
    return best;
}

int min_bins_partition_conflicts(const bpp::PackInstance& instance,
                                 const rel::ConflictGraph& graph) {
    if (instance.items.empty()) return 0;
    int best = static_cast<int>(instance.items.size());
    std::vector<std::vector<const bpp::Item*>> blocks;
    walk_partitions(instance.items, 0, blocks, [&](const auto& partition) {
        for (const auto& block : partition) {
            if (!block_fits(block, instance.capacity)) return;
            for (std::size_t i = 0; i < block.size(); ++i) {
                for (std::size_t j = i + 1; j < block.size(); ++j) {
                    if (graph.in_conflict(block[i]->id, block[j]->id)) return;
                }
            }
        }
        best = std::min(best, static_cast<int>(partition.size()));
    });
    return best;
}

Rational max_profit_enumeration(const bpp::PackInstance& instance,
                                const std::map<int, Rational>& profits) {
    const int n = static_cast<int>(instance.items.size());
    const int k = instance.max_bins.value_or(1);
    Rational best(0);
    std::vector<int> target(n, -1);
    std::function<void(int)> walk = [&](int pos) {
        if (pos == n) {
            std::vector<Rational> loads(k, Rational(0));
            Rational profit(0);
            for (int i = 0; i < n; ++i) {
                if (target[i] < 0) continue;
                loads[target[i]] += instance.items[i].weight;
                const auto it = profits.find(instance.items[i].id);
                profit += it == profits.end() ? Rational(1) : it->second;
            }
            for (const auto& load : loads) {
                if (load > instance.capacity) return;
            }
            best = std::max(best, profit);
            return;
        }
        for (int b = -1; b < k; ++b) {
            target[pos] = b;
            walk(pos + 1);
        }
        target[pos] = -1;
    };
    walk(0);
    return best;
}

namespace {

int container_count(msepack::ModelKind kind, const msepack::MseInstance& instance) {
    using msepack::ModelKind;
    switch (kind) {
        case ModelKind::Knapsack:
        case ModelKind::MultipleChoice:
            return 1;
        case ModelKind::MultipleKnapsack:
        case ModelKind::Assignment:
            return static_cast<int>(instance.capacities.size());
        case ModelKind::InverseBpp:
        case ModelKind::ConflictInverse:
            return instance.bins;
    }
    return 1;
}

bool assignment_feasible(msepack::ModelKind kind, const msepack::MseInstance& instance,
                         const std::vector<int>& target) {
    using msepack::ModelKind;
    const int k = container_count(kind, instance);
    std::vector<Rational> loads(k, Rational(0));
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target[i] < 0) continue;
        loads[target[i]] += instance.items[i].weight;
    }
    for (int b = 0; b < k; ++b) {
        const Rational cap = (kind == ModelKind::MultipleKnapsack ||
                              kind == ModelKind::Assignment)
                                 ? instance.capacities[b]
                                 : instance.capacity;
        if (loads[b] > cap) return false;
    }
    if (kind == ModelKind::Assignment &&
        instance.assign_mode == msepack::AssignMode::MustAssignAll) {
        for (const int t : target) {
            if (t < 0) return false;
        }
    }
    if (kind == ModelKind::MultipleChoice) {
        std::map<int, int> picked;
        for (std::size_t i = 0; i < target.size(); ++i) {
            const auto group = instance.items[i].group;
            if (!group) return false;
            picked[*group];
            if (target[i] >= 0) ++picked[*group];
        }
        for (const auto& [group, count] : picked) {
            if (count != 1) return false;
        }
    }
    if (kind == ModelKind::ConflictInverse) {
        for (std::size_t i = 0; i < target.size(); ++i) {
            for (std::size_t j = i + 1; j < target.size(); ++j) {
                if (target[i] < 0 || target[i] != target[j]) continue;
                const int a = instance.items[i].id;
                const int b = instance.items[j].id;
                const auto key = a < b ? rel::ItemPair{a, b} : rel::ItemPair{b, a};
                if (instance.conflicts.count(key)) return false;
            }
        }
    }
    return true;
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> enumerate_feasible(
    msepack::ModelKind kind, const msepack::MseInstance& instance) {
    const int n = static_cast<int>(instance.items.size());
    const int k = container_count(kind, instance);
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> target(n, -1);
    std::function<void(int)> walk = [&](int pos) {
        if (pos == n) {
            if (!assignment_feasible(kind, instance, target)) return;
            std::vector<std::pair<int, int>> assignment;
            for (int i = 0; i < n; ++i) {
                if (target[i] >= 0) assignment.emplace_back(instance.items[i].id, target[i] + 1);
            }
            std::sort(assignment.begin(), assignment.end());
            out.push_back(std::move(assignment));
            return;
        }
        for (int b = -1; b < k; ++b) {
            target[pos] = b;
            walk(pos + 1);
        }
        target[pos] = -1;
    };
    walk(0);
    return out;
}

EvaluatedSolution evaluate(const msepack::MseInstance& instance, msepack::ModelKind kind,
                           msepack::Objective objective,
                           const std::vector<std::pair<int, int>>& assignment) {
    EvaluatedSolution out;
    out.assignment = assignment;
    out.cardinality = static_cast<int>(assignment.size());
    const auto item_of = [&](int id) -> const msepack::MseItem& {
        for (const auto& item : instance.items) {
            if (item.id == id) return item;
        }
        throw SchemaError("unknown item id " + std::to_string(id));
    };
    if (objective == msepack::Objective::Scalar) {
        Rational total(0);
        for (const auto& [id, bin] : assignment) {
            const auto& item = item_of(id);
            const auto it = item.position_profits.find(bin);
            if (kind == msepack::ModelKind::Assignment && it != item.position_profits.end()) {
                total += it->second;
            } else {
                total += item.profit.value_or(Rational(1));
            }
        }
        out.scalar = total;
        return out;
    }
    std::vector<MsEstimate> members;
    for (const auto& [id, bin] : assignment) {
        const auto& item = item_of(id);
        if (kind == msepack::ModelKind::Assignment && !item.position_estimates.empty()) {
            members.push_back(item.position_estimates.at(bin));
        } else {
            members.push_back(*item.estimate);
        }
    }
    if (objective == msepack::Objective::Integrated) {
        if (members.empty()) {
            int levels = 1;
            for (const auto& item : instance.items) {
                if (item.estimate) levels = item.estimate->levels();
                if (!item.position_estimates.empty()) {
                    levels = item.position_estimates.begin()->second.levels();
                }
            }
            out.estimate = MsEstimate(levels, std::vector<int>(levels, 0));
        } else {
            out.estimate = mse::integrate(members);
        }
    } else if (!members.empty()) {
        out.estimate = mse::generalized_median(members);
    }
    return out;
}

namespace {

// Dominance between evaluated solutions on the objective estimate alone.
mse::Ordering objective_order(const EvaluatedSolution& a, const EvaluatedSolution& b,
                              msepack::Objective objective) {
    if (!a.estimate && !b.estimate) return mse::Ordering::Equal;
    if (!a.estimate) return mse::Ordering::Worse;
    if (!b.estimate) return mse::Ordering::Better;
    return objective == msepack::Objective::Integrated
               ? mse::compare_padded(*a.estimate, *b.estimate)
               : mse::compare(*a.estimate, *b.estimate);
}

}  // namespace

bool is_maximal(msepack::ModelKind kind, const msepack::MseInstance& instance,
                msepack::Objective objective, const msepack::MseSolution& candidate) {
    std::vector<std::pair<int, int>> assignment;
    for (const auto& [id, bin] : candidate.assignment) assignment.emplace_back(id, bin);
    const EvaluatedSolution mine = evaluate(instance, kind, objective, assignment);
    for (const auto& other : enumerate_feasible(kind, instance)) {
        const EvaluatedSolution theirs = evaluate(instance, kind, objective, other);
        if (objective_order(theirs, mine, objective) == mse::Ordering::Better) return false;
    }
    return true;
}

Rational best_scalar(msepack::ModelKind kind, const msepack::MseInstance& instance) {
    std::optional<Rational> best;
    for (const auto& assignment : enumerate_feasible(kind, instance)) {
        const EvaluatedSolution e = evaluate(instance, kind, msepack::Objective::Scalar,
                                             assignment);
        if (!best || *e.scalar > *best) best = *e.scalar;
    }
    if (!best) throw InfeasibleError("no feasible solution");
    return *best;
}

std::set<std::pair<std::string, int>> front_points(msepack::ModelKind kind,
                                                   const msepack::MseInstance& instance,
                                                   msepack::Objective objective) {
    std::vector<EvaluatedSolution> all;
    for (const auto& assignment : enumerate_feasible(kind, instance)) {
        all.push_back(evaluate(instance, kind, objective, assignment));
    }
    std::set<std::pair<std::string, int>> points;
    for (const auto& candidate : all) {
        bool dominated = false;
        for (const auto& other : all) {
            const mse::Ordering est = objective_order(other, candidate, objective);
            const bool est_geq = est == mse::Ordering::Better || est == mse::Ordering::Equal;
            if (!est_geq || other.cardinality < candidate.cardinality) continue;
            if (est == mse::Ordering::Better || other.cardinality > candidate.cardinality) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            points.insert({candidate.estimate ? candidate.estimate->str() : "none",
                           candidate.cardinality});
        }
    }
    return points;
}

std::uint64_t count_colorings_enumeration(const coloring::Graph& graph, int k) {
    const int n = graph.vertex_count();
    std::vector<int> color(n, 0);
    std::uint64_t count = 0;
    std::function<void(int)> walk = [&](int v) {
        if (v == n) {
            count += graph.proper(color) ? 1 : 0;
            return;
        }
        for (int c = 1; c <= k; ++c) {
            color[v] = c;
            walk(v + 1);
        }
    };
    if (n == 0) return 1;
    walk(0);
    return count;
}

int chromatic_enumeration(const coloring::Graph& graph) {
    const int n = graph.vertex_count();
    if (n == 0) return 0;
    for (int k = 1; k <= n; ++k) {
        if (count_colorings_enumeration(graph, k) > 0) return k;
    }
    return n;
}

bool colorable_with(const coloring::Graph& graph, const std::vector<int>& palette) {
    const int n = graph.vertex_count();
    std::vector<int> color(n, 0);
    bool found = false;
    std::function<void(int)> walk = [&](int v) {
        if (found) return;
        if (v == n) {
            found = graph.proper(color);
            return;
        }
        for (const int c : palette) {
            color[v] = c;
            walk(v + 1);
        }
    };
    if (n == 0) return true;
    walk(0);
    return found;
}

std::vector<coloring::QualityVector> compat_front_enumeration(
    const coloring::CompatGraph& graph) {
    const int n = graph.graph.vertex_count();
    std::vector<coloring::QualityVector> all;
    std::vector<int> choice(n, 0);
    std::function<void(int)> walk = [&](int v) {
        if (v == n) {
            const coloring::QualityVector q = evaluate_configuration(graph, choice);
            if (q.w >= 1) all.push_back(q);
            return;
        }
        for (std::size_t c = 0; c < graph.candidates[v].size(); ++c) {
            choice[v] = static_cast<int>(c);
            walk(v + 1);
        }
    };
    walk(0);

    std::vector<coloring::QualityVector> front;
    for (const auto& candidate : all) {
        bool dominated = false;
        for (const auto& other : all) {
            if (quality_compare(other, candidate) == mse::Ordering::Better) {
                dominated = true;
                break;
            }
        }
        if (!dominated &&
            std::find(front.begin(), front.end(), candidate) == front.end()) {
            front.push_back(candidate);
        }
    }
    return front;
}

int partition_chromatic_enumeration(const coloring::Graph& graph,
                                    const std::vector<std::vector<int>>& parts) {
    int best = static_cast<int>(parts.size()) + 1;
    std::vector<int> reps(parts.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t p) {
        if (p == parts.size()) {
            std::vector<int> vertices;
            for (std::size_t i = 0; i < parts.size(); ++i) vertices.push_back(parts[i][reps[i]]);
            best = std::min(best, chromatic_enumeration(graph.induced(vertices)));
            return;
        }
        for (std::size_t i = 0; i < parts[p].size(); ++i) {
            reps[p] = static_cast<int>(i);
            walk(p + 1);
        }
    };
    walk(0);
    return best;
}

int path_cost_enumeration(const std::vector<std::vector<int>>& cost,
                          const std::optional<std::vector<int>>& start_cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return 0;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    int best = -1;
    do {
        int total = start_cost ? (*start_cost)[perm[0]] : 0;
        for (int i = 0; i + 1 < n; ++i) total += cost[perm[i]][perm[i + 1]];
        if (best < 0 || total < best) best = total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Rational best_mean_completion_enumeration(const std::vector<Rational>& weights) {
    std::vector<int> perm(weights.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::optional<Rational> best;
    do {
        std::vector<Rational> ordered;
        for (const int i : perm) ordered.push_back(weights[i]);
        const Rational mean = pipeline::mean_completion(ordered);
        if (!best || mean < *best) best = mean;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

int max_cardinality_enumeration(const std::vector<Rational>& weights, const Rational& capacity) {
    const int n = static_cast<int>(weights.size());
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Rational load(0);
        int cardinality = 0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            load += weights[i];
            ++cardinality;
            if (load > capacity) ok = false;
        }
        if (ok) best = std::max(best, cardinality);
    }
    return best;
}

}  // namespace multibin::oracle
