#include "multibin/relations.hpp"

#include <algorithm>
#include <functional>

#include "multibin/errors.hpp"

namespace multibin::rel {

namespace {

ItemPair ordered(int a, int b) { return a < b ? ItemPair{a, b} : ItemPair{b, a}; }

void require_acyclic(const std::vector<ItemPair>& edges, const std::string& name) {
    std::map<int, std::vector<int>> adjacency;
    std::set<int> nodes;
    for (const auto& [a, b] : edges) {
        adjacency[a].push_back(b);
        nodes.insert(a);
        nodes.insert(b);
    }
    std::map<int, int> state;  // 0 unseen, 1 on stack, 2 done
    std::function<void(int)> visit = [&](int u) {
        state[u] = 1;
        for (const int v : adjacency[u]) {
            if (state[v] == 1) throw SchemaError(name + " relation contains a cycle");
            if (state[v] == 0) visit(v);
        }
        state[u] = 2;
    };
    for (const int n : nodes) {
        if (state[n] == 0) visit(n);
    }
}

}  // namespace

void RelationSet::add_conflict(int a, int b) {
    if (a == b) throw SchemaError("conflict relation must be irreflexive");
    conflicts.insert(ordered(a, b));
}

void RelationSet::add_compatibility(int a, int b, int grade) {
    if (a == b) throw SchemaError("compatibility relation must be irreflexive");
    const ItemPair key = ordered(a, b);
    // Both orientations of a printed matrix may carry grades; the stricter
    // one wins so that a zero anywhere forbids co-binning.
    const auto it = compatibility.find(key);
    if (it == compatibility.end() || grade < it->second) {
        compatibility[key] = grade;
    }
}

std::optional<int> RelationSet::compatibility_grade(int a, int b) const {
    const auto it = compatibility.find(ordered(a, b));
    if (it == compatibility.end()) return std::nullopt;
    return it->second;
}

void RelationSet::check() const {
    for (const auto& [a, b] : conflicts) {
        if (a == b) throw SchemaError("conflict relation must be irreflexive");
    }
    require_acyclic(precedence, "precedence");
    require_acyclic(item_dominance, "item dominance");
    require_acyclic(bin_importance, "bin importance");
}

bool RelationSet::empty() const {
    return correspondence.empty() && conflicts.empty() && compatibility.empty() &&
           precedence.empty() && item_dominance.empty() && bin_importance.empty();
}

std::vector<ConstraintViolation> check_constraints(const bpp::PackInstance& instance,
                                                   const RelationSet& relations,
                                                   const bpp::PackSolution& solution) {
    relations.check();

    std::map<int, int> bin_of;        // item -> 1-based bin, 0 = unassigned
    std::map<int, int> position_of;   // item -> position within its bin
    for (std::size_t b = 0; b < solution.bins.size(); ++b) {
        for (std::size_t p = 0; p < solution.bins[b].size(); ++p) {
            const int id = solution.bins[b][p];
            instance.item(id);  // throws on dangling ids
            bin_of[id] = static_cast<int>(b) + 1;
            position_of[id] = static_cast<int>(p);
        }
    }
    for (const int id : solution.unassigned) {
        instance.item(id);
        bin_of[id] = 0;
    }
    const auto known = [&](int id) {
        if (!bin_of.count(id)) {
            throw SchemaError("relation references item " + std::to_string(id) +
                              " absent from the solution");
        }
    };

    std::vector<ConstraintViolation> out;

    // 1. Correspondence: grade 0 forbids the (item, bin) placement.
    for (const auto& [key, grade] : relations.correspondence) {
        const auto [item, bin] = key;
        known(item);
        if (grade == 0 && bin_of[item] == bin) {
            out.push_back({"correspondence", item, -1, bin,
                           "item " + std::to_string(item) + " placed in forbidden bin " +
                               std::to_string(bin)});
        }
    }

    // 2. Dominance: dominating item waiting while the dominated one is packed.
    for (const auto& [a, b] : relations.item_dominance) {
        known(a);
        known(b);
        if (bin_of[a] == 0 && bin_of[b] != 0) {
            out.push_back({"dominance", a, b, -1,
                           "item " + std::to_string(b) + " packed while dominating item " +
                               std::to_string(a) + " waits"});
        }
    }

    // 3. Precedence: order within a shared bin, and no placement of the
    // earlier item into a later bin.
    for (const auto& [a, b] : relations.precedence) {
        known(a);
        known(b);
        if (bin_of[a] == 0 || bin_of[b] == 0) continue;
        if (bin_of[a] == bin_of[b]) {
            if (position_of[a] > position_of[b]) {
                out.push_back({"precedence", a, b, bin_of[a],
                               "item " + std::to_string(a) + " must precede item " +
                                   std::to_string(b) + " in bin " + std::to_string(bin_of[a])});
            }
        } else if (bin_of[a] > bin_of[b]) {
            out.push_back({"precedence", a, b, bin_of[a],
                           "item " + std::to_string(a) + " split into bin " +
                               std::to_string(bin_of[a]) + " after item " + std::to_string(b) +
                               " in bin " + std::to_string(bin_of[b])});
        }
    }

    // 4. Conflicts: conflicting pairs must not share a bin.
    for (const auto& [a, b] : relations.conflicts) {
        known(a);
        known(b);
        if (bin_of[a] != 0 && bin_of[a] == bin_of[b]) {
            out.push_back({"conflict", a, b, bin_of[a],
                           "conflicting items " + std::to_string(a) + " and " + std::to_string(b) +
                               " share bin " + std::to_string(bin_of[a])});
        }
    }

    // 5. Compatibility: grade 0 forbids co-binning.
    for (const auto& [key, grade] : relations.compatibility) {
        const auto [a, b] = key;
        known(a);
        known(b);
        if (grade == 0 && bin_of[a] != 0 && bin_of[a] == bin_of[b]) {
            out.push_back({"compatibility", a, b, bin_of[a],
                           "incompatible items " + std::to_string(a) + " and " +
                               std::to_string(b) + " share bin " + std::to_string(bin_of[a])});
        }
    }
    return out;
}

ConflictGraph::ConflictGraph(const std::set<ItemPair>& edges) {
    for (const auto& [a, b] : edges) {
        if (a == b) throw SchemaError("conflict graph must be simple");
        edges_.insert(ordered(a, b));
    }
}

ConflictGraph ConflictGraph::from_instance(const bpp::PackInstance& instance,
                                           const std::set<ItemPair>& declared) {
    ConflictGraph graph(declared);
    for (std::size_t i = 0; i < instance.items.size(); ++i) {
        for (std::size_t j = i + 1; j < instance.items.size(); ++j) {
            if (instance.items[i].weight + instance.items[j].weight > instance.capacity) {
                graph.edges_.insert(ordered(instance.items[i].id, instance.items[j].id));
            }
        }
    }
    return graph;
}

bool ConflictGraph::in_conflict(int a, int b) const { return edges_.count(ordered(a, b)) > 0; }

bool ConflictGraph::conflicts_with_any(int item, const std::vector<int>& bin) const {
    return std::any_of(bin.begin(), bin.end(),
                       [&](int other) { return in_conflict(item, other); });
}

namespace {

struct ConflictExact {
    const bpp::PackInstance& instance;
    const ConflictGraph& graph;
    std::vector<bpp::Item> items;
    std::vector<int> assignment;
    std::vector<Rational> loads;
    std::vector<std::vector<int>> bin_members;
    int best_count = 0;
    std::vector<int> best_assignment;

    ConflictExact(const bpp::PackInstance& inst, const ConflictGraph& g)
        : instance(inst), graph(g) {
        items = inst.items;
        std::stable_sort(items.begin(), items.end(),
                         [](const bpp::Item& a, const bpp::Item& b) {
                             if (a.weight != b.weight) return a.weight > b.weight;
                             return a.id < b.id;
                         });
        assignment.assign(items.size(), -1);
        best_count = static_cast<int>(items.size()) + 1;
    }

    void descend(std::size_t pos, int used) {
        if (used >= best_count) return;
        if (pos == items.size()) {
            best_count = used;
            best_assignment = assignment;
            return;
        }
        const auto& it = items[pos];
        for (int b = 0; b < used; ++b) {
            if (loads[b] + it.weight > instance.capacity) continue;
            if (graph.conflicts_with_any(it.id, bin_members[b])) continue;
            assignment[pos] = b;
            loads[b] += it.weight;
            bin_members[b].push_back(it.id);
            descend(pos + 1, used);
            bin_members[b].pop_back();
            loads[b] -= it.weight;
        }
        assignment[pos] = used;
        if (static_cast<int>(loads.size()) <= used) {
            loads.emplace_back(0);
            bin_members.emplace_back();
        }
        loads[used] += it.weight;
        bin_members[used].push_back(it.id);
        descend(pos + 1, used + 1);
        bin_members[used].pop_back();
        loads[used] -= it.weight;
        assignment[pos] = -1;
    }
};

}  // namespace

bpp::PackSolution conflict_pack(const bpp::PackInstance& instance, const ConflictGraph& graph,
                                SolveMode mode, int max_items) {
    instance.check();
    if (mode == SolveMode::Greedy) {
        bpp::PackSolution solution;
        std::vector<Rational> loads;
        std::vector<bpp::Item> items = instance.items;
        std::stable_sort(items.begin(), items.end(),
                         [](const bpp::Item& a, const bpp::Item& b) {
                             if (a.weight != b.weight) return a.weight > b.weight;
                             return a.id < b.id;
                         });
        for (const auto& it : items) {
            int chosen = -1;
            for (std::size_t b = 0; b < loads.size(); ++b) {
                if (loads[b] + it.weight > instance.capacity) continue;
                if (graph.conflicts_with_any(it.id, solution.bins[b])) continue;
                chosen = static_cast<int>(b);
                break;
            }
            if (chosen < 0) {
                solution.bins.emplace_back();
                loads.emplace_back(0);
                chosen = static_cast<int>(loads.size()) - 1;
            }
            solution.bins[chosen].push_back(it.id);
            loads[chosen] += it.weight;
        }
        return solution;
    }

    if (static_cast<int>(instance.items.size()) > max_items) {
        throw SizeLimitError("exact conflict packing limited to " + std::to_string(max_items) +
                             " items");
    }
    if (instance.items.empty()) return {};
    ConflictExact search(instance, graph);
    search.descend(0, 0);
    bpp::PackSolution solution;
    solution.bins.resize(search.best_count);
    for (std::size_t i = 0; i < search.items.size(); ++i) {
        solution.bins[search.best_assignment[i]].push_back(search.items[i].id);
    }
    for (auto& bin : solution.bins) std::sort(bin.begin(), bin.end());
    return solution;
}

Rational profit_of(const bpp::PackSolution& solution, const std::map<int, Rational>& profits) {
    Rational total(0);
    for (const auto& bin : solution.bins) {
        for (const int id : bin) {
            const auto it = profits.find(id);
            total += it == profits.end() ? Rational(1) : it->second;
        }
    }
    return total;
}

namespace {

struct InverseExact {
    const bpp::PackInstance& instance;
    const std::map<int, Rational>& profits;
    int bins;
    std::vector<int> assignment;  // item position -> bin (0-based) or -1
    std::vector<Rational> loads;
    Rational profit{0};
    Rational best_profit{-1};
    std::vector<int> best_assignment;

    InverseExact(const bpp::PackInstance& inst, const std::map<int, Rational>& p, int k)
        : instance(inst), profits(p), bins(k) {
        assignment.assign(inst.items.size(), -1);
        loads.assign(k, Rational(0));
    }

    Rational profit_value(int id) const {
        const auto it = profits.find(id);
        return it == profits.end() ? Rational(1) : it->second;
    }

    void descend(std::size_t pos, int open) {
        if (pos == instance.items.size()) {
            if (profit > best_profit) {
                best_profit = profit;
                best_assignment = assignment;
            }
            return;
        }
        Rational upper = profit;
        for (std::size_t i = pos; i < instance.items.size(); ++i) {
            const Rational p = profit_value(instance.items[i].id);
            if (p > Rational(0)) upper += p;
        }
        if (upper <= best_profit) return;

        const auto& it = instance.items[pos];
        const Rational p = profit_value(it.id);
        // Equal bins: an item may open at most the next unused bin.
        const int reachable = std::min(bins, open + 1);
        for (int b = 0; b < reachable; ++b) {
            if (loads[b] + it.weight > instance.capacity) continue;
            assignment[pos] = b;
            loads[b] += it.weight;
            profit += p;
            descend(pos + 1, std::max(open, b + 1));
            profit -= p;
            loads[b] -= it.weight;
            assignment[pos] = -1;
        }
        descend(pos + 1, open);  // item waits
    }
};

}  // namespace

bpp::PackSolution inverse_pack(const bpp::PackInstance& instance,
                               const std::map<int, Rational>& profits, SolveMode mode,
                               int max_items) {
    instance.check();
    if (!instance.max_bins) {
        throw SchemaError("inverse packing needs max_bins");
    }
    const int k = *instance.max_bins;

    if (mode == SolveMode::Greedy) {
        // Highest profit density first, first-fit into the k bins.
        std::vector<bpp::Item> items = instance.items;
        std::map<int, Rational> density;
        for (const auto& it : items) {
            const auto p = profits.find(it.id);
            density[it.id] = (p == profits.end() ? Rational(1) : p->second) / it.weight;
        }
        std::stable_sort(items.begin(), items.end(),
                         [&](const bpp::Item& a, const bpp::Item& b) {
                             if (density[a.id] != density[b.id]) return density[a.id] > density[b.id];
                             if (a.weight != b.weight) return a.weight < b.weight;
                             return a.id < b.id;
                         });
        bpp::PackSolution solution;
        solution.bins.resize(k);
        std::vector<Rational> loads(k, Rational(0));
        for (const auto& it : items) {
            bool placed = false;
            for (int b = 0; b < k; ++b) {
                if (loads[b] + it.weight <= instance.capacity) {
                    solution.bins[b].push_back(it.id);
                    loads[b] += it.weight;
                    placed = true;
                    break;
                }
            }
            if (!placed) solution.unassigned.push_back(it.id);
        }
        std::erase_if(solution.bins, [](const auto& bin) { return bin.empty(); });
        std::sort(solution.unassigned.begin(), solution.unassigned.end());
        return solution;
    }

    if (static_cast<int>(instance.items.size()) > max_items) {
        throw SizeLimitError("exact inverse packing limited to " + std::to_string(max_items) +
                             " items");
    }
    InverseExact search(instance, profits, k);
    search.descend(0, 0);
    bpp::PackSolution solution;
    solution.bins.resize(k);
    for (std::size_t i = 0; i < instance.items.size(); ++i) {
        const int b = search.best_assignment.empty() ? -1 : search.best_assignment[i];
        if (b >= 0) {
            solution.bins[b].push_back(instance.items[i].id);
        } else {
            solution.unassigned.push_back(instance.items[i].id);
        }
    }
    std::erase_if(solution.bins, [](const auto& bin) { return bin.empty(); });
    return solution;
}

bpp::PackSolution order_within_bins(const bpp::PackSolution& solution,
                                    const std::vector<ItemPair>& precedence) {
    require_acyclic(precedence, "precedence");
    bpp::PackSolution out = solution;
    for (auto& bin : out.bins) {
        const std::set<int> members(bin.begin(), bin.end());
        std::map<int, std::set<int>> successors;
        std::map<int, int> indegree;
        std::map<int, int> original_position;
        for (std::size_t p = 0; p < bin.size(); ++p) {
            indegree[bin[p]] = 0;
            original_position[bin[p]] = static_cast<int>(p);
        }
        for (const auto& [a, b] : precedence) {
            if (members.count(a) && members.count(b) && successors[a].insert(b).second) {
                ++indegree[b];
            }
        }
        // Stable Kahn: the ready item closest to the front of the stored bin
        // goes next, so unconstrained bins keep their original order.
        std::set<std::pair<int, int>> ready;  // (original position, id)
        for (const auto& [id, deg] : indegree) {
            if (deg == 0) ready.insert({original_position[id], id});
        }
        std::vector<int> ordered_bin;
        while (!ready.empty()) {
            const int id = ready.begin()->second;
            ready.erase(ready.begin());
            ordered_bin.push_back(id);
            for (const int next : successors[id]) {
                if (--indegree[next] == 0) ready.insert({original_position[next], next});
            }
        }
        if (ordered_bin.size() != bin.size()) {
            throw SchemaError("precedence cycle within a bin");
        }
        bin = std::move(ordered_bin);
    }
    return out;
}

}  // namespace multibin::rel
