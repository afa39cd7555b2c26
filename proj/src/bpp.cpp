#include "multibin/bpp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "multibin/errors.hpp"

namespace multibin::bpp {

void PackInstance::check() const {
    std::set<int> seen;
    for (const auto& it : items) {
        if (!seen.insert(it.id).second) {
            throw SchemaError("duplicate item id " + std::to_string(it.id));
        }
        if (it.weight <= Rational(0)) {
            throw SchemaError("item " + std::to_string(it.id) + ": weight must be positive");
        }
        if (it.weight > capacity) {
            throw SchemaError("item " + std::to_string(it.id) + ": weight exceeds capacity");
        }
    }
    if (capacity <= Rational(0)) throw SchemaError("capacity must be positive");
    if (max_bins && *max_bins < 1) throw SchemaError("max_bins must be positive");
}

const Item& PackInstance::item(int id) const {
    for (const auto& it : items) {
        if (it.id == id) return it;
    }
    throw SchemaError("unknown item id " + std::to_string(id));
}

FeasibilityReport validate(const PackInstance& instance, const PackSolution& solution) {
    FeasibilityReport report;
    std::map<int, const Item*> by_id;
    for (const auto& it : instance.items) by_id[it.id] = &it;

    std::map<int, int> occurrences;
    const auto count_item = [&](int id, int bin_index) {
        if (!by_id.count(id)) {
            report.violations.push_back({"unknown_item", bin_index, id, Rational(0),
                                         "item " + std::to_string(id) + " is not in the instance"});
            return false;
        }
        if (++occurrences[id] > 1) {
            report.violations.push_back({"duplicate_item", bin_index, id, Rational(0),
                                         "item " + std::to_string(id) + " appears more than once"});
        }
        return true;
    };

    for (std::size_t b = 0; b < solution.bins.size(); ++b) {
        const int bin_index = static_cast<int>(b) + 1;
        if (solution.bins[b].empty()) {
            report.violations.push_back(
                {"empty_bin", bin_index, -1, Rational(0), "empty bin stored"});
            continue;
        }
        Rational load(0);
        for (const int id : solution.bins[b]) {
            if (count_item(id, bin_index)) load += by_id[id]->weight;
        }
        if (load > instance.capacity) {
            report.violations.push_back({"overflow", bin_index, -1, load - instance.capacity,
                                         "bin " + std::to_string(bin_index) + " overflows by " +
                                             (load - instance.capacity).str()});
        }
    }
    for (const int id : solution.unassigned) count_item(id, -1);

    for (const auto& it : instance.items) {
        if (!occurrences.count(it.id)) {
            report.violations.push_back({"missing_item", -1, it.id, Rational(0),
                                         "item " + std::to_string(it.id) + " is not placed"});
        }
    }
    if (instance.max_bins && solution.bins_used() > *instance.max_bins) {
        report.violations.push_back({"too_many_bins", -1, -1, Rational(0),
                                     std::to_string(solution.bins_used()) + " bins used, at most " +
                                         std::to_string(*instance.max_bins) + " allowed"});
    }
    return report;
}

namespace {

std::vector<Item> ordered_items(const PackInstance& instance, ItemOrder order) {
    std::vector<Item> items = instance.items;
    if (order == ItemOrder::Decreasing) {
        std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            return a.id < b.id;
        });
    }
    return items;
}

}  // namespace

PackSolution fit_pack(const PackInstance& instance, FitPolicy policy, ItemOrder order) {
    instance.check();
    PackSolution solution;
    std::vector<Rational> loads;

    for (const auto& it : ordered_items(instance, order)) {
        int chosen = -1;
        if (policy == FitPolicy::NextFit) {
            if (!loads.empty() && loads.back() + it.weight <= instance.capacity) {
                chosen = static_cast<int>(loads.size()) - 1;
            }
        } else {
            for (std::size_t b = 0; b < loads.size(); ++b) {
                if (loads[b] + it.weight > instance.capacity) continue;
                if (chosen < 0) {
                    chosen = static_cast<int>(b);
                    if (policy == FitPolicy::FirstFit) break;
                    continue;
                }
                const Rational residual = instance.capacity - loads[b];
                const Rational best_residual = instance.capacity - loads[chosen];
                if (policy == FitPolicy::BestFit ? residual < best_residual
                                                 : residual > best_residual) {
                    chosen = static_cast<int>(b);
                }
            }
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

int lower_bound(const PackInstance& instance) {
    Rational total(0);
    for (const auto& it : instance.items) total += it.weight;
    const std::int64_t bound = (total / instance.capacity).ceil();
    return static_cast<int>(std::max<std::int64_t>(bound, instance.items.empty() ? 0 : 1));
}

namespace {

struct ExactSearch {
    const PackInstance& instance;
    std::vector<Item> items;      // decreasing weight; speeds pruning only
    std::vector<int> assignment;  // item position -> bin index
    std::vector<Rational> loads;
    int best_count;
    std::vector<int> best_assignment;

    explicit ExactSearch(const PackInstance& inst) : instance(inst), best_count(0) {
        items = ordered_items(inst, ItemOrder::Decreasing);
        assignment.assign(items.size(), -1);
    }

    void run() {
        // FFD seeds the incumbent.
        PackSolution ffd = fit_pack(instance, FitPolicy::FirstFit, ItemOrder::Decreasing);
        best_count = ffd.bins_used();
        seed_from(ffd);
        if (best_count > lower_bound(instance)) {
            loads.clear();
            descend(0, 0);
        }
    }

    void seed_from(const PackSolution& solution) {
        std::map<int, int> bin_of;
        for (std::size_t b = 0; b < solution.bins.size(); ++b) {
            for (const int id : solution.bins[b]) bin_of[id] = static_cast<int>(b);
        }
        best_assignment.resize(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) {
            best_assignment[i] = bin_of.at(items[i].id);
        }
    }

    void descend(std::size_t pos, int used) {
        if (used >= best_count) return;
        if (pos == items.size()) {
            best_count = used;
            best_assignment = assignment;
            return;
        }
        // Remaining volume cannot beat the incumbent.
        Rational remaining(0);
        for (std::size_t i = pos; i < items.size(); ++i) remaining += items[i].weight;
        Rational slack(0);
        for (int b = 0; b < used; ++b) slack += instance.capacity - loads[b];
        if (remaining > slack) {
            const Rational extra = remaining - slack;
            const std::int64_t need = (extra / instance.capacity).ceil();
            if (used + need >= best_count) return;
        }

        const Item& it = items[pos];
        for (int b = 0; b < used; ++b) {
            if (loads[b] + it.weight > instance.capacity) continue;
            assignment[pos] = b;
            loads[b] += it.weight;
            descend(pos + 1, used);
            loads[b] -= it.weight;
        }
        // Opening a new bin: symmetry broken by always using index `used`.
        assignment[pos] = used;
        loads.resize(std::max<std::size_t>(loads.size(), used + 1), Rational(0));
        loads[used] += it.weight;
        descend(pos + 1, used + 1);
        loads[used] -= it.weight;
        assignment[pos] = -1;
    }
};

}  // namespace

PackSolution exact_min_bins(const PackInstance& instance, int max_items) {
    instance.check();
    if (static_cast<int>(instance.items.size()) > max_items) {
        throw SizeLimitError("exact solver limited to " + std::to_string(max_items) +
                             " items, got " + std::to_string(instance.items.size()));
    }
    if (instance.items.empty()) return {};
    ExactSearch search(instance);
    search.run();
    PackSolution solution;
    solution.bins.resize(search.best_count);
    for (std::size_t i = 0; i < search.items.size(); ++i) {
        solution.bins[search.best_assignment[i]].push_back(search.items[i].id);
    }
    for (auto& bin : solution.bins) std::sort(bin.begin(), bin.end());
    return solution;
}

std::string policy_name(FitPolicy policy, ItemOrder order) {
    std::string name;
    switch (policy) {
        case FitPolicy::NextFit: name = "next_fit"; break;
        case FitPolicy::FirstFit: name = "first_fit"; break;
        case FitPolicy::BestFit: name = "best_fit"; break;
        case FitPolicy::WorstFit: name = "worst_fit"; break;
    }
    if (order == ItemOrder::Decreasing) name += "_decreasing";
    return name;
}

}  // namespace multibin::bpp
