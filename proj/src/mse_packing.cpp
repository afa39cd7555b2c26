#include "multibin/mse_packing.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "multibin/errors.hpp"

namespace multibin::msepack {

std::vector<int> MseSolution::selected_ids() const {
    std::vector<int> ids;
    ids.reserve(assignment.size());
    for (const auto& [id, bin] : assignment) ids.push_back(id);
    return ids;  // std::map keeps them sorted
}

namespace {

using mse::MsEstimate;
using mse::Ordering;

void require_estimates(const std::vector<MseItem>& items, bool positional, int bins) {
    const MsEstimate* reference = nullptr;
    const auto check_one = [&](const MsEstimate& e, int id) {
        if (!reference) {
            reference = &e;
            return;
        }
        if (e.levels() != reference->levels() || e.eta() != reference->eta()) {
            throw SchemaError("item " + std::to_string(id) +
                              ": estimate shape differs from the rest of the instance");
        }
    };
    for (const auto& item : items) {
        if (positional) {
            for (int b = 1; b <= bins; ++b) {
                const auto it = item.position_estimates.find(b);
                if (it == item.position_estimates.end()) {
                    throw SchemaError("item " + std::to_string(item.id) +
                                      ": missing estimate for container " + std::to_string(b));
                }
                check_one(it->second, item.id);
            }
        } else {
            if (!item.estimate) {
                throw SchemaError("item " + std::to_string(item.id) + ": missing estimate");
            }
            check_one(*item.estimate, item.id);
        }
    }
}

// Candidate solution during search; ids/assignment sorted by item id.
struct Candidate {
    std::vector<std::pair<int, int>> assignment;  // (item id, container)
    std::optional<MsEstimate> estimate;
    std::optional<Rational> scalar;
    int cardinality = 0;

    std::vector<int> ids() const {
        std::vector<int> out;
        out.reserve(assignment.size());
        for (const auto& [id, bin] : assignment) out.push_back(id);
        return out;
    }
};

// Deterministic preference among candidates that dominance cannot separate.
bool preferred(const Candidate& a, const Candidate& b) {
    if (a.cardinality != b.cardinality) return a.cardinality > b.cardinality;
    if (a.estimate && b.estimate && !(*a.estimate == *b.estimate)) {
        return MsEstimate::canonical_less(*a.estimate, *b.estimate);
    }
    if (a.estimate.has_value() != b.estimate.has_value()) return a.estimate.has_value();
    const auto ia = a.ids();
    const auto ib = b.ids();
    if (ia != ib) return ia < ib;
    return a.assignment < b.assignment;
}

// Dominance between objective estimates; candidates without an estimate
// (empty selections under the median objective) sit below everything.
Ordering estimate_order(const Candidate& a, const Candidate& b, Objective objective) {
    if (!a.estimate && !b.estimate) return Ordering::Equal;
    if (!a.estimate) return Ordering::Worse;
    if (!b.estimate) return Ordering::Better;
    if (objective == Objective::Integrated) return mse::compare_padded(*a.estimate, *b.estimate);
    return mse::compare(*a.estimate, *b.estimate);
}

// Keeps the poset-maximal candidates seen so far, one per distinct estimate.
class MaximalArchive {
  public:
    explicit MaximalArchive(Objective objective) : objective_(objective) {}

    void push(Candidate&& candidate) {
        for (auto it = members_.begin(); it != members_.end();) {
            switch (estimate_order(*it, candidate, objective_)) {
                case Ordering::Better:
                    return;  // dominated, drop
                case Ordering::Equal:
                    if (preferred(candidate, *it)) *it = std::move(candidate);
                    return;
                case Ordering::Worse:
                    it = members_.erase(it);
                    break;
                case Ordering::Incomparable:
                    ++it;
                    break;
            }
        }
        members_.push_back(std::move(candidate));
    }

    bool empty() const { return members_.empty(); }

    Candidate best() const {
        const Candidate* chosen = nullptr;
        for (const auto& c : members_) {
            if (!chosen || preferred(c, *chosen)) chosen = &c;
        }
        return *chosen;
    }

  private:
    Objective objective_;
    std::vector<Candidate> members_;
};

// Archive for the bi-objective front over (estimate, cardinality).
class FrontArchive {
  public:
    explicit FrontArchive(Objective objective) : objective_(objective) {}

    void push(Candidate&& candidate) {
        for (auto it = members_.begin(); it != members_.end();) {
            const Ordering est = estimate_order(*it, candidate, objective_);
            const bool same_point = est == Ordering::Equal &&
                                    it->cardinality == candidate.cardinality;
            if (same_point) {
                if (preferred(candidate, *it)) *it = std::move(candidate);
                return;
            }
            if (dominates(*it, candidate, est)) return;
            if (dominates(candidate, *it, flip(est))) {
                it = members_.erase(it);
            } else {
                ++it;
            }
        }
        members_.push_back(std::move(candidate));
    }

    std::vector<Candidate> sorted_members() const {
        std::vector<Candidate> out = members_;
        std::sort(out.begin(), out.end(),
                  [](const Candidate& a, const Candidate& b) { return preferred(a, b); });
        return out;
    }

  private:
    static Ordering flip(Ordering o) {
        if (o == Ordering::Better) return Ordering::Worse;
        if (o == Ordering::Worse) return Ordering::Better;
        return o;
    }

    // a dominates b: estimate better-or-equal and cardinality >=, one strict.
    static bool dominates(const Candidate& a, const Candidate& b, Ordering est_ab) {
        if (est_ab != Ordering::Better && est_ab != Ordering::Equal) return false;
        if (a.cardinality < b.cardinality) return false;
        return est_ab == Ordering::Better || a.cardinality > b.cardinality;
    }

    Objective objective_;
    std::vector<Candidate> members_;
};

struct PathState {
    std::vector<std::pair<int, int>> assignment;
    std::vector<MsEstimate> member_estimates;
    std::vector<int> integrated_counts;
    Rational scalar_total{0};
    int levels = 0;

    void init(int l) {
        levels = l;
        integrated_counts.assign(std::max(l, 1), 0);
    }

    void push(int id, int bin, const MsEstimate* estimate, const Rational& profit) {
        assignment.emplace_back(id, bin);
        if (estimate) {
            member_estimates.push_back(*estimate);
            for (int i = 0; i < estimate->levels(); ++i) {
                integrated_counts[i] += estimate->counts()[i];
            }
        }
        scalar_total += profit;
    }

    void pop(const MsEstimate* estimate, const Rational& profit) {
        assignment.pop_back();
        if (estimate) {
            member_estimates.pop_back();
            for (int i = 0; i < estimate->levels(); ++i) {
                integrated_counts[i] -= estimate->counts()[i];
            }
        }
        scalar_total -= profit;
    }

    Candidate snapshot(Objective objective) const {
        Candidate c;
        c.assignment = assignment;
        std::sort(c.assignment.begin(), c.assignment.end());
        c.cardinality = static_cast<int>(assignment.size());
        switch (objective) {
            case Objective::Scalar:
                c.scalar = scalar_total;
                break;
            case Objective::Integrated:
                c.estimate = MsEstimate(levels, integrated_counts);
                break;
            case Objective::Median:
                if (!member_estimates.empty()) {
                    c.estimate = mse::generalized_median(member_estimates);
                }
                break;
        }
        return c;
    }
};

MseSolution to_solution(const Candidate& candidate) {
    MseSolution s;
    for (const auto& [id, bin] : candidate.assignment) s.assignment[id] = bin;
    s.cardinality = candidate.cardinality;
    s.objective_estimate = candidate.estimate;
    s.objective_value = candidate.scalar;
    return s;
}

int estimate_levels(const std::vector<MseItem>& items, bool positional) {
    for (const auto& item : items) {
        if (positional && !item.position_estimates.empty()) {
            return item.position_estimates.begin()->second.levels();
        }
        if (!positional && item.estimate) return item.estimate->levels();
    }
    return 1;
}

// Depth-first enumeration of feasible solutions for every model kind,
// invoking `emit` at each feasible node (every prefix of a feasible
// assignment is itself feasible, so emitting per node covers all solutions).
class Enumerator {
  public:
    Enumerator(const MseInstance& instance, ModelKind kind, Objective objective)
        : instance_(instance), kind_(kind), objective_(objective) {
        positional_ = kind == ModelKind::Assignment &&
                      (objective != Objective::Scalar);
        if (objective != Objective::Scalar) {
            require_estimates(instance.items, positional_, container_count());
        }
        state_.init(estimate_levels(instance_.items, positional_));
        loads_.assign(container_count(), Rational(0));
        bin_members_.resize(container_count());
    }

    int container_count() const {
        switch (kind_) {
            case ModelKind::Knapsack:
            case ModelKind::MultipleChoice:
                return 1;
            case ModelKind::MultipleKnapsack:
            case ModelKind::Assignment:
                return static_cast<int>(instance_.capacities.size());
            case ModelKind::InverseBpp:
            case ModelKind::ConflictInverse:
                return instance_.bins;
        }
        return 1;
    }

    Rational capacity(int bin) const {
        switch (kind_) {
            case ModelKind::Knapsack:
            case ModelKind::MultipleChoice:
            case ModelKind::InverseBpp:
            case ModelKind::ConflictInverse:
                return instance_.capacity;
            case ModelKind::MultipleKnapsack:
            case ModelKind::Assignment:
                return instance_.capacities[bin];
        }
        return instance_.capacity;
    }

    bool symmetric_bins() const {
        return kind_ == ModelKind::InverseBpp || kind_ == ModelKind::ConflictInverse;
    }

    bool skip_allowed() const {
        if (kind_ == ModelKind::MultipleChoice) return false;
        if (kind_ == ModelKind::Assignment) {
            return instance_.assign_mode == AssignMode::AllowPartial;
        }
        return true;
    }

    // Runs the search; emit receives the path state after every placement
    // decision level (leaf nodes only, i.e. all items decided).
    void run(const std::function<void(const PathState&)>& emit) {
        emit_ = &emit;
        descend(0, 0);
    }

  private:
    const MsEstimate* estimate_for(const MseItem& item, int bin) const {
        if (objective_ == Objective::Scalar) return nullptr;
        if (positional_) return &item.position_estimates.at(bin + 1);
        return &*item.estimate;
    }

    Rational profit_for(const MseItem& item, int bin) const {
        if (kind_ == ModelKind::Assignment) {
            const auto it = item.position_profits.find(bin + 1);
            if (it != item.position_profits.end()) return it->second;
        }
        return item.profit.value_or(Rational(1));
    }

    bool conflict_blocked(int id, int bin) const {
        if (kind_ != ModelKind::ConflictInverse) return false;
        for (const int other : bin_members_[bin]) {
            const auto key = other < id ? rel::ItemPair{other, id} : rel::ItemPair{id, other};
            if (instance_.conflicts.count(key)) return true;
        }
        return false;
    }

    void descend(std::size_t pos, int open) {
        if (pos == instance_.items.size()) {
            (*emit_)(state_);
            return;
        }
        const MseItem& item = instance_.items[pos];
        const int total = container_count();
        const int reachable = symmetric_bins() ? std::min(total, open + 1) : total;
        for (int b = 0; b < reachable; ++b) {
            if (loads_[b] + item.weight > capacity(b)) continue;
            if (conflict_blocked(item.id, b)) continue;
            const MsEstimate* e = estimate_for(item, b);
            const Rational p = profit_for(item, b);
            loads_[b] += item.weight;
            bin_members_[b].push_back(item.id);
            state_.push(item.id, b + 1, e, p);
            descend(pos + 1, std::max(open, b + 1));
            state_.pop(e, p);
            bin_members_[b].pop_back();
            loads_[b] -= item.weight;
        }
        if (skip_allowed()) descend(pos + 1, open);
    }

    const MseInstance& instance_;
    ModelKind kind_;
    Objective objective_;
    bool positional_ = false;
    PathState state_;
    std::vector<Rational> loads_;
    std::vector<std::vector<int>> bin_members_;
    const std::function<void(const PathState&)>* emit_ = nullptr;
};

void enforce_limits(const MseInstance& instance, ModelKind kind, const SearchLimits& limits) {
    const int n = static_cast<int>(instance.items.size());
    const bool single = kind == ModelKind::Knapsack || kind == ModelKind::MultipleChoice;
    const int max_items = single ? limits.max_subset_items : limits.max_assign_items;
    if (n > max_items) {
        throw SizeLimitError("exact search limited to " + std::to_string(max_items) +
                             " items, got " + std::to_string(n));
    }
    if (!single) {
        const int bins = kind == ModelKind::MultipleKnapsack || kind == ModelKind::Assignment
                             ? static_cast<int>(instance.capacities.size())
                             : instance.bins;
        if (bins > limits.max_assign_bins) {
            throw SizeLimitError("exact search limited to " +
                                 std::to_string(limits.max_assign_bins) + " containers, got " +
                                 std::to_string(bins));
        }
    }
}

MseSolution solve_single(const MseInstance& instance, ModelKind kind, Objective objective,
                         const SearchLimits& limits) {
    enforce_limits(instance, kind, limits);
    Enumerator enumerator(instance, kind, objective);
    if (objective == Objective::Scalar) {
        std::optional<Candidate> best;
        enumerator.run([&](const PathState& state) {
            Candidate c = state.snapshot(objective);
            if (!best || *c.scalar > *best->scalar ||
                (*c.scalar == *best->scalar && preferred(c, *best))) {
                best = std::move(c);
            }
        });
        if (!best) throw InfeasibleError("no feasible solution");
        return to_solution(*best);
    }
    MaximalArchive archive(objective);
    enumerator.run([&](const PathState& state) { archive.push(state.snapshot(objective)); });
    if (archive.empty()) throw InfeasibleError("no feasible solution");
    return to_solution(archive.best());
}

}  // namespace

MseSolution knapsack_mse(const std::vector<MseItem>& items, const Rational& capacity,
                         Objective objective, const SearchLimits& limits) {
    MseInstance instance;
    instance.items = items;
    instance.capacity = capacity;
    return solve_single(instance, ModelKind::Knapsack, objective, limits);
}

MseSolution multiple_choice_mse(const std::vector<MseItem>& items, const Rational& capacity,
                                Objective objective, const SearchLimits& limits) {
    std::map<int, Rational> group_min;
    for (const auto& item : items) {
        if (!item.group) {
            throw SchemaError("item " + std::to_string(item.id) + ": missing group");
        }
        const auto it = group_min.find(*item.group);
        if (it == group_min.end() || item.weight < it->second) {
            group_min[*item.group] = item.weight;
        }
    }
    if (group_min.empty()) throw SchemaError("multiple choice needs at least one group");
    Rational minima_total(0);
    for (const auto& [group, weight] : group_min) minima_total += weight;
    if (minima_total > capacity) {
        std::ostringstream os;
        os << "infeasible: group minima sum to " << minima_total.str() << " > capacity "
           << capacity.str() << "; binding groups:";
        for (const auto& [group, weight] : group_min) {
            os << " group " << group << " (min weight " << weight.str() << ")";
        }
        throw InfeasibleError(os.str());
    }

    MseInstance probe;
    probe.items = items;
    probe.capacity = capacity;
    enforce_limits(probe, ModelKind::MultipleChoice, limits);
    if (objective != Objective::Scalar) require_estimates(items, false, 1);

    // The generic enumerator walks items one by one; the one-per-group
    // structure needs its own product search.
    std::vector<int> group_order;
    for (const auto& item : items) {
        if (std::find(group_order.begin(), group_order.end(), *item.group) == group_order.end()) {
            group_order.push_back(*item.group);
        }
    }
    std::vector<std::vector<MseItem>> groups;
    for (const int g : group_order) {
        groups.emplace_back();
        for (const auto& item : items) {
            if (*item.group == g) groups.back().push_back(item);
        }
    }

    MaximalArchive archive(objective);
    std::optional<Candidate> best_scalar;
    PathState state;
    state.init(estimate_levels(items, false));
    Rational load(0);
    std::function<void(std::size_t)> descend = [&](std::size_t gi) {
        if (gi == groups.size()) {
            Candidate c = state.snapshot(objective);
            if (objective == Objective::Scalar) {
                if (!best_scalar || *c.scalar > *best_scalar->scalar ||
                    (*c.scalar == *best_scalar->scalar && preferred(c, *best_scalar))) {
                    best_scalar = std::move(c);
                }
            } else {
                archive.push(std::move(c));
            }
            return;
        }
        for (const auto& item : groups[gi]) {
            if (load + item.weight > capacity) continue;
            const MsEstimate* e =
                objective == Objective::Scalar ? nullptr : &*item.estimate;
            const Rational p = item.profit.value_or(Rational(1));
            load += item.weight;
            state.push(item.id, 1, e, p);
            descend(gi + 1);
            state.pop(e, p);
            load -= item.weight;
        }
    };
    descend(0);
    if (objective == Objective::Scalar) {
        if (!best_scalar) {
            throw InfeasibleError("no complete one-per-group selection fits the capacity");
        }
        return to_solution(*best_scalar);
    }
    if (archive.empty()) {
        throw InfeasibleError("no complete one-per-group selection fits the capacity");
    }
    return to_solution(archive.best());
}

MseSolution multiple_knapsack_mse(const std::vector<MseItem>& items,
                                  const std::vector<Rational>& capacities, Objective objective,
                                  const SearchLimits& limits) {
    if (capacities.empty()) throw SchemaError("multiple knapsack needs at least one capacity");
    MseInstance instance;
    instance.items = items;
    instance.capacities = capacities;
    return solve_single(instance, ModelKind::MultipleKnapsack, objective, limits);
}

MseSolution generalized_assignment_mse(const std::vector<MseItem>& items,
                                       const std::vector<Rational>& capacities,
                                       Objective objective, AssignMode mode,
                                       const SearchLimits& limits) {
    if (capacities.empty()) throw SchemaError("assignment needs at least one container");
    MseInstance instance;
    instance.items = items;
    instance.capacities = capacities;
    instance.assign_mode = mode;
    try {
        return solve_single(instance, ModelKind::Assignment, objective, limits);
    } catch (const InfeasibleError&) {
        throw InfeasibleError("no complete assignment fits the container capacities");
    }
}

MseSolution inverse_bpp_mse(const std::vector<MseItem>& items, int bins, const Rational& capacity,
                            Objective objective, const SearchLimits& limits) {
    if (bins < 1) throw SchemaError("inverse packing needs at least one bin");
    MseInstance instance;
    instance.items = items;
    instance.capacity = capacity;
    instance.bins = bins;
    return solve_single(instance, ModelKind::InverseBpp, objective, limits);
}

MseSolution conflict_inverse_mse(const std::vector<MseItem>& items, int bins,
                                 const Rational& capacity, const rel::ConflictGraph& graph,
                                 Objective objective, const SearchLimits& limits) {
    if (bins < 1) throw SchemaError("inverse packing needs at least one bin");
    MseInstance instance;
    instance.items = items;
    instance.capacity = capacity;
    instance.bins = bins;
    instance.conflicts = graph.edges();
    return solve_single(instance, ModelKind::ConflictInverse, objective, limits);
}

std::vector<MseSolution> pareto_front_biobjective(ModelKind kind, const MseInstance& instance,
                                                  Objective objective,
                                                  const SearchLimits& limits) {
    if (kind == ModelKind::MultipleChoice) {
        throw SchemaError("the one-per-group model has fixed cardinality; no bi-objective front");
    }
    enforce_limits(instance, kind, limits);
    Enumerator enumerator(instance, kind, objective);
    FrontArchive archive(objective);
    enumerator.run([&](const PathState& state) { archive.push(state.snapshot(objective)); });
    std::vector<MseSolution> out;
    for (const auto& c : archive.sorted_members()) out.push_back(to_solution(c));
    return out;
}

}  // namespace multibin::msepack
