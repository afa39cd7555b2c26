#include "multibin/pipelines.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "multibin/errors.hpp"

namespace multibin::pipeline {

int ColorChangeTable::change_cost(const std::string& from, const std::string& to) const {
    const auto index_of = [&](const std::string& c) {
        const auto it = std::find(colors.begin(), colors.end(), c);
        if (it == colors.end()) throw SchemaError("unknown color '" + c + "'");
        return static_cast<int>(it - colors.begin());
    };
    return cost[index_of(from)][index_of(to)];
}

void ColorChangeTable::check() const {
    if (cost.size() != colors.size()) throw SchemaError("color change table must be square");
    for (const auto& row : cost) {
        if (row.size() != colors.size()) throw SchemaError("color change table must be square");
        for (const int c : row) {
            if (c < 0) throw SchemaError("color change costs must be non-negative");
        }
    }
}

int GeneralItem::width() const {
    int total = 0;
    for (const auto& lane : lanes) total += lane.width;
    return total;
}

int GeneralItem::duration() const {
    int longest = 0;
    for (const auto& lane : lanes) longest = std::max(longest, lane.length);
    return longest;
}

std::vector<int> GeneralItem::member_ids() const {
    std::vector<int> ids;
    for (const auto& lane : lanes) ids.insert(ids.end(), lane.item_ids.begin(),
                                              lane.item_ids.end());
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::pair<std::string, std::vector<ProductionItem>>> group_by_color(
    const std::vector<ProductionItem>& items) {
    std::vector<std::pair<std::string, std::vector<ProductionItem>>> groups;
    for (const auto& item : items) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == item.color; });
        if (it == groups.end()) {
            groups.push_back({item.color, {}});
            it = groups.end() - 1;
        }
        it->second.push_back(item);
    }
    return groups;
}

namespace {

// First-fit-decreasing of lanes by width; returns lane indices per bin.
std::vector<std::vector<int>> ffd_lanes(const std::vector<Lane>& lanes, int bar_width) {
    std::vector<int> order(lanes.size());
    for (std::size_t i = 0; i < lanes.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (lanes[a].width != lanes[b].width) return lanes[a].width > lanes[b].width;
        return lanes[a].item_ids.front() < lanes[b].item_ids.front();
    });
    std::vector<std::vector<int>> bins;
    std::vector<int> loads;
    for (const int li : order) {
        int chosen = -1;
        for (std::size_t b = 0; b < bins.size(); ++b) {
            if (loads[b] + lanes[li].width <= bar_width) {
                chosen = static_cast<int>(b);
                break;
            }
        }
        if (chosen < 0) {
            bins.emplace_back();
            loads.push_back(0);
            chosen = static_cast<int>(bins.size()) - 1;
        }
        bins[chosen].push_back(li);
        loads[chosen] += lanes[li].width;
    }
    return bins;
}

}  // namespace

std::vector<GeneralItem> form_general_items(const std::vector<ProductionItem>& group,
                                            int bar_width) {
    if (group.empty()) return {};
    const std::string& color = group.front().color;
    for (const auto& item : group) {
        if (item.color != color) throw SchemaError("general items need a single-color group");
        if (item.width < 1 || item.width > bar_width) {
            throw SchemaError("item " + std::to_string(item.id) +
                              ": width must lie in [1, bar width]");
        }
        if (item.length < 1) {
            throw SchemaError("item " + std::to_string(item.id) + ": length must be positive");
        }
    }

    std::vector<Lane> lanes;
    for (const auto& item : group) lanes.push_back({{item.id}, item.width, item.length});

    // Candidate merges: items sharing a length, one shared lane per length
    // class. A merge is kept only when it saves a general item.
    std::map<int, std::vector<std::size_t>> by_length;
    for (std::size_t i = 0; i < lanes.size(); ++i) by_length[group[i].length].push_back(i);
    std::vector<int> lengths;
    for (const auto& [len, members] : by_length) {
        if (members.size() > 1) lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());

    for (const int len : lengths) {
        const auto& members = by_length[len];
        std::vector<Lane> merged;
        Lane shared;
        for (std::size_t i = 0; i < lanes.size(); ++i) {
            if (std::find(members.begin(), members.end(), i) != members.end()) {
                for (const int id : lanes[i].item_ids) shared.item_ids.push_back(id);
                shared.width = std::max(shared.width, lanes[i].width);
                shared.length += lanes[i].length;
            } else {
                merged.push_back(lanes[i]);
            }
        }
        merged.push_back(shared);
        if (ffd_lanes(merged, bar_width).size() < ffd_lanes(lanes, bar_width).size()) {
            lanes = std::move(merged);
        }
    }

    std::vector<GeneralItem> out;
    for (const auto& bin : ffd_lanes(lanes, bar_width)) {
        GeneralItem gi;
        gi.index = static_cast<int>(out.size()) + 1;
        gi.color = color;
        for (const int li : bin) gi.lanes.push_back(lanes[li]);
        out.push_back(std::move(gi));
    }
    return out;
}

std::vector<MachinePeriod> pack_periods(const std::vector<GeneralItem>& general_items,
                                        int machines, int period_length) {
    if (machines < 1) throw SchemaError("need at least one machine");
    if (period_length < 1) throw SchemaError("period length must be positive");
    for (const auto& gi : general_items) {
        if (gi.duration() > period_length) {
            throw InfeasibleError("general item " + std::to_string(gi.index) +
                                  " is longer than the period (" +
                                  std::to_string(gi.duration()) + " > " +
                                  std::to_string(period_length) + ")");
        }
    }
    std::vector<int> order(general_items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (general_items[a].duration() != general_items[b].duration()) {
            return general_items[a].duration() > general_items[b].duration();
        }
        return general_items[a].index < general_items[b].index;
    });

    std::vector<MachinePeriod> slots;
    for (const int gi : order) {
        const int duration = general_items[gi].duration();
        int chosen = -1;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (slots[s].load + duration <= period_length) {
                chosen = static_cast<int>(s);
                break;
            }
        }
        if (chosen < 0) {
            // Slots open in (period, machine) order.
            const int next = static_cast<int>(slots.size());
            slots.push_back({next % machines + 1, next / machines + 1, {}, 0, 0});
            chosen = next;
        }
        slots[chosen].sequence.push_back(general_items[gi].index);
        slots[chosen].load += duration;
    }
    return slots;
}

OrderedSequence order_colors(const std::vector<GeneralItem>& sequence,
                             const ColorChangeTable& table,
                             const std::optional<std::string>& start_color, int max_items) {
    table.check();
    const int n = static_cast<int>(sequence.size());
    if (n > max_items) {
        throw SizeLimitError("color ordering limited to " + std::to_string(max_items) +
                             " items, got " + std::to_string(n));
    }
    if (n == 0) return {{}, 0};

    std::vector<std::vector<int>> cost(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) cost[i][j] = table.change_cost(sequence[i].color, sequence[j].color);
        }
    }
    std::vector<int> start_cost(n, 0);
    if (start_color) {
        for (int i = 0; i < n; ++i) start_cost[i] = table.change_cost(*start_color,
                                                                      sequence[i].color);
    }

    // Suffix DP: cheapest completion of a path that has visited `mask` and
    // stands at `last`; reconstruction can then walk forward picking the
    // smallest feasible next position, which yields the lexicographically
    // smallest optimal order.
    const int full = (1 << n) - 1;
    constexpr int kInf = 1 << 28;
    std::vector<std::vector<int>> suffix(full + 1, std::vector<int>(n, kInf));
    for (int i = 0; i < n; ++i) suffix[full][i] = 0;
    for (int mask = full - 1; mask >= 1; --mask) {
        for (int last = 0; last < n; ++last) {
            if (!(mask & (1 << last))) continue;
            int best = kInf;
            for (int next = 0; next < n; ++next) {
                if (mask & (1 << next)) continue;
                best = std::min(best, cost[last][next] + suffix[mask | (1 << next)][next]);
            }
            suffix[mask][last] = best;
        }
    }

    int total = kInf;
    for (int i = 0; i < n; ++i) total = std::min(total, start_cost[i] + suffix[1 << i][i]);

    OrderedSequence out;
    out.total_cost = total;
    int mask = 0;
    int last = -1;
    for (int step = 0; step < n; ++step) {
        for (int next = 0; next < n; ++next) {
            if (mask & (1 << next)) continue;
            const int lead = last < 0 ? start_cost[next] : cost[last][next];
            const int rest = suffix[mask | (1 << next)][next];
            if (lead + rest == (last < 0 ? total : suffix[mask][last])) {
                out.order.push_back(next);
                mask |= 1 << next;
                last = next;
                break;
            }
        }
    }
    return out;
}

Plan plan_paper(const std::vector<ProductionItem>& items, const ColorChangeTable& table,
                int bar_width, int period_length, int machines) {
    Plan plan;
    for (const auto& [color, group] : group_by_color(items)) {
        for (auto& gi : form_general_items(group, bar_width)) {
            gi.index = static_cast<int>(plan.general_items.size()) + 1;
            plan.general_items.push_back(std::move(gi));
        }
    }
    plan.slots = pack_periods(plan.general_items, machines, period_length);

    // Stage 4 per machine-period slot, each seeded with the color the
    // machine ended the previous slot on.
    std::map<int, std::string> machine_color;
    std::sort(plan.slots.begin(), plan.slots.end(),
              [](const MachinePeriod& a, const MachinePeriod& b) {
                  if (a.period != b.period) return a.period < b.period;
                  return a.machine < b.machine;
              });
    for (auto& slot : plan.slots) {
        std::vector<GeneralItem> seq;
        for (const int index : slot.sequence) seq.push_back(plan.general_items[index - 1]);
        std::optional<std::string> start;
        if (const auto it = machine_color.find(slot.machine); it != machine_color.end()) {
            start = it->second;
        }
        const OrderedSequence ordered = order_colors(seq, table, start);
        std::vector<int> new_sequence;
        for (const int pos : ordered.order) new_sequence.push_back(slot.sequence[pos]);
        slot.sequence = std::move(new_sequence);
        slot.change_cost = ordered.total_cost;
        plan.total_change_cost += ordered.total_cost;
        if (!slot.sequence.empty()) {
            machine_color[slot.machine] = plan.general_items[slot.sequence.back() - 1].color;
        }
        plan.idle_time += period_length - slot.load;
    }

    for (const auto& item : items) {
        plan.used_area += static_cast<long long>(item.width) * item.length;
    }
    for (const auto& gi : plan.general_items) {
        plan.bar_area += static_cast<long long>(bar_width) * gi.duration();
    }
    plan.unused_bar_area = plan.bar_area - plan.used_area;
    return plan;
}

// --- messages ----------------------------------------------------------------

Schedule swf_order(const std::vector<Message>& messages) {
    std::vector<Message> sorted = messages;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Message& a, const Message& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.id < b.id;
    });
    Schedule schedule;
    Rational clock(0);
    for (const auto& m : sorted) {
        clock += m.weight;
        schedule.ids.push_back(m.id);
        schedule.completions.push_back(clock);
    }
    return schedule;
}

std::vector<Rational> completion_times(const std::vector<Rational>& weights_in_order) {
    std::vector<Rational> out;
    Rational clock(0);
    for (const auto& w : weights_in_order) {
        clock += w;
        out.push_back(clock);
    }
    return out;
}

Rational mean_completion(const std::vector<Rational>& weights_in_order) {
    if (weights_in_order.empty()) throw SchemaError("mean completion of an empty schedule");
    Rational total(0);
    for (const auto& tau : completion_times(weights_in_order)) total += tau;
    return total / Rational(static_cast<std::int64_t>(weights_in_order.size()));
}

Rational mean_completion(const Schedule& schedule) {
    if (schedule.completions.empty()) throw SchemaError("mean completion of an empty schedule");
    Rational total(0);
    for (const auto& tau : schedule.completions) total += tau;
    return total / Rational(static_cast<std::int64_t>(schedule.completions.size()));
}

namespace {

const Message& message_by_id(const std::vector<Message>& messages, int id) {
    for (const auto& m : messages) {
        if (m.id == id) return m;
    }
    throw SchemaError("unknown message id " + std::to_string(id));
}

Selection selection_from_ids(const std::vector<Message>& messages,
                             const std::set<int>& selected) {
    Selection out;
    std::vector<Message> chosen;
    for (const auto& m : messages) {
        if (selected.count(m.id)) {
            chosen.push_back(m);
        } else {
            Message waiter = m;
            ++waiter.wait_age;
            out.waiting.push_back(waiter);
        }
    }
    out.selected_ids = swf_order(chosen).ids;
    out.selected_weight = Rational(0);
    for (const auto& m : chosen) out.selected_weight += m.weight;
    return out;
}

}  // namespace

Selection select_messages(const std::vector<Message>& messages, const Rational& period,
                          SelectObjective objective, int max_items) {
    std::set<int> ids;
    for (const auto& m : messages) {
        if (m.weight <= Rational(0)) {
            throw SchemaError("message " + std::to_string(m.id) + ": weight must be positive");
        }
        if (!ids.insert(m.id).second) {
            throw SchemaError("duplicate message id " + std::to_string(m.id));
        }
    }

    std::set<int> selected;
    switch (objective) {
        case SelectObjective::Count: {
            // Taking messages lightest-first is exact for maximum cardinality.
            Rational load(0);
            for (const int id : swf_order(messages).ids) {
                const Message& m = message_by_id(messages, id);
                if (load + m.weight <= period) {
                    load += m.weight;
                    selected.insert(id);
                }
            }
            break;
        }
        case SelectObjective::Importance: {
            if (static_cast<int>(messages.size()) > max_items) {
                throw SizeLimitError("importance selection limited to " +
                                     std::to_string(max_items) + " messages");
            }
            Rational best(-1);
            std::set<int> best_set;
            const int n = static_cast<int>(messages.size());
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                Rational load(0);
                Rational value(0);
                std::set<int> members;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    if (!(mask & (1u << i))) continue;
                    load += messages[i].weight;
                    if (load > period) ok = false;
                    value += messages[i].importance.value_or(Rational(0));
                    members.insert(messages[i].id);
                }
                if (ok && (value > best ||
                           (value == best && members.size() > best_set.size()) ||
                           (value == best && members.size() == best_set.size() &&
                            members < best_set))) {
                    best = value;
                    best_set = members;
                }
            }
            selected = best_set;
            break;
        }
        case SelectObjective::Estimate: {
            std::vector<msepack::MseItem> items;
            for (const auto& m : messages) {
                msepack::MseItem item;
                item.id = m.id;
                item.weight = m.weight;
                item.estimate = m.estimate;
                items.push_back(std::move(item));
            }
            const msepack::MseSolution sol = knapsack_mse(
                items, period, msepack::Objective::Integrated,
                msepack::SearchLimits{max_items, max_items, 1});
            for (const int id : sol.selected_ids()) selected.insert(id);
            break;
        }
    }

    Selection out = selection_from_ids(messages, selected);
    if (objective == SelectObjective::Importance) {
        Rational total(0);
        for (const int id : out.selected_ids) {
            total += message_by_id(messages, id).importance.value_or(Rational(0));
        }
        out.importance_total = total;
    }
    if (objective == SelectObjective::Estimate && !out.selected_ids.empty()) {
        std::vector<mse::MsEstimate> members;
        for (const int id : out.selected_ids) {
            members.push_back(*message_by_id(messages, id).estimate);
        }
        out.estimate = mse::integrate(members);
    }
    return out;
}

std::vector<CountAgePoint> select_messages_front(const std::vector<Message>& messages,
                                                 const Rational& period, int max_items) {
    const int n = static_cast<int>(messages.size());
    if (n > max_items) {
        throw SizeLimitError("front selection limited to " + std::to_string(max_items) +
                             " messages");
    }
    struct Point {
        int cardinality;
        int total_age;
        std::set<int> members;
    };
    std::vector<Point> front;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Rational load(0);
        bool ok = true;
        Point p{0, 0, {}};
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            load += messages[i].weight;
            if (load > period) ok = false;
            ++p.cardinality;
            p.total_age += messages[i].wait_age;
            p.members.insert(messages[i].id);
        }
        if (!ok) continue;
        bool dominated = false;
        for (auto it = front.begin(); it != front.end();) {
            const bool it_geq = it->cardinality >= p.cardinality && it->total_age >= p.total_age;
            const bool p_geq = p.cardinality >= it->cardinality && p.total_age >= it->total_age;
            if (it_geq && p_geq) {  // same objective point
                if (p.members < it->members) it->members = p.members;
                dominated = true;
                break;
            }
            if (it_geq) {
                dominated = true;
                break;
            }
            if (p_geq) {
                it = front.erase(it);
            } else {
                ++it;
            }
        }
        if (!dominated) front.push_back(std::move(p));
    }
    std::sort(front.begin(), front.end(), [](const Point& a, const Point& b) {
        if (a.cardinality != b.cardinality) return a.cardinality > b.cardinality;
        return a.total_age > b.total_age;
    });
    std::vector<CountAgePoint> out;
    for (const auto& p : front) {
        CountAgePoint point;
        point.cardinality = p.cardinality;
        point.total_age = p.total_age;
        point.selection = selection_from_ids(messages, p.members);
        out.push_back(std::move(point));
    }
    return out;
}

LayeredAssignment pareto_layer_assign(const std::vector<Message>& messages,
                                      const Rational& period) {
    LayeredAssignment out;
    out.capacity_left = period;
    std::vector<Message> pool = messages;
    while (!pool.empty()) {
        // Pairwise dominance: lighter and at least as old (or as light and
        // older) pushes an item out of the current layer.
        std::vector<Message> layer_members;
        std::vector<Message> rest;
        for (const auto& candidate : pool) {
            bool dominated = false;
            for (const auto& other : pool) {
                if (other.id == candidate.id) continue;
                const bool geq = other.weight <= candidate.weight &&
                                 other.wait_age >= candidate.wait_age;
                const bool strict = other.weight < candidate.weight ||
                                    other.wait_age > candidate.wait_age;
                if (geq && strict) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : layer_members).push_back(candidate);
        }
        Layer layer;
        for (const int id : swf_order(layer_members).ids) {
            layer.member_ids.push_back(id);
            const Message& m = message_by_id(layer_members, id);
            if (m.weight <= out.capacity_left) {
                out.capacity_left -= m.weight;
                layer.assigned_ids.push_back(id);
                out.assigned_ids.push_back(id);
            }
        }
        out.layers.push_back(std::move(layer));
        pool = std::move(rest);
    }
    return out;
}

std::vector<Selection> simulate_periods(std::vector<Message> messages, const Rational& period,
                                        int periods, SelectObjective objective, int max_items) {
    std::vector<Selection> history;
    for (int p = 0; p < periods && !messages.empty(); ++p) {
        Selection s = select_messages(messages, period, objective, max_items);
        messages = s.waiting;
        history.push_back(std::move(s));
    }
    return history;
}

}  // namespace multibin::pipeline
