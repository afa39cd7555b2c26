#ifndef MULTIBIN_PIPELINES_HPP_
#define MULTIBIN_PIPELINES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "multibin/mse.hpp"
#include "multibin/mse_packing.hpp"
#include "multibin/rational.hpp"

namespace multibin::pipeline {

// --- paper production planning ---------------------------------------------

struct ProductionItem {
    int id = 0;
    int width = 0;
    int length = 0;
    std::string color;
};

// Directed ordinal color-change costs; asymmetry is meaningful and kept.
struct ColorChangeTable {
    std::vector<std::string> colors;
    std::vector<std::vector<int>> cost;

    int change_cost(const std::string& from, const std::string& to) const;
    void check() const;
};

// Items of one color sharing equal length can run side by side in one lane;
// the lane is as wide as its widest member and as long as their lengths
// combined.
struct Lane {
    std::vector<int> item_ids;
    int width = 0;
    int length = 0;
};

// Width-bounded bundle of same-color lanes, scheduled as one unit.
struct GeneralItem {
    int index = 0;  // 1-based formation order
    std::string color;
    std::vector<Lane> lanes;

    int width() const;
    int duration() const;  // max lane length
    std::vector<int> member_ids() const;
};

std::vector<std::pair<std::string, std::vector<ProductionItem>>> group_by_color(
    const std::vector<ProductionItem>& items);

// Lanes packed into width-W general items by first-fit-decreasing. Equal
// length items merge into a shared lane only when the merge reduces the
// number of general items.
std::vector<GeneralItem> form_general_items(const std::vector<ProductionItem>& group,
                                            int bar_width);

struct MachinePeriod {
    int machine = 0;  // 1-based
    int period = 0;   // 1-based
    std::vector<int> sequence;  // general-item indices, scheduling order
    int load = 0;               // total duration
    int change_cost = 0;        // color changes inside the slot
};

// First-fit-decreasing by duration over machine-period slots ordered period
// by period, machine by machine.
std::vector<MachinePeriod> pack_periods(const std::vector<GeneralItem>& general_items,
                                        int machines, int period_length);

struct OrderedSequence {
    std::vector<int> order;  // positions into the input sequence
    int total_cost = 0;
};

// Exact minimum-cost open path over the sequence with color-change edge
// costs; ties resolved to the lexicographically smallest position sequence.
// start_color charges an initial change from that color.
OrderedSequence order_colors(const std::vector<GeneralItem>& sequence,
                             const ColorChangeTable& table,
                             const std::optional<std::string>& start_color = {},
                             int max_items = 12);

struct Plan {
    std::vector<GeneralItem> general_items;
    std::vector<MachinePeriod> slots;  // ordered by (period, machine)
    int total_change_cost = 0;
    long long used_area = 0;        // sum of item width*length
    long long bar_area = 0;         // bar width * duration over general items
    long long unused_bar_area = 0;  // bar_area - used_area
    long long idle_time = 0;        // unused duration in occupied slots
};

// The four-stage scheme: group by color, form general items, pack
// machine-period slots, order each slot by color-change cost (each slot
// seeded with the previous slot's last color on that machine).
Plan plan_paper(const std::vector<ProductionItem>& items, const ColorChangeTable& table,
                int bar_width, int period_length, int machines);

// --- message selection -------------------------------------------------------

struct Message {
    int id = 0;
    Rational weight;  // processing time
    int wait_age = 0;
    std::optional<Rational> importance;
    std::optional<mse::MsEstimate> estimate;
};

struct Schedule {
    std::vector<int> ids;                // processing order
    std::vector<Rational> completions;   // prefix sums per position
};

// Smallest weight first, ties by id; optimal for mean completion time.
Schedule swf_order(const std::vector<Message>& messages);

std::vector<Rational> completion_times(const std::vector<Rational>& weights_in_order);
Rational mean_completion(const std::vector<Rational>& weights_in_order);
Rational mean_completion(const Schedule& schedule);

enum class SelectObjective { Count, Importance, Estimate };

struct Selection {
    std::vector<int> selected_ids;       // SWF order
    std::vector<Message> waiting;        // wait ages already incremented
    Rational selected_weight;
    std::optional<Rational> importance_total;
    std::optional<mse::MsEstimate> estimate;
};

// One period of channel time T. Count maximizes cardinality (smallest
// weight first is exact); Importance maximizes total importance; Estimate
// delegates to the knapsack model with the integrated objective.
Selection select_messages(const std::vector<Message>& messages, const Rational& period,
                          SelectObjective objective, int max_items = 15);

struct CountAgePoint {
    Selection selection;
    int cardinality = 0;
    int total_age = 0;
};

// Full Pareto front over (cardinality, total wait age), both maximized.
std::vector<CountAgePoint> select_messages_front(const std::vector<Message>& messages,
                                                 const Rational& period, int max_items = 15);

struct Layer {
    std::vector<int> member_ids;    // the Pareto layer, SWF order
    std::vector<int> assigned_ids;  // members that fit the remaining capacity
};

struct LayeredAssignment {
    std::vector<Layer> layers;
    std::vector<int> assigned_ids;
    Rational capacity_left;
};

// Iteratively strips the layer of items Pareto-efficient by (minimal weight,
// maximal wait age) and assigns it smallest-weight-first while capacity
// remains.
LayeredAssignment pareto_layer_assign(const std::vector<Message>& messages,
                                      const Rational& period);

// Repeated selection periods: selected messages leave, waiting ones age.
std::vector<Selection> simulate_periods(std::vector<Message> messages, const Rational& period,
                                        int periods, SelectObjective objective,
                                        int max_items = 15);

}  // namespace multibin::pipeline

#endif
