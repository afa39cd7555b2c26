// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Every tolerance here is exact.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "multibin/cli.hpp"
#include "multibin/coloring.hpp"
#include "multibin/io.hpp"
#include "multibin/mse.hpp"
#include "multibin/mse_packing.hpp"
#include "multibin/oracle.hpp"
#include "multibin/pipelines.hpp"
#include "multibin/relations.hpp"

using namespace multibin;
using mse::MsEstimate;
using mse::Ordering;

namespace {

struct Suite {
    int failures = 0;

    void criterion(int number, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
        if (!detail.empty()) std::cout << " [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

MsEstimate est(int l, std::vector<int> counts) { return MsEstimate(l, std::move(counts)); }

std::vector<MsEstimate> printed_scale() {
    return {est(3, {3, 0, 0}), est(3, {2, 1, 0}), est(3, {1, 2, 0}), est(3, {0, 3, 0}),
            est(3, {1, 1, 1}), est(3, {0, 2, 1}), est(3, {0, 1, 2}), est(3, {0, 0, 3})};
}

bpp::PackInstance random_pack(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> hundredths(1, 100);
    bpp::PackInstance inst;
    inst.capacity = Rational(1);
    for (int i = 0; i < n; ++i) inst.items.push_back({i + 1, Rational(hundredths(rng), 100)});
    return inst;
}

std::vector<msepack::MseItem> random_mse_items(std::mt19937& rng, int n) {
    const auto scale = mse::enumerate_scale(3, 2);
    std::uniform_int_distribution<std::size_t> pick(0, scale.size() - 1);
    std::uniform_int_distribution<int> hundredths(5, 60);
    std::vector<msepack::MseItem> items;
    for (int i = 0; i < n; ++i) {
        msepack::MseItem m;
        m.id = i + 1;
        m.weight = Rational(hundredths(rng), 100);
        m.estimate = scale[pick(rng)];
        items.push_back(std::move(m));
    }
    return items;
}

}  // namespace

int main() {
    const auto started = std::chrono::steady_clock::now();
    Suite suite;

    suite.criterion(1, "scale enumeration matches the printed eight estimates",
                    [](std::string& detail) {
        const auto scale = mse::enumerate_scale(3, 3);
        const auto printed = printed_scale();
        if (scale.size() != 8) return false;
        for (std::size_t i = 0; i < 8; ++i) {
            if (!(scale[i] == printed[i])) return false;
        }
        std::set<std::vector<int>> excluded;
        for (const auto& m : oracle::all_multisets(3, 3)) {
            if (!m.is_interval()) excluded.insert(m.counts());
        }
        // the two excluded cardinality-3 multisets, {1,1,3} and {1,3,3}; the
        // printed "(2,0,2)" has cardinality 4 and can only mean (2,0,1)
        detail = "excluded: (2,0,1) and (1,0,2)";
        return excluded == std::set<std::vector<int>>{{2, 0, 1}, {1, 0, 2}};
    });

    suite.criterion(2, "dominance reproduces the printed poset (28 pairs)", [](std::string&) {
        const auto e = printed_scale();
        const std::vector<std::pair<int, int>> hasse = {{1, 2}, {2, 3}, {3, 4}, {4, 6},
                                                        {6, 7}, {7, 8}, {3, 5}, {5, 6}};
        bool better[9][9] = {};
        for (const auto& [a, b] : hasse) better[a][b] = true;
        for (int k = 1; k <= 8; ++k) {
            for (int i = 1; i <= 8; ++i) {
                for (int j = 1; j <= 8; ++j) {
                    if (better[i][k] && better[k][j]) better[i][j] = true;
                }
            }
        }
        int checked = 0;
        for (int i = 1; i <= 8; ++i) {
            for (int j = i + 1; j <= 8; ++j) {
                const Ordering got = mse::compare(e[i - 1], e[j - 1]);
                const Ordering expected = better[i][j]   ? Ordering::Better
                                          : better[j][i] ? Ordering::Worse
                                                         : Ordering::Incomparable;
                if (got != expected) return false;
                ++checked;
            }
        }
        return checked == 28;
    });

    suite.criterion(3, "proximity equals BFS distance with the signed split", [](std::string&) {
        for (const auto& [l, eta] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}}) {
            const auto multisets = oracle::all_multisets(l, eta);
            for (const auto& a : multisets) {
                for (const auto& b : multisets) {
                    const mse::Proximity p = mse::proximity(a, b);
                    if (p.total() != oracle::proximity_bfs(a, b)) return false;
                    // independent signed recomputation over sorted elements
                    const auto ea = a.sorted_elements();
                    const auto eb = b.sorted_elements();
                    int minus = 0;
                    int plus = 0;
                    for (std::size_t i = 0; i < ea.size(); ++i) {
                        if (eb[i] > ea[i]) plus += eb[i] - ea[i];
                        if (ea[i] > eb[i]) minus += ea[i] - eb[i];
                    }
                    if (p.delta_minus != minus || p.delta_plus != plus) return false;
                }
            }
        }
        return true;
    });

    suite.criterion(4, "generalized median matches the exhaustive scan (50 sets)",
                    [](std::string&) {
        std::mt19937 rng(20240901);
        const auto scale = mse::enumerate_scale(3, 3);
        std::uniform_int_distribution<std::size_t> pick(0, scale.size() - 1);
        std::uniform_int_distribution<int> size(1, 6);
        for (int round = 0; round < 50; ++round) {
            std::vector<MsEstimate> estimates;
            const int n = size(rng);
            for (int i = 0; i < n; ++i) estimates.push_back(scale[pick(rng)]);
            const MsEstimate mine = mse::generalized_median(estimates);
            const MsEstimate scan = oracle::generalized_median_scan(estimates);
            if (mse::total_proximity(mine, estimates) !=
                oracle::median_total_bfs(scan, estimates)) {
                return false;
            }
        }
        return true;
    });

    suite.criterion(5, "the drawn five-vertex graph: six 3-colorings, chi = 3",
                    [](std::string&) {
        const auto instance = io::parse_instance(io::fixture("fig12_graph").text);
        const coloring::Graph& g = instance.graph().graph;
        return coloring::count_proper_colorings(g, 3) == 6 &&
               coloring::chromatic_coloring(g).colors_used == 3;
    });

    suite.criterion(6, "compatibility coloring: printed quality vectors and the full front",
                    [](std::string& detail) {
        const auto instance = io::parse_instance(io::fixture("fig13_compat_coloring").text);
        const io::GraphPayload& payload = instance.graph();
        const auto first = coloring::evaluate_configuration(
            *payload.compat, payload.configuration_choice(payload.printed_configurations[0]));
        const auto second = coloring::evaluate_configuration(
            *payload.compat, payload.configuration_choice(payload.printed_configurations[1]));
        if (first.str() != "(4;1,3,0)" || second.str() != "(2;3,1,0)") return false;

        std::uint64_t configurations = 1;
        for (const auto& c : payload.compat->candidates) configurations *= c.size();
        if (configurations != 625) return false;

        std::set<std::string> got;
        for (const auto& s : coloring::compat_coloring_pareto(*payload.compat)) {
            got.insert(s.quality.str());
        }
        std::set<std::string> expected;
        for (const auto& q : oracle::compat_front_enumeration(*payload.compat)) {
            expected.insert(q.str());
        }
        std::ostringstream os;
        os << "front:";
        for (const auto& q : got) os << ' ' << q;
        detail = os.str();
        return got == expected;
    });

    suite.criterion(7, "partition coloring: printed 2-colorings feasible, solver optimal",
                    [](std::string& detail) {
        const auto instance = io::parse_instance(io::fixture("fig15_partition").text);
        const io::GraphPayload& payload = instance.graph();
        // the fixture's printed solutions are feasible proper 2-colorings
        if (payload.printed_partition_solutions.size() != 2) return false;
        for (const auto& printed : payload.printed_partition_solutions) {
            std::vector<int> vertices;
            std::vector<int> colors;
            for (const auto& [name, color] : printed) {
                vertices.push_back(payload.vertex_index(name));
                colors.push_back(color);
            }
            if (!payload.graph.induced(vertices).proper(colors)) return false;
            if (*std::max_element(colors.begin(), colors.end()) != 2) return false;
        }
        // the solver's own result is optimal per transversal enumeration and
        // within the printed two colors
        const auto result = coloring::partition_coloring(payload.graph, *payload.parts);
        const int best = oracle::partition_chromatic_enumeration(payload.graph, *payload.parts);
        std::ostringstream os;
        os << "printed solutions use 2 colors; solver optimum is " << result.colors_used
           << " (the drawn edge set admits an independent transversal)";
        detail = os.str();
        return result.colors_used == best && result.colors_used <= 2 &&
               payload.graph.induced(result.representatives).proper(result.coloring);
    });

    suite.criterion(8, "production plan reproduces the printed partition; machine 3 reorders"
                       " to cost 2",
                    [](std::string&) {
        const auto instance = io::parse_instance(io::fixture("table13_production").text);
        const io::ProductionPayload& prod = instance.production();
        const auto plan = pipeline::plan_paper(prod.items, prod.color_changes, prod.bar_width,
                                               prod.period_length, prod.machines);
        if (plan.general_items.size() != 8) return false;
        std::map<std::string, std::set<int>> printed;
        for (const auto& [id, label] : prod.printed_general_item) printed[label].insert(id);
        std::set<std::set<int>> expected;
        for (const auto& [label, ids] : printed) expected.insert(ids);
        std::set<std::set<int>> got;
        std::map<std::set<int>, int> widths;
        for (const auto& gi : plan.general_items) {
            const auto ids = gi.member_ids();
            const std::set<int> key(ids.begin(), ids.end());
            got.insert(key);
            widths[key] = gi.width();
        }
        if (got != expected) return false;
        // printed width checks: I = 19, VI/VII = 19/18, VIII = 20
        if (widths.at({1, 2, 3, 4}) != 19) return false;
        if (widths.at({18, 19}) != 19) return false;
        if (widths.at({20, 21, 22}) != 18) return false;
        if (widths.at({23, 24, 25}) != 20) return false;

        // machine 3 as printed: VI, VII (col3) and VIII (col7)
        std::vector<pipeline::GeneralItem> machine3;
        for (const auto& gi : plan.general_items) {
            const int machine = prod.printed_machine.at(gi.member_ids().front());
            if (machine == 3) machine3.push_back(gi);
        }
        const auto ordered = pipeline::order_colors(machine3, prod.color_changes);
        const int printed_cost = prod.color_changes.change_cost("col3", "col3") +
                                 prod.color_changes.change_cost("col3", "col7");
        // all-permutation verification
        const int n = static_cast<int>(machine3.size());
        std::vector<std::vector<int>> cost(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) {
                    cost[i][j] = prod.color_changes.change_cost(machine3[i].color,
                                                                machine3[j].color);
                }
            }
        }
        return ordered.total_cost == 2 && printed_cost == 3 &&
               oracle::path_cost_enumeration(cost, {}) == 2;
    });

    suite.criterion(9, "solver/oracle equivalence on 50 random seeds per model",
                    [](std::string& detail) {
        const auto begin = std::chrono::steady_clock::now();
        std::mt19937 rng(424242);
        std::uniform_int_distribution<int> n_dist(1, 10);
        std::uniform_int_distribution<int> small_n_dist(1, 8);
        std::uniform_int_distribution<int> k_dist(1, 3);
        std::uniform_int_distribution<int> profit(1, 9);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        const msepack::SearchLimits limits{20, 12, 4};

        for (int seed = 0; seed < 50; ++seed) {
            // classic exact packing
            {
                const auto inst = random_pack(rng, n_dist(rng));
                if (bpp::exact_min_bins(inst).bins_used() != oracle::min_bins_partition(inst)) {
                    detail = "exact_min_bins";
                    return false;
                }
            }
            // conflict packing
            {
                const auto inst = random_pack(rng, small_n_dist(rng));
                std::set<rel::ItemPair> edges;
                for (std::size_t i = 1; i <= inst.items.size(); ++i) {
                    for (std::size_t j = i + 1; j <= inst.items.size(); ++j) {
                        if (coin(rng) < 0.3) {
                            edges.insert({static_cast<int>(i), static_cast<int>(j)});
                        }
                    }
                }
                const rel::ConflictGraph graph(edges);
                if (rel::conflict_pack(inst, graph, rel::SolveMode::Exact).bins_used() !=
                    oracle::min_bins_partition_conflicts(inst, graph)) {
                    detail = "conflict_pack";
                    return false;
                }
            }
            // profit-based inverse packing
            {
                auto inst = random_pack(rng, small_n_dist(rng));
                inst.max_bins = k_dist(rng);
                std::map<int, Rational> profits;
                for (const auto& item : inst.items) profits[item.id] = Rational(profit(rng));
                const auto mine = rel::inverse_pack(inst, profits, rel::SolveMode::Exact);
                if (rel::profit_of(mine, profits) !=
                    oracle::max_profit_enumeration(inst, profits)) {
                    detail = "inverse_pack";
                    return false;
                }
            }
            // knapsack with estimates
            {
                msepack::MseInstance inst;
                inst.items = random_mse_items(rng, n_dist(rng));
                inst.capacity = Rational(1);
                const auto objective =
                    seed % 2 == 0 ? msepack::Objective::Integrated : msepack::Objective::Median;
                const auto mine = msepack::knapsack_mse(inst.items, inst.capacity, objective,
                                                        limits);
                if (!oracle::is_maximal(msepack::ModelKind::Knapsack, inst, objective, mine)) {
                    detail = "knapsack_mse";
                    return false;
                }
            }
            // one item per group
            {
                msepack::MseInstance inst;
                inst.items = random_mse_items(rng, 9);
                for (int i = 0; i < 9; ++i) inst.items[i].group = i / 3 + 1;
                inst.capacity = Rational(3, 2);
                try {
                    const auto mine = msepack::multiple_choice_mse(inst.items, inst.capacity,
                                                                   msepack::Objective::Median,
                                                                   limits);
                    if (!oracle::is_maximal(msepack::ModelKind::MultipleChoice, inst,
                                            msepack::Objective::Median, mine)) {
                        detail = "multiple_choice_mse";
                        return false;
                    }
                } catch (const InfeasibleError&) {
                    if (!oracle::enumerate_feasible(msepack::ModelKind::MultipleChoice, inst)
                             .empty()) {
                        detail = "multiple_choice_mse infeasibility";
                        return false;
                    }
                }
            }
            // multiple knapsack
            {
                msepack::MseInstance inst;
                inst.items = random_mse_items(rng, small_n_dist(rng));
                const int k = k_dist(rng);
                for (int b = 0; b < k; ++b) {
                    inst.capacities.push_back(Rational(50 + b * 25, 100));
                }
                const auto mine = msepack::multiple_knapsack_mse(
                    inst.items, inst.capacities, msepack::Objective::Integrated, limits);
                if (!oracle::is_maximal(msepack::ModelKind::MultipleKnapsack, inst,
                                        msepack::Objective::Integrated, mine)) {
                    detail = "multiple_knapsack_mse";
                    return false;
                }
            }
            // generalized assignment, scalar and estimate objectives
            {
                msepack::MseInstance inst;
                const int k = k_dist(rng);
                const auto scale = mse::enumerate_scale(3, 2);
                std::uniform_int_distribution<std::size_t> pick(0, scale.size() - 1);
                std::uniform_int_distribution<int> hundredths(10, 70);
                for (int i = 0; i < 5; ++i) {
                    msepack::MseItem m;
                    m.id = i + 1;
                    m.weight = Rational(hundredths(rng), 100);
                    for (int b = 1; b <= k; ++b) {
                        m.position_profits[b] = Rational(profit(rng));
                        m.position_estimates.emplace(b, scale[pick(rng)]);
                    }
                    inst.items.push_back(std::move(m));
                }
                for (int b = 0; b < k; ++b) inst.capacities.push_back(Rational(1));
                inst.assign_mode = msepack::AssignMode::AllowPartial;
                const auto scalar = msepack::generalized_assignment_mse(
                    inst.items, inst.capacities, msepack::Objective::Scalar, inst.assign_mode,
                    limits);
                if (*scalar.objective_value !=
                    oracle::best_scalar(msepack::ModelKind::Assignment, inst)) {
                    detail = "generalized_assignment_mse scalar";
                    return false;
                }
                const auto poset = msepack::generalized_assignment_mse(
                    inst.items, inst.capacities, msepack::Objective::Integrated,
                    inst.assign_mode, limits);
                if (!oracle::is_maximal(msepack::ModelKind::Assignment, inst,
                                        msepack::Objective::Integrated, poset)) {
                    detail = "generalized_assignment_mse estimate";
                    return false;
                }
            }
            // inverse packing with estimates
            {
                msepack::MseInstance inst;
                inst.items = random_mse_items(rng, small_n_dist(rng));
                inst.capacity = Rational(1);
                inst.bins = k_dist(rng);
                const auto mine = msepack::inverse_bpp_mse(
                    inst.items, inst.bins, inst.capacity, msepack::Objective::Integrated,
                    limits);
                if (!oracle::is_maximal(msepack::ModelKind::InverseBpp, inst,
                                        msepack::Objective::Integrated, mine)) {
                    detail = "inverse_bpp_mse";
                    return false;
                }
            }
            // conflict-constrained inverse packing
            {
                msepack::MseInstance inst;
                inst.items = random_mse_items(rng, small_n_dist(rng));
                inst.capacity = Rational(1);
                inst.bins = k_dist(rng);
                for (std::size_t i = 1; i <= inst.items.size(); ++i) {
                    for (std::size_t j = i + 1; j <= inst.items.size(); ++j) {
                        if (coin(rng) < 0.3) {
                            inst.conflicts.insert({static_cast<int>(i), static_cast<int>(j)});
                        }
                    }
                }
                const auto mine = msepack::conflict_inverse_mse(
                    inst.items, inst.bins, inst.capacity, rel::ConflictGraph(inst.conflicts),
                    msepack::Objective::Integrated, limits);
                if (!oracle::is_maximal(msepack::ModelKind::ConflictInverse, inst,
                                        msepack::Objective::Integrated, mine)) {
                    detail = "conflict_inverse_mse";
                    return false;
                }
            }
            // bi-objective front
            {
                msepack::MseInstance inst;
                inst.items = random_mse_items(rng, small_n_dist(rng));
                inst.capacity = Rational(1);
                inst.bins = k_dist(rng);
                const auto kind = seed % 2 == 0 ? msepack::ModelKind::Knapsack
                                                : msepack::ModelKind::InverseBpp;
                const auto front = msepack::pareto_front_biobjective(
                    kind, inst, msepack::Objective::Integrated, limits);
                std::set<std::pair<std::string, int>> got;
                for (const auto& s : front) {
                    got.insert({s.objective_estimate->str(), s.cardinality});
                }
                if (got != oracle::front_points(kind, inst, msepack::Objective::Integrated)) {
                    detail = "pareto_front_biobjective";
                    return false;
                }
            }
        }
        const auto elapsed = std::chrono::steady_clock::now() - begin;
        const auto seconds =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() / 1000.0;
        std::ostringstream os;
        os << "50 seeds x 10 models in " << seconds << "s";
        detail = os.str();
        return seconds < 60.0;
    });

    suite.criterion(10, "heuristics are feasible and near the exact optimum", [](std::string&) {
        std::mt19937 rng(777777);
        std::uniform_int_distribution<int> n_dist(1, 10);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (int seed = 0; seed < 50; ++seed) {
            const auto inst = random_pack(rng, n_dist(rng));
            const int exact = bpp::exact_min_bins(inst).bins_used();
            for (const auto policy :
                 {bpp::FitPolicy::NextFit, bpp::FitPolicy::FirstFit, bpp::FitPolicy::BestFit,
                  bpp::FitPolicy::WorstFit}) {
                for (const auto order : {bpp::ItemOrder::AsGiven, bpp::ItemOrder::Decreasing}) {
                    const auto sol = bpp::fit_pack(inst, policy, order);
                    if (!bpp::validate(inst, sol).ok()) return false;
                    if (!rel::check_constraints(inst, rel::RelationSet{}, sol).empty()) {
                        return false;
                    }
                    if (sol.bins_used() < bpp::lower_bound(inst)) return false;
                    if (policy == bpp::FitPolicy::FirstFit &&
                        order == bpp::ItemOrder::Decreasing && sol.bins_used() > exact + 2) {
                        return false;
                    }
                }
            }
            // conflict-aware greedy stays conflict-free
            std::set<rel::ItemPair> edges;
            rel::RelationSet relations;
            for (std::size_t i = 1; i <= inst.items.size(); ++i) {
                for (std::size_t j = i + 1; j <= inst.items.size(); ++j) {
                    if (coin(rng) < 0.3) {
                        edges.insert({static_cast<int>(i), static_cast<int>(j)});
                        relations.add_conflict(static_cast<int>(i), static_cast<int>(j));
                    }
                }
            }
            const auto greedy =
                rel::conflict_pack(inst, rel::ConflictGraph(edges), rel::SolveMode::Greedy);
            if (!bpp::validate(inst, greedy).ok()) return false;
            if (!rel::check_constraints(inst, relations, greedy).empty()) return false;
        }
        return true;
    });

    suite.criterion(11, "message scheduling: SWF optimality, layers, aging", [](std::string&) {
        // the printed formula value
        if (pipeline::mean_completion({Rational(1), Rational(2), Rational(3)}) !=
            Rational(10, 3)) {
            return false;
        }
        std::mt19937 rng(999);
        std::uniform_int_distribution<int> weight(1, 12);
        std::uniform_int_distribution<int> age(0, 5);
        for (int seed = 0; seed < 25; ++seed) {
            const int n = 1 + seed % 8;
            std::vector<pipeline::Message> messages;
            std::vector<Rational> weights;
            for (int i = 0; i < n; ++i) {
                pipeline::Message m;
                m.id = i + 1;
                m.weight = Rational(weight(rng));
                m.wait_age = age(rng);
                messages.push_back(m);
                weights.push_back(m.weight);
            }
            if (pipeline::mean_completion(pipeline::swf_order(messages)) !=
                oracle::best_mean_completion_enumeration(weights)) {
                return false;
            }
            const auto layered = pipeline::pareto_layer_assign(messages, Rational(20));
            std::set<int> seen;
            for (const auto& layer : layered.layers) {
                for (const int id : layer.member_ids) {
                    if (!seen.insert(id).second) return false;
                }
                // mutual non-dominance inside the layer
                for (const int a : layer.member_ids) {
                    for (const int b : layer.member_ids) {
                        if (a == b) continue;
                        const auto& ma = messages[a - 1];
                        const auto& mb = messages[b - 1];
                        const bool dominates =
                            ma.weight <= mb.weight && ma.wait_age >= mb.wait_age &&
                            (ma.weight < mb.weight || ma.wait_age > mb.wait_age);
                        if (dominates) return false;
                    }
                }
            }
            if (seen.size() != messages.size()) return false;
        }
        // five-period aging: one message leaves per period, the rest age
        std::vector<pipeline::Message> queue;
        for (int i = 0; i < 6; ++i) {
            pipeline::Message m;
            m.id = i + 1;
            m.weight = Rational(6, 10);
            queue.push_back(m);
        }
        const auto history = pipeline::simulate_periods(queue, Rational(1), 5,
                                                        pipeline::SelectObjective::Count);
        if (history.size() != 5) return false;
        for (std::size_t p = 0; p < history.size(); ++p) {
            if (history[p].selected_ids.size() != 1) return false;
            if (history[p].waiting.size() != queue.size() - p - 1) return false;
            for (const auto& waiter : history[p].waiting) {
                if (waiter.wait_age != static_cast<int>(p) + 1) return false;
            }
        }
        return true;
    });

    suite.criterion(12, "fixtures round-trip; machine reports are byte-identical",
                    [](std::string&) {
        for (const auto& fixture : io::fixtures()) {
            const auto first = io::parse_instance(fixture.text);
            const auto canonical = io::emit_instance(first);
            const auto second = io::parse_instance(canonical.dump());
            if (io::emit_instance(second) != canonical) return false;
        }
        const std::vector<std::vector<std::string>> commands = {
            {"scale", "--l", "3", "--eta", "3", "--format", "machine"},
            {"pack", "--fixture", "fig11_colored_pack", "--algo", "ffd", "--format", "machine"},
            {"solve", "knapsack-mse", "--fixture", "mse_knapsack_demo", "--format", "machine",
             "--oracle"},
            {"color", "compat-pareto", "--fixture", "fig13_compat_coloring", "--format",
             "machine"},
            {"partition-color", "--fixture", "fig15_partition", "--format", "machine"},
            {"pipeline", "paper", "--fixture", "table13_production", "--format", "machine"},
        };
        for (const auto& argv : commands) {
            std::ostringstream out_a;
            std::ostringstream out_b;
            std::ostringstream err;
            if (cli::run_command(argv, out_a, err) != 0) return false;
            if (cli::run_command(argv, out_b, err) != 0) return false;
            if (out_a.str() != out_b.str() || out_a.str().empty()) return false;
        }
        return true;
    });

    const auto elapsed = std::chrono::steady_clock::now() - started;
    std::cout << (suite.failures == 0 ? "all criteria passed" : "criteria failed") << " ("
              << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() / 1000.0
              << "s)\n";
    return suite.failures;
}
