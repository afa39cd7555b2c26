#include <doctest.h>

#include <random>

#include "multibin/errors.hpp"
#include "multibin/io.hpp"
#include "multibin/oracle.hpp"
#include "multibin/relations.hpp"

using namespace multibin;
using bpp::PackInstance;
using bpp::PackSolution;
using rel::ConflictGraph;
using rel::RelationSet;
using rel::SolveMode;

namespace {

PackInstance six_items() {
    PackInstance inst;
    inst.capacity = Rational(44);
    const std::vector<int> widths = {12, 13, 20, 15, 21, 34};
    for (int i = 0; i < 6; ++i) inst.items.push_back({i + 1, Rational(widths[i])});
    inst.max_bins = 4;
    return inst;
}

// The precedence drawing: 1->2, 1->5, 2->4, 3->5, 5->4, 4->6.
std::vector<rel::ItemPair> drawn_precedence() {
    return {{1, 2}, {1, 5}, {2, 4}, {3, 5}, {5, 4}, {4, 6}};
}

PackInstance random_instance(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> hundredths(1, 100);
    PackInstance inst;
    inst.capacity = Rational(1);
    for (int i = 0; i < n; ++i) inst.items.push_back({i + 1, Rational(hundredths(rng), 100)});
    return inst;
}

}  // namespace

TEST_CASE("empty relations never flag a valid solution") {
    const PackInstance inst = six_items();
    const PackSolution sol{{{1, 2}, {3, 4}, {5}, {6}}, {}};
    CHECK(rel::check_constraints(inst, RelationSet{}, sol).empty());
}

TEST_CASE("conflicting items sharing a bin are flagged") {
    const PackInstance inst = six_items();
    RelationSet relations;
    relations.add_conflict(1, 2);  // the first printed conflict entry
    const auto violations = rel::check_constraints(inst, relations, {{{1, 2}, {3, 4, 5, 6}}, {}});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].requirement == "conflict");
    CHECK(violations[0].item_a == 1);
    CHECK(violations[0].item_b == 2);
}

TEST_CASE("precedence violations inside a bin") {
    const PackInstance inst = six_items();
    RelationSet relations;
    relations.precedence = drawn_precedence();
    // bin stores 4 before 2 although 2 -> 4
    const auto violations =
        rel::check_constraints(inst, relations, {{{4, 2}, {1, 3, 5, 6}}, {}});
    bool found = false;
    for (const auto& v : violations) {
        if (v.requirement == "precedence" && v.item_a == 2 && v.item_b == 4) found = true;
    }
    CHECK(found);
}

TEST_CASE("precedence across bins flags backwards splits") {
    const PackInstance inst = six_items();
    RelationSet relations;
    relations.precedence = {{1, 2}};
    const auto violations =
        rel::check_constraints(inst, relations, {{{2, 3, 4, 5, 6}, {1}}, {}});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].requirement == "precedence");
}

TEST_CASE("correspondence grade zero forbids the bin") {
    const PackInstance inst = six_items();
    RelationSet relations;
    relations.correspondence[{1, 4}] = 0;  // printed grade for item 1, bin 4
    relations.correspondence[{1, 1}] = 3;
    const auto violations =
        rel::check_constraints(inst, relations, {{{2}, {3}, {4, 5}, {1, 6}}, {}});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].requirement == "correspondence");
    CHECK(violations[0].item_a == 1);
    CHECK(violations[0].bin_index == 4);
}

TEST_CASE("dominance flags a packed item whose dominator waits") {
    const PackInstance inst = six_items();
    RelationSet relations;
    relations.item_dominance = {{1, 3}};
    const auto violations = rel::check_constraints(inst, relations, {{{3}, {2}}, {1, 4, 5, 6}});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].requirement == "dominance");
    // the three permitted cases stay silent
    CHECK(rel::check_constraints(inst, relations, {{{1, 3}}, {2, 4, 5, 6}}).empty());
    CHECK(rel::check_constraints(inst, relations, {{{2}}, {1, 3, 4, 5, 6}}).empty());
    CHECK(rel::check_constraints(inst, relations, {{{1}, {2}}, {3, 4, 5, 6}}).empty());
}

TEST_CASE("compatibility grade zero forbids co-binning") {
    const PackInstance inst = six_items();
    RelationSet relations;
    relations.add_compatibility(1, 5, 0);
    relations.add_compatibility(2, 3, 1);
    const auto violations =
        rel::check_constraints(inst, relations, {{{1, 5}, {2, 3}, {4, 6}}, {}});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].requirement == "compatibility");
}

TEST_CASE("relation structure is checked") {
    RelationSet relations;
    relations.precedence = {{1, 2}, {2, 3}, {3, 1}};
    CHECK_THROWS_AS(relations.check(), SchemaError);
    RelationSet loops;
    CHECK_THROWS_AS(loops.add_conflict(2, 2), SchemaError);
    const PackInstance inst = six_items();
    RelationSet dangling;
    dangling.add_conflict(1, 9);
    CHECK_THROWS_AS(rel::check_constraints(inst, dangling, {{{1, 2, 3, 4, 5, 6}}, {}}),
                    SchemaError);
}

TEST_CASE("conflict cliques force singleton bins") {
    PackInstance inst;
    inst.capacity = Rational(1);
    for (int i = 1; i <= 3; ++i) inst.items.push_back({i, Rational(3, 10)});
    ConflictGraph clique({{1, 2}, {1, 3}, {2, 3}});
    CHECK(rel::conflict_pack(inst, clique, SolveMode::Exact).bins_used() == 3);
    CHECK(rel::conflict_pack(inst, ConflictGraph{}, SolveMode::Exact).bins_used() == 1);
}

TEST_CASE("overweight pairs join the conflict graph automatically") {
    PackInstance inst;
    inst.capacity = Rational(1);
    inst.items.push_back({1, Rational(6, 10)});
    inst.items.push_back({2, Rational(6, 10)});
    inst.items.push_back({3, Rational(1, 10)});
    const ConflictGraph graph = ConflictGraph::from_instance(inst, {});
    CHECK(graph.in_conflict(1, 2));
    CHECK_FALSE(graph.in_conflict(1, 3));
}

TEST_CASE("exact conflict packing equals the filtered partition oracle") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int round = 0; round < 50; ++round) {
        const PackInstance inst = random_instance(rng, 1 + round % 8);
        std::set<rel::ItemPair> edges;
        for (std::size_t i = 1; i <= inst.items.size(); ++i) {
            for (std::size_t j = i + 1; j <= inst.items.size(); ++j) {
                if (coin(rng) < 0.3) edges.insert({static_cast<int>(i), static_cast<int>(j)});
            }
        }
        const ConflictGraph graph(edges);
        const PackSolution exact = rel::conflict_pack(inst, graph, SolveMode::Exact);
        CHECK(exact.bins_used() == oracle::min_bins_partition_conflicts(inst, graph));

        RelationSet relations;
        for (const auto& [a, b] : edges) relations.add_conflict(a, b);
        CHECK(rel::check_constraints(inst, relations, exact).empty());

        const PackSolution greedy = rel::conflict_pack(inst, graph, SolveMode::Greedy);
        CHECK(rel::check_constraints(inst, relations, greedy).empty());
        CHECK(bpp::validate(inst, greedy).ok());
        CHECK(greedy.bins_used() >= exact.bins_used());
    }
}

TEST_CASE("exact conflict bin count is at least any greedy clique") {
    PackInstance inst;
    inst.capacity = Rational(1);
    for (int i = 1; i <= 5; ++i) inst.items.push_back({i, Rational(1, 10)});
    const ConflictGraph graph({{1, 2}, {1, 3}, {2, 3}, {3, 4}});
    // greedy clique {1,2,3}
    CHECK(rel::conflict_pack(inst, graph, SolveMode::Exact).bins_used() >= 3);
}

TEST_CASE("inverse packing maximizes cardinality and profit") {
    PackInstance inst;
    inst.capacity = Rational(1);
    inst.max_bins = 1;
    for (int i = 1; i <= 3; ++i) inst.items.push_back({i, Rational(6, 10)});
    const PackSolution unit = rel::inverse_pack(inst, {}, SolveMode::Exact);
    CHECK(unit.bins_used() == 1);
    CHECK(unit.unassigned.size() == 2);

    PackInstance weighted;
    weighted.capacity = Rational(1);
    weighted.max_bins = 1;
    weighted.items = {{1, Rational(1, 2)}, {2, Rational(1, 2)}, {3, Rational(9, 10)}};
    const std::map<int, Rational> profits = {{1, Rational(1)}, {2, Rational(1)},
                                             {3, Rational(5)}};
    const PackSolution best = rel::inverse_pack(weighted, profits, SolveMode::Exact);
    CHECK(rel::profit_of(best, profits) == Rational(5));
    CHECK(best.bins == std::vector<std::vector<int>>{{3}});
}

TEST_CASE("inverse packing equals the assignment enumeration oracle") {
    std::mt19937 rng(515151);
    std::uniform_int_distribution<int> hundredths(1, 100);
    std::uniform_int_distribution<int> profit(1, 9);
    std::uniform_int_distribution<int> bins(1, 3);
    for (int round = 0; round < 50; ++round) {
        PackInstance inst = random_instance(rng, 1 + round % 8);
        inst.max_bins = bins(rng);
        std::map<int, Rational> profits;
        for (const auto& item : inst.items) profits[item.id] = Rational(profit(rng));
        const PackSolution mine = rel::inverse_pack(inst, profits, SolveMode::Exact);
        CHECK(rel::profit_of(mine, profits) == oracle::max_profit_enumeration(inst, profits));
        CHECK(bpp::validate(inst, mine).ok());
    }
}

TEST_CASE("enough bins pack everything") {
    std::mt19937 rng(99);
    for (int round = 0; round < 10; ++round) {
        PackInstance inst = random_instance(rng, 6);
        inst.max_bins = bpp::exact_min_bins(inst).bins_used();
        const PackSolution all = rel::inverse_pack(inst, {}, SolveMode::Exact);
        CHECK(all.unassigned.empty());
    }
}

TEST_CASE("ordering within bins follows precedence") {
    const auto precedence = drawn_precedence();
    const PackSolution a = rel::order_within_bins({{{6, 4}}, {}}, precedence);
    CHECK(a.bins == std::vector<std::vector<int>>{{4, 6}});
    const PackSolution b = rel::order_within_bins({{{4, 2, 1}}, {}}, precedence);
    CHECK(b.bins == std::vector<std::vector<int>>{{1, 2, 4}});
    const PackSolution untouched = rel::order_within_bins({{{6, 4, 1}}, {}}, {});
    CHECK(untouched.bins == std::vector<std::vector<int>>{{6, 4, 1}});
    CHECK_THROWS_AS(rel::order_within_bins({{{1, 2}}, {}}, {{1, 2}, {2, 1}}), SchemaError);
}

TEST_CASE("the printed relation family loads from the fixture") {
    const auto instance = io::parse_instance(io::fixture("table1_3_relations").text);
    const io::PackPayload& pack = instance.pack();
    CHECK(pack.instance.items.size() == 6);
    CHECK(pack.relations.conflicts.count({1, 2}) == 1);
    CHECK(pack.relations.compatibility_grade(1, 5) == 0);
    CHECK(pack.relations.correspondence.at({1, 4}) == 0);
    CHECK(pack.relations.precedence.size() == 6);
    CHECK(pack.relations.bin_importance.size() == 3);

    // items 1 and 2 in one bin: conflicting per the printed matrix
    const auto violations = rel::check_constraints(pack.instance, pack.relations,
                                                   {{{1, 2}, {3}, {4, 5}, {6}}, {}});
    bool conflict_found = false;
    for (const auto& v : violations) {
        if (v.requirement == "conflict" && v.item_a == 1 && v.item_b == 2) conflict_found = true;
    }
    CHECK(conflict_found);
}
