#include <doctest.h>

#include <random>

#include "multibin/bpp.hpp"
#include "multibin/errors.hpp"
#include "multibin/oracle.hpp"

using namespace multibin;
using bpp::FitPolicy;
using bpp::ItemOrder;
using bpp::PackInstance;
using bpp::PackSolution;

namespace {

PackInstance instance_of(std::vector<std::string> weights, const std::string& capacity) {
    PackInstance inst;
    inst.capacity = Rational::parse(capacity);
    int id = 1;
    for (const auto& w : weights) inst.items.push_back({id++, Rational::parse(w)});
    return inst;
}

PackInstance random_instance(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> hundredths(1, 100);
    PackInstance inst;
    inst.capacity = Rational(1);
    for (int i = 0; i < n; ++i) inst.items.push_back({i + 1, Rational(hundredths(rng), 100)});
    return inst;
}

}  // namespace

TEST_CASE("validate accepts a consistent packing") {
    const PackInstance inst = instance_of({"0.5", "0.5"}, "1");
    CHECK(bpp::validate(inst, {{{1, 2}}, {}}).ok());
}

TEST_CASE("validate reports overflow with the amount") {
    const PackInstance inst = instance_of({"0.6", "0.6"}, "1");
    const auto report = bpp::validate(inst, {{{1, 2}}, {}});
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == "overflow");
    CHECK(report.violations[0].bin_index == 1);
    CHECK(report.violations[0].overflow == Rational(1, 5));
}

TEST_CASE("validate checks the partition property and bin budget") {
    PackInstance inst = instance_of({"0.2", "0.2", "0.2"}, "1");
    const auto missing = bpp::validate(inst, {{{1, 2}}, {}});
    REQUIRE(missing.violations.size() == 1);
    CHECK(missing.violations[0].kind == "missing_item");

    const auto duplicated = bpp::validate(inst, {{{1, 2}, {2, 3}}, {}});
    REQUIRE(duplicated.violations.size() == 1);
    CHECK(duplicated.violations[0].kind == "duplicate_item");

    const auto unknown = bpp::validate(inst, {{{1, 2, 9}, {3}}, {}});
    REQUIRE(unknown.violations.size() == 1);
    CHECK(unknown.violations[0].kind == "unknown_item");

    inst.max_bins = 2;
    const auto over = bpp::validate(inst, {{{1}, {2}, {3}}, {}});
    REQUIRE(over.violations.size() == 1);
    CHECK(over.violations[0].kind == "too_many_bins");

    // partial solutions place the rest in the wait set
    inst.max_bins = {};
    CHECK(bpp::validate(inst, {{{1}}, {2, 3}}).ok());
}

TEST_CASE("six drawn items in three bins") {
    // weights follow the drawn sizes; the drawn partition fills three bins
    PackInstance inst;
    inst.capacity = Rational(44);
    const std::vector<int> widths = {12, 13, 20, 15, 21, 34};
    for (int i = 0; i < 6; ++i) inst.items.push_back({i + 1, Rational(widths[i])});
    const PackSolution drawn{{{1, 2, 4}, {3, 5}, {6}}, {}};
    CHECK(bpp::validate(inst, drawn).ok());
    CHECK(drawn.bins_used() == 3);
    CHECK(bpp::exact_min_bins(inst).bins_used() == 3);
}

TEST_CASE("fit policies on the worked examples") {
    const PackInstance four = instance_of({"0.5", "0.5", "0.5", "0.5"}, "1");
    const PackSolution ff = bpp::fit_pack(four, FitPolicy::FirstFit, ItemOrder::AsGiven);
    CHECK(ff.bins == std::vector<std::vector<int>>{{1, 2}, {3, 4}});

    const PackInstance five = instance_of({"0.6", "0.5", "0.4", "0.3", "0.2"}, "1");
    const PackSolution ffd = bpp::fit_pack(five, FitPolicy::FirstFit, ItemOrder::Decreasing);
    CHECK(ffd.bins == std::vector<std::vector<int>>{{1, 3}, {2, 4, 5}});
    CHECK(ffd.bins_used() == 2);

    const PackSolution nf = bpp::fit_pack(five, FitPolicy::NextFit, ItemOrder::AsGiven);
    CHECK(nf.bins == std::vector<std::vector<int>>{{1}, {2, 3}, {4, 5}});
}

TEST_CASE("best fit prefers the fullest feasible bin, worst fit the emptiest") {
    const PackInstance inst = instance_of({"0.5", "0.3", "0.2", "0.2"}, "1");
    // after 0.5 and 0.3+0.2 nothing differs; craft a split instead
    const PackInstance split = instance_of({"0.6", "0.5", "0.3", "0.4"}, "1");
    const PackSolution bf = bpp::fit_pack(split, FitPolicy::BestFit, ItemOrder::AsGiven);
    // 0.3 lands in the 0.6 bin (residual 0.4 < 0.5), 0.4 in the 0.5 bin
    CHECK(bf.bins == std::vector<std::vector<int>>{{1, 3}, {2, 4}});
    const PackSolution wf = bpp::fit_pack(split, FitPolicy::WorstFit, ItemOrder::AsGiven);
    // 0.3 lands in the 0.5 bin (residual 0.5 > 0.4)
    CHECK(wf.bins == std::vector<std::vector<int>>{{1, 4}, {2, 3}});
    (void)inst;
}

TEST_CASE("fit_pack is deterministic") {
    std::mt19937 rng(11);
    for (int round = 0; round < 10; ++round) {
        const PackInstance inst = random_instance(rng, 12);
        for (const auto policy : {FitPolicy::NextFit, FitPolicy::FirstFit, FitPolicy::BestFit,
                                  FitPolicy::WorstFit}) {
            for (const auto order : {ItemOrder::AsGiven, ItemOrder::Decreasing}) {
                const PackSolution a = bpp::fit_pack(inst, policy, order);
                const PackSolution b = bpp::fit_pack(inst, policy, order);
                CHECK(a.bins == b.bins);
                CHECK(bpp::validate(inst, a).ok());
                CHECK(a.bins_used() >= bpp::lower_bound(inst));
            }
        }
    }
}

TEST_CASE("lower bound") {
    CHECK(bpp::lower_bound(instance_of({"0.5", "0.5"}, "1")) == 1);
    CHECK(bpp::lower_bound(instance_of({"0.6", "0.6"}, "1")) == 2);
    const PackInstance widths = instance_of({"10", "9", "6", "5", "7"}, "20");
    CHECK(bpp::lower_bound(widths) == 2);
}

TEST_CASE("exact solver basics") {
    CHECK(bpp::exact_min_bins(instance_of({"0.5", "0.5", "0.5", "0.5"}, "1")).bins_used() == 2);
    CHECK(bpp::exact_min_bins(instance_of({"0.4", "0.4", "0.4"}, "1")).bins_used() == 2);
    CHECK(bpp::exact_min_bins(instance_of({}, "1")).bins_used() == 0);
    PackInstance too_big;
    too_big.capacity = Rational(1);
    for (int i = 0; i < 21; ++i) too_big.items.push_back({i + 1, Rational(1, 2)});
    CHECK_THROWS_AS(bpp::exact_min_bins(too_big), SizeLimitError);
}

TEST_CASE("exact solver equals the partition oracle and never loses to heuristics") {
    std::mt19937 rng(20240818);
    for (int round = 0; round < 50; ++round) {
        const PackInstance inst = random_instance(rng, 1 + round % 10);
        const PackSolution exact = bpp::exact_min_bins(inst);
        CHECK(bpp::validate(inst, exact).ok());
        CHECK(exact.bins_used() == oracle::min_bins_partition(inst));
        CHECK(exact.bins_used() >= bpp::lower_bound(inst));
        for (const auto policy : {FitPolicy::FirstFit, FitPolicy::BestFit}) {
            CHECK(exact.bins_used() <=
                  bpp::fit_pack(inst, policy, ItemOrder::Decreasing).bins_used());
        }
    }
}

TEST_CASE("instance validation") {
    PackInstance bad = instance_of({"0.5", "0.5"}, "1");
    bad.items[1].id = 1;
    CHECK_THROWS_AS(bad.check(), SchemaError);
    PackInstance heavy = instance_of({"1.5"}, "1");
    CHECK_THROWS_AS(heavy.check(), SchemaError);
    PackInstance zero = instance_of({"0"}, "1");
    CHECK_THROWS_AS(zero.check(), SchemaError);
}
