#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "multibin/cli.hpp"
#include "multibin/errors.hpp"
#include "multibin/io.hpp"

using namespace multibin;
using io::InstanceFile;
using io::Json;

namespace {

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run_command(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("every fixture parses and canonicalizes stably") {
    for (const auto& fixture : io::fixtures()) {
        CAPTURE(fixture.name);
        const InstanceFile first = io::parse_instance(fixture.text);
        const Json canonical = io::emit_instance(first);
        const InstanceFile second = io::parse_instance(canonical.dump());
        CHECK(io::emit_instance(second) == canonical);
        CHECK(io::digest(canonical) == io::digest(io::emit_instance(second)));
    }
}

TEST_CASE("every fixture drives its operation end to end") {
    const std::map<std::string, std::vector<std::string>> commands = {
        {"fig8_scale", {"scale", "--fixture", "fig8_scale", "--format", "machine"}},
        {"fig2_classic_pack",
         {"pack", "--fixture", "fig2_classic_pack", "--algo", "validate", "--format", "machine"}},
        {"table1_3_relations",
         {"pack", "--fixture", "table1_3_relations", "--algo", "exact", "--format", "machine"}},
        {"fig11_colored_pack",
         {"pack", "--fixture", "fig11_colored_pack", "--algo", "colored", "--format", "machine"}},
        {"fig12_graph",
         {"color", "count", "--fixture", "fig12_graph", "--colors", "3", "--format", "machine"}},
        {"fig13_compat_coloring",
         {"color", "compat-pareto", "--fixture", "fig13_compat_coloring", "--format", "machine"}},
        {"fig15_partition",
         {"partition-color", "--fixture", "fig15_partition", "--format", "machine"}},
        {"table13_production",
         {"pipeline", "paper", "--fixture", "table13_production", "--format", "machine"}},
        {"messages_demo",
         {"pipeline", "messages", "--fixture", "messages_demo", "--format", "machine"}},
        {"mse_knapsack_demo",
         {"solve", "knapsack-mse", "--fixture", "mse_knapsack_demo", "--format", "machine"}},
    };
    for (const auto& fixture : io::fixtures()) {
        CAPTURE(fixture.name);
        REQUIRE(commands.count(fixture.name) == 1);
        const CliResult result = run(commands.at(fixture.name));
        CAPTURE(result.err);
        CHECK(result.status == 0);
        CHECK(Json::parse(result.out).is_object());
    }
}

TEST_CASE("schema errors name the offending field") {
    CHECK_THROWS_WITH_AS(
        io::parse_instance(R"({"kind":"pack","capacity":1,"items":[{"id":1,"weight":0}]})"),
        "item 1: weight must be positive", SchemaError);
    CHECK_THROWS_AS(io::parse_instance("{not json"), SchemaError);
    CHECK_THROWS_AS(io::parse_instance(R"({"kind":"mystery"})"), SchemaError);
    CHECK_THROWS_AS(io::parse_instance(R"({"capacity":1})"), SchemaError);
    // dangling relation ids
    CHECK_THROWS_AS(io::parse_instance(
                        R"({"kind":"pack","capacity":1,
                            "items":[{"id":1,"weight":"0.5"}],
                            "relations":{"conflicts":[[1,7]]}})"),
                    SchemaError);
    // estimate scale mismatch against the declared block
    CHECK_THROWS_AS(io::parse_instance(
                        R"({"kind":"mse","model":"knapsack","capacity":1,
                            "estimates":{"l":3,"eta":3},
                            "items":[{"id":1,"weight":"0.5","estimate":"3,2:[2,0,0]"}]})"),
                    SchemaError);
}

TEST_CASE("rationals in instances accept numbers and exact strings") {
    const InstanceFile decimal = io::parse_instance(
        R"({"kind":"pack","capacity":1,"items":[{"id":1,"weight":0.55}]})");
    CHECK(decimal.pack().instance.items[0].weight == Rational(11, 20));
    const InstanceFile fraction = io::parse_instance(
        R"({"kind":"pack","capacity":1,"items":[{"id":1,"weight":"11/20"}]})");
    CHECK(fraction.pack().instance.items[0].weight == Rational(11, 20));
}

TEST_CASE("scale command lists the printed estimates") {
    const CliResult result = run({"scale", "--l", "3", "--eta", "3", "--format", "machine"});
    REQUIRE(result.status == 0);
    const Json report = Json::parse(result.out);
    CHECK(report["count"] == 8);
    CHECK(report["estimates"][0] == "3,3:[3,0,0]");
    CHECK(report["estimates"][7] == "3,3:[0,0,3]");
    CHECK(report["excluded_multisets"].size() == 2);
}

TEST_CASE("missing input files exit with the usage status") {
    const CliResult result = run({"solve", "knapsack-mse", "--in", "missing.json"});
    CHECK(result.status == 2);
    CHECK(result.err.find("missing.json") != std::string::npos);
}

TEST_CASE("infeasibility and size limits map to their exit codes") {
    const CliResult infeasible = run({"pipeline", "messages", "--fixture", "messages_demo",
                                      "--objective", "nonsense"});
    CHECK(infeasible.status == 2);

    const CliResult huge = run({"scale", "--l", "1000000", "--eta", "1000"});
    CHECK(huge.status == 3);
}

TEST_CASE("machine reports are byte-identical across runs") {
    const std::vector<std::vector<std::string>> commands = {
        {"scale", "--l", "3", "--eta", "3", "--format", "machine"},
        {"pipeline", "paper", "--fixture", "table13_production", "--format", "machine"},
        {"solve", "knapsack-mse", "--fixture", "mse_knapsack_demo", "--format", "machine",
         "--oracle"},
        {"color", "compat-pareto", "--fixture", "fig13_compat_coloring", "--format", "machine"},
    };
    for (const auto& argv : commands) {
        const CliResult a = run(argv);
        const CliResult b = run(argv);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("oracle verdicts agree on the bundled instances") {
    const CliResult knapsack = run({"oracle", "knapsack-mse", "--fixture", "mse_knapsack_demo",
                                    "--format", "machine"});
    REQUIRE(knapsack.status == 0);
    CHECK(Json::parse(knapsack.out)["oracle"]["agrees"] == true);

    const CliResult prox = run({"proximity", "--e1", "3,3:[3,0,0]", "--e2", "3,3:[0,0,3]",
                                "--oracle", "--format", "machine"});
    REQUIRE(prox.status == 0);
    const Json report = Json::parse(prox.out);
    CHECK(report["total"] == 6);
    CHECK(report["oracle"]["agrees"] == true);

    const CliResult median = run({"median", "--estimates", "3,3:[2,1,0];3,3:[0,3,0]",
                                  "--oracle", "--format", "machine"});
    REQUIRE(median.status == 0);
    CHECK(Json::parse(median.out)["oracle"]["agrees"] == true);
}

TEST_CASE("human reports render empty fronts plainly") {
    Json report = Json::object();
    report["front"] = Json::array();
    const std::string text = io::emit_report(report, io::Format::Human);
    CHECK(text == "front: []\n");
    // machine form re-parses to the same structure
    const std::string machine = io::emit_report(report, io::Format::Machine);
    CHECK(Json::parse(machine) == report);
}

TEST_CASE("the production pipeline report names the printed partition") {
    const CliResult result = run({"pipeline", "paper", "--fixture", "table13_production",
                                  "--format", "machine", "--oracle"});
    REQUIRE(result.status == 0);
    const Json report = Json::parse(result.out);
    CHECK(report["general_items"].size() == 8);
    CHECK(report["oracle"]["agrees"] == true);
    // general item I: the four first items, width 19
    CHECK(report["general_items"][0]["members"] == Json::array({1, 2, 3, 4}));
    CHECK(report["general_items"][0]["width"] == 19);
}

TEST_CASE("colored packing reports spans and ratios") {
    const CliResult result = run({"pack", "--fixture", "fig11_colored_pack", "--algo", "colored",
                                  "--format", "machine"});
    REQUIRE(result.status == 0);
    const Json report = Json::parse(result.out);
    CHECK(report["metrics"]["bins_used"] == 5);
    CHECK(report["metrics"]["alpha"] == 1);
    CHECK(report["metrics"]["beta"] == 1);
    CHECK(report["metrics"]["color_spans"].size() == 3);
}

TEST_CASE("the exact-limit override variable trims the search budget") {
    setenv("MULTIBIN_EXACT_LIMIT", "3", 1);
    const CliResult limited = run({"pack", "--fixture", "fig2_classic_pack", "--algo", "exact"});
    unsetenv("MULTIBIN_EXACT_LIMIT");
    CHECK(limited.status == 3);
    const CliResult unlimited = run({"pack", "--fixture", "fig2_classic_pack", "--algo",
                                     "exact"});
    CHECK(unlimited.status == 0);
}

TEST_CASE("infeasible instances exit with status one") {
    const std::string path = "/tmp/multibin_infeasible.json";
    {
        std::ofstream file(path);
        file << R"({"kind":"mse","model":"multiple-choice","capacity":1,
                    "items":[{"id":1,"weight":"0.8","estimate":"3,2:[2,0,0]","group":1},
                             {"id":2,"weight":"0.8","estimate":"3,2:[2,0,0]","group":2}]})";
    }
    const CliResult infeasible = run({"solve", "multiple-choice-mse", "--in", path,
                                      "--objective", "median"});
    CHECK(infeasible.status == 1);
}

TEST_CASE("the production fixture carries all twenty-five items") {
    const InstanceFile instance = io::parse_instance(io::fixture("table13_production").text);
    CHECK(instance.production().items.size() == 25);
    CHECK(instance.production().color_changes.colors.size() == 7);
}

TEST_CASE("fixture names resolve by unique prefix") {
    const CliResult result = run({"pipeline", "paper", "--fixture", "table13",
                                  "--format", "machine"});
    CHECK(result.status == 0);
    const CliResult ambiguous = run({"scale", "--fixture", "fig1"});
    CHECK(ambiguous.status == 2);
}

TEST_CASE("the compatibility report carries the printed example vectors") {
    const CliResult result = run({"color", "compat-pareto", "--fixture",
                                  "fig13_compat_coloring", "--format", "machine"});
    REQUIRE(result.status == 0);
    CHECK(result.out.find("(4;1,3,0)") != std::string::npos);
    CHECK(result.out.find("(2;3,1,0)") != std::string::npos);
}

TEST_CASE("--out writes the machine report to a file") {
    const std::string path = "/tmp/multibin_report.json";
    const CliResult result = run({"scale", "--l", "2", "--eta", "1", "--out", path});
    REQUIRE(result.status == 0);
    std::ifstream file(path);
    REQUIRE(file.good());
    std::stringstream buffer;
    buffer << file.rdbuf();
    const Json report = Json::parse(buffer.str());
    CHECK(report["count"] == 2);
}

TEST_CASE("the fixture files on disk match the built-in registry") {
    for (const auto& fixture : io::fixtures()) {
        CAPTURE(fixture.name);
        std::ifstream file(std::string(MULTIBIN_SOURCE_DIR) + "/fixtures/" + fixture.name +
                           ".json");
        REQUIRE(file.good());
        std::stringstream buffer;
        buffer << file.rdbuf();
        CHECK(buffer.str() == fixture.text + "\n");
    }
}

TEST_CASE("bench runs are seeded") {
    const CliResult a = run({"bench", "--kind", "bpp-ffd", "--n", "8", "--count", "2", "--seed",
                             "7", "--format", "machine"});
    const CliResult b = run({"bench", "--kind", "bpp-ffd", "--n", "8", "--count", "2", "--seed",
                             "7", "--format", "machine"});
    REQUIRE(a.status == 0);
    const Json ra = Json::parse(a.out);
    const Json rb = Json::parse(b.out);
    CHECK(ra["runs"][0]["bins"] == rb["runs"][0]["bins"]);
    CHECK(ra["runs"][1]["bins"] == rb["runs"][1]["bins"]);
}
