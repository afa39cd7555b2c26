#include "multibin/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <random>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "multibin/errors.hpp"
#include "multibin/io.hpp"
#include "multibin/oracle.hpp"

namespace multibin::cli {

namespace {

using io::Json;

struct Output {
    std::ostream& out;
    io::Format format = io::Format::Human;
    std::string out_file;
    bool timing = false;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void finish(Json report) {
        if (timing && format == io::Format::Human) {
            const auto elapsed = std::chrono::steady_clock::now() - started;
            report["wall_ms"] =
                std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
        }
        const std::string text = io::emit_report(report, format);
        out << text;
        if (!out_file.empty()) {
            std::ofstream file(out_file);
            if (!file) throw SchemaError("cannot write '" + out_file + "'");
            file << io::emit_report(report, io::Format::Machine);
        }
    }
};

struct CommonOptions {
    std::string in_file;
    std::string fixture;
    std::string format = "human";
    std::string out_file;
    bool oracle = false;
    unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_input = true) {
    if (with_input) {
        cmd->add_option("--in", opts.in_file, "instance file in the shared notation");
        cmd->add_option("--fixture", opts.fixture, "built-in fixture name");
    }
    cmd->add_option("--format", opts.format, "report format: human|machine")
        ->check(CLI::IsMember({"human", "machine"}));
    cmd->add_option("--out", opts.out_file, "also write the machine report to a file");
    cmd->add_flag("--oracle", opts.oracle, "run the brute-force oracle and compare");
    cmd->add_option("--seed", opts.seed, "seed for randomized generation");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw SchemaError("cannot read '" + path + "'");
    std::ostringstream os;
    os << file.rdbuf();
    return os.str();
}

io::InstanceFile load_instance(const CommonOptions& opts) {
    if (!opts.fixture.empty()) {
        // Exact name or unique prefix.
        const auto& all = io::fixtures();
        const io::Fixture* match = nullptr;
        for (const auto& f : all) {
            if (f.name == opts.fixture) {
                match = &f;
                break;
            }
            if (f.name.rfind(opts.fixture, 0) == 0) {
                if (match) throw SchemaError("fixture prefix '" + opts.fixture + "' is ambiguous");
                match = &f;
            }
        }
        if (!match) throw SchemaError("unknown fixture '" + opts.fixture + "'");
        return io::parse_instance(match->text);
    }
    if (opts.in_file.empty()) throw SchemaError("need --in <file> or --fixture <name>");
    return io::parse_instance(read_file(opts.in_file));
}

int exact_limit_override(int fallback) {
    if (const char* env = std::getenv("MULTIBIN_EXACT_LIMIT")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw SchemaError("MULTIBIN_EXACT_LIMIT must be an integer");
        }
    }
    return fallback;
}

Json report_header(const std::string& solver, const io::InstanceFile& instance) {
    Json report = Json::object();
    report["solver"] = solver;
    report["instance"] = io::digest(io::emit_instance(instance));
    return report;
}

Json estimate_list(const std::vector<mse::MsEstimate>& estimates) {
    Json out = Json::array();
    for (const auto& e : estimates) out.push_back(e.str());
    return out;
}

Json pack_solution_report(const bpp::PackInstance& instance, const bpp::PackSolution& solution) {
    Json out = io::solution_json(solution);
    Json loads = Json::array();
    for (const auto& bin : solution.bins) {
        Rational load(0);
        for (const int id : bin) load += instance.item(id).weight;
        loads.push_back(io::emit_rational(load));
    }
    out["bin_loads"] = std::move(loads);
    return out;
}

Json violations_json(const std::vector<rel::ConstraintViolation>& violations) {
    Json out = Json::array();
    for (const auto& v : violations) {
        Json j = Json::object();
        j["requirement"] = v.requirement;
        j["detail"] = v.detail;
        out.push_back(std::move(j));
    }
    return out;
}

Json mse_solution_json(const msepack::MseSolution& solution) {
    Json out = Json::object();
    Json assignment = Json::array();
    for (const auto& [id, bin] : solution.assignment) {
        assignment.push_back({{"item", id}, {"container", bin}});
    }
    out["assignment"] = std::move(assignment);
    out["cardinality"] = solution.cardinality;
    if (solution.objective_estimate) out["estimate"] = solution.objective_estimate->str();
    if (solution.objective_value) out["value"] = io::emit_rational(*solution.objective_value);
    return out;
}

// --- scale / proximity / median -------------------------------------------

int cmd_scale(const CommonOptions& opts, int l, int eta, Output& output) {
    io::InstanceFile instance;
    if (!opts.in_file.empty() || !opts.fixture.empty()) {
        instance = load_instance(opts);
        if (instance.kind != io::Kind::Scale) throw SchemaError("scale expects a scale instance");
        l = instance.scale().l;
        eta = instance.scale().eta;
    } else {
        instance.kind = io::Kind::Scale;
        instance.payload = io::ScalePayload{l, eta};
    }
    const auto estimates = mse::enumerate_scale(l, eta);
    Json report = report_header("enumerate_scale", instance);
    report["parameters"] = {{"l", l}, {"eta", eta}};
    report["count"] = estimates.size();
    report["multiset_coefficient"] = mse::multiset_coefficient(l, eta);
    report["estimates"] = estimate_list(estimates);
    Json excluded = Json::array();
    for (const auto& e : oracle::all_multisets(l, eta)) {
        if (!e.is_interval()) excluded.push_back(e.str());
    }
    report["excluded_multisets"] = std::move(excluded);
    if (opts.oracle) {
        std::uint64_t interval = 0;
        for (const auto& e : oracle::all_multisets(l, eta)) interval += e.is_interval() ? 1 : 0;
        report["oracle"] = {{"kind", "brute-force interval filter"},
                            {"count", interval},
                            {"agrees", interval == estimates.size()}};
    }
    output.finish(report);
    return 0;
}

std::vector<mse::MsEstimate> parse_estimate_list(const std::string& text) {
    std::vector<mse::MsEstimate> out;
    std::istringstream is(text);
    std::string token;
    while (std::getline(is, token, ';')) {
        if (!token.empty()) out.push_back(mse::MsEstimate::parse(token));
    }
    if (out.empty()) throw SchemaError("no estimates given");
    return out;
}

int cmd_proximity(const std::string& e1_text, const std::string& e2_text, bool oracle_check,
                  Output& output) {
    const auto e1 = mse::MsEstimate::parse(e1_text);
    const auto e2 = mse::MsEstimate::parse(e2_text);
    const mse::Proximity p = mse::proximity(e1, e2);
    Json report = Json::object();
    report["solver"] = "proximity";
    report["parameters"] = {{"e1", e1.str()}, {"e2", e2.str()}};
    report["delta_minus"] = p.delta_minus;
    report["delta_plus"] = p.delta_plus;
    report["total"] = p.total();
    if (oracle_check) {
        const int bfs = oracle::proximity_bfs(e1, e2);
        report["oracle"] = {{"kind", "BFS shortest path"},
                            {"total", bfs},
                            {"agrees", bfs == p.total()}};
    }
    output.finish(report);
    return 0;
}

int cmd_median(const std::string& estimates_text, const std::string& kind, bool oracle_check,
               Output& output) {
    const auto estimates = parse_estimate_list(estimates_text);
    const mse::MsEstimate median =
        kind == "set" ? mse::set_median(estimates) : mse::generalized_median(estimates);
    Json report = Json::object();
    report["solver"] = kind == "set" ? "set_median" : "generalized_median";
    report["parameters"] = {{"estimates", estimate_list(estimates)}};
    report["median"] = median.str();
    report["total_proximity"] = mse::total_proximity(median, estimates);
    if (oracle_check) {
        const int scan = oracle::median_total_bfs(
            kind == "set" ? median : oracle::generalized_median_scan(estimates), estimates);
        report["oracle"] = {{"kind", "exhaustive scan with BFS distances"},
                            {"total", scan},
                            {"agrees", scan == mse::total_proximity(median, estimates)}};
    }
    output.finish(report);
    return 0;
}

// --- pack --------------------------------------------------------------------

int cmd_pack(const CommonOptions& opts, const std::string& algo, Output& output) {
    const io::InstanceFile instance = load_instance(opts);
    if (instance.kind != io::Kind::Pack) throw SchemaError("pack expects a pack instance");
    const io::PackPayload& pack = instance.pack();
    const int limit = exact_limit_override(20);

    Json report = report_header("pack/" + algo, instance);
    report["parameters"] = {{"algorithm", algo},
                            {"capacity", io::emit_rational(pack.instance.capacity)},
                            {"items", pack.instance.items.size()}};

    bpp::PackSolution solution;
    if (algo == "validate") {
        if (!pack.solution) throw SchemaError("instance embeds no solution to validate");
        solution = *pack.solution;
    } else if (algo == "colored") {
        std::vector<coloring::ColoredItem> items;
        for (const auto& item : pack.instance.items) {
            const auto color = pack.colors.find(item.id);
            if (color == pack.colors.end()) {
                throw SchemaError("item " + std::to_string(item.id) + ": missing color");
            }
            items.push_back({item.id, item.weight, color->second});
        }
        const auto result = coloring::colored_pack(items, pack.instance.capacity, limit);
        report["solution"] = pack_solution_report(pack.instance, result.solution);
        report["solution"]["bin_colors"] = result.bin_colors;
        Json spans = Json::array();
        for (const auto& [color, span] : result.color_spans) {
            spans.push_back({{"color", color}, {"bins", span}});
        }
        report["metrics"] = {{"bins_used", result.bins_used},
                             {"lower_bound", bpp::lower_bound(pack.instance)},
                             {"color_spans", spans},
                             {"alpha", io::emit_rational(result.alpha)},
                             {"beta", io::emit_rational(result.beta)}};
        const auto validation = bpp::validate(pack.instance, result.solution);
        Json validity = Json::array();
        for (const auto& v : validation.violations) validity.push_back(v.detail);
        report["violations"] = std::move(validity);
        output.finish(report);
        return validation.ok() ? 0 : 1;
    } else if (algo == "exact") {
        solution = bpp::exact_min_bins(pack.instance, limit);
    } else if (algo == "conflict-exact" || algo == "conflict-greedy") {
        const auto graph =
            rel::ConflictGraph::from_instance(pack.instance, pack.relations.conflicts);
        solution = rel::conflict_pack(
            pack.instance, graph,
            algo == "conflict-exact" ? rel::SolveMode::Exact : rel::SolveMode::Greedy, limit);
    } else {
        static const std::map<std::string, std::pair<bpp::FitPolicy, bpp::ItemOrder>> kAlgos = {
            {"nf", {bpp::FitPolicy::NextFit, bpp::ItemOrder::AsGiven}},
            {"ff", {bpp::FitPolicy::FirstFit, bpp::ItemOrder::AsGiven}},
            {"bf", {bpp::FitPolicy::BestFit, bpp::ItemOrder::AsGiven}},
            {"wf", {bpp::FitPolicy::WorstFit, bpp::ItemOrder::AsGiven}},
            {"nfd", {bpp::FitPolicy::NextFit, bpp::ItemOrder::Decreasing}},
            {"ffd", {bpp::FitPolicy::FirstFit, bpp::ItemOrder::Decreasing}},
            {"bfd", {bpp::FitPolicy::BestFit, bpp::ItemOrder::Decreasing}},
            {"wfd", {bpp::FitPolicy::WorstFit, bpp::ItemOrder::Decreasing}},
        };
        const auto it = kAlgos.find(algo);
        if (it == kAlgos.end()) throw SchemaError("unknown packing algorithm '" + algo + "'");
        solution = bpp::fit_pack(pack.instance, it->second.first, it->second.second);
    }

    // Precedence relations order the solved bins; violations that ordering
    // cannot fix (backwards splits) still show up below.
    if (algo != "validate" && !pack.relations.precedence.empty()) {
        solution = rel::order_within_bins(solution, pack.relations.precedence);
    }

    report["solution"] = pack_solution_report(pack.instance, solution);
    report["metrics"] = {{"bins_used", solution.bins_used()},
                         {"lower_bound", bpp::lower_bound(pack.instance)}};
    const bpp::FeasibilityReport validation = bpp::validate(pack.instance, solution);
    Json validity = Json::array();
    for (const auto& v : validation.violations) validity.push_back(v.detail);
    report["violations"] = std::move(validity);
    if (!pack.relations.empty()) {
        report["constraint_violations"] =
            violations_json(rel::check_constraints(pack.instance, pack.relations, solution));
    }
    if (opts.oracle) {
        const bool conflicts = algo.rfind("conflict", 0) == 0;
        const int best =
            conflicts ? oracle::min_bins_partition_conflicts(
                            pack.instance, rel::ConflictGraph::from_instance(
                                               pack.instance, pack.relations.conflicts))
                      : oracle::min_bins_partition(pack.instance);
        const bool exact_algo = algo == "exact" || algo == "conflict-exact";
        report["oracle"] = {{"kind", "set-partition enumeration"},
                            {"minimal_bins", best},
                            {"agrees", exact_algo ? solution.bins_used() == best
                                                  : solution.bins_used() >= best &&
                                                        validation.ok()}};
    }
    output.finish(report);
    return validation.ok() ? 0 : 1;
}

// --- solve (mse family + inverse pack) ----------------------------------------

msepack::Objective objective_from_string(const std::string& name) {
    if (name == "integrated") return msepack::Objective::Integrated;
    if (name == "median") return msepack::Objective::Median;
    if (name == "scalar") return msepack::Objective::Scalar;
    throw SchemaError("unknown objective '" + name + "'");
}

int cmd_solve(const CommonOptions& opts, const std::string& model_arg,
              const std::string& objective_arg, Output& output) {
    const io::InstanceFile instance = load_instance(opts);
    const int limit = exact_limit_override(0);
    const auto limits = limit > 0 ? msepack::SearchLimits::scaled(limit)
                                  : msepack::SearchLimits{};

    if (model_arg == "inverse-pack" || model_arg == "conflict-pack") {
        if (instance.kind != io::Kind::Pack) {
            throw SchemaError(model_arg + " expects a pack instance");
        }
        const io::PackPayload& pack = instance.pack();
        Json report = report_header("solve/" + model_arg, instance);
        if (model_arg == "conflict-pack") {
            const auto graph =
                rel::ConflictGraph::from_instance(pack.instance, pack.relations.conflicts);
            const auto solution = rel::conflict_pack(pack.instance, graph, rel::SolveMode::Exact,
                                                     limit > 0 ? limit : 20);
            report["solution"] = pack_solution_report(pack.instance, solution);
            report["metrics"] = {{"bins_used", solution.bins_used()}};
            if (opts.oracle) {
                const int best = oracle::min_bins_partition_conflicts(pack.instance, graph);
                report["oracle"] = {{"kind", "set-partition enumeration"},
                                    {"minimal_bins", best},
                                    {"agrees", best == solution.bins_used()}};
            }
            output.finish(report);
            return 0;
        }
        const auto solution = rel::inverse_pack(pack.instance, pack.profits,
                                                rel::SolveMode::Exact, limit > 0 ? limit : 20);
        const Rational profit = rel::profit_of(solution, pack.profits);
        report["solution"] = pack_solution_report(pack.instance, solution);
        report["objective"] = {{"profit", io::emit_rational(profit)}};
        report["metrics"] = {{"packed", static_cast<int>(pack.instance.items.size() -
                                                         solution.unassigned.size())},
                             {"waiting", solution.unassigned.size()}};
        if (opts.oracle) {
            const Rational best = oracle::max_profit_enumeration(pack.instance, pack.profits);
            report["oracle"] = {{"kind", "assignment enumeration"},
                                {"best_profit", io::emit_rational(best)},
                                {"agrees", best == profit}};
        }
        output.finish(report);
        return 0;
    }

    if (instance.kind != io::Kind::Mse) throw SchemaError("solve expects an mse instance");
    const io::MsePayload& payload = instance.mse();
    const msepack::ModelKind kind = payload.model;
    const std::map<std::string, msepack::ModelKind> kNames = {
        {"knapsack-mse", msepack::ModelKind::Knapsack},
        {"multiple-choice-mse", msepack::ModelKind::MultipleChoice},
        {"multiple-knapsack-mse", msepack::ModelKind::MultipleKnapsack},
        {"assignment-mse", msepack::ModelKind::Assignment},
        {"inverse-bpp-mse", msepack::ModelKind::InverseBpp},
        {"conflict-inverse-mse", msepack::ModelKind::ConflictInverse},
    };
    if (model_arg != "pareto-front") {
        const auto it = kNames.find(model_arg);
        if (it == kNames.end()) throw SchemaError("unknown model '" + model_arg + "'");
        if (it->second != kind) {
            throw SchemaError("instance declares model '" +
                              io::emit_instance(instance)["model"].get<std::string>() +
                              "' but the command requests '" + model_arg + "'");
        }
    }

    const msepack::Objective objective = objective_from_string(objective_arg);
    const msepack::MseInstance& inst = payload.instance;
    Json report = report_header("solve/" + model_arg + "/" + objective_arg, instance);

    if (model_arg == "pareto-front") {
        const auto front = msepack::pareto_front_biobjective(kind, inst, objective, limits);
        Json points = Json::array();
        for (const auto& s : front) points.push_back(mse_solution_json(s));
        report["front"] = std::move(points);
        if (opts.oracle) {
            const auto expected = oracle::front_points(kind, inst, objective);
            std::set<std::pair<std::string, int>> got;
            for (const auto& s : front) {
                got.insert({s.objective_estimate ? s.objective_estimate->str() : "none",
                            s.cardinality});
            }
            report["oracle"] = {{"kind", "full enumeration dominance filter"},
                                {"points", expected.size()},
                                {"agrees", expected == got}};
        }
        output.finish(report);
        return 0;
    }

    msepack::MseSolution solution;
    switch (kind) {
        case msepack::ModelKind::Knapsack:
            solution = msepack::knapsack_mse(inst.items, inst.capacity, objective, limits);
            break;
        case msepack::ModelKind::MultipleChoice:
            solution = msepack::multiple_choice_mse(inst.items, inst.capacity, objective, limits);
            break;
        case msepack::ModelKind::MultipleKnapsack:
            solution = msepack::multiple_knapsack_mse(inst.items, inst.capacities, objective,
                                                      limits);
            break;
        case msepack::ModelKind::Assignment:
            solution = msepack::generalized_assignment_mse(inst.items, inst.capacities, objective,
                                                           inst.assign_mode, limits);
            break;
        case msepack::ModelKind::InverseBpp:
            solution = msepack::inverse_bpp_mse(inst.items, inst.bins, inst.capacity, objective,
                                                limits);
            break;
        case msepack::ModelKind::ConflictInverse:
            solution = msepack::conflict_inverse_mse(inst.items, inst.bins, inst.capacity,
                                                     rel::ConflictGraph(inst.conflicts), objective,
                                                     limits);
            break;
    }
    report["solution"] = mse_solution_json(solution);
    if (opts.oracle) {
        if (objective == msepack::Objective::Scalar) {
            const Rational best = oracle::best_scalar(kind, inst);
            report["oracle"] = {{"kind", "full enumeration"},
                                {"best_value", io::emit_rational(best)},
                                {"agrees", solution.objective_value &&
                                               *solution.objective_value == best}};
        } else {
            const bool maximal = oracle::is_maximal(kind, inst, objective, solution);
            report["oracle"] = {{"kind", "full enumeration dominance check"},
                                {"agrees", maximal}};
        }
    }
    output.finish(report);
    return 0;
}

// --- color ---------------------------------------------------------------------

int cmd_color(const CommonOptions& opts, const std::string& task, int colors, Output& output) {
    const io::InstanceFile instance = load_instance(opts);
    if (instance.kind != io::Kind::Graph) throw SchemaError("color expects a graph instance");
    const io::GraphPayload& graph = instance.graph();
    const int limit = exact_limit_override(20);
    Json report = report_header("color/" + task, instance);

    if (task == "chromatic") {
        const auto result = coloring::chromatic_coloring(graph.graph, {}, limit);
        report["chromatic_number"] = result.colors_used;
        Json coloring_json = Json::object();
        for (std::size_t v = 0; v < graph.names.size(); ++v) {
            coloring_json[graph.names[v]] = result.coloring[v];
        }
        report["coloring"] = std::move(coloring_json);
        if (opts.oracle) {
            const int chi = oracle::chromatic_enumeration(graph.graph);
            report["oracle"] = {{"kind", "full enumeration"},
                                {"chromatic_number", chi},
                                {"agrees", chi == result.colors_used}};
        }
    } else if (task == "count") {
        if (colors < 0) throw SchemaError("count needs --colors");
        const auto count = coloring::count_proper_colorings(graph.graph, colors, limit);
        report["parameters"] = {{"colors", colors}};
        report["count"] = count;
        if (opts.oracle) {
            const auto brute = oracle::count_colorings_enumeration(graph.graph, colors);
            report["oracle"] = {{"kind", "full enumeration"},
                                {"count", brute},
                                {"agrees", brute == count}};
        }
    } else if (task == "min-weight") {
        if (graph.palette.empty()) throw SchemaError("instance declares no color_weights");
        const bool vector_weights = !graph.palette_weights.empty() &&
                                    graph.palette_weights.front().size() > 1;
        if (vector_weights) {
            const auto front = coloring::min_weight_coloring_front(graph.graph,
                                                                   graph.palette_weights, limit);
            Json points = Json::array();
            for (const auto& p : front) {
                Json weights = Json::array();
                for (const auto& w : p.weight) weights.push_back(io::emit_rational(w));
                Json used = Json::array();
                for (const int c : p.used_colors) used.push_back(graph.palette[c - 1]);
                points.push_back({{"used_colors", used}, {"weight", weights}});
            }
            report["front"] = std::move(points);
        } else {
            std::vector<Rational> weights;
            for (const auto& vec : graph.palette_weights) weights.push_back(vec.front());
            const auto result = coloring::min_weight_coloring(graph.graph, weights, limit);
            Json used = Json::array();
            for (const int c : result.used_colors) used.push_back(graph.palette[c - 1]);
            report["used_colors"] = std::move(used);
            report["total_weight"] = io::emit_rational(result.total_weight);
            if (opts.oracle) {
                // Cheapest colorable palette subset by brute enumeration.
                const int k = static_cast<int>(weights.size());
                std::optional<Rational> best;
                for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
                    std::vector<int> palette;
                    Rational total(0);
                    for (int c = 0; c < k; ++c) {
                        if (mask & (1u << c)) {
                            palette.push_back(c + 1);
                            total += weights[c];
                        }
                    }
                    if ((!best || total < *best) && oracle::colorable_with(graph.graph, palette)) {
                        best = total;
                    }
                }
                report["oracle"] = {{"kind", "palette subset enumeration"},
                                    {"best_weight", io::emit_rational(*best)},
                                    {"agrees", *best == result.total_weight}};
            }
        }
    } else if (task == "compat-pareto") {
        if (!graph.compat) throw SchemaError("instance declares no candidates");
        const auto front = coloring::compat_coloring_pareto(*graph.compat);
        Json points = Json::array();
        for (const auto& s : front) {
            Json config = Json::object();
            for (std::size_t v = 0; v < graph.names.size(); ++v) {
                config[graph.names[v]] = graph.compat->candidates[v][s.choice[v]].name;
            }
            points.push_back({{"configuration", config}, {"quality", s.quality.str()}});
        }
        report["front"] = std::move(points);
        if (!graph.printed_configurations.empty()) {
            Json printed = Json::array();
            for (const auto& config : graph.printed_configurations) {
                const auto choice = graph.configuration_choice(config);
                const auto q = coloring::evaluate_configuration(*graph.compat, choice);
                Json entry = Json::object();
                for (const auto& [vertex, cand] : config) entry[vertex] = cand;
                printed.push_back({{"configuration", entry}, {"quality", q.str()}});
            }
            report["printed_configurations"] = std::move(printed);
        }
        if (opts.oracle) {
            const auto brute = oracle::compat_front_enumeration(*graph.compat);
            std::set<std::string> expected;
            for (const auto& q : brute) expected.insert(q.str());
            std::set<std::string> got;
            for (const auto& s : front) got.insert(s.quality.str());
            report["oracle"] = {{"kind", "full configuration enumeration"},
                                {"points", expected.size()},
                                {"agrees", expected == got}};
        }
    } else {
        throw SchemaError("unknown color task '" + task + "'");
    }
    output.finish(report);
    return 0;
}

int cmd_partition_color(const CommonOptions& opts, Output& output) {
    const io::InstanceFile instance = load_instance(opts);
    if (instance.kind != io::Kind::Graph || !instance.graph().parts) {
        throw SchemaError("partition-color expects a graph instance with parts");
    }
    const io::GraphPayload& graph = instance.graph();
    Json report = report_header("partition-color", instance);
    const auto result = coloring::partition_coloring(graph.graph, *graph.parts);
    Json reps = Json::array();
    Json colors = Json::object();
    for (std::size_t i = 0; i < result.representatives.size(); ++i) {
        reps.push_back(graph.names[result.representatives[i]]);
        colors[graph.names[result.representatives[i]]] = result.coloring[i];
    }
    report["representatives"] = std::move(reps);
    report["coloring"] = std::move(colors);
    report["colors_used"] = result.colors_used;
    if (!graph.printed_partition_solutions.empty()) {
        Json printed = Json::array();
        for (const auto& sol : graph.printed_partition_solutions) {
            std::vector<int> vertices;
            std::vector<int> coloring_vec;
            for (const auto& [name, color] : sol) {
                vertices.push_back(graph.vertex_index(name));
                coloring_vec.push_back(color);
            }
            const auto induced = graph.graph.induced(vertices);
            int used = 0;
            for (const int c : coloring_vec) used = std::max(used, c);
            Json entry = Json::object();
            for (const auto& [name, color] : sol) entry[name] = color;
            printed.push_back({{"solution", entry},
                               {"proper", induced.proper(coloring_vec)},
                               {"colors", used}});
        }
        report["printed_solutions"] = std::move(printed);
    }
    if (opts.oracle) {
        const int best = oracle::partition_chromatic_enumeration(graph.graph, *graph.parts);
        report["oracle"] = {{"kind", "transversal enumeration"},
                            {"colors", best},
                            {"agrees", best == result.colors_used}};
    }
    output.finish(report);
    return 0;
}

// --- pipeline --------------------------------------------------------------------

int cmd_pipeline_paper(const CommonOptions& opts, Output& output) {
    const io::InstanceFile instance = load_instance(opts);
    if (instance.kind != io::Kind::Production) {
        throw SchemaError("pipeline paper expects a production instance");
    }
    const io::ProductionPayload& prod = instance.production();
    const pipeline::Plan plan = pipeline::plan_paper(prod.items, prod.color_changes,
                                                     prod.bar_width, prod.period_length,
                                                     prod.machines);
    Json report = report_header("pipeline/paper", instance);
    report["parameters"] = {{"bar_width", prod.bar_width},
                            {"period_length", prod.period_length},
                            {"machines", prod.machines}};
    Json generals = Json::array();
    for (const auto& gi : plan.general_items) {
        Json lanes = Json::array();
        for (const auto& lane : gi.lanes) {
            lanes.push_back({{"items", lane.item_ids},
                             {"width", lane.width},
                             {"length", lane.length}});
        }
        generals.push_back({{"index", gi.index},
                            {"color", gi.color},
                            {"members", gi.member_ids()},
                            {"width", gi.width()},
                            {"duration", gi.duration()},
                            {"lanes", lanes}});
    }
    report["general_items"] = std::move(generals);
    Json slots = Json::array();
    for (const auto& slot : plan.slots) {
        slots.push_back({{"machine", slot.machine},
                         {"period", slot.period},
                         {"sequence", slot.sequence},
                         {"load", slot.load},
                         {"change_cost", slot.change_cost}});
    }
    report["schedule"] = std::move(slots);
    report["metrics"] = {{"total_change_cost", plan.total_change_cost},
                         {"used_area", plan.used_area},
                         {"bar_area", plan.bar_area},
                         {"unused_bar_area", plan.unused_bar_area},
                         {"idle_time", plan.idle_time}};
    if (opts.oracle) {
        // Re-check each slot's ordering cost by permutation enumeration.
        bool agrees = true;
        std::map<int, std::string> machine_color;
        for (const auto& slot : plan.slots) {
            std::vector<std::vector<int>> cost(slot.sequence.size(),
                                               std::vector<int>(slot.sequence.size(), 0));
            for (std::size_t i = 0; i < slot.sequence.size(); ++i) {
                for (std::size_t j = 0; j < slot.sequence.size(); ++j) {
                    if (i != j) {
                        cost[i][j] = prod.color_changes.change_cost(
                            plan.general_items[slot.sequence[i] - 1].color,
                            plan.general_items[slot.sequence[j] - 1].color);
                    }
                }
            }
            std::optional<std::vector<int>> start_cost;
            if (const auto it = machine_color.find(slot.machine); it != machine_color.end()) {
                start_cost.emplace();
                for (const int index : slot.sequence) {
                    start_cost->push_back(prod.color_changes.change_cost(
                        it->second, plan.general_items[index - 1].color));
                }
            }
            if (oracle::path_cost_enumeration(cost, start_cost) != slot.change_cost) {
                agrees = false;
            }
            if (!slot.sequence.empty()) {
                machine_color[slot.machine] =
                    plan.general_items[slot.sequence.back() - 1].color;
            }
        }
        report["oracle"] = {{"kind", "per-slot permutation enumeration"}, {"agrees", agrees}};
    }
    output.finish(report);
    return 0;
}

pipeline::SelectObjective select_objective_from_string(const std::string& name) {
    if (name == "count") return pipeline::SelectObjective::Count;
    if (name == "importance") return pipeline::SelectObjective::Importance;
    if (name == "estimate") return pipeline::SelectObjective::Estimate;
    throw SchemaError("unknown selection objective '" + name + "'");
}

Json selection_json(const pipeline::Selection& selection) {
    Json out = Json::object();
    out["selected"] = selection.selected_ids;
    out["selected_weight"] = io::emit_rational(selection.selected_weight);
    Json waiting = Json::array();
    for (const auto& m : selection.waiting) {
        waiting.push_back({{"id", m.id}, {"wait_age", m.wait_age}});
    }
    out["waiting"] = std::move(waiting);
    if (selection.importance_total) {
        out["importance"] = io::emit_rational(*selection.importance_total);
    }
    if (selection.estimate) out["estimate"] = selection.estimate->str();
    return out;
}

int cmd_pipeline_messages(const CommonOptions& opts, const std::string& objective_arg,
                          int periods, const std::string& period_arg, Output& output) {
    const io::InstanceFile instance = load_instance(opts);
    if (instance.kind != io::Kind::Messages) {
        throw SchemaError("pipeline messages expects a messages instance");
    }
    const io::MessagesPayload& payload = instance.messages();
    Rational period;
    if (!period_arg.empty()) {
        period = Rational::parse(period_arg);
    } else if (payload.period) {
        period = *payload.period;
    } else {
        throw SchemaError("need --period or a 'period' field in the instance");
    }
    const int limit = exact_limit_override(15);

    Json report = report_header("pipeline/messages/" + objective_arg, instance);
    report["parameters"] = {{"period", io::emit_rational(period)},
                            {"objective", objective_arg},
                            {"periods", periods}};
    if (objective_arg == "count-age") {
        const auto front = pipeline::select_messages_front(payload.messages, period, limit);
        Json points = Json::array();
        for (const auto& p : front) {
            points.push_back({{"cardinality", p.cardinality},
                              {"total_age", p.total_age},
                              {"selected", p.selection.selected_ids}});
        }
        report["front"] = std::move(points);
        output.finish(report);
        return 0;
    }
    if (objective_arg == "layers") {
        const auto layered = pipeline::pareto_layer_assign(payload.messages, period);
        Json layers = Json::array();
        for (const auto& layer : layered.layers) {
            layers.push_back({{"members", layer.member_ids}, {"assigned", layer.assigned_ids}});
        }
        report["layers"] = std::move(layers);
        report["assigned"] = layered.assigned_ids;
        report["capacity_left"] = io::emit_rational(layered.capacity_left);
        output.finish(report);
        return 0;
    }

    const auto objective = select_objective_from_string(objective_arg);
    if (periods <= 1) {
        const auto selection = pipeline::select_messages(payload.messages, period, objective,
                                                         limit);
        report["selection"] = selection_json(selection);
        const auto schedule = pipeline::swf_order([&] {
            std::vector<pipeline::Message> chosen;
            for (const auto& m : payload.messages) {
                if (std::find(selection.selected_ids.begin(), selection.selected_ids.end(),
                              m.id) != selection.selected_ids.end()) {
                    chosen.push_back(m);
                }
            }
            return chosen;
        }());
        if (!schedule.ids.empty()) {
            report["mean_completion"] = io::emit_rational(pipeline::mean_completion(schedule));
        }
        if (opts.oracle && objective == pipeline::SelectObjective::Count) {
            std::vector<Rational> weights;
            for (const auto& m : payload.messages) weights.push_back(m.weight);
            const int best = oracle::max_cardinality_enumeration(weights, period);
            report["oracle"] = {{"kind", "subset enumeration"},
                                {"max_cardinality", best},
                                {"agrees", best ==
                                               static_cast<int>(selection.selected_ids.size())}};
        }
        output.finish(report);
        return 0;
    }
    const auto history = pipeline::simulate_periods(payload.messages, period, periods, objective,
                                                    limit);
    Json rounds = Json::array();
    for (const auto& s : history) rounds.push_back(selection_json(s));
    report["periods_run"] = history.size();
    report["history"] = std::move(rounds);
    output.finish(report);
    return 0;
}

// --- bench ----------------------------------------------------------------------

int cmd_bench(const CommonOptions& opts, const std::string& kind, int n, int count,
              Output& output) {
    if (n < 1 || n > 12) throw SchemaError("bench supports 1..12 items");
    if (count < 1 || count > 1000) throw SchemaError("bench supports 1..1000 instances");
    std::mt19937 rng(opts.seed);
    std::uniform_int_distribution<int> weight_dist(1, 100);

    Json runs = Json::array();
    for (int i = 0; i < count; ++i) {
        bpp::PackInstance instance;
        instance.capacity = Rational(100);
        for (int j = 0; j < n; ++j) instance.items.push_back({j + 1, Rational(weight_dist(rng))});
        Json run = Json::object();
        run["instance"] = i + 1;
        const auto start = std::chrono::steady_clock::now();
        if (kind == "bpp-exact") {
            run["bins"] = bpp::exact_min_bins(instance, 20).bins_used();
        } else if (kind == "bpp-ffd") {
            run["bins"] =
                bpp::fit_pack(instance, bpp::FitPolicy::FirstFit, bpp::ItemOrder::Decreasing)
                    .bins_used();
        } else {
            throw SchemaError("unknown bench kind '" + kind + "'");
        }
        const auto elapsed = std::chrono::steady_clock::now() - start;
        run["micros"] =
            std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count();
        runs.push_back(std::move(run));
    }
    Json report = Json::object();
    report["solver"] = "bench/" + kind;
    report["parameters"] = {{"n", n}, {"count", count}, {"seed", opts.seed}};
    report["runs"] = std::move(runs);
    output.finish(report);
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bin packing problem family: multiset-estimate, relational, colored and"
                 " planning models"};
    app.require_subcommand(1);

    CommonOptions scale_opts;
    int scale_l = 3;
    int scale_eta = 3;
    auto* scale_cmd = app.add_subcommand("scale", "enumerate an assessment scale");
    scale_cmd->add_option("--l", scale_l, "number of ordinal levels");
    scale_cmd->add_option("--eta", scale_eta, "estimate cardinality");
    add_common(scale_cmd, scale_opts);

    CommonOptions prox_opts;
    std::string prox_e1;
    std::string prox_e2;
    auto* prox_cmd = app.add_subcommand("proximity", "one-step-change distance between"
                                                     " estimates");
    prox_cmd->add_option("--e1", prox_e1, "first estimate, 'l,eta:[counts]'")->required();
    prox_cmd->add_option("--e2", prox_e2, "second estimate")->required();
    add_common(prox_cmd, prox_opts, false);

    CommonOptions median_opts;
    std::string median_estimates;
    std::string median_kind = "generalized";
    auto* median_cmd = app.add_subcommand("median", "median of an estimate set");
    median_cmd->add_option("--estimates", median_estimates, "semicolon-separated estimates")
        ->required();
    median_cmd->add_option("--kind", median_kind, "generalized|set")
        ->check(CLI::IsMember({"generalized", "set"}));
    add_common(median_cmd, median_opts, false);

    CommonOptions pack_opts;
    std::string pack_algo = "ffd";
    auto* pack_cmd = app.add_subcommand("pack", "classic and conflict bin packing");
    pack_cmd->add_option("--algo", pack_algo,
                         "nf|ff|bf|wf|nfd|ffd|bfd|wfd|exact|conflict-exact|conflict-greedy|"
                         "colored|validate");
    add_common(pack_cmd, pack_opts);

    CommonOptions solve_opts;
    std::string solve_model;
    std::string solve_objective = "integrated";
    auto* solve_cmd = app.add_subcommand("solve", "knapsack/assignment family with estimates");
    solve_cmd->add_option("model", solve_model,
                          "knapsack-mse|multiple-choice-mse|multiple-knapsack-mse|assignment-mse|"
                          "inverse-bpp-mse|conflict-inverse-mse|inverse-pack|conflict-pack|"
                          "pareto-front")
        ->required();
    solve_cmd->add_option("--objective", solve_objective, "integrated|median|scalar");
    add_common(solve_cmd, solve_opts);

    CommonOptions color_opts;
    std::string color_task;
    int color_count = -1;
    auto* color_cmd = app.add_subcommand("color", "vertex coloring family");
    color_cmd->add_option("task", color_task, "chromatic|count|min-weight|compat-pareto")
        ->required();
    color_cmd->add_option("--colors", color_count, "palette size for counting");
    add_common(color_cmd, color_opts);

    CommonOptions partition_opts;
    auto* partition_cmd = app.add_subcommand("partition-color",
                                             "representatives minimizing induced chromatic"
                                             " number");
    add_common(partition_cmd, partition_opts);

    auto* pipeline_cmd = app.add_subcommand("pipeline", "applied planning pipelines");
    pipeline_cmd->require_subcommand(1);
    CommonOptions paper_opts;
    auto* paper_cmd = pipeline_cmd->add_subcommand("paper", "four-stage production planner");
    add_common(paper_cmd, paper_opts);
    CommonOptions msg_opts;
    std::string msg_objective = "count";
    std::string msg_period;
    int msg_periods = 1;
    auto* msg_cmd = pipeline_cmd->add_subcommand("messages", "channel message selection");
    msg_cmd->add_option("--objective", msg_objective,
                        "count|count-age|importance|estimate|layers");
    msg_cmd->add_option("--period", msg_period, "channel time per period");
    msg_cmd->add_option("--periods", msg_periods, "simulate this many periods");
    add_common(msg_cmd, msg_opts);

    CommonOptions oracle_opts;
    std::string oracle_model;
    std::string oracle_objective = "integrated";
    auto* oracle_cmd = app.add_subcommand("oracle",
                                          "solve with the brute-force comparison enabled");
    oracle_cmd->add_option("model", oracle_model, "model, as in solve")->required();
    oracle_cmd->add_option("--objective", oracle_objective, "integrated|median|scalar");
    add_common(oracle_cmd, oracle_opts);

    CommonOptions bench_opts;
    std::string bench_kind = "bpp-exact";
    int bench_n = 10;
    int bench_count = 5;
    auto* bench_cmd = app.add_subcommand("bench", "randomized timing runs");
    bench_cmd->add_option("--kind", bench_kind, "bpp-exact|bpp-ffd");
    bench_cmd->add_option("--n", bench_n, "items per instance");
    bench_cmd->add_option("--count", bench_count, "instances");
    add_common(bench_cmd, bench_opts, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto run = [&](const CommonOptions& opts, auto&& handler) {
        Output output{out, io::Format::Human, "", false, std::chrono::steady_clock::now()};
        output.format = opts.format == "machine" ? io::Format::Machine : io::Format::Human;
        output.out_file = opts.out_file;
        output.timing = opts.format != "machine";
        try {
            return handler(output);
        } catch (const SizeLimitError& e) {
            err << "size limit: " << e.what() << "\n";
            return 3;
        } catch (const InfeasibleError& e) {
            err << "infeasible: " << e.what() << "\n";
            return 1;
        } catch (const OverflowError& e) {
            err << "overflow: " << e.what() << "\n";
            return 3;
        } catch (const SchemaError& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    };

    if (scale_cmd->parsed()) {
        return run(scale_opts, [&](Output& o) { return cmd_scale(scale_opts, scale_l, scale_eta,
                                                                 o); });
    }
    if (prox_cmd->parsed()) {
        return run(prox_opts,
                   [&](Output& o) { return cmd_proximity(prox_e1, prox_e2, prox_opts.oracle, o); });
    }
    if (median_cmd->parsed()) {
        return run(median_opts, [&](Output& o) {
            return cmd_median(median_estimates, median_kind, median_opts.oracle, o);
        });
    }
    if (pack_cmd->parsed()) {
        return run(pack_opts, [&](Output& o) { return cmd_pack(pack_opts, pack_algo, o); });
    }
    if (solve_cmd->parsed()) {
        return run(solve_opts,
                   [&](Output& o) { return cmd_solve(solve_opts, solve_model, solve_objective,
                                                     o); });
    }
    if (color_cmd->parsed()) {
        return run(color_opts,
                   [&](Output& o) { return cmd_color(color_opts, color_task, color_count, o); });
    }
    if (partition_cmd->parsed()) {
        return run(partition_opts,
                   [&](Output& o) { return cmd_partition_color(partition_opts, o); });
    }
    if (paper_cmd->parsed()) {
        return run(paper_opts, [&](Output& o) { return cmd_pipeline_paper(paper_opts, o); });
    }
    if (msg_cmd->parsed()) {
        return run(msg_opts, [&](Output& o) {
            return cmd_pipeline_messages(msg_opts, msg_objective, msg_periods, msg_period, o);
        });
    }
    if (oracle_cmd->parsed()) {
        CommonOptions forced = oracle_opts;
        forced.oracle = true;
        return run(forced,
                   [&](Output& o) { return cmd_solve(forced, oracle_model, oracle_objective, o); });
    }
    if (bench_cmd->parsed()) {
        return run(bench_opts, [&](Output& o) {
            return cmd_bench(bench_opts, bench_kind, bench_n, bench_count, o);
        });
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace multibin::cli
