#include "multibin/io.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <sstream>

#include "multibin/errors.hpp"

namespace multibin::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

const Json& field(const Json& object, const std::string& key, const std::string& where) {
    const auto it = object.find(key);
    if (it == object.end()) fail(where, "missing field '" + key + "'");
    return *it;
}

int int_field(const Json& value, const std::string& where) {
    if (!value.is_number_integer()) fail(where, "expected an integer");
    return value.get<int>();
}

std::string string_field(const Json& value, const std::string& where) {
    if (!value.is_string()) fail(where, "expected a string");
    return value.get<std::string>();
}

mse::MsEstimate estimate_field(const Json& value, const std::string& where) {
    if (!value.is_string()) fail(where, "estimates use the 'l,eta:[counts]' text form");
    try {
        return mse::MsEstimate::parse(value.get<std::string>());
    } catch (const SchemaError& e) {
        fail(where, e.what());
    }
}

}  // namespace

Rational parse_rational(const Json& value, const std::string& where) {
    try {
        if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
        if (value.is_number_float()) {
            // Shortest round-trip decimal recovers the literal the author
            // wrote, which is then converted exactly.
            char buffer[32];
            const auto [end, ec] =
                std::to_chars(buffer, buffer + sizeof buffer, value.get<double>());
            return Rational::parse(std::string(buffer, end));
        }
        if (value.is_string()) return Rational::parse(value.get<std::string>());
    } catch (const SchemaError& e) {
        fail(where, e.what());
    }
    fail(where, "expected a number or a numeric string");
}

Json emit_rational(const Rational& value) {
    if (value.is_integer()) return Json(value.num());
    return Json(value.str());
}

Json solution_json(const bpp::PackSolution& solution) {
    Json out = Json::object();
    out["bins"] = solution.bins;
    if (!solution.unassigned.empty()) out["unassigned"] = solution.unassigned;
    return out;
}

bpp::PackSolution solution_from_json(const Json& json, const std::string& where) {
    bpp::PackSolution out;
    const Json& bins = field(json, "bins", where);
    if (!bins.is_array()) fail(where, "'bins' must be an array of item-id arrays");
    for (const auto& bin : bins) {
        out.bins.emplace_back();
        for (const auto& id : bin) out.bins.back().push_back(int_field(id, where + ".bins"));
    }
    if (json.contains("unassigned")) {
        for (const auto& id : json["unassigned"]) {
            out.unassigned.push_back(int_field(id, where + ".unassigned"));
        }
    }
    return out;
}

int GraphPayload::vertex_index(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw SchemaError("unknown vertex '" + name + "'");
    return static_cast<int>(it - names.begin());
}

std::vector<int> GraphPayload::configuration_choice(
    const std::map<std::string, std::string>& config) const {
    if (!compat) throw SchemaError("instance has no candidate colors");
    std::vector<int> choice(names.size(), -1);
    for (const auto& [vertex, candidate] : config) {
        const int v = vertex_index(vertex);
        for (std::size_t i = 0; i < compat->candidates[v].size(); ++i) {
            if (compat->candidates[v][i].name == candidate) {
                choice[v] = static_cast<int>(i);
                break;
            }
        }
        if (choice[v] < 0) {
            throw SchemaError("vertex '" + vertex + "' has no candidate '" + candidate + "'");
        }
    }
    for (std::size_t v = 0; v < choice.size(); ++v) {
        if (choice[v] < 0) {
            throw SchemaError("configuration misses vertex '" + names[v] + "'");
        }
    }
    return choice;
}

namespace {

// --- pack ---------------------------------------------------------------

PackPayload parse_pack(const Json& json) {
    PackPayload out;
    out.instance.capacity = parse_rational(field(json, "capacity", "pack"), "capacity");
    if (json.contains("max_bins")) {
        out.instance.max_bins = int_field(json["max_bins"], "max_bins");
    }
    for (const auto& item : field(json, "items", "pack")) {
        const int id = int_field(field(item, "id", "item"), "item.id");
        const std::string where = "item " + std::to_string(id);
        const Rational weight = parse_rational(field(item, "weight", where), where + ".weight");
        if (weight <= Rational(0)) fail(where, "weight must be positive");
        out.instance.items.push_back({id, weight});
        if (item.contains("profit")) {
            out.profits[id] = parse_rational(item["profit"], where + ".profit");
        }
        if (item.contains("color")) {
            out.colors[id] = string_field(item["color"], where + ".color");
        }
    }
    out.instance.check();

    if (json.contains("relations")) {
        const Json& relations = json["relations"];
        const auto known = [&](int id, const std::string& where) {
            try {
                out.instance.item(id);
            } catch (const SchemaError& e) {
                fail(where, e.what());
            }
        };
        if (relations.contains("correspondence")) {
            for (const auto& entry : relations["correspondence"]) {
                const int item = int_field(field(entry, "item", "correspondence"),
                                           "correspondence.item");
                known(item, "correspondence");
                const int bin = int_field(field(entry, "bin", "correspondence"),
                                          "correspondence.bin");
                const int grade = int_field(field(entry, "grade", "correspondence"),
                                            "correspondence.grade");
                out.relations.correspondence[{item, bin}] = grade;
            }
        }
        if (relations.contains("conflicts")) {
            for (const auto& pair : relations["conflicts"]) {
                const int a = int_field(pair.at(0), "conflicts");
                const int b = int_field(pair.at(1), "conflicts");
                known(a, "conflicts");
                known(b, "conflicts");
                out.relations.add_conflict(a, b);
            }
        }
        if (relations.contains("compatibility")) {
            for (const auto& entry : relations["compatibility"]) {
                const Json& items = field(entry, "items", "compatibility");
                const int a = int_field(items.at(0), "compatibility");
                const int b = int_field(items.at(1), "compatibility");
                known(a, "compatibility");
                known(b, "compatibility");
                out.relations.add_compatibility(
                    a, b, int_field(field(entry, "grade", "compatibility"), "compatibility"));
            }
        }
        const auto edge_list = [&](const char* key, std::vector<rel::ItemPair>& into,
                                   bool items_only) {
            if (!relations.contains(key)) return;
            for (const auto& pair : relations[key]) {
                const int a = int_field(pair.at(0), key);
                const int b = int_field(pair.at(1), key);
                if (items_only) {
                    known(a, key);
                    known(b, key);
                }
                into.emplace_back(a, b);
            }
        };
        edge_list("precedence", out.relations.precedence, true);
        edge_list("item_dominance", out.relations.item_dominance, true);
        edge_list("bin_importance", out.relations.bin_importance, false);
        out.relations.check();
    }
    if (json.contains("solution")) {
        out.solution = solution_from_json(json["solution"], "solution");
    }
    return out;
}

Json emit_pack(const PackPayload& pack) {
    Json out = Json::object();
    out["kind"] = "pack";
    out["capacity"] = emit_rational(pack.instance.capacity);
    if (pack.instance.max_bins) out["max_bins"] = *pack.instance.max_bins;
    out["items"] = Json::array();
    for (const auto& item : pack.instance.items) {
        Json j = Json::object();
        j["id"] = item.id;
        j["weight"] = emit_rational(item.weight);
        if (const auto it = pack.profits.find(item.id); it != pack.profits.end()) {
            j["profit"] = emit_rational(it->second);
        }
        if (const auto it = pack.colors.find(item.id); it != pack.colors.end()) {
            j["color"] = it->second;
        }
        out["items"].push_back(std::move(j));
    }
    if (!pack.relations.empty()) {
        Json relations = Json::object();
        if (!pack.relations.correspondence.empty()) {
            relations["correspondence"] = Json::array();
            for (const auto& [key, grade] : pack.relations.correspondence) {
                relations["correspondence"].push_back(
                    {{"item", key.first}, {"bin", key.second}, {"grade", grade}});
            }
        }
        if (!pack.relations.conflicts.empty()) {
            relations["conflicts"] = Json::array();
            for (const auto& [a, b] : pack.relations.conflicts) {
                relations["conflicts"].push_back({a, b});
            }
        }
        if (!pack.relations.compatibility.empty()) {
            relations["compatibility"] = Json::array();
            for (const auto& [pair, grade] : pack.relations.compatibility) {
                relations["compatibility"].push_back(
                    {{"items", {pair.first, pair.second}}, {"grade", grade}});
            }
        }
        const auto edges = [&](const char* key, const std::vector<rel::ItemPair>& list) {
            if (list.empty()) return;
            relations[key] = Json::array();
            for (const auto& [a, b] : list) relations[key].push_back({a, b});
        };
        edges("precedence", pack.relations.precedence);
        edges("item_dominance", pack.relations.item_dominance);
        edges("bin_importance", pack.relations.bin_importance);
        out["relations"] = std::move(relations);
    }
    if (pack.solution) out["solution"] = solution_json(*pack.solution);
    return out;
}

// --- mse -----------------------------------------------------------------

msepack::ModelKind model_from_string(const std::string& name) {
    using msepack::ModelKind;
    if (name == "knapsack") return ModelKind::Knapsack;
    if (name == "multiple-choice") return ModelKind::MultipleChoice;
    if (name == "multiple-knapsack") return ModelKind::MultipleKnapsack;
    if (name == "assignment") return ModelKind::Assignment;
    if (name == "inverse-bpp") return ModelKind::InverseBpp;
    if (name == "conflict-inverse") return ModelKind::ConflictInverse;
    throw SchemaError("unknown model '" + name + "'");
}

std::string model_to_string(msepack::ModelKind kind) {
    using msepack::ModelKind;
    switch (kind) {
        case ModelKind::Knapsack: return "knapsack";
        case ModelKind::MultipleChoice: return "multiple-choice";
        case ModelKind::MultipleKnapsack: return "multiple-knapsack";
        case ModelKind::Assignment: return "assignment";
        case ModelKind::InverseBpp: return "inverse-bpp";
        case ModelKind::ConflictInverse: return "conflict-inverse";
    }
    return "knapsack";
}

MsePayload parse_mse(const Json& json) {
    MsePayload out;
    out.model = model_from_string(string_field(field(json, "model", "mse"), "model"));
    if (json.contains("capacity")) {
        out.instance.capacity = parse_rational(json["capacity"], "capacity");
    }
    if (json.contains("capacities")) {
        for (const auto& c : json["capacities"]) {
            out.instance.capacities.push_back(parse_rational(c, "capacities"));
        }
    }
    if (json.contains("bins")) out.instance.bins = int_field(json["bins"], "bins");
    if (json.contains("assign_mode")) {
        const std::string mode = string_field(json["assign_mode"], "assign_mode");
        if (mode == "all") {
            out.instance.assign_mode = msepack::AssignMode::MustAssignAll;
        } else if (mode == "partial") {
            out.instance.assign_mode = msepack::AssignMode::AllowPartial;
        } else {
            fail("assign_mode", "expected 'all' or 'partial'");
        }
    }
    for (const auto& item : field(json, "items", "mse")) {
        msepack::MseItem m;
        m.id = int_field(field(item, "id", "item"), "item.id");
        const std::string where = "item " + std::to_string(m.id);
        m.weight = parse_rational(field(item, "weight", where), where + ".weight");
        if (m.weight <= Rational(0)) fail(where, "weight must be positive");
        if (item.contains("profit")) m.profit = parse_rational(item["profit"], where);
        if (item.contains("estimate")) m.estimate = estimate_field(item["estimate"], where);
        if (item.contains("group")) m.group = int_field(item["group"], where);
        if (item.contains("wait_age")) m.wait_age = int_field(item["wait_age"], where);
        if (item.contains("position_estimates")) {
            for (const auto& [bin, text] : item["position_estimates"].items()) {
                m.position_estimates.emplace(std::stoi(bin), estimate_field(text, where));
            }
        }
        if (item.contains("position_profits")) {
            for (const auto& [bin, v] : item["position_profits"].items()) {
                m.position_profits.emplace(std::stoi(bin), parse_rational(v, where));
            }
        }
        out.instance.items.push_back(std::move(m));
    }
    if (json.contains("conflicts")) {
        for (const auto& pair : json["conflicts"]) {
            const int a = int_field(pair.at(0), "conflicts");
            const int b = int_field(pair.at(1), "conflicts");
            out.instance.conflicts.insert(a < b ? rel::ItemPair{a, b} : rel::ItemPair{b, a});
        }
    }
    // Estimates, when present, must agree on the declared scale.
    if (json.contains("estimates")) {
        const int l = int_field(field(json["estimates"], "l", "estimates"), "estimates.l");
        const int eta = int_field(field(json["estimates"], "eta", "estimates"), "estimates.eta");
        for (const auto& item : out.instance.items) {
            if (item.estimate && (item.estimate->levels() != l || item.estimate->eta() != eta)) {
                fail("item " + std::to_string(item.id),
                     "estimate does not match the declared (l, eta) scale");
            }
        }
    }
    return out;
}

Json emit_mse(const MsePayload& mse) {
    Json out = Json::object();
    out["kind"] = "mse";
    out["model"] = model_to_string(mse.model);
    if (mse.model == msepack::ModelKind::MultipleKnapsack ||
        mse.model == msepack::ModelKind::Assignment) {
        out["capacities"] = Json::array();
        for (const auto& c : mse.instance.capacities) {
            out["capacities"].push_back(emit_rational(c));
        }
    } else {
        out["capacity"] = emit_rational(mse.instance.capacity);
    }
    if (mse.model == msepack::ModelKind::InverseBpp ||
        mse.model == msepack::ModelKind::ConflictInverse) {
        out["bins"] = mse.instance.bins;
    }
    if (mse.model == msepack::ModelKind::Assignment) {
        out["assign_mode"] =
            mse.instance.assign_mode == msepack::AssignMode::MustAssignAll ? "all" : "partial";
    }
    out["items"] = Json::array();
    for (const auto& item : mse.instance.items) {
        Json j = Json::object();
        j["id"] = item.id;
        j["weight"] = emit_rational(item.weight);
        if (item.profit) j["profit"] = emit_rational(*item.profit);
        if (item.estimate) j["estimate"] = item.estimate->str();
        if (item.group) j["group"] = *item.group;
        if (item.wait_age != 0) j["wait_age"] = item.wait_age;
        if (!item.position_estimates.empty()) {
            Json pe = Json::object();
            for (const auto& [bin, e] : item.position_estimates) {
                pe[std::to_string(bin)] = e.str();
            }
            j["position_estimates"] = std::move(pe);
        }
        if (!item.position_profits.empty()) {
            Json pp = Json::object();
            for (const auto& [bin, v] : item.position_profits) {
                pp[std::to_string(bin)] = emit_rational(v);
            }
            j["position_profits"] = std::move(pp);
        }
        out["items"].push_back(std::move(j));
    }
    if (!mse.instance.conflicts.empty()) {
        out["conflicts"] = Json::array();
        for (const auto& [a, b] : mse.instance.conflicts) out["conflicts"].push_back({a, b});
    }
    return out;
}

// --- graph -----------------------------------------------------------------

GraphPayload parse_graph(const Json& json) {
    GraphPayload out;
    for (const auto& v : field(json, "vertices", "graph")) {
        out.names.push_back(string_field(v, "vertices"));
    }
    out.graph = coloring::Graph(static_cast<int>(out.names.size()));
    for (const auto& e : field(json, "edges", "graph")) {
        out.graph.add_edge(out.vertex_index(string_field(e.at(0), "edges")),
                           out.vertex_index(string_field(e.at(1), "edges")));
    }
    if (json.contains("parts")) {
        out.parts.emplace();
        for (const auto& part : json["parts"]) {
            out.parts->emplace_back();
            for (const auto& v : part) {
                out.parts->back().push_back(out.vertex_index(string_field(v, "parts")));
            }
        }
    }
    if (json.contains("candidates")) {
        coloring::CompatGraph compat;
        compat.graph = out.graph;
        compat.vertex_names = out.names;
        compat.candidates.resize(out.names.size());
        for (const auto& [vertex, list] : json["candidates"].items()) {
            const int v = out.vertex_index(vertex);
            for (const auto& c : list) {
                compat.candidates[v].push_back(
                    {string_field(field(c, "color", "candidates"), "candidates.color"),
                     int_field(field(c, "grade", "candidates"), "candidates.grade")});
            }
        }
        if (json.contains("best_compatibility")) {
            compat.best_compatibility = int_field(json["best_compatibility"],
                                                  "best_compatibility");
        }
        if (json.contains("compatibility")) {
            for (const auto& entry : json["compatibility"]) {
                CompatBlock block;
                block.a = string_field(field(entry, "a", "compatibility"), "compatibility.a");
                block.b = string_field(field(entry, "b", "compatibility"), "compatibility.b");
                const int a = out.vertex_index(block.a);
                const int b = out.vertex_index(block.b);
                const Json& grades = field(entry, "grades", "compatibility");
                for (const auto& row : grades) {
                    block.grades.emplace_back();
                    for (const auto& g : row) {
                        block.grades.back().push_back(int_field(g, "compatibility.grades"));
                    }
                }
                if (block.grades.size() != compat.candidates[a].size()) {
                    fail("compatibility", "grade rows must match candidates of '" + block.a + "'");
                }
                for (std::size_t i = 0; i < block.grades.size(); ++i) {
                    if (block.grades[i].size() != compat.candidates[b].size()) {
                        fail("compatibility",
                             "grade columns must match candidates of '" + block.b + "'");
                    }
                    for (std::size_t j = 0; j < block.grades[i].size(); ++j) {
                        compat.set_compatibility(a, static_cast<int>(i), b, static_cast<int>(j),
                                                 block.grades[i][j]);
                    }
                }
                out.compat_blocks.push_back(std::move(block));
            }
        }
        compat.check();
        out.compat = std::move(compat);
    }
    if (json.contains("color_weights")) {
        const Json& cw = json["color_weights"];
        for (const auto& name : field(cw, "palette", "color_weights")) {
            out.palette.push_back(string_field(name, "palette"));
        }
        for (const auto& w : field(cw, "weights", "color_weights")) {
            std::vector<Rational> vec;
            if (w.is_array()) {
                for (const auto& part : w) vec.push_back(parse_rational(part, "weights"));
            } else {
                vec.push_back(parse_rational(w, "weights"));
            }
            out.palette_weights.push_back(std::move(vec));
        }
        if (out.palette.size() != out.palette_weights.size()) {
            fail("color_weights", "palette and weights must have equal length");
        }
    }
    if (json.contains("printed_configurations")) {
        for (const auto& config : json["printed_configurations"]) {
            std::map<std::string, std::string> m;
            for (const auto& [vertex, cand] : config.items()) {
                m[vertex] = string_field(cand, "printed_configurations");
            }
            out.printed_configurations.push_back(std::move(m));
        }
    }
    if (json.contains("printed_partition_solutions")) {
        for (const auto& config : json["printed_partition_solutions"]) {
            std::map<std::string, int> m;
            for (const auto& [vertex, color] : config.items()) {
                m[vertex] = int_field(color, "printed_partition_solutions");
            }
            out.printed_partition_solutions.push_back(std::move(m));
        }
    }
    return out;
}

Json emit_graph(const GraphPayload& graph) {
    Json out = Json::object();
    out["kind"] = "graph";
    out["vertices"] = graph.names;
    out["edges"] = Json::array();
    for (const auto& [u, v] : graph.graph.edges()) {
        out["edges"].push_back({graph.names[u], graph.names[v]});
    }
    if (graph.parts) {
        out["parts"] = Json::array();
        for (const auto& part : *graph.parts) {
            Json names = Json::array();
            for (const int v : part) names.push_back(graph.names[v]);
            out["parts"].push_back(std::move(names));
        }
    }
    if (graph.compat) {
        Json candidates = Json::object();
        for (std::size_t v = 0; v < graph.compat->candidates.size(); ++v) {
            Json list = Json::array();
            for (const auto& c : graph.compat->candidates[v]) {
                list.push_back({{"color", c.name}, {"grade", c.grade}});
            }
            candidates[graph.names[v]] = std::move(list);
        }
        out["candidates"] = std::move(candidates);
        out["best_compatibility"] = graph.compat->best_compatibility;
        if (!graph.compat_blocks.empty()) {
            Json compatibility = Json::array();
            for (const auto& block : graph.compat_blocks) {
                compatibility.push_back(
                    {{"a", block.a}, {"b", block.b}, {"grades", block.grades}});
            }
            out["compatibility"] = std::move(compatibility);
        }
    }
    if (!graph.palette.empty()) {
        Json cw = Json::object();
        cw["palette"] = graph.palette;
        cw["weights"] = Json::array();
        for (const auto& vec : graph.palette_weights) {
            if (vec.size() == 1) {
                cw["weights"].push_back(emit_rational(vec.front()));
            } else {
                Json parts = Json::array();
                for (const auto& w : vec) parts.push_back(emit_rational(w));
                cw["weights"].push_back(std::move(parts));
            }
        }
        out["color_weights"] = std::move(cw);
    }
    if (!graph.printed_configurations.empty()) {
        out["printed_configurations"] = Json::array();
        for (const auto& config : graph.printed_configurations) {
            Json m = Json::object();
            for (const auto& [vertex, cand] : config) m[vertex] = cand;
            out["printed_configurations"].push_back(std::move(m));
        }
    }
    if (!graph.printed_partition_solutions.empty()) {
        out["printed_partition_solutions"] = Json::array();
        for (const auto& config : graph.printed_partition_solutions) {
            Json m = Json::object();
            for (const auto& [vertex, color] : config) m[vertex] = color;
            out["printed_partition_solutions"].push_back(std::move(m));
        }
    }
    return out;
}

// --- messages / production / scale -------------------------------------------

MessagesPayload parse_messages(const Json& json) {
    MessagesPayload out;
    if (json.contains("period")) out.period = parse_rational(json["period"], "period");
    for (const auto& item : field(json, "items", "messages")) {
        pipeline::Message m;
        m.id = int_field(field(item, "id", "message"), "message.id");
        const std::string where = "message " + std::to_string(m.id);
        m.weight = parse_rational(field(item, "weight", where), where + ".weight");
        if (m.weight <= Rational(0)) fail(where, "weight must be positive");
        if (item.contains("wait_age")) m.wait_age = int_field(item["wait_age"], where);
        if (m.wait_age < 0) fail(where, "wait_age must be non-negative");
        if (item.contains("importance")) {
            m.importance = parse_rational(item["importance"], where);
        }
        if (item.contains("estimate")) m.estimate = estimate_field(item["estimate"], where);
        out.messages.push_back(std::move(m));
    }
    return out;
}

Json emit_messages(const MessagesPayload& messages) {
    Json out = Json::object();
    out["kind"] = "messages";
    if (messages.period) out["period"] = emit_rational(*messages.period);
    out["items"] = Json::array();
    for (const auto& m : messages.messages) {
        Json j = Json::object();
        j["id"] = m.id;
        j["weight"] = emit_rational(m.weight);
        if (m.wait_age != 0) j["wait_age"] = m.wait_age;
        if (m.importance) j["importance"] = emit_rational(*m.importance);
        if (m.estimate) j["estimate"] = m.estimate->str();
        out["items"].push_back(std::move(j));
    }
    return out;
}

ProductionPayload parse_production(const Json& json) {
    ProductionPayload out;
    out.bar_width = int_field(field(json, "bar_width", "production"), "bar_width");
    if (json.contains("period_length")) {
        out.period_length = int_field(json["period_length"], "period_length");
    }
    if (json.contains("machines")) out.machines = int_field(json["machines"], "machines");
    for (const auto& item : field(json, "items", "production")) {
        pipeline::ProductionItem p;
        p.id = int_field(field(item, "id", "production item"), "item.id");
        const std::string where = "item " + std::to_string(p.id);
        p.width = int_field(field(item, "width", where), where + ".width");
        p.length = int_field(field(item, "length", where), where + ".length");
        p.color = string_field(field(item, "color", where), where + ".color");
        if (p.width < 1) fail(where, "width must be positive");
        if (p.length < 1) fail(where, "length must be positive");
        out.items.push_back(p);
        if (item.contains("general_item")) {
            out.printed_general_item[p.id] = string_field(item["general_item"], where);
        }
        if (item.contains("machine")) {
            out.printed_machine[p.id] = int_field(item["machine"], where);
        }
        if (item.contains("period")) {
            out.printed_period[p.id] = int_field(item["period"], where);
        }
    }
    const Json& changes = field(json, "color_changes", "production");
    for (const auto& c : field(changes, "colors", "color_changes")) {
        out.color_changes.colors.push_back(string_field(c, "colors"));
    }
    for (const auto& row : field(changes, "cost", "color_changes")) {
        out.color_changes.cost.emplace_back();
        for (const auto& v : row) {
            out.color_changes.cost.back().push_back(int_field(v, "cost"));
        }
    }
    out.color_changes.check();
    for (const auto& item : out.items) {
        out.color_changes.change_cost(item.color, item.color);  // rejects unknown colors
    }
    return out;
}

Json emit_production(const ProductionPayload& production) {
    Json out = Json::object();
    out["kind"] = "production";
    out["bar_width"] = production.bar_width;
    out["period_length"] = production.period_length;
    out["machines"] = production.machines;
    out["items"] = Json::array();
    for (const auto& item : production.items) {
        Json j = Json::object();
        j["id"] = item.id;
        j["width"] = item.width;
        j["length"] = item.length;
        j["color"] = item.color;
        if (const auto it = production.printed_general_item.find(item.id);
            it != production.printed_general_item.end()) {
            j["general_item"] = it->second;
        }
        if (const auto it = production.printed_machine.find(item.id);
            it != production.printed_machine.end()) {
            j["machine"] = it->second;
        }
        if (const auto it = production.printed_period.find(item.id);
            it != production.printed_period.end()) {
            j["period"] = it->second;
        }
        out["items"].push_back(std::move(j));
    }
    Json changes = Json::object();
    changes["colors"] = production.color_changes.colors;
    changes["cost"] = production.color_changes.cost;
    out["color_changes"] = std::move(changes);
    return out;
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
    Json json;
    try {
        json = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("syntax error: ") + e.what());
    }
    if (!json.is_object()) throw SchemaError("instance must be a JSON object");
    const std::string kind = string_field(field(json, "kind", "instance"), "kind");
    InstanceFile out;
    if (kind == "pack") {
        out.kind = Kind::Pack;
        out.payload = parse_pack(json);
    } else if (kind == "mse") {
        out.kind = Kind::Mse;
        out.payload = parse_mse(json);
    } else if (kind == "graph") {
        out.kind = Kind::Graph;
        out.payload = parse_graph(json);
    } else if (kind == "messages") {
        out.kind = Kind::Messages;
        out.payload = parse_messages(json);
    } else if (kind == "production") {
        out.kind = Kind::Production;
        out.payload = parse_production(json);
    } else if (kind == "scale") {
        out.kind = Kind::Scale;
        ScalePayload scale;
        scale.l = int_field(field(json, "l", "scale"), "l");
        scale.eta = int_field(field(json, "eta", "scale"), "eta");
        if (scale.l < 1 || scale.eta < 1) fail("scale", "l and eta must be at least 1");
        out.payload = scale;
    } else {
        throw SchemaError("unknown instance kind '" + kind + "'");
    }
    return out;
}

Json emit_instance(const InstanceFile& instance) {
    switch (instance.kind) {
        case Kind::Pack: return emit_pack(instance.pack());
        case Kind::Mse: return emit_mse(instance.mse());
        case Kind::Graph: return emit_graph(instance.graph());
        case Kind::Messages: return emit_messages(instance.messages());
        case Kind::Production: return emit_production(instance.production());
        case Kind::Scale: {
            Json out = Json::object();
            out["kind"] = "scale";
            out["l"] = instance.scale().l;
            out["eta"] = instance.scale().eta;
            return out;
        }
    }
    throw Error("unhandled instance kind");
}

std::string digest(const Json& canonical) {
    const std::string text = canonical.dump();
    std::uint64_t hash = 1469598103934665603ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << hash;
    return os.str();
}

namespace {

void render_human(const Json& value, const std::string& label, int indent, std::ostream& os) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (value.is_object()) {
        if (!label.empty()) os << pad << label << ":\n";
        for (const auto& [key, child] : value.items()) {
            render_human(child, key, indent + (label.empty() ? 0 : 1), os);
        }
        return;
    }
    if (value.is_array()) {
        const bool scalars = std::all_of(value.begin(), value.end(), [](const Json& v) {
            return v.is_primitive();
        });
        if (scalars) {
            os << pad << label << ": [";
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i) os << ", ";
                os << (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
            }
            os << "]\n";
            return;
        }
        os << pad << label << ":\n";
        for (std::size_t i = 0; i < value.size(); ++i) {
            render_human(value[i], "- " + std::to_string(i + 1), indent + 1, os);
        }
        return;
    }
    os << pad << label << ": "
       << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
}

}  // namespace

std::string emit_report(const Json& report, Format format) {
    if (format == Format::Machine) return report.dump(2) + "\n";
    std::ostringstream os;
    render_human(report, "", 0, os);
    return os.str();
}

}  // namespace multibin::io
