#ifndef MULTIBIN_IO_HPP_
#define MULTIBIN_IO_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "multibin/bpp.hpp"
#include "multibin/coloring.hpp"
#include "multibin/mse_packing.hpp"
#include "multibin/pipelines.hpp"
#include "multibin/relations.hpp"

namespace multibin::io {

using Json = nlohmann::ordered_json;

enum class Kind { Pack, Mse, Graph, Messages, Production, Scale };

struct PackPayload {
    bpp::PackInstance instance;
    rel::RelationSet relations;
    std::map<int, Rational> profits;
    std::map<int, std::string> colors;
    std::optional<bpp::PackSolution> solution;  // embedded, for validation runs
};

struct MsePayload {
    msepack::ModelKind model = msepack::ModelKind::Knapsack;
    msepack::MseInstance instance;
};

// Compatibility grades between the candidates of two vertices, row per
// candidate of `a`, column per candidate of `b`.
struct CompatBlock {
    std::string a;
    std::string b;
    std::vector<std::vector<int>> grades;
};

struct GraphPayload {
    coloring::Graph graph;
    std::vector<std::string> names;
    std::optional<std::vector<std::vector<int>>> parts;
    std::optional<coloring::CompatGraph> compat;
    std::vector<CompatBlock> compat_blocks;
    std::vector<std::string> palette;
    std::vector<std::vector<Rational>> palette_weights;  // one vector per color
    // Printed reference configurations: vertex name -> candidate name.
    std::vector<std::map<std::string, std::string>> printed_configurations;
    // Printed partition-coloring solutions: vertex name -> color index.
    std::vector<std::map<std::string, int>> printed_partition_solutions;

    int vertex_index(const std::string& name) const;
    std::vector<int> configuration_choice(const std::map<std::string, std::string>& config) const;
};

struct MessagesPayload {
    std::vector<pipeline::Message> messages;
    std::optional<Rational> period;
};

struct ProductionPayload {
    std::vector<pipeline::ProductionItem> items;
    pipeline::ColorChangeTable color_changes;
    int bar_width = 20;
    int period_length = 50;
    int machines = 3;
    // Table fixture annotations: printed general item / machine / period.
    std::map<int, std::string> printed_general_item;
    std::map<int, int> printed_machine;
    std::map<int, int> printed_period;
};

struct ScalePayload {
    int l = 1;
    int eta = 1;
};

struct InstanceFile {
    Kind kind = Kind::Pack;
    std::variant<PackPayload, MsePayload, GraphPayload, MessagesPayload, ProductionPayload,
                 ScalePayload>
        payload;

    const PackPayload& pack() const { return std::get<PackPayload>(payload); }
    const MsePayload& mse() const { return std::get<MsePayload>(payload); }
    const GraphPayload& graph() const { return std::get<GraphPayload>(payload); }
    const MessagesPayload& messages() const { return std::get<MessagesPayload>(payload); }
    const ProductionPayload& production() const { return std::get<ProductionPayload>(payload); }
    const ScalePayload& scale() const { return std::get<ScalePayload>(payload); }
};

// Parses the shared structured notation; throws SchemaError naming the
// offending field (with the byte position for syntax errors).
InstanceFile parse_instance(const std::string& text);

// Canonical serialization; parse(emit(parse(x))) equals parse(x).
Json emit_instance(const InstanceFile& instance);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string digest(const Json& canonical);

Rational parse_rational(const Json& value, const std::string& where);
Json emit_rational(const Rational& value);

Json solution_json(const bpp::PackSolution& solution);
bpp::PackSolution solution_from_json(const Json& json, const std::string& where);

struct Fixture {
    std::string name;
    std::string description;
    std::string text;
};

// Built-in instance files for every table and figure the library models.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

enum class Format { Human, Machine };

// Machine format is the canonical JSON (deterministic, byte-stable); human
// format renders the same report as an aligned outline.
std::string emit_report(const Json& report, Format format);

}  // namespace multibin::io

#endif
