#include <algorithm>

#include "multibin/errors.hpp"
#include "multibin/io.hpp"

namespace multibin::io {

namespace {

// Built-in instances. Weights for drawn-only figures follow the printed
// geometry (the drawings carry lengths, not numbers); tables are transcribed
// verbatim. "notes" fields document transcription judgments and are not part
// of the canonical form.
const std::vector<Fixture> kFixtures = {
    {"fig8_scale", "assessment scale request for three levels, three elements",
     R"({"kind":"scale","l":3,"eta":3})"},

    {"fig2_classic_pack", "six items packed into three unit bins, drawn sizes",
     R"({
  "kind": "pack",
  "capacity": 44,
  "items": [
    {"id": 1, "weight": 12}, {"id": 2, "weight": 13}, {"id": 3, "weight": 20},
    {"id": 4, "weight": 15}, {"id": 5, "weight": 21}, {"id": 6, "weight": 34}
  ],
  "solution": {"bins": [[1, 2, 4], [3, 5], [6]]}
})"},

    {"table1_3_relations", "six items, four bins, the full relation family",
     R"({
  "kind": "pack",
  "capacity": 44,
  "max_bins": 4,
  "items": [
    {"id": 1, "weight": 12}, {"id": 2, "weight": 13}, {"id": 3, "weight": 20},
    {"id": 4, "weight": 15}, {"id": 5, "weight": 21}, {"id": 6, "weight": 34}
  ],
  "relations": {
    "correspondence": [
      {"item": 1, "bin": 1, "grade": 3}, {"item": 1, "bin": 2, "grade": 2},
      {"item": 1, "bin": 3, "grade": 1}, {"item": 1, "bin": 4, "grade": 0},
      {"item": 2, "bin": 1, "grade": 3}, {"item": 2, "bin": 2, "grade": 1},
      {"item": 2, "bin": 3, "grade": 0}, {"item": 2, "bin": 4, "grade": 0},
      {"item": 3, "bin": 1, "grade": 1}, {"item": 3, "bin": 2, "grade": 3},
      {"item": 3, "bin": 3, "grade": 2}, {"item": 3, "bin": 4, "grade": 0},
      {"item": 4, "bin": 1, "grade": 3}, {"item": 4, "bin": 2, "grade": 2},
      {"item": 4, "bin": 3, "grade": 2}, {"item": 4, "bin": 4, "grade": 0},
      {"item": 5, "bin": 1, "grade": 1}, {"item": 5, "bin": 2, "grade": 3},
      {"item": 5, "bin": 3, "grade": 1}, {"item": 5, "bin": 4, "grade": 1},
      {"item": 6, "bin": 1, "grade": 2}, {"item": 6, "bin": 2, "grade": 3},
      {"item": 6, "bin": 3, "grade": 3}, {"item": 6, "bin": 4, "grade": 1}
    ],
    "conflicts": [
      [1, 2], [1, 3], [1, 4], [1, 5], [1, 6],
      [2, 3], [2, 4], [2, 5], [3, 4], [3, 5], [4, 5]
    ],
    "compatibility": [
      {"items": [1, 2], "grade": 1}, {"items": [1, 3], "grade": 1},
      {"items": [1, 4], "grade": 1}, {"items": [1, 5], "grade": 0},
      {"items": [1, 6], "grade": 0}, {"items": [2, 3], "grade": 1},
      {"items": [2, 4], "grade": 1}, {"items": [2, 5], "grade": 1},
      {"items": [2, 6], "grade": 0}, {"items": [3, 4], "grade": 1},
      {"items": [3, 5], "grade": 1}, {"items": [3, 6], "grade": 0},
      {"items": [4, 5], "grade": 1}, {"items": [4, 6], "grade": 0},
      {"items": [5, 6], "grade": 0}
    ],
    "precedence": [[1, 2], [1, 5], [2, 4], [3, 5], [5, 4], [4, 6]],
    "item_dominance": [[1, 3], [1, 4], [2, 3], [2, 4], [3, 5], [3, 6], [4, 6]],
    "bin_importance": [[1, 2], [2, 3], [2, 4]]
  },
  "notes": [
    "conflict and compatibility matrices are printed with one asymmetric cell (items 1 and 6); pairs are stored with the stricter reading",
    "the item importance drawing labels two distinct nodes 'Item 2'; the second one is stored as item 4, the only id missing from that drawing"
  ]
})"},

    {"fig11_colored_pack", "eleven colored items, monochromatic bins, drawn sizes",
     R"({
  "kind": "pack",
  "capacity": 44,
  "items": [
    {"id": 1, "weight": 20, "color": "lambda"},
    {"id": 2, "weight": 21, "color": "lambda"},
    {"id": 3, "weight": 15, "color": "mu"},
    {"id": 4, "weight": 12, "color": "lambda"},
    {"id": 5, "weight": 13, "color": "lambda"},
    {"id": 6, "weight": 16, "color": "mu"},
    {"id": 7, "weight": 10, "color": "mu"},
    {"id": 8, "weight": 30, "color": "theta"},
    {"id": 9, "weight": 15, "color": "lambda"},
    {"id": 10, "weight": 10, "color": "theta"},
    {"id": 11, "weight": 31, "color": "theta"}
  ]
})"},

    {"fig12_graph", "wheel-like five-vertex coloring example",
     R"({
  "kind": "graph",
  "vertices": ["p", "q", "u", "v", "w"],
  "edges": [
    ["p", "q"], ["p", "u"], ["q", "v"], ["u", "v"],
    ["w", "p"], ["w", "q"], ["w", "u"], ["w", "v"]
  ]
})"},

    {"fig13_compat_coloring", "coloring with correspondence and compatibility grades",
     R"({
  "kind": "graph",
  "vertices": ["p", "q", "v", "w"],
  "edges": [["p", "q"], ["p", "w"], ["q", "w"], ["q", "v"], ["v", "w"]],
  "candidates": {
    "p": [
      {"color": "P1", "grade": 3}, {"color": "P2", "grade": 1},
      {"color": "P3", "grade": 1}, {"color": "P4", "grade": 3},
      {"color": "P5", "grade": 3}
    ],
    "q": [
      {"color": "Q1", "grade": 3}, {"color": "Q2", "grade": 3},
      {"color": "Q3", "grade": 2}, {"color": "Q4", "grade": 2},
      {"color": "Q5", "grade": 1}
    ],
    "v": [
      {"color": "V1", "grade": 3}, {"color": "V2", "grade": 1},
      {"color": "V3", "grade": 2}, {"color": "V4", "grade": 3},
      {"color": "V5", "grade": 3}
    ],
    "w": [
      {"color": "W1", "grade": 3}, {"color": "W2", "grade": 3},
      {"color": "W3", "grade": 3}, {"color": "W4", "grade": 2},
      {"color": "W5", "grade": 2}
    ]
  },
  "best_compatibility": 4,
  "compatibility": [
    {"a": "p", "b": "q", "grades": [
      [0, 1, 2, 3, 4], [1, 0, 4, 2, 3], [2, 4, 0, 1, 2], [3, 2, 1, 0, 3], [4, 3, 2, 3, 0]
    ]},
    {"a": "p", "b": "v", "grades": [
      [4, 4, 4, 4, 4], [4, 4, 4, 4, 4], [4, 4, 4, 4, 4], [4, 4, 4, 4, 4], [4, 4, 4, 4, 4]
    ]},
    {"a": "p", "b": "w", "grades": [
      [0, 1, 2, 3, 3], [1, 0, 1, 2, 4], [2, 1, 0, 2, 4], [3, 2, 1, 0, 2], [4, 3, 2, 3, 2]
    ]},
    {"a": "q", "b": "v", "grades": [
      [0, 1, 2, 3, 4], [1, 0, 4, 2, 3], [4, 1, 4, 1, 2], [3, 2, 1, 0, 3], [4, 3, 2, 3, 0]
    ]},
    {"a": "q", "b": "w", "grades": [
      [0, 1, 2, 3, 3], [1, 0, 1, 2, 4], [2, 1, 0, 1, 4], [3, 2, 1, 0, 2], [4, 3, 2, 3, 3]
    ]},
    {"a": "v", "b": "w", "grades": [
      [0, 1, 2, 3, 3], [1, 0, 1, 2, 4], [2, 1, 0, 1, 4], [3, 2, 1, 0, 2], [4, 3, 2, 3, 2]
    ]}
  ],
  "printed_configurations": [
    {"p": "P2", "q": "Q3", "v": "V3", "w": "W5"},
    {"p": "P3", "q": "Q5", "v": "V2", "w": "W4"}
  ]
})"},

    {"fig15_partition", "ten vertices in four parts, printed two-color solutions",
     R"({
  "kind": "graph",
  "vertices": ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"],
  "edges": [
    ["1", "2"], ["9", "10"], ["7", "8"], ["2", "10"], ["3", "9"],
    ["3", "10"], ["3", "5"], ["3", "6"], ["2", "6"], ["4", "8"],
    ["4", "10"], ["5", "9"], ["6", "9"], ["8", "10"]
  ],
  "parts": [["1", "2", "3"], ["4", "5"], ["6", "7", "8"], ["9", "10"]],
  "printed_partition_solutions": [
    {"2": 1, "6": 2, "9": 1, "5": 2},
    {"2": 2, "6": 1, "9": 2, "5": 1}
  ],
  "notes": [
    "edge set transcribed from the drawing; one diagonal admits a second reading"
  ]
})"},

    {"table13_production", "twenty-five production items with the color-change costs",
     R"({
  "kind": "production",
  "bar_width": 20,
  "period_length": 50,
  "machines": 3,
  "items": [
    {"id": 1, "width": 8, "length": 43, "color": "col1", "general_item": "I", "machine": 1, "period": 1},
    {"id": 2, "width": 5, "length": 30, "color": "col1", "general_item": "I", "machine": 1, "period": 1},
    {"id": 3, "width": 6, "length": 21, "color": "col1", "general_item": "I", "machine": 1, "period": 1},
    {"id": 4, "width": 5, "length": 21, "color": "col1", "general_item": "I", "machine": 1, "period": 1},
    {"id": 5, "width": 5, "length": 36, "color": "col4", "general_item": "II", "machine": 1, "period": 2},
    {"id": 6, "width": 7, "length": 33, "color": "col4", "general_item": "II", "machine": 1, "period": 2},
    {"id": 7, "width": 7, "length": 28, "color": "col4", "general_item": "II", "machine": 1, "period": 2},
    {"id": 8, "width": 4, "length": 25, "color": "col5", "general_item": "III", "machine": 2, "period": 1},
    {"id": 9, "width": 5, "length": 24, "color": "col5", "general_item": "III", "machine": 2, "period": 1},
    {"id": 10, "width": 6, "length": 23, "color": "col5", "general_item": "III", "machine": 2, "period": 1},
    {"id": 11, "width": 5, "length": 22, "color": "col5", "general_item": "III", "machine": 2, "period": 1},
    {"id": 12, "width": 5, "length": 26, "color": "col2", "general_item": "IV", "machine": 2, "period": 2},
    {"id": 13, "width": 8, "length": 25, "color": "col2", "general_item": "IV", "machine": 2, "period": 2},
    {"id": 14, "width": 5, "length": 23, "color": "col2", "general_item": "IV", "machine": 2, "period": 2},
    {"id": 15, "width": 8, "length": 26, "color": "col6", "general_item": "V", "machine": 2, "period": 3},
    {"id": 16, "width": 6, "length": 25, "color": "col6", "general_item": "V", "machine": 2, "period": 3},
    {"id": 17, "width": 5, "length": 23, "color": "col6", "general_item": "V", "machine": 2, "period": 3},
    {"id": 18, "width": 10, "length": 24, "color": "col3", "general_item": "VI", "machine": 3, "period": 1},
    {"id": 19, "width": 9, "length": 23, "color": "col3", "general_item": "VI", "machine": 3, "period": 1},
    {"id": 20, "width": 6, "length": 24, "color": "col3", "general_item": "VII", "machine": 3, "period": 2},
    {"id": 21, "width": 5, "length": 23, "color": "col3", "general_item": "VII", "machine": 3, "period": 2},
    {"id": 22, "width": 7, "length": 22, "color": "col3", "general_item": "VII", "machine": 3, "period": 2},
    {"id": 23, "width": 6, "length": 30, "color": "col7", "general_item": "VIII", "machine": 3, "period": 3},
    {"id": 24, "width": 8, "length": 27, "color": "col7", "general_item": "VIII", "machine": 3, "period": 3},
    {"id": 25, "width": 6, "length": 25, "color": "col7", "general_item": "VIII", "machine": 3, "period": 3}
  ],
  "color_changes": {
    "colors": ["col1", "col2", "col3", "col4", "col5", "col6", "col7"],
    "cost": [
      [0, 0, 0, 0, 0, 0, 0],
      [4, 0, 4, 4, 2, 1, 3],
      [4, 0, 0, 4, 3, 0, 3],
      [4, 4, 4, 0, 3, 0, 5],
      [4, 0, 3, 4, 0, 0, 3],
      [4, 4, 4, 4, 4, 0, 4],
      [2, 0, 2, 3, 1, 0, 0]
    ]
  }
})"},

    {"messages_demo", "three messages for one channel period",
     R"({
  "kind": "messages",
  "period": 4,
  "items": [
    {"id": 1, "weight": 1},
    {"id": 2, "weight": 2, "wait_age": 2},
    {"id": 3, "weight": 3}
  ]
})"},

    {"mse_knapsack_demo", "two-item knapsack with interval multiset estimates",
     R"({
  "kind": "mse",
  "model": "knapsack",
  "capacity": 1,
  "items": [
    {"id": 1, "weight": "0.5", "estimate": "3,2:[2,0,0]"},
    {"id": 2, "weight": "0.6", "estimate": "3,2:[0,0,2]"}
  ]
})"}
};

}  // namespace

const std::vector<Fixture>& fixtures() { return kFixtures; }

const Fixture& fixture(const std::string& name) {
    const auto it = std::find_if(kFixtures.begin(), kFixtures.end(),
                                 [&](const Fixture& f) { return f.name == name; });
    if (it == kFixtures.end()) throw SchemaError("unknown fixture '" + name + "'");
    return *it;
}

}  // namespace multibin::io
