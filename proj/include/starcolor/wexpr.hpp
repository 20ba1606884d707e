#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starcolor/graph.hpp"

namespace starcolor {

// labeled graph: labels[v] in 1..w for v in 1..n (labels[0] unused)
struct LabeledGraph {
    Graph g;
    std::vector<int> labels;
};

// expression over labels: introduce / disjoint union / relabel / join,
// stored as a flat arena with a root index
struct WNode {
    enum class Kind { intro, unite, relabel, join };
    Kind kind;
    int a = 0;  // intro: vertex id; relabel: i; join: i
    int b = 0;  // intro: label;     relabel: j; join: j
    int left = -1;
    int right = -1;  // unite only
};

struct WExpr {
    std::vector<WNode> nodes;
    int root = -1;
    int declared_w = 0;  // from the "w <int>" header, 0 if absent
};

// grammar: v(id,label) | u(e,e) | rho(i->j,e) | eta(i,j,e), optional
// leading "w <int>". Throws input_error with line:column on bad input.
WExpr parse_wexpr(const std::string& text);

// canonical text; parse(print(e)) reproduces e
std::string print_wexpr(const WExpr& e);

// maximum label mentioned anywhere (introduce labels and rho/eta indices)
int width(const WExpr& e);

// builds the graph bottom-up; introduce ids are ranked (ascending) to give
// graph vertices 1..n
LabeledGraph evaluate(const WExpr& e);

// a join re-introducing an existing edge, if any
struct JoinViolation {
    int node;                      // arena index of the offending join
    std::pair<int, int> vertices;  // an edge it would re-add
};

std::optional<JoinViolation> check_nice(const WExpr& e);

// removes joins that add zero new edges; same graph, may still be non-nice
WExpr drop_redundant_joins(const WExpr& e);

// the subtree rooted at `node` as a standalone expression
WExpr subexpression(const WExpr& e, int node);

WExpr load_wexpr_file(const std::string& path);

}  // namespace starcolor
