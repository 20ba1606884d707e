#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace starcolor {

// Simple undirected graph, vertices 1..n. Adjacency kept as ordered sets so
// iteration order (and hence everything downstream) is deterministic.
class Graph {
  public:
    Graph() : n_(0) {}
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v);  // idempotent; rejects loops / out of range
    bool has_edge(int u, int v) const;

    const std::set<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    // Sorted (u < v) edge list, ascending.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  private:
    void check_vertex(int v) const;

    int n_;
    std::vector<std::set<int>> adj_;                 // 1-based, adj_[0] unused
    mutable std::vector<std::pair<int, int>> edges_; // kept sorted
};

// Total coloring: colors[v] in 1..k for v in 1..n. colors[0] unused.
struct Coloring {
    int k = 0;
    std::vector<int> colors;

    int color(int v) const { return colors[v]; }
};

// Outcome of a star-coloring check. On failure exactly one witness field is
// set: either an improperly colored edge or a bicolored 4-vertex path
// (v1,v2,v3,v4) with c(v1)=c(v3) != c(v2)=c(v4).
struct StarVerdict {
    bool ok = false;
    std::optional<std::pair<int, int>> improper_edge;
    std::optional<std::array<int, 4>> bicolored_path;

    std::string describe() const;
};

StarVerdict is_star_coloring(const Graph& g, const Coloring& c);

// Same predicate computed a structurally different way: proper + for every
// pair of color classes the induced union is a star forest. Used to
// cross-examine is_star_coloring in tests.
StarVerdict two_class_star_forest_check(const Graph& g, const Coloring& c);

// Partial colorings use color 0 for "unassigned". Checks that no violation
// exists among already-colored vertices only.
StarVerdict partial_star_check(const Graph& g, const std::vector<int>& colors);

// Incremental form: colors[v] was just assigned and everything else already
// passed; checks only violations through v. Uncolored vertices are skipped.
bool partial_star_ok_after(const Graph& g, const std::vector<int>& colors, int v);

bool is_proper_coloring(const Graph& g, const Coloring& c);

// True twins: adjacent and N(u) \ {v} == N(v) \ {u}.
bool are_true_twins(const Graph& g, int u, int v);

// Subgraph induced by `keep` (ascending). Returns the subgraph with vertices
// renumbered 1..|keep| plus the map new->old.
std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g,
                                                    const std::vector<int>& keep);

}  // namespace starcolor
