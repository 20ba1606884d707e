#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "starcolor/graph.hpp"

namespace starcolor {

// The oracle is deliberately dumb: exhaustive backtracking, meant as ground
// truth for everything cleverer. size_bound guards against accidental use on
// instances where exhaustive search is hopeless.
struct OracleOptions {
    int size_bound = 14;
};

struct OracleResult {
    bool feasible = false;
    std::optional<Coloring> coloring;  // set iff feasible
    long long states_explored = 0;
};

// Is there a star coloring of g with at most k colors?
OracleResult oracle_feasible(const Graph& g, int k, const OracleOptions& opts = {});

// Smallest k such that a star coloring exists.
int oracle_chromatic(const Graph& g, const OracleOptions& opts = {});

// Same question with some vertices pinned to given colors (vertex, color).
// No symmetry breaking here: pinned colors already break it.
OracleResult oracle_feasible_with_fixed(const Graph& g, int k,
                                        const std::vector<std::pair<int, int>>& fixed,
                                        const OracleOptions& opts = {});

}  // namespace starcolor
