#pragma once

#include <cstdint>
#include <vector>

#include "starcolor/graph.hpp"

namespace starcolor {

// All simple graphs with exactly n vertices, one representative per
// isomorphism class, built by vertex augmentation + canonical edge masks.
// Counts are self-checked against the known sequence 1,2,4,11,34,156,1044.
// Supported for n in 1..7; the whole atlas is built once and cached.
const std::vector<Graph>& graph_atlas(int n);

// named families, 1-based vertices
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);  // K_{1,leaves}, center is vertex 1

}  // namespace starcolor
