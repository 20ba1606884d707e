#pragma once

#include <cstdint>

#include "starcolor/graph.hpp"
#include "starcolor/ilp.hpp"
#include "starcolor/wexpr.hpp"

namespace starcolor {

// G(n,p); deterministic for a fixed seed
Graph gnp_graph(int n, double p, std::uint64_t seed);

// t cover vertices (random edges among them) plus `clusters` cliques, each
// clique attached wholesale to a random subset of the cover. Twin cover of
// the result is <= t by construction.
Graph cluster_cover_graph(int t, int clusters, int max_clique, std::uint64_t seed);

Coloring random_coloring(int n, int k, std::uint64_t seed);

// random expression on n explicit vertices with labels 1..w; joins are only
// emitted between classes with no existing cross edge, so the result is
// nice and every join adds at least one edge
WExpr random_nice_expression(int n, int w, std::uint64_t seed);

// box-bounded instance with 1..q_max variables, |bounds| <= bound_max,
// a few constraints and sometimes an implication
IlpInstance random_ilp_instance(int q_max, long long bound_max, std::uint64_t seed);

}  // namespace starcolor
