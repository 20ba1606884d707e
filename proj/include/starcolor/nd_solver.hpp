#pragma once

#include <optional>
#include <vector>

#include "starcolor/graph.hpp"
#include "starcolor/ilp.hpp"

namespace starcolor {

// Partition of V into types: u,v share a type iff N(u)\{v} == N(v)\{u}.
// Each type induces a clique or an independent set; singletons count as
// cliques. Between two types there are either all edges or none.
struct TypePartition {
    std::vector<std::vector<int>> types;      // ascending vertices, ordered by min
    std::vector<bool> is_clique;              // per type
    std::vector<std::vector<bool>> adjacent;  // symmetric, diagonal false
    std::vector<int> type_of;                 // vertex -> type index, [0] unused

    int count() const { return static_cast<int>(types.size()); }
};

TypePartition compute_type_partition(const Graph& g);

struct NdIlpOptions {
    // The rule for a repeated color inside one type seen by two distinct
    // neighbor types. Switchable only so the crosscheck harness can inject a
    // deliberately broken build and prove it gets caught.
    bool include_three_type_rule = true;
};

// Variables n_A, one per subset A of types (bitmask order, bit i = type i).
// n_A = number of colors whose set of types-of-use is exactly A.
IlpInstance build_nd_ilp(const TypePartition& p, int k, const NdIlpOptions& opts = {});

// Only the proper-coloring part (budget, box, per-type counts); no
// star conditions. Used as a subroutine by the twin-cover solver.
IlpInstance build_nd_proper_ilp(const TypePartition& p, int k);

// Turn a satisfying count vector into a concrete coloring: colors are dealt
// to subsets in ascending mask order; cliques get distinct colors, other
// types cycle through their color list so every color gets used.
Coloring reconstruct_coloring(const Graph& g, const TypePartition& p, int k,
                              const std::vector<long long>& assignment);

// Inverse direction: the count vector a coloring induces.
std::vector<long long> induced_assignment(const Graph& g, const TypePartition& p,
                                          const Coloring& c);

struct NdResult {
    bool feasible = false;
    std::optional<Coloring> coloring;
    int type_count = 0;
    long long ilp_nodes = 0;
};

// Star coloring feasibility via the type ILP. Reconstructed colorings are
// always re-verified; a failure there is an internal_error.
NdResult solve_nd(const Graph& g, int k, const NdIlpOptions& build = {},
                  const IlpOptions& ilp = {}, bool verify = true);

// Proper coloring feasibility via the same machinery.
NdResult nd_proper(const Graph& g, int k, const IlpOptions& ilp = {});

}  // namespace starcolor
