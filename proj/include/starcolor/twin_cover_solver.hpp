#pragma once

#include <optional>
#include <string>
#include <vector>

#include "starcolor/graph.hpp"
#include "starcolor/ilp.hpp"

namespace starcolor {

// X is a twin cover if every edge is covered by X or joins true twins.
bool is_twin_cover(const Graph& g, const std::vector<int>& x);

// Smallest twin cover with size <= t_max, or nullopt. Deterministic
// (iterative deepening, branching on the first uncovered edge).
std::optional<std::vector<int>> compute_twin_cover(const Graph& g, int t_max);

// Audit record for one structural rewrite done while solving.
struct SurgeryRecord {
    enum class Kind { merge_within_type, drop_duplicate_clique, link_across_types };
    Kind kind;
    std::vector<int> vertices_a;  // merged union / kept clique / first block
    std::vector<int> vertices_b;  // empty / deleted clique / second block
    std::string note;
};

const char* surgery_kind_name(SurgeryRecord::Kind k);

// G - X decomposes into cliques; each one keeps the bitmask of its
// X-neighborhood. Cliques sharing a mask form a type. Blocks start out as
// one clique each and only ever merge within a type.
struct CliqueInfo {
    std::vector<int> vertices;  // ascending
    unsigned mask = 0;          // bit i = adjacent to x[i]
    int block = -1;             // stable block id
    bool alive = true;
};

struct BlockStructure {
    std::vector<int> x;  // the cover, ascending
    std::vector<CliqueInfo> cliques;
    std::vector<std::vector<bool>> linked;  // block x block, forced-distinct pairs
    std::vector<SurgeryRecord> log;
    std::vector<std::pair<int, int>> deleted;  // (clique idx, kept clique idx)

    std::vector<int> alive_cliques() const;  // indices, ascending
};

BlockStructure build_clique_types(const Graph& g, const std::vector<int>& x);

// If a type has several cliques and two cover vertices it sees share an
// f-color, all its vertices must use pairwise distinct colors: merge the
// type's cliques into one block.
void saturate_repeated_color_types(BlockStructure& bs, const std::vector<int>& f);

// Leftover duplicate cliques of one type are interchangeable; keep the
// largest (ties: smallest minimum vertex) and drop the rest.
void prune_duplicate_cliques(BlockStructure& bs);

// Two types A != B seeing cover vertices u in A∩B and v in B with the same
// f-color force all colors across their blocks to differ: link the blocks.
void saturate_conflicting_type_pairs(BlockStructure& bs, const std::vector<int>& f);

// All partitions of t cover vertices into at most min(t,k) color classes,
// as restricted growth strings (values 1..b), lexicographic order.
std::vector<std::vector<int>> enumerate_x_colorings(int t, int k);

struct TcOptions {
    std::optional<std::vector<int>> supplied_cover;
    IlpOptions ilp;
};

struct TcStats {
    long long f_guesses = 0;
    long long reuse_guesses = 0;
};

// One guess: f[i] is the color of x[i], using colors 1..b contiguously.
// Returns a full star coloring extending f (colors of x renamed exactly f),
// or nullopt if none exists. Surgery records for the guess are appended.
std::optional<Coloring> solve_for_fixed_f(const Graph& g, const std::vector<int>& x,
                                          const std::vector<int>& f, int k,
                                          std::vector<SurgeryRecord>* log = nullptr,
                                          TcStats* stats = nullptr,
                                          const IlpOptions& ilp = {});

struct TcResult {
    bool feasible = false;
    std::optional<Coloring> coloring;
    std::vector<int> cover;
    TcStats stats;
    std::vector<SurgeryRecord> surgery;  // from the successful guess
};

TcResult solve_tc(const Graph& g, int k, int t_max, const TcOptions& opts = {});

}  // namespace starcolor
