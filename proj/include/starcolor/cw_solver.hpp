#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "starcolor/wexpr.hpp"

namespace starcolor {

// One table state, flattened: N (w*k entries), then B (w*w*k*k), then
// A (w * #unordered-label-pairs * k*k). Every entry is a count capped at 2.
using DpState = std::vector<std::uint8_t>;
using DpTable = std::set<DpState>;

// index helper for the flat layout; labels and colors are 1-based
struct CwLayout {
    int w = 0, k = 0;
    int npairs = 0;  // unordered label pairs {j,l}, j <= l
    int b_off = 0, a_off = 0, len = 0;
    std::vector<int> pair_rank;  // (j-1)*w + (l-1) -> pair index, j <= l

    CwLayout() = default;
    CwLayout(int w, int k);

    // N[i,q]: #vertices with label i and color q
    int at_n(int i, int q) const { return (i - 1) * k + (q - 1); }
    // B[i,j,(q,q')]: #label-i color-q vertices with a label-j color-q' neighbor
    int at_b(int i, int j, int q, int qp) const {
        return b_off + (((i - 1) * w + (j - 1)) * k + (q - 1)) * k + (qp - 1);
    }
    // A[i,{j,l},(q,q')]: #label-i color-q vertices with two distinct color-q'
    // neighbors, one labeled j and one labeled l (both labeled j when j == l)
    int at_a(int i, int j, int l, int q, int qp) const {
        int p = pair_rank[(std::min(j, l) - 1) * w + (std::max(j, l) - 1)];
        return a_off + (((i - 1) * npairs + p) * k + (q - 1)) * k + (qp - 1);
    }
};

// the state a concrete colored labeled graph induces; the testing oracle for
// every transition
DpState semantic_state(const LabeledGraph& lg, const Coloring& c, const CwLayout& L);

// at joins, how widely the helper labels a, b of the forbidden-pattern cases
// range: `narrow` excludes the two joined labels, `extended` admits them
enum class JoinCaseRange { narrow, extended };

DpTable dp_introduce(const CwLayout& L, int i);
DpTable dp_union(const CwLayout& L, const DpTable& s1, const DpTable& s2);
DpTable dp_relabel(const CwLayout& L, int i, int j, const DpTable& s);
DpTable dp_join(const CwLayout& L, int i, int j, const DpTable& s,
                JoinCaseRange range = JoinCaseRange::narrow);

struct CwOptions {
    JoinCaseRange join_case_range = JoinCaseRange::narrow;
    long long max_states = 1000000;  // total stored states across all nodes
    bool want_witness = false;       // keep provenance and replay a coloring
    std::string dump_dir;            // when nonempty, write per-node tables
};

struct CwStats {
    long long states_total = 0;
    int nodes = 0;
};

struct CwResult {
    bool feasible = false;
    std::optional<Coloring> coloring;
    CwStats stats;
};

// decides star-colorability with k colors along the expression; the witness
// (when requested) is replayed from per-state provenance and re-verified
CwResult solve_cw(const WExpr& e, int k, const CwOptions& opts = {});

// per-arena-node tables (same order as e.nodes); used by table-level tests
std::vector<DpTable> cw_tables(const WExpr& e, int k, const CwOptions& opts = {});

}  // namespace starcolor
