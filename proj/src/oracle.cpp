#include "starcolor/oracle.hpp"

#include <algorithm>
#include <string>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

struct Searcher {
    const Graph& g;
    int k;
    bool use_cap;  // try only colors <= 1 + max used so far
    std::vector<int> colors;
    std::vector<int> order;  // vertices still to color, ascending
    long long nodes = 0;

    bool dfs(size_t idx, int max_used) {
        if (idx == order.size()) return true;
        int v = order[idx];
        int cap = use_cap ? std::min(k, max_used + 1) : k;
        for (int c = 1; c <= cap; ++c) {
            colors[v] = c;
            ++nodes;
            if (partial_star_ok_after(g, colors, v) &&
                dfs(idx + 1, std::max(max_used, c)))
                return true;
            colors[v] = 0;
        }
        return false;
    }
};

void check_size(const Graph& g, const OracleOptions& opts) {
    if (g.num_vertices() > opts.size_bound)
        throw resource_error("oracle refuses " + std::to_string(g.num_vertices()) +
                             " vertices (size_bound " + std::to_string(opts.size_bound) + ")");
}

OracleResult run_search(const Graph& g, int k, std::vector<int> init, bool use_cap,
                        int init_max_used) {
    Searcher s{g, k, use_cap, std::move(init), {}, 0};
    for (int v = 1; v <= g.num_vertices(); ++v)
        if (s.colors[v] == 0) s.order.push_back(v);
    OracleResult res;
    res.feasible = s.dfs(0, init_max_used);
    res.states_explored = s.nodes;
    if (res.feasible) {
        Coloring c{k, s.colors};
        if (!is_star_coloring(g, c).ok)
            throw internal_error("oracle produced an invalid coloring");
        res.coloring = std::move(c);
    }
    return res;
}

}  // namespace

OracleResult oracle_feasible(const Graph& g, int k, const OracleOptions& opts) {
    if (k < 0) throw input_error("k must be nonnegative");
    check_size(g, opts);
    const int n = g.num_vertices();
    if (n == 0) {
        OracleResult res;
        res.feasible = true;
        res.coloring = Coloring{k, std::vector<int>(1, 0)};
        return res;
    }
    if (k == 0) return {};
    return run_search(g, k, std::vector<int>(n + 1, 0), true, 0);
}

int oracle_chromatic(const Graph& g, const OracleOptions& opts) {
    check_size(g, opts);
    if (g.num_vertices() == 0) return 0;
    for (int k = 1; k <= g.num_vertices(); ++k)
        if (oracle_feasible(g, k, opts).feasible) return k;
    throw internal_error("chromatic search exceeded vertex count");
}

OracleResult oracle_feasible_with_fixed(const Graph& g, int k,
                                        const std::vector<std::pair<int, int>>& fixed,
                                        const OracleOptions& opts) {
    if (k < 0) throw input_error("k must be nonnegative");
    check_size(g, opts);
    const int n = g.num_vertices();
    std::vector<int> colors(n + 1, 0);
    for (auto [v, c] : fixed) {
        if (v < 1 || v > n)
            throw input_error("pinned vertex " + std::to_string(v) + " out of range");
        if (c < 1 || c > k)
            throw input_error("pinned color " + std::to_string(c) + " outside 1..k");
        if (colors[v] != 0 && colors[v] != c) return {};  // contradictory pins
        colors[v] = c;
    }
    // the pinned part must itself be violation-free; every violation inside
    // it passes through some pinned vertex, so local checks suffice
    for (auto [v, c] : fixed) {
        (void)c;
        if (!partial_star_ok_after(g, colors, v)) return {};
    }
    return run_search(g, k, std::move(colors), false, 0);
}

}  // namespace starcolor
