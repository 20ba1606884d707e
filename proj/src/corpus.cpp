#include "starcolor/corpus.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

constexpr int kMaxAtlas = 7;

// edge bitmask over 0-based pairs i<j
int pair_bit(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

uint32_t apply_perm(uint32_t m, const std::vector<int>& perm, int n) {
    uint32_t out = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (m >> pair_bit(i, j) & 1) out |= 1u << pair_bit(perm[i], perm[j]);
    return out;
}

uint32_t canonical(uint32_t m, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    uint32_t best = m;
    while (std::next_permutation(perm.begin(), perm.end()))
        best = std::min(best, apply_perm(m, perm, n));
    return best;
}

Graph from_mask(uint32_t m, int n) {
    Graph g(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (m >> pair_bit(i, j) & 1) g.add_edge(i + 1, j + 1);
    return g;
}

std::vector<std::vector<Graph>> build_atlas() {
    constexpr std::array<size_t, kMaxAtlas + 1> expected{0, 1, 2, 4, 11, 34, 156, 1044};
    std::vector<std::vector<uint32_t>> level(kMaxAtlas + 1);
    level[1] = {0u};
    for (int n = 2; n <= kMaxAtlas; ++n) {
        std::set<uint32_t> seen;
        for (uint32_t base : level[n - 1]) {
            // attach vertex n-1 (0-based) to every subset of the others
            for (uint32_t att = 0; att < (1u << (n - 1)); ++att) {
                uint32_t m = base;
                for (int i = 0; i < n - 1; ++i)
                    if (att >> i & 1) m |= 1u << pair_bit(i, n - 1);
                seen.insert(canonical(m, n));
            }
        }
        level[n].assign(seen.begin(), seen.end());
        if (level[n].size() != expected[n])
            throw internal_error("atlas self-check failed at n=" + std::to_string(n) +
                                 ": got " + std::to_string(level[n].size()) +
                                 " classes, expected " + std::to_string(expected[n]));
    }
    std::vector<std::vector<Graph>> atlas(kMaxAtlas + 1);
    for (int n = 1; n <= kMaxAtlas; ++n)
        for (uint32_t m : level[n]) atlas[n].push_back(from_mask(m, n));
    return atlas;
}

}  // namespace

const std::vector<Graph>& graph_atlas(int n) {
    if (n < 1 || n > kMaxAtlas)
        throw input_error("graph atlas covers 1.." + std::to_string(kMaxAtlas) +
                          " vertices");
    static const std::vector<std::vector<Graph>> atlas = build_atlas();
    return atlas[n];
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw input_error("cycles need at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n, 1);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
    return g;
}

Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 2; i <= leaves + 1; ++i) g.add_edge(1, i);
    return g;
}

}  // namespace starcolor
