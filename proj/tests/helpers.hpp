#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "starcolor/graph.hpp"

namespace testutil {

inline starcolor::Graph path(int n) {
    starcolor::Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline starcolor::Graph cycle(int n) {
    starcolor::Graph g = path(n);
    if (n >= 3) g.add_edge(n, 1);
    return g;
}

inline starcolor::Graph complete(int n) {
    starcolor::Graph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
    return g;
}

// K_{1,m}: vertex 1 is the center.
inline starcolor::Graph star(int m) {
    starcolor::Graph g(m + 1);
    for (int i = 2; i <= m + 1; ++i) g.add_edge(1, i);
    return g;
}

inline starcolor::Graph gnp(int n, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    starcolor::Graph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(rng) < p) g.add_edge(i, j);
    return g;
}

// All k^n total colorings, iterated via a callback. Returns false if the
// callback stopped the walk early.
template <typename F>
bool for_each_coloring(int n, int k, F&& fn) {
    std::vector<int> colors(n + 1, 1);
    while (true) {
        if (!fn(colors)) return false;
        int i = n;
        while (i >= 1 && colors[i] == k) colors[i--] = 1;
        if (i < 1) return true;
        ++colors[i];
    }
}

}  // namespace testutil
