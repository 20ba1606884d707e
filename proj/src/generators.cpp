#include "starcolor/generators.hpp"

#include <algorithm>
#include <random>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

// uniform in [0,1); spelled out so results do not depend on library
// distribution internals, only on the engine's documented output
double unit_real(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % n); }

}  // namespace

Graph gnp_graph(int n, double p, std::uint64_t seed) {
    if (n < 0) throw input_error("gnp: negative vertex count");
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (unit_real(rng) < p) g.add_edge(u, v);
    return g;
}

Graph cluster_cover_graph(int t, int clusters, int max_clique, std::uint64_t seed) {
    if (t < 0 || clusters < 0 || max_clique < 1)
        throw input_error("cluster_cover: bad sizes");
    std::mt19937_64 rng(seed);
    std::vector<int> sizes(clusters);
    for (int& s : sizes) s = 1 + pick(rng, max_clique);
    int n = t;
    for (int s : sizes) n += s;
    Graph g(n);
    for (int u = 1; u <= t; ++u)
        for (int v = u + 1; v <= t; ++v)
            if (rng() & 1) g.add_edge(u, v);
    int next = t + 1;
    for (int s : sizes) {
        std::uint64_t mask = t > 0 ? rng() % (std::uint64_t(1) << t) : 0;
        for (int a = 0; a < s; ++a) {
            for (int b = a + 1; b < s; ++b) g.add_edge(next + a, next + b);
            for (int i = 0; i < t; ++i)
                if (mask >> i & 1) g.add_edge(next + a, i + 1);
        }
        next += s;
    }
    return g;
}

Coloring random_coloring(int n, int k, std::uint64_t seed) {
    if (n < 0 || k < 1) throw input_error("random_coloring: bad sizes");
    std::mt19937_64 rng(seed);
    Coloring c{k, std::vector<int>(n + 1, 0)};
    for (int v = 1; v <= n; ++v) c.colors[v] = 1 + pick(rng, k);
    return c;
}

namespace {

struct ExprBuilder {
    WExpr e;
    std::vector<int> label;               // vertex id -> current label
    std::vector<std::vector<bool>> adj;   // edges built so far

    explicit ExprBuilder(int n)
        : label(n + 1, 0), adj(n + 1, std::vector<bool>(n + 1, false)) {}

    struct Frag {
        int root;
        std::vector<int> verts;
    };

    std::vector<int> members(const Frag& f, int lab) const {
        std::vector<int> out;
        for (int v : f.verts)
            if (label[v] == lab) out.push_back(v);
        return out;
    }

    bool joinable(const Frag& f, int i, int j) const {
        auto vi = members(f, i), vj = members(f, j);
        if (vi.empty() || vj.empty()) return false;
        for (int u : vi)
            for (int v : vj)
                if (adj[u][v]) return false;
        return true;
    }

    void apply_join(Frag& f, int i, int j) {
        for (int u : members(f, i))
            for (int v : members(f, j)) adj[u][v] = adj[v][u] = true;
        e.nodes.push_back({WNode::Kind::join, i, j, f.root, -1});
        f.root = static_cast<int>(e.nodes.size()) - 1;
    }

    void apply_relabel(Frag& f, int i, int j) {
        for (int v : f.verts)
            if (label[v] == i) label[v] = j;
        e.nodes.push_back({WNode::Kind::relabel, i, j, f.root, -1});
        f.root = static_cast<int>(e.nodes.size()) - 1;
    }
};

// join or relabel, picked from whatever the fragment currently permits
void random_ops(ExprBuilder& B, ExprBuilder::Frag& f, int w, int count,
                std::mt19937_64& rng) {
    for (int step = 0; step < count; ++step) {
        bool want_join = rng() % 3 != 0;
        if (want_join) {
            std::vector<std::pair<int, int>> cands;
            for (int i = 1; i <= w; ++i)
                for (int j = i + 1; j <= w; ++j)
                    if (B.joinable(f, i, j)) cands.push_back({i, j});
            if (cands.empty()) continue;
            auto [i, j] = cands[rng() % cands.size()];
            B.apply_join(f, i, j);
        } else {
            std::vector<int> present;
            for (int i = 1; i <= w; ++i)
                if (!B.members(f, i).empty()) present.push_back(i);
            if (present.empty() || w < 2) continue;
            int i = present[rng() % present.size()];
            int j = 1 + static_cast<int>(rng() % w);
            if (j == i) j = 1 + j % w;
            B.apply_relabel(f, i, j);
        }
    }
}

}  // namespace

WExpr random_nice_expression(int n, int w, std::uint64_t seed) {
    if (n < 1 || w < 1) throw input_error("random_nice_expression: bad sizes");
    std::mt19937_64 rng(seed);
    ExprBuilder B(n);
    std::vector<ExprBuilder::Frag> frags;
    for (int v = 1; v <= n; ++v) {
        int lab = 1 + static_cast<int>(rng() % w);
        B.label[v] = lab;
        B.e.nodes.push_back({WNode::Kind::intro, v, lab, -1, -1});
        frags.push_back({static_cast<int>(B.e.nodes.size()) - 1, {v}});
    }
    while (frags.size() > 1) {
        size_t a = rng() % frags.size();
        size_t b = rng() % (frags.size() - 1);
        if (b >= a) ++b;
        if (a > b) std::swap(a, b);
        B.e.nodes.push_back(
            {WNode::Kind::unite, 0, 0, frags[a].root, frags[b].root});
        frags[a].root = static_cast<int>(B.e.nodes.size()) - 1;
        frags[a].verts.insert(frags[a].verts.end(), frags[b].verts.begin(),
                              frags[b].verts.end());
        frags.erase(frags.begin() + static_cast<long>(b));
        random_ops(B, frags[a], w, static_cast<int>(rng() % 4), rng);
    }
    random_ops(B, frags[0], w, 1 + static_cast<int>(rng() % 3), rng);
    B.e.root = frags[0].root;
    B.e.declared_w = w;
    return B.e;
}

IlpInstance random_ilp_instance(int q_max, long long bound_max, std::uint64_t seed) {
    if (q_max < 1 || bound_max < 0) throw input_error("random_ilp: bad sizes");
    std::mt19937_64 rng(seed);
    auto span = [&](long long lo, long long hi) {
        return lo + static_cast<long long>(rng() % std::uint64_t(hi - lo + 1));
    };
    IlpInstance inst;
    inst.var_count = 1 + pick(rng, q_max);
    for (int i = 0; i < inst.var_count; ++i) {
        long long a = span(-bound_max, bound_max);
        long long b = span(-bound_max, bound_max);
        inst.lower.push_back(std::min(a, b));
        inst.upper.push_back(std::max(a, b));
    }
    auto constraint = [&](int max_terms) {
        LinConstraint c;
        int terms = 1 + pick(rng, std::min(max_terms, inst.var_count));
        std::vector<int> vars(inst.var_count);
        for (int i = 0; i < inst.var_count; ++i) vars[i] = i;
        for (int t = 0; t < terms; ++t) {
            int at = t + pick(rng, inst.var_count - t);
            std::swap(vars[t], vars[at]);
            long long coef = span(-2, 2);
            if (coef == 0) coef = 1;
            c.terms.push_back({vars[t], coef});
        }
        std::sort(c.terms.begin(), c.terms.end(),
                  [](const LinTerm& x, const LinTerm& y) { return x.var < y.var; });
        int which = pick(rng, 3);
        c.cmp = which == 0 ? Cmp::LE : which == 1 ? Cmp::GE : Cmp::EQ;
        c.rhs = span(-2 * bound_max, 2 * bound_max);
        return c;
    };
    int m = 1 + pick(rng, 3);
    for (int i = 0; i < m; ++i) inst.constraints.push_back(constraint(3));
    if (rng() & 1) {
        Implication imp;
        imp.antecedent = constraint(1);
        imp.consequent = constraint(2);
        inst.implications.push_back(imp);
    }
    return inst;
}

}  // namespace starcolor
