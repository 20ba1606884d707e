#include "starcolor/nd_solver.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

bool same_type(const Graph& g, int u, int v) {
    const auto& nu = g.neighbors(u);
    const auto& nv = g.neighbors(v);
    auto strip = [&](const std::set<int>& s) {
        std::vector<int> r;
        for (int w : s)
            if (w != u && w != v) r.push_back(w);
        return r;
    };
    return strip(nu) == strip(nv);
}

}  // namespace

TypePartition compute_type_partition(const Graph& g) {
    const int n = g.num_vertices();
    TypePartition p;
    p.type_of.assign(n + 1, -1);
    for (int v = 1; v <= n; ++v) {
        bool placed = false;
        for (size_t i = 0; i < p.types.size() && !placed; ++i) {
            if (same_type(g, p.types[i][0], v)) {
                p.types[i].push_back(v);
                p.type_of[v] = static_cast<int>(i);
                placed = true;
            }
        }
        if (!placed) {
            p.type_of[v] = static_cast<int>(p.types.size());
            p.types.push_back({v});
        }
    }
    const int t = p.count();
    p.is_clique.resize(t);
    for (int i = 0; i < t; ++i)
        p.is_clique[i] =
            p.types[i].size() < 2 || g.has_edge(p.types[i][0], p.types[i][1]);
    p.adjacent.assign(t, std::vector<bool>(t, false));
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            p.adjacent[i][j] = p.adjacent[j][i] =
                g.has_edge(p.types[i][0], p.types[j][0]);

    // structural sanity: inside a type everything or nothing, and between two
    // types all edges or none — both forced by the type definition
    for (int i = 0; i < t; ++i) {
        for (size_t a = 0; a < p.types[i].size(); ++a)
            for (size_t b = a + 1; b < p.types[i].size(); ++b)
                if (g.has_edge(p.types[i][a], p.types[i][b]) != p.is_clique[i])
                    throw internal_error("type partition: mixed edges inside a type");
        for (int j = i + 1; j < t; ++j)
            for (int u : p.types[i])
                for (int v : p.types[j])
                    if (g.has_edge(u, v) != p.adjacent[i][j])
                        throw internal_error("type partition: ragged edges between types");
    }
    return p;
}

namespace {

std::string mask_name(unsigned mask, int t) {
    std::string s = "n_{";
    bool first = true;
    for (int i = 0; i < t; ++i) {
        if (mask >> i & 1) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

// rows used repeatedly: sum over supersets of `need`, sum over sets hitting i
LinConstraint superset_sum(unsigned need, int t, Cmp cmp, long long rhs,
                           std::string name) {
    LinConstraint c;
    for (unsigned A = 0; A < (1u << t); ++A)
        if ((A & need) == need) c.terms.push_back({static_cast<int>(A), 1});
    c.cmp = cmp;
    c.rhs = rhs;
    c.name = std::move(name);
    return c;
}

void build_core(const TypePartition& p, int k, IlpInstance& inst) {
    const int t = p.count();
    if (k < 0) throw input_error("k must be nonnegative");
    if (t > 20) throw resource_error("type count " + std::to_string(t) +
                                     " too large for subset variables");
    const unsigned q = 1u << t;
    inst.var_count = static_cast<int>(q);
    for (unsigned A = 0; A < q; ++A) {
        bool viable = true;
        long long ub = k;
        for (int i = 0; i < t && viable; ++i) {
            if (!(A >> i & 1)) continue;
            ub = std::min<long long>(ub, static_cast<long long>(p.types[i].size()));
            for (int j = i + 1; j < t; ++j)
                if ((A >> j & 1) && p.adjacent[i][j]) viable = false;
        }
        inst.lower.push_back(0);
        inst.upper.push_back(viable ? ub : 0);
        inst.var_names.push_back(mask_name(A, t));
    }
    inst.constraints.push_back(superset_sum(0u, t, Cmp::LE, k, "color_budget"));
    for (int i = 0; i < t; ++i) {
        unsigned bit = 1u << i;
        long long sz = static_cast<long long>(p.types[i].size());
        if (p.is_clique[i]) {
            inst.constraints.push_back(
                superset_sum(bit, t, Cmp::EQ, sz, "clique_size[" + std::to_string(i) + "]"));
        } else {
            inst.constraints.push_back(
                superset_sum(bit, t, Cmp::GE, 1, "type_used[" + std::to_string(i) + "]"));
            inst.constraints.push_back(
                superset_sum(bit, t, Cmp::LE, std::min<long long>(k, sz),
                             "type_cap[" + std::to_string(i) + "]"));
        }
    }
}

}  // namespace

IlpInstance build_nd_proper_ilp(const TypePartition& p, int k) {
    IlpInstance inst;
    build_core(p, k, inst);
    return inst;
}

IlpInstance build_nd_ilp(const TypePartition& p, int k, const NdIlpOptions& opts) {
    IlpInstance inst;
    build_core(p, k, inst);
    const int t = p.count();

    // four pairwise distinct types chained by edges: a color shared by the
    // two odd positions forbids a color shared by the two even ones
    std::set<std::tuple<int, int, int, int>> seen4;
    for (int i1 = 0; i1 < t; ++i1)
        for (int i2 = 0; i2 < t; ++i2) {
            if (i2 == i1 || !p.adjacent[i1][i2]) continue;
            for (int i3 = 0; i3 < t; ++i3) {
                if (i3 == i1 || i3 == i2 || !p.adjacent[i2][i3]) continue;
                for (int i4 = 0; i4 < t; ++i4) {
                    if (i4 == i1 || i4 == i2 || i4 == i3 || !p.adjacent[i3][i4]) continue;
                    auto key = std::make_tuple(std::min(i1, i3), std::max(i1, i3),
                                               std::min(i2, i4), std::max(i2, i4));
                    if (!seen4.insert(key).second) continue;
                    unsigned odd = (1u << i1) | (1u << i3);
                    unsigned even = (1u << i2) | (1u << i4);
                    Implication im;
                    im.antecedent = superset_sum(odd, t, Cmp::GE, 1, "");
                    im.consequent = superset_sum(even, t, Cmp::EQ, 0, "");
                    im.name = "chain(" + std::to_string(i1) + "," + std::to_string(i2) +
                              "," + std::to_string(i3) + "," + std::to_string(i4) + ")";
                    inst.implications.push_back(std::move(im));
                }
            }
        }

    // a non-clique type with a repeated color, seen by two distinct neighbor
    // types sharing a color: forbidden
    if (opts.include_three_type_rule) {
        std::set<std::tuple<int, int, int>> seen3;
        for (int i1 = 0; i1 < t; ++i1) {
            if (p.is_clique[i1]) continue;
            for (int i2 = 0; i2 < t; ++i2) {
                if (i2 == i1 || !p.adjacent[i1][i2]) continue;
                for (int i3 = 0; i3 < t; ++i3) {
                    if (i3 == i1 || i3 == i2 || !p.adjacent[i1][i3]) continue;
                    auto key = std::make_tuple(i1, std::min(i2, i3), std::max(i2, i3));
                    if (!seen3.insert(key).second) continue;
                    Implication im;
                    im.antecedent =
                        superset_sum(1u << i1, t, Cmp::LE,
                                     static_cast<long long>(p.types[i1].size()) - 1, "");
                    im.consequent =
                        superset_sum((1u << i2) | (1u << i3), t, Cmp::EQ, 0, "");
                    im.name = "repeat_spread(" + std::to_string(i1) + ";" +
                              std::to_string(i2) + "," + std::to_string(i3) + ")";
                    inst.implications.push_back(std::move(im));
                }
            }
        }
    }

    // two adjacent non-clique types cannot both repeat a color
    for (int i1 = 0; i1 < t; ++i1) {
        if (p.is_clique[i1]) continue;
        for (int i2 = 0; i2 < t; ++i2) {
            if (i2 == i1 || p.is_clique[i2] || !p.adjacent[i1][i2]) continue;
            Implication im;
            im.antecedent = superset_sum(1u << i1, t, Cmp::LE,
                                         static_cast<long long>(p.types[i1].size()) - 1, "");
            im.consequent = superset_sum(1u << i2, t, Cmp::EQ,
                                         static_cast<long long>(p.types[i2].size()), "");
            im.name = "repeat_pair(" + std::to_string(i1) + "->" + std::to_string(i2) + ")";
            inst.implications.push_back(std::move(im));
        }
    }
    return inst;
}

Coloring reconstruct_coloring(const Graph& g, const TypePartition& p, int k,
                              const std::vector<long long>& assignment) {
    const int t = p.count();
    const unsigned q = 1u << t;
    if (assignment.size() != q)
        throw input_error("assignment length does not match subset count");
    std::vector<std::vector<int>> palette(t);
    long long next = 1;
    for (unsigned A = 0; A < q; ++A) {
        if (assignment[A] < 0) throw input_error("negative count in assignment");
        for (long long c = 0; c < assignment[A]; ++c) {
            for (int i = 0; i < t; ++i)
                if (A >> i & 1) palette[i].push_back(static_cast<int>(next));
            ++next;
        }
    }
    if (next - 1 > k) throw input_error("assignment uses more than k colors");

    Coloring col;
    col.k = k;
    col.colors.assign(g.num_vertices() + 1, 0);
    for (int i = 0; i < t; ++i) {
        const auto& vs = p.types[i];
        const auto& cs = palette[i];
        if (p.is_clique[i]) {
            if (cs.size() != vs.size())
                throw input_error("clique type " + std::to_string(i) +
                                  " needs exactly " + std::to_string(vs.size()) + " colors");
            for (size_t j = 0; j < vs.size(); ++j) col.colors[vs[j]] = cs[j];
        } else {
            if (cs.empty() || cs.size() > vs.size())
                throw input_error("type " + std::to_string(i) +
                                  " got an unusable number of colors");
            for (size_t j = 0; j < vs.size(); ++j) col.colors[vs[j]] = cs[j % cs.size()];
        }
    }
    return col;
}

std::vector<long long> induced_assignment(const Graph& g, const TypePartition& p,
                                          const Coloring& c) {
    const int n = g.num_vertices();
    const int t = p.count();
    if (static_cast<int>(c.colors.size()) != n + 1)
        throw input_error("coloring has wrong length for this graph");
    std::vector<unsigned> pattern(c.k + 1, 0);
    std::vector<bool> used(c.k + 1, false);
    for (int v = 1; v <= n; ++v) {
        int col = c.colors[v];
        if (col < 1 || col > c.k)
            throw input_error("vertex " + std::to_string(v) + " has color outside 1..k");
        used[col] = true;
        pattern[col] |= 1u << p.type_of[v];
    }
    std::vector<long long> a(1u << t, 0);
    int used_count = 0;
    for (int col = 1; col <= c.k; ++col) {
        if (!used[col]) continue;
        ++a[pattern[col]];
        ++used_count;
    }
    a[0] += c.k - used_count;
    return a;
}

NdResult solve_nd(const Graph& g, int k, const NdIlpOptions& build,
                  const IlpOptions& ilp, bool verify) {
    TypePartition p = compute_type_partition(g);
    IlpInstance inst = build_nd_ilp(p, k, build);
    IlpResult r = solve_feasibility(inst, ilp);
    NdResult res;
    res.type_count = p.count();
    res.ilp_nodes = r.nodes;
    res.feasible = r.feasible;
    if (r.feasible) {
        Coloring col = reconstruct_coloring(g, p, k, r.assignment);
        if (verify) {
            auto verdict = is_star_coloring(g, col);
            if (!verdict.ok)
                throw internal_error("reconstructed coloring is invalid: " +
                                     verdict.describe());
        }
        res.coloring = std::move(col);
    }
    return res;
}

NdResult nd_proper(const Graph& g, int k, const IlpOptions& ilp) {
    TypePartition p = compute_type_partition(g);
    IlpInstance inst = build_nd_proper_ilp(p, k);
    IlpResult r = solve_feasibility(inst, ilp);
    NdResult res;
    res.type_count = p.count();
    res.ilp_nodes = r.nodes;
    res.feasible = r.feasible;
    if (r.feasible) {
        Coloring col = reconstruct_coloring(g, p, k, r.assignment);
        if (!is_proper_coloring(g, col))
            throw internal_error("reconstructed coloring is not proper");
        res.coloring = std::move(col);
    }
    return res;
}

}  // namespace starcolor
