#include "starcolor/crosscheck.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "starcolor/corpus.hpp"
#include "starcolor/cw_solver.hpp"
#include "starcolor/generators.hpp"
#include "starcolor/oracle.hpp"
#include "starcolor/twin_cover_solver.hpp"

namespace starcolor {

namespace {

constexpr size_t kMaxReproducers = 12;

void report(SuiteResult& r, const std::string& what) {
    ++r.disagreements;
    if (r.reproducers.size() < kMaxReproducers) r.reproducers.push_back(what);
}

std::string fmt_graph(const Graph& g) {
    std::ostringstream out;
    out << "n=" << g.num_vertices() << " edges=";
    bool first = true;
    for (auto [u, v] : g.edges()) {
        if (!first) out << ",";
        out << u << "-" << v;
        first = false;
    }
    if (first) out << "(none)";
    return out.str();
}

std::string fmt_colors(const std::vector<int>& colors) {
    std::ostringstream out;
    for (size_t v = 1; v < colors.size(); ++v) {
        if (v > 1) out << ",";
        out << colors[v];
    }
    return out.str();
}

// ---- expression corpus -------------------------------------------------

struct ExprChain {
    WExpr e;
    int intro(int id, int lab) { return push({WNode::Kind::intro, id, lab, -1, -1}); }
    int unite(int l, int r) { return push({WNode::Kind::unite, 0, 0, l, r}); }
    int relab(int i, int j, int c) { return push({WNode::Kind::relabel, i, j, c, -1}); }
    int join(int i, int j, int c) { return push({WNode::Kind::join, i, j, c, -1}); }
    WExpr done(int root) {
        e.root = root;
        return e;
    }

  private:
    int push(WNode n) {
        e.nodes.push_back(n);
        return static_cast<int>(e.nodes.size()) - 1;
    }
};

// endpoint carries label 2, interior 1, parking label 3
WExpr path_expr(int n) {
    ExprChain c;
    if (n == 1) return c.done(c.intro(1, 1));
    int cur = c.join(1, 2, c.unite(c.intro(1, 1), c.intro(2, 2)));
    for (int v = 3; v <= n; ++v) {
        int parked = c.relab(2, 3, cur);
        int joined = c.join(3, 2, c.unite(parked, c.intro(v, 2)));
        cur = c.relab(3, 1, joined);
    }
    return c.done(cur);
}

WExpr clique_expr(int n) {
    ExprChain c;
    if (n == 1) return c.done(c.intro(1, 1));
    int cur = c.join(1, 2, c.unite(c.intro(1, 1), c.intro(2, 2)));
    for (int v = 3; v <= n; ++v)
        cur = c.join(1, 2, c.unite(c.relab(2, 1, cur), c.intro(v, 2)));
    return c.done(cur);
}

WExpr star_expr(int leaves) {
    ExprChain c;
    int cur = c.intro(2, 2);
    for (int v = 3; v <= leaves + 1; ++v) cur = c.unite(cur, c.intro(v, 2));
    return c.done(c.join(1, 2, c.unite(c.intro(1, 1), cur)));
}

WExpr biclique_expr(int a, int b) {
    ExprChain c;
    int left = c.intro(1, 1);
    for (int v = 2; v <= a; ++v) left = c.unite(left, c.intro(v, 1));
    int right = c.intro(a + 1, 2);
    for (int v = a + 2; v <= a + b; ++v) right = c.unite(right, c.intro(v, 2));
    return c.done(c.join(1, 2, c.unite(left, right)));
}

// C5 and C6 with three labels: build two short arms, glue them at the
// middle, park the interior on one label so both open ends share another,
// then one final vertex joins both ends at once and closes the cycle.
// Vertex ids are chosen so the result is edge-identical to cycle_graph.
const char* c5_text =
    "eta(1,2,u(rho(2->3,eta(2,3,u(eta(1,3,u(v(4,3),v(5,1))),"
    "eta(1,2,u(v(3,2),v(2,1)))))),v(1,2)))";
const char* c6_text =
    "eta(1,2,u(rho(1->3,eta(1,3,u(u(eta(1,2,u(v(6,2),v(5,1))),v(4,3)),"
    "eta(1,2,u(v(2,2),v(3,1)))))),v(1,1)))";

// all valid-coloring states of lg, for table comparisons
DpTable semantic_table(const LabeledGraph& lg, int k, const CwLayout& L) {
    DpTable out;
    int n = lg.g.num_vertices();
    std::vector<int> colors(n + 1, 1);
    while (true) {
        Coloring c{k, colors};
        if (is_star_coloring(lg.g, c).ok) out.insert(semantic_state(lg, c, L));
        int v = 1;
        while (v <= n && ++colors[v] > k) colors[v++] = 1;
        if (v > n) break;
    }
    return out;
}

// ---- pinned search with distinctness groups ----------------------------

// Star-colorability with some vertices pinned, some deleted, and some
// vertex groups forced rainbow. Direct search; the arbiter for the
// structural rewrites.
bool pinned_groups_feasible(const Graph& g, int k,
                            const std::vector<std::pair<int, int>>& pins,
                            const std::vector<std::vector<int>>& groups,
                            const std::vector<char>& alive) {
    int n = g.num_vertices();
    std::vector<int> colors(n + 1, 0);
    std::vector<std::vector<int>> groups_of(n + 1);
    for (size_t gi = 0; gi < groups.size(); ++gi)
        for (int v : groups[gi]) groups_of[v].push_back(static_cast<int>(gi));
    auto group_ok = [&](int v) {
        for (int gi : groups_of[v])
            for (int u : groups[gi])
                if (u != v && colors[u] != 0 && colors[u] == colors[v]) return false;
        return true;
    };
    for (auto [v, c] : pins) {
        colors[v] = c;
        if (!group_ok(v)) return false;
    }
    if (!partial_star_check(g, colors).ok) return false;
    std::vector<int> free_verts;
    for (int v = 1; v <= n; ++v)
        if (alive[v] && colors[v] == 0) free_verts.push_back(v);
    auto dfs = [&](auto&& self, size_t at) -> bool {
        if (at == free_verts.size()) return true;
        int v = free_verts[at];
        for (int c = 1; c <= k; ++c) {
            colors[v] = c;
            if (group_ok(v) && partial_star_ok_after(g, colors, v) &&
                self(self, at + 1))
                return true;
        }
        colors[v] = 0;
        return false;
    };
    return dfs(dfs, 0);
}

// rainbow groups induced by a block structure: the alive vertices of every
// block, plus the union of every linked block pair
std::vector<std::vector<int>> block_groups(const BlockStructure& bs) {
    std::vector<std::vector<int>> by_block;
    for (int ci : bs.alive_cliques()) {
        const CliqueInfo& q = bs.cliques[ci];
        if (q.block >= static_cast<int>(by_block.size()))
            by_block.resize(q.block + 1);
        by_block[q.block].insert(by_block[q.block].end(), q.vertices.begin(),
                                 q.vertices.end());
    }
    std::vector<std::vector<int>> out;
    for (auto& grp : by_block) {
        std::sort(grp.begin(), grp.end());
        if (grp.size() >= 2) out.push_back(grp);
    }
    for (size_t p = 0; p < bs.linked.size(); ++p)
        for (size_t q = p + 1; q < bs.linked[p].size(); ++q) {
            if (!bs.linked[p][q]) continue;
            std::vector<int> both;
            if (p < by_block.size())
                both.insert(both.end(), by_block[p].begin(), by_block[p].end());
            if (q < by_block.size())
                both.insert(both.end(), by_block[q].begin(), by_block[q].end());
            std::sort(both.begin(), both.end());
            if (both.size() >= 2) out.push_back(both);
        }
    return out;
}

std::vector<char> alive_mask(const Graph& g, const BlockStructure& bs) {
    std::vector<char> alive(g.num_vertices() + 1, 0);
    for (int v : bs.x) alive[v] = 1;
    for (int ci : bs.alive_cliques())
        for (int v : bs.cliques[ci].vertices) alive[v] = 1;
    return alive;
}

}  // namespace

std::vector<WExpr> expression_corpus(std::uint64_t seed, int generated) {
    std::vector<WExpr> out;
    for (int n = 2; n <= 8; ++n) out.push_back(path_expr(n));
    for (int n = 2; n <= 8; ++n) out.push_back(clique_expr(n));
    for (int m = 2; m <= 7; ++m) out.push_back(star_expr(m));
    // cycles: C3 is K3 above, C4 is K_{2,2}; C7 and up have clique-width 4
    out.push_back(biclique_expr(2, 2));
    out.push_back(parse_wexpr(c5_text));
    out.push_back(parse_wexpr(c6_text));
    for (auto [a, b] : {std::pair{2, 3}, {2, 4}, {3, 3}, {3, 5}, {4, 4}})
        out.push_back(biclique_expr(a, b));
    for (int i = 0; i < generated; ++i)
        out.push_back(
            random_nice_expression(3 + i % 6, 2 + i % 2, seed + 7 * i));
    return out;
}

SuiteResult suite_verifier_pair(std::uint64_t seed, int trials) {
    SuiteResult r{"verifier-pair", 0, 0, {}};
    // exhaustive: every edge subset on <= 5 vertices, every 3-coloring
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) pairs.push_back({u, v});
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size());
             ++mask) {
            Graph g(n);
            for (size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) g.add_edge(pairs[i].first, pairs[i].second);
            std::vector<int> colors(n + 1, 1);
            while (true) {
                Coloring c{3, colors};
                ++r.cases;
                if (is_star_coloring(g, c).ok != two_class_star_forest_check(g, c).ok)
                    report(r, fmt_graph(g) + " colors=" + fmt_colors(colors));
                int v = 1;
                while (v <= n && ++colors[v] > 3) colors[v++] = 1;
                if (v > n) break;
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        int n = 1 + static_cast<int>(rng() % 10);
        double p = 0.15 + 0.1 * static_cast<double>(rng() % 8);
        Graph g = gnp_graph(n, p, rng());
        int k = 1 + static_cast<int>(rng() % 4);
        Coloring c = random_coloring(n, k, rng());
        ++r.cases;
        if (is_star_coloring(g, c).ok != two_class_star_forest_check(g, c).ok)
            report(r, fmt_graph(g) + " colors=" + fmt_colors(c.colors));
    }
    return r;
}

SuiteResult suite_nd_vs_oracle(int n_max, int k_max, const NdIlpOptions& build) {
    SuiteResult r{"nd-vs-oracle", 0, 0, {}};
    for (int n = 1; n <= std::min(n_max, 7); ++n)
        for (const Graph& g : graph_atlas(n)) {
            TypePartition tp = compute_type_partition(g);
            for (int k = 1; k <= k_max; ++k) {
                ++r.cases;
                // verification off: this suite does its own witness check and
                // records failures as disagreements instead of throwing
                NdResult nd = solve_nd(g, k, build, {}, false);
                OracleResult want = oracle_feasible(g, k);
                if (nd.feasible != want.feasible) {
                    report(r, fmt_graph(g) + " k=" + std::to_string(k) + " nd=" +
                                  (nd.feasible ? "feasible" : "infeasible") +
                                  " oracle=" +
                                  (want.feasible ? "feasible" : "infeasible"));
                    continue;
                }
                if (nd.feasible &&
                    !(nd.coloring && is_star_coloring(g, *nd.coloring).ok))
                    report(r, fmt_graph(g) + " k=" + std::to_string(k) +
                                  " nd witness failed verification");
                if (want.feasible) {
                    auto counts = induced_assignment(g, tp, *want.coloring);
                    if (!check_assignment(build_nd_ilp(tp, k, build), counts))
                        report(r, fmt_graph(g) + " k=" + std::to_string(k) +
                                      " oracle witness rejected by the type ilp");
                }
            }
        }
    return r;
}

SuiteResult suite_tc_vs_oracle(int n_max, int k_max) {
    SuiteResult r{"tc-vs-oracle", 0, 0, {}};
    for (int n = 1; n <= std::min(n_max, 7); ++n)
        for (const Graph& g : graph_atlas(n)) {
            if (!compute_twin_cover(g, 3)) continue;
            for (int k = 1; k <= k_max; ++k) {
                ++r.cases;
                TcResult tc = solve_tc(g, k, 3);
                bool want = oracle_feasible(g, k).feasible;
                if (tc.feasible != want) {
                    report(r, fmt_graph(g) + " k=" + std::to_string(k) + " tc=" +
                                  (tc.feasible ? "feasible" : "infeasible") +
                                  " oracle=" +
                                  (want ? "feasible" : "infeasible"));
                    continue;
                }
                if (tc.feasible &&
                    !(tc.coloring && is_star_coloring(g, *tc.coloring).ok))
                    report(r, fmt_graph(g) + " k=" + std::to_string(k) +
                                  " lifted coloring failed verification");
            }
        }
    return r;
}

SuiteResult suite_surgery(std::uint64_t seed, int trials) {
    SuiteResult r{"surgery-safety", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        Graph g;
        if (trial % 2 == 0) {
            int n = 4 + static_cast<int>(rng() % 4);
            double p = 0.3 + 0.2 * static_cast<double>(rng() % 3);
            g = gnp_graph(n, p, rng());
        } else {
            int t = 1 + static_cast<int>(rng() % 3);
            int clusters = 1 + static_cast<int>(rng() % 2);
            int max_clique = std::max(1, (7 - t) / clusters);
            g = cluster_cover_graph(t, clusters, max_clique, rng());
        }
        std::vector<int> x = *compute_twin_cover(g, g.num_vertices());
        int t = static_cast<int>(x.size());
        int k = 2 + static_cast<int>(rng() % 3);
        auto fs = enumerate_x_colorings(t, k);
        if (fs.empty()) fs.push_back({});
        std::vector<std::vector<int>> picked{fs[rng() % fs.size()]};
        if (fs.size() > 1) picked.push_back(fs[rng() % fs.size()]);
        std::vector<char> all_alive(g.num_vertices() + 1, 1);
        for (const auto& f : picked) {
            std::vector<std::pair<int, int>> pins;
            for (int i = 0; i < t; ++i) pins.push_back({x[i], f[i]});
            bool before = oracle_feasible_with_fixed(g, k, pins).feasible;
            std::string tag = fmt_graph(g) + " k=" + std::to_string(k) +
                              " f=" + fmt_colors([&] {
                                  std::vector<int> c(1, 0);
                                  c.insert(c.end(), f.begin(), f.end());
                                  return c;
                              }());
            ++r.cases;
            if (pinned_groups_feasible(g, k, pins, {}, all_alive) != before) {
                report(r, tag + " pinned search vs pinned oracle");
                continue;
            }
            BlockStructure bs = build_clique_types(g, x);
            saturate_repeated_color_types(bs, f);
            ++r.cases;
            if (pinned_groups_feasible(g, k, pins, block_groups(bs), all_alive) !=
                before)
                report(r, tag + " repeated-color saturation changed feasibility");
            prune_duplicate_cliques(bs);
            ++r.cases;
            if (pinned_groups_feasible(g, k, pins, block_groups(bs),
                                       alive_mask(g, bs)) != before)
                report(r, tag + " duplicate-clique pruning changed feasibility");
            saturate_conflicting_type_pairs(bs, f);
            ++r.cases;
            if (pinned_groups_feasible(g, k, pins, block_groups(bs),
                                       alive_mask(g, bs)) != before)
                report(r, tag + " conflict linking changed feasibility");
        }
    }
    return r;
}

SuiteResult suite_cw_vs_oracle(const std::vector<WExpr>& corpus, int k_max) {
    SuiteResult r{"cw-vs-oracle", 0, 0, {}};
    for (const WExpr& e : corpus) {
        Graph g = evaluate(e).g;
        for (int k = 1; k <= k_max; ++k) {
            bool want = oracle_feasible(g, k).feasible;
            for (JoinCaseRange range :
                 {JoinCaseRange::narrow, JoinCaseRange::extended}) {
                CwOptions opts;
                opts.join_case_range = range;
                opts.want_witness = true;
                CwResult res = solve_cw(e, k, opts);
                ++r.cases;
                const char* tag =
                    range == JoinCaseRange::narrow ? "narrow" : "extended";
                if (res.feasible != want) {
                    report(r, std::string("range=") + tag + " k=" +
                                  std::to_string(k) + " " + fmt_graph(g) +
                                  " expr=" + print_wexpr(e));
                    continue;
                }
                if (res.feasible && !(res.coloring &&
                                      is_star_coloring(g, *res.coloring).ok))
                    report(r, std::string("range=") + tag + " k=" +
                                  std::to_string(k) + " witness failed on " +
                                  fmt_graph(g));
            }
        }
    }
    return r;
}

SuiteResult suite_cw_tables(const std::vector<WExpr>& corpus, int k_max) {
    SuiteResult r{"cw-tables", 0, 0, {}};
    for (const WExpr& e : corpus) {
        int w = std::max({width(e), e.declared_w, 1});
        for (int k = 1; k <= k_max; ++k) {
            CwLayout L(w, k);
            std::vector<DpTable> tables = cw_tables(e, k);
            for (size_t idx = 0; idx < e.nodes.size(); ++idx) {
                LabeledGraph lg = evaluate(subexpression(e, static_cast<int>(idx)));
                if (lg.g.num_vertices() > 5) continue;
                ++r.cases;
                if (tables[idx] != semantic_table(lg, k, L))
                    report(r, "node " + std::to_string(idx) + " k=" +
                                  std::to_string(k) + " of " + print_wexpr(e));
            }
        }
    }
    return r;
}

SuiteResult suite_ilp_enum(std::uint64_t seed, int instances) {
    SuiteResult r{"ilp-vs-enumeration", 0, 0, {}};
    for (int i = 0; i < instances; ++i) {
        IlpInstance inst = random_ilp_instance(4, 3, seed + i);
        bool want = false;
        std::vector<long long> point(inst.var_count);
        auto walk = [&](auto&& self, int at) -> void {
            if (want) return;
            if (at == inst.var_count) {
                want = check_assignment(inst, point);
                return;
            }
            for (long long v = inst.lower[at]; v <= inst.upper[at]; ++v) {
                point[at] = v;
                self(self, at + 1);
            }
        };
        walk(walk, 0);
        IlpResult got = solve_feasibility(inst);
        ++r.cases;
        if (got.feasible != want)
            report(r, "instance seed=" + std::to_string(seed + i) + " solver=" +
                          (got.feasible ? "feasible" : "infeasible") +
                          " enumeration=" + (want ? "feasible" : "infeasible"));
        else if (got.feasible && !check_assignment(inst, got.assignment))
            report(r, "instance seed=" + std::to_string(seed + i) +
                          " solver point fails its own instance");
    }
    return r;
}

SuiteResult suite_known_values() {
    SuiteResult r{"known-values", 0, 0, {}};
    struct Known {
        std::string name;
        Graph g;
        int chi;
        WExpr expr;
    };
    std::vector<Known> table;
    table.push_back({"P4", path_graph(4), 3, path_expr(4)});
    // the biclique on sides {1,3} and {2,4} is C4 with matching vertex names
    table.push_back({"C4", cycle_graph(4), 3,
                     parse_wexpr("eta(1,2,u(u(v(1,1),v(3,1)),u(v(2,2),v(4,2))))")});
    table.push_back({"C5", cycle_graph(5), 4, parse_wexpr(c5_text)});
    table.push_back({"C6", cycle_graph(6), 3, parse_wexpr(c6_text)});
    for (int n = 1; n <= 6; ++n)
        table.push_back({"K" + std::to_string(n), complete_graph(n), n,
                         clique_expr(n)});
    for (int m = 1; m <= 5; ++m)
        table.push_back({"K1," + std::to_string(m), star_graph(m), 2,
                         m == 1 ? clique_expr(2) : star_expr(m)});

    for (const Known& kn : table) {
        ++r.cases;
        if (evaluate(kn.expr).g.edges() != kn.g.edges()) {
            report(r, kn.name + " expression builds the wrong graph");
            continue;
        }
        int chi = oracle_chromatic(kn.g);
        if (chi != kn.chi) {
            report(r, kn.name + " oracle chromatic " + std::to_string(chi) +
                          " expected " + std::to_string(kn.chi));
            continue;
        }
        for (int k : {kn.chi - 1, kn.chi}) {
            bool want = k >= kn.chi;
            ++r.cases;
            if (solve_nd(kn.g, k).feasible != want)
                report(r, kn.name + " nd at k=" + std::to_string(k));
            if (compute_twin_cover(kn.g, 3)) {
                ++r.cases;
                if (solve_tc(kn.g, k, 3).feasible != want)
                    report(r, kn.name + " tc at k=" + std::to_string(k));
            }
            ++r.cases;
            if (solve_cw(kn.expr, k).feasible != want)
                report(r, kn.name + " cw at k=" + std::to_string(k));
        }
    }
    return r;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int n_max, int k_max,
                                        int trials) {
    std::vector<SuiteResult> out;
    out.push_back(suite_verifier_pair(seed, trials * 5 / 2));
    out.push_back(suite_nd_vs_oracle(n_max, k_max));
    out.push_back(suite_tc_vs_oracle(n_max, k_max));
    out.push_back(suite_surgery(seed + 1, trials));
    std::vector<WExpr> corpus = expression_corpus(seed + 2, 30);
    out.push_back(suite_cw_vs_oracle(corpus, k_max));
    out.push_back(suite_cw_tables(corpus, k_max));
    out.push_back(suite_ilp_enum(seed + 3, trials * 5));
    out.push_back(suite_known_values());
    return out;
}

}  // namespace starcolor
