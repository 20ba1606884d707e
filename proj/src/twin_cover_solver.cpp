#include "starcolor/twin_cover_solver.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "starcolor/errors.hpp"
#include "starcolor/nd_solver.hpp"

namespace starcolor {

bool is_twin_cover(const Graph& g, const std::vector<int>& x) {
    std::set<int> in_x(x.begin(), x.end());
    for (auto [u, v] : g.edges()) {
        if (in_x.count(u) || in_x.count(v)) continue;
        if (!are_true_twins(g, u, v)) return false;
    }
    return true;
}

namespace {

// vertex cover search over the non-twin edges, budgeted
bool cover_dfs(const std::vector<std::pair<int, int>>& edges, int budget,
               std::vector<bool>& picked, std::vector<int>& out) {
    const std::pair<int, int>* open = nullptr;
    for (const auto& e : edges) {
        if (!picked[e.first] && !picked[e.second]) {
            open = &e;
            break;
        }
    }
    if (!open) return true;
    if (budget == 0) return false;
    for (int cand : {open->first, open->second}) {
        picked[cand] = true;
        out.push_back(cand);
        if (cover_dfs(edges, budget - 1, picked, out)) return true;
        out.pop_back();
        picked[cand] = false;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> compute_twin_cover(const Graph& g, int t_max) {
    if (t_max < 0) throw input_error("t_max must be nonnegative");
    std::vector<std::pair<int, int>> hard;
    for (auto [u, v] : g.edges())
        if (!are_true_twins(g, u, v)) hard.push_back({u, v});
    for (int s = 0; s <= t_max; ++s) {
        std::vector<bool> picked(g.num_vertices() + 1, false);
        std::vector<int> out;
        if (cover_dfs(hard, s, picked, out)) {
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return std::nullopt;
}

const char* surgery_kind_name(SurgeryRecord::Kind k) {
    switch (k) {
        case SurgeryRecord::Kind::merge_within_type: return "merge_within_type";
        case SurgeryRecord::Kind::drop_duplicate_clique: return "drop_duplicate_clique";
        case SurgeryRecord::Kind::link_across_types: return "link_across_types";
    }
    return "?";
}

std::vector<int> BlockStructure::alive_cliques() const {
    std::vector<int> out;
    for (size_t i = 0; i < cliques.size(); ++i)
        if (cliques[i].alive) out.push_back(static_cast<int>(i));
    return out;
}

BlockStructure build_clique_types(const Graph& g, const std::vector<int>& x) {
    BlockStructure bs;
    bs.x = x;
    std::sort(bs.x.begin(), bs.x.end());
    bs.x.erase(std::unique(bs.x.begin(), bs.x.end()), bs.x.end());
    if (bs.x.size() > 31) throw resource_error("cover too large for bitmask bookkeeping");
    std::vector<bool> in_x(g.num_vertices() + 1, false);
    for (int v : bs.x) {
        if (v < 1 || v > g.num_vertices())
            throw input_error("cover vertex " + std::to_string(v) + " out of range");
        in_x[v] = true;
    }

    std::vector<bool> seen(g.num_vertices() + 1, false);
    for (int s = 1; s <= g.num_vertices(); ++s) {
        if (in_x[s] || seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = true;
        for (size_t qi = 0; qi < comp.size(); ++qi)
            for (int w : g.neighbors(comp[qi]))
                if (!in_x[w] && !seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j)
                if (!g.has_edge(comp[i], comp[j]))
                    throw input_error("not a twin cover: leftover component is not a clique");
        unsigned mask = 0;
        for (size_t i = 0; i < bs.x.size(); ++i)
            if (g.has_edge(comp[0], bs.x[i])) mask |= 1u << i;
        for (int v : comp) {
            unsigned m2 = 0;
            for (size_t i = 0; i < bs.x.size(); ++i)
                if (g.has_edge(v, bs.x[i])) m2 |= 1u << i;
            if (m2 != mask)
                throw input_error("not a twin cover: clique sees the cover unevenly");
        }
        CliqueInfo info;
        info.vertices = comp;
        info.mask = mask;
        info.block = static_cast<int>(bs.cliques.size());
        bs.cliques.push_back(std::move(info));
    }
    bs.linked.assign(bs.cliques.size(), std::vector<bool>(bs.cliques.size(), false));
    return bs;
}

namespace {

// do two cover vertices inside `mask` carry the same f-color?
bool mask_repeats_color(unsigned mask, const std::vector<int>& f) {
    for (size_t i = 0; i < f.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        for (size_t j = i + 1; j < f.size(); ++j)
            if ((mask >> j & 1) && f[i] == f[j]) return true;
    }
    return false;
}

std::map<unsigned, std::vector<int>> group_alive_by_mask(const BlockStructure& bs) {
    std::map<unsigned, std::vector<int>> groups;
    for (size_t i = 0; i < bs.cliques.size(); ++i)
        if (bs.cliques[i].alive) groups[bs.cliques[i].mask].push_back(static_cast<int>(i));
    return groups;
}

}  // namespace

void saturate_repeated_color_types(BlockStructure& bs, const std::vector<int>& f) {
    for (auto& [mask, members] : group_alive_by_mask(bs)) {
        if (members.size() < 2 || !mask_repeats_color(mask, f)) continue;
        int target = bs.cliques[members.front()].block;
        std::vector<int> all;
        for (int ci : members) {
            bs.cliques[ci].block = target;
            all.insert(all.end(), bs.cliques[ci].vertices.begin(),
                       bs.cliques[ci].vertices.end());
        }
        std::sort(all.begin(), all.end());
        bs.log.push_back({SurgeryRecord::Kind::merge_within_type, all, {},
                          "type must be rainbow: its cover neighbors repeat a color"});
    }
}

void prune_duplicate_cliques(BlockStructure& bs) {
    for (auto& [mask, members] : group_alive_by_mask(bs)) {
        (void)mask;
        if (members.size() < 2) continue;
        std::set<int> blocks;
        for (int ci : members) blocks.insert(bs.cliques[ci].block);
        if (blocks.size() < 2) continue;  // already merged into one block
        int keep = members.front();
        for (int ci : members)
            if (bs.cliques[ci].vertices.size() > bs.cliques[keep].vertices.size())
                keep = ci;
        for (int ci : members) {
            if (ci == keep) continue;
            bs.cliques[ci].alive = false;
            bs.deleted.push_back({ci, keep});
            bs.log.push_back({SurgeryRecord::Kind::drop_duplicate_clique,
                              bs.cliques[keep].vertices, bs.cliques[ci].vertices,
                              "interchangeable clique of the same type"});
        }
    }
}

void saturate_conflicting_type_pairs(BlockStructure& bs, const std::vector<int>& f) {
    // collect alive blocks with their masks
    std::map<int, unsigned> block_mask;
    std::map<int, std::vector<int>> block_verts;
    for (const auto& c : bs.cliques) {
        if (!c.alive) continue;
        block_mask[c.block] = c.mask;
        auto& bv = block_verts[c.block];
        bv.insert(bv.end(), c.vertices.begin(), c.vertices.end());
    }
    auto premise = [&](unsigned a, unsigned b) {
        unsigned common = a & b;
        for (size_t i = 0; i < f.size(); ++i) {
            if (!(common >> i & 1)) continue;
            for (size_t j = 0; j < f.size(); ++j)
                if (j != i && (b >> j & 1) && f[i] == f[j]) return true;
        }
        return false;
    };
    for (auto it1 = block_mask.begin(); it1 != block_mask.end(); ++it1)
        for (auto it2 = std::next(it1); it2 != block_mask.end(); ++it2) {
            if (it1->second == it2->second) continue;
            if (bs.linked[it1->first][it2->first]) continue;
            if (premise(it1->second, it2->second) || premise(it2->second, it1->second)) {
                bs.linked[it1->first][it2->first] = true;
                bs.linked[it2->first][it1->first] = true;
                std::vector<int> va = block_verts[it1->first];
                std::vector<int> vb = block_verts[it2->first];
                std::sort(va.begin(), va.end());
                std::sort(vb.begin(), vb.end());
                bs.log.push_back({SurgeryRecord::Kind::link_across_types, va, vb,
                                  "blocks share a repeated cover color pattern"});
            }
        }
}

std::vector<std::vector<int>> enumerate_x_colorings(int t, int k) {
    std::vector<std::vector<int>> out;
    if (t == 0) {
        out.push_back({});
        return out;
    }
    if (k <= 0) return out;
    std::vector<int> cur(t);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == t) {
            out.push_back(cur);
            return;
        }
        int top = std::min(used + 1, k);
        for (int c = 1; c <= top; ++c) {
            cur[pos] = c;
            self(self, pos + 1, std::max(used, c));
        }
    };
    rec(rec, 0, 0);
    return out;
}

namespace {

struct FixedFSolver {
    const Graph& g;
    const BlockStructure& bs;
    const std::vector<int>& f;
    int k;
    int b;  // colors used by f
    const IlpOptions& ilp;
    TcStats* stats;

    std::vector<int> alive;
    std::vector<std::vector<int>> allowed;  // reusable f-colors per alive clique
    std::vector<int> colors;                // evolving partial coloring
    std::vector<std::vector<int>> reuse;    // chosen reuse colors per alive idx
    std::map<int, std::set<int>> block_used;

    bool search(size_t idx) {
        if (idx == alive.size()) return finish();
        int ci = alive[idx];
        const auto& K = bs.cliques[ci].vertices;
        const auto& pool = allowed[idx];
        for (unsigned sub = 0; sub < (1u << pool.size()); ++sub) {
            std::vector<int> chosen;
            for (size_t i = 0; i < pool.size(); ++i)
                if (sub >> i & 1) chosen.push_back(pool[i]);
            if (chosen.size() > K.size()) continue;
            if (static_cast<long long>(K.size() - chosen.size()) > k - b) continue;
            auto& used = block_used[bs.cliques[ci].block];
            bool clash = false;
            for (int c : chosen)
                if (used.count(c)) clash = true;
            if (clash) continue;

            size_t assigned = 0;
            bool ok = true;
            for (; assigned < chosen.size(); ++assigned) {
                colors[K[assigned]] = chosen[assigned];
                if (!partial_star_ok_after(g, colors, K[assigned])) {
                    colors[K[assigned]] = 0;
                    ok = false;
                    break;
                }
            }
            if (ok) {
                for (int c : chosen) used.insert(c);
                reuse[idx] = chosen;
                if (search(idx + 1)) return true;
                reuse[idx].clear();
                for (int c : chosen) used.erase(c);
            }
            for (size_t i = 0; i < assigned; ++i) colors[K[i]] = 0;
        }
        return false;
    }

    // colored G-neighborhood of a clique: its cover neighbors plus its own
    // reused vertices (other cliques are never adjacent to it)
    std::vector<int> colored_nbhd(size_t idx) const {
        int ci = alive[idx];
        std::vector<int> out;
        for (size_t i = 0; i < bs.x.size(); ++i)
            if (bs.cliques[ci].mask >> i & 1) out.push_back(bs.x[i]);
        const auto& K = bs.cliques[ci].vertices;
        for (size_t i = 0; i < reuse[idx].size(); ++i) out.push_back(K[i]);
        return out;
    }

    bool conflict(size_t i1, size_t i2) const {
        unsigned common = bs.cliques[alive[i1]].mask & bs.cliques[alive[i2]].mask;
        auto n1 = colored_nbhd(i1), n2 = colored_nbhd(i2);
        std::vector<int> uni = n1;
        uni.insert(uni.end(), n2.begin(), n2.end());
        for (size_t i = 0; i < bs.x.size(); ++i) {
            if (!(common >> i & 1)) continue;
            int m = bs.x[i];
            for (int e : uni)
                if (e != m && colors[e] == colors[m]) return true;
        }
        return false;
    }

    bool finish() {
        if (stats) ++stats->reuse_guesses;
        // fresh slots per alive clique
        std::vector<int> slots(alive.size());
        std::vector<int> group_of;  // residual group index per alive idx, -1 if none
        group_of.assign(alive.size(), -1);
        std::vector<size_t> groups;
        int total = 0;
        for (size_t i = 0; i < alive.size(); ++i) {
            slots[i] = static_cast<int>(bs.cliques[alive[i]].vertices.size() -
                                        reuse[i].size());
            if (slots[i] > 0) {
                group_of[i] = static_cast<int>(groups.size());
                groups.push_back(i);
                total += slots[i];
            }
        }
        Graph residual(total);
        std::vector<int> base(groups.size(), 0);
        for (size_t gi = 1; gi < groups.size(); ++gi)
            base[gi] = base[gi - 1] + slots[groups[gi - 1]];
        auto connect = [&](size_t gi, size_t gj) {
            for (int a = 0; a < slots[groups[gi]]; ++a)
                for (int c = 0; c < slots[groups[gj]]; ++c)
                    residual.add_edge(base[gi] + a + 1, base[gj] + c + 1);
        };
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            for (int a = 0; a < slots[groups[gi]]; ++a)
                for (int c = a + 1; c < slots[groups[gi]]; ++c)
                    residual.add_edge(base[gi] + a + 1, base[gi] + c + 1);
            for (size_t gj = gi + 1; gj < groups.size(); ++gj) {
                int b1 = bs.cliques[alive[groups[gi]]].block;
                int b2 = bs.cliques[alive[groups[gj]]].block;
                if (b1 == b2 || bs.linked[b1][b2] || conflict(groups[gi], groups[gj]))
                    connect(gi, gj);
            }
        }
        NdResult nd = nd_proper(residual, k - b, ilp);
        if (!nd.feasible) return false;
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            size_t i = groups[gi];
            const auto& K = bs.cliques[alive[i]].vertices;
            for (int s = 0; s < slots[i]; ++s)
                colors[K[reuse[i].size() + s]] = b + nd.coloring->colors[base[gi] + s + 1];
        }
        return true;
    }
};

}  // namespace

std::optional<Coloring> solve_for_fixed_f(const Graph& g, const std::vector<int>& x,
                                          const std::vector<int>& f, int k,
                                          std::vector<SurgeryRecord>* log,
                                          TcStats* stats, const IlpOptions& ilp) {
    if (f.size() != x.size()) throw input_error("f must color exactly the cover");
    int b = 0;
    for (int c : f) {
        if (c < 1 || c > k) throw input_error("cover color outside 1..k");
        b = std::max(b, c);
    }

    std::vector<int> colors(g.num_vertices() + 1, 0);
    for (size_t i = 0; i < x.size(); ++i) colors[x[i]] = f[i];
    if (!partial_star_check(g, colors).ok) return std::nullopt;

    BlockStructure bs = build_clique_types(g, x);
    if (bs.x != x) throw input_error("cover must be sorted and duplicate-free");
    saturate_repeated_color_types(bs, f);
    prune_duplicate_cliques(bs);
    saturate_conflicting_type_pairs(bs, f);

    FixedFSolver solver{g, bs, f, k, b, ilp, stats, {}, {}, std::move(colors), {}, {}};
    solver.alive = bs.alive_cliques();
    solver.reuse.resize(solver.alive.size());
    for (int ci : solver.alive) {
        std::vector<int> pool;
        for (int c = 1; c <= b; ++c) {
            bool blocked = false;
            for (size_t i = 0; i < x.size(); ++i)
                if ((bs.cliques[ci].mask >> i & 1) && f[i] == c) blocked = true;
            if (!blocked) pool.push_back(c);
        }
        solver.allowed.push_back(std::move(pool));
    }

    if (!solver.search(0)) {
        if (log)
            log->insert(log->end(), bs.log.begin(), bs.log.end());
        return std::nullopt;
    }

    // deleted duplicates copy the smallest colors of their representative
    for (auto [dead, kept] : bs.deleted) {
        std::vector<int> pal;
        for (int v : bs.cliques[kept].vertices) pal.push_back(solver.colors[v]);
        std::sort(pal.begin(), pal.end());
        const auto& dv = bs.cliques[dead].vertices;
        for (size_t i = 0; i < dv.size(); ++i) solver.colors[dv[i]] = pal[i];
    }

    Coloring out{k, solver.colors};
    auto verdict = is_star_coloring(g, out);
    if (!verdict.ok)
        throw internal_error("assembled coloring is invalid: " + verdict.describe());
    for (size_t i = 0; i < x.size(); ++i)
        if (out.colors[x[i]] != f[i])
            throw internal_error("assembled coloring does not extend the guess");
    if (log) log->insert(log->end(), bs.log.begin(), bs.log.end());
    return out;
}

TcResult solve_tc(const Graph& g, int k, int t_max, const TcOptions& opts) {
    if (k < 0) throw input_error("k must be nonnegative");
    TcResult res;
    if (opts.supplied_cover) {
        std::vector<int> x = *opts.supplied_cover;
        std::sort(x.begin(), x.end());
        x.erase(std::unique(x.begin(), x.end()), x.end());
        if (!is_twin_cover(g, x))
            throw input_error("supplied vertex set is not a twin cover");
        res.cover = std::move(x);
    } else {
        auto found = compute_twin_cover(g, t_max);
        if (!found)
            throw resource_error("no twin cover of size <= " + std::to_string(t_max));
        res.cover = std::move(*found);
    }

    for (const auto& f : enumerate_x_colorings(static_cast<int>(res.cover.size()), k)) {
        ++res.stats.f_guesses;
        std::vector<SurgeryRecord> log;
        auto col = solve_for_fixed_f(g, res.cover, f, k, &log, &res.stats, opts.ilp);
        if (col) {
            res.feasible = true;
            res.coloring = std::move(col);
            res.surgery = std::move(log);
            return res;
        }
    }
    return res;
}

}  // namespace starcolor
