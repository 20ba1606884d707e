#include "starcolor/cw_solver.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

int cap2(int x) { return std::min(2, x); }

// union of pattern counts living on one center class (same label and color).
// Two distinct centers each carrying a two-neighbor pattern either share a
// pattern neighbor — a bicolored P4, so no valid coloring reaches here — or
// need six vertices, so on small graphs all patterns sit on one vertex and
// the union is the max. Beyond that scale the max can undercount a digit,
// but only the entry's positivity is consumed there.
int merge_patterns(std::initializer_list<int> xs) {
    int mx = 0;
    for (int x : xs) mx = std::max(mx, x);
    return mx;
}

// |S ∪ T| from |S|, |T|, |S ∩ T|, floored at max(|S|,|T|) so a drifted
// overlap term can never zero out a nonempty union
int merge_overlap(int x, int y, int ov) {
    return std::min(2, std::max(x + y - ov, std::max(x, y)));
}

DpState add_states(const DpState& a, const DpState& b) {
    DpState out(a.size());
    for (size_t t = 0; t < a.size(); ++t)
        out[t] = static_cast<std::uint8_t>(cap2(int(a[t]) + int(b[t])));
    return out;
}

void check_labels(const CwLayout& L, int i, int j) {
    if (i < 1 || j < 1 || i > L.w || j > L.w)
        throw input_error("label out of range for width " + std::to_string(L.w));
    if (i == j) throw input_error("identical labels in relabel/join");
}

DpState relabel_state(const CwLayout& L, int i, int j, const DpState& s) {
    const int w = L.w, k = L.k;
    auto N = [&](int a, int q) { return int(s[L.at_n(a, q)]); };
    auto B = [&](int a, int b, int q, int qp) { return int(s[L.at_b(a, b, q, qp)]); };
    auto A = [&](int c, int x, int y, int q, int qp) {
        return int(s[L.at_a(c, x, y, q, qp)]);
    };
    DpState t(L.len, 0);

    for (int q = 1; q <= k; ++q)
        for (int a = 1; a <= w; ++a) {
            if (a == i) continue;
            t[L.at_n(a, q)] = static_cast<std::uint8_t>(
                a == j ? cap2(N(j, q) + N(i, q)) : N(a, q));
        }

    for (int q = 1; q <= k; ++q)
        for (int qp = 1; qp <= k; ++qp) {
            // B: label j absorbs i on both sides. Centers that saw both an
            // i- and a j-neighbor are counted once, not twice; the mixed A
            // pair holds exactly that overlap.
            for (int a = 1; a <= w; ++a) {
                if (a == i || a == j) continue;
                for (int b = 1; b <= w; ++b) {
                    if (b == i || b == j) continue;
                    t[L.at_b(a, b, q, qp)] = static_cast<std::uint8_t>(B(a, b, q, qp));
                }
                t[L.at_b(a, j, q, qp)] = static_cast<std::uint8_t>(merge_overlap(
                    B(a, j, q, qp), B(a, i, q, qp), A(a, i, j, q, qp)));
                t[L.at_b(j, a, q, qp)] =
                    static_cast<std::uint8_t>(cap2(B(j, a, q, qp) + B(i, a, q, qp)));
            }
            t[L.at_b(j, j, q, qp)] = static_cast<std::uint8_t>(cap2(
                merge_overlap(B(j, j, q, qp), B(j, i, q, qp), A(j, i, j, q, qp)) +
                merge_overlap(B(i, i, q, qp), B(i, j, q, qp), A(i, i, j, q, qp))));

            // A, centers keeping their label: pairs naming i fold into j
            for (int c = 1; c <= w; ++c) {
                if (c == i || c == j) continue;
                for (int x = 1; x <= w; ++x) {
                    if (x == i || x == j) continue;
                    for (int y = x; y <= w; ++y) {
                        if (y == i || y == j) continue;
                        t[L.at_a(c, x, y, q, qp)] =
                            static_cast<std::uint8_t>(A(c, x, y, q, qp));
                    }
                    t[L.at_a(c, j, x, q, qp)] = static_cast<std::uint8_t>(
                        merge_patterns({A(c, i, x, q, qp), A(c, j, x, q, qp)}));
                }
                t[L.at_a(c, j, j, q, qp)] = static_cast<std::uint8_t>(merge_patterns(
                    {A(c, j, j, q, qp), A(c, i, j, q, qp), A(c, i, i, q, qp)}));
            }

            // A, center j: the new class is the disjoint union of the old i
            // and j classes, so the two contributions add exactly
            for (int x = 1; x <= w; ++x) {
                if (x == i || x == j) continue;
                for (int y = x; y <= w; ++y) {
                    if (y == i || y == j) continue;
                    t[L.at_a(j, x, y, q, qp)] = static_cast<std::uint8_t>(
                        cap2(A(j, x, y, q, qp) + A(i, x, y, q, qp)));
                }
                t[L.at_a(j, j, x, q, qp)] = static_cast<std::uint8_t>(cap2(
                    merge_patterns({A(j, j, x, q, qp), A(j, i, x, q, qp)}) +
                    merge_patterns({A(i, j, x, q, qp), A(i, i, x, q, qp)})));
            }
            t[L.at_a(j, j, j, q, qp)] = static_cast<std::uint8_t>(cap2(
                merge_patterns({A(j, j, j, q, qp), A(j, i, j, q, qp),
                                A(j, i, i, q, qp)}) +
                merge_patterns({A(i, j, j, q, qp), A(i, i, j, q, qp),
                                A(i, i, i, q, qp)})));
        }
    return t;
}

// true iff joining labels i and j under this state creates an improper edge
// or one of the four bicolored-P4 patterns
bool join_rejects(const CwLayout& L, int i, int j, const DpState& s,
                  JoinCaseRange range) {
    const int k = L.k;
    auto N = [&](int a, int q) { return int(s[L.at_n(a, q)]); };
    auto B = [&](int a, int b, int q, int qp) { return int(s[L.at_b(a, b, q, qp)]); };
    auto A = [&](int c, int x, int y, int q, int qp) {
        return int(s[L.at_a(c, x, y, q, qp)]);
    };

    for (int q = 1; q <= k; ++q)
        if (N(i, q) >= 1 && N(j, q) >= 1) return true;

    std::vector<int> helpers;
    for (int a = 1; a <= L.w; ++a)
        if (range == JoinCaseRange::extended || (a != i && a != j))
            helpers.push_back(a);

    for (int q = 1; q <= k; ++q) {
        int niq = N(i, q);
        if (niq == 0) continue;
        for (int qp = 1; qp <= k; ++qp) {
            int njp = N(j, qp);
            if (njp == 0) continue;
            // case 1: two on each side -> bicolored C4
            if (niq == 2 && njp == 2) return true;
            // case 2: two on one side, the other side's vertex has an
            // opposite-colored neighbor elsewhere
            if (niq == 2 && njp == 1)
                for (int a : helpers)
                    if (B(i, a, q, qp) >= 1) return true;
            if (niq == 1 && njp == 2)
                for (int a : helpers)
                    if (B(j, a, qp, q) >= 1) return true;
            if (niq == 1 && njp == 1) {
                // case 3: both endpoints extend outward
                bool left = false, right = false;
                for (int a : helpers) {
                    left = left || B(i, a, q, qp) >= 1;
                    right = right || B(j, a, qp, q) >= 1;
                }
                if (left && right) return true;
                // case 4: a two-edge tail hangs off one endpoint
                for (int a : helpers)
                    for (int b : helpers)
                        if (A(a, i, b, qp, q) >= 1 || A(a, j, b, q, qp) >= 1)
                            return true;
            }
        }
    }
    return false;
}

DpState join_update(const CwLayout& L, int i, int j, const DpState& s) {
    DpState t = s;
    auto N = [&](int a, int q) { return int(s[L.at_n(a, q)]); };
    auto B = [&](int a, int b, int q, int qp) { return int(s[L.at_b(a, b, q, qp)]); };
    for (int q = 1; q <= L.k; ++q)
        for (int qp = 1; qp <= L.k; ++qp) {
            // every i-vertex now sees every j-vertex and vice versa
            t[L.at_b(i, j, q, qp)] =
                static_cast<std::uint8_t>(N(j, qp) >= 1 ? N(i, q) : 0);
            t[L.at_b(j, i, q, qp)] =
                static_cast<std::uint8_t>(N(i, qp) >= 1 ? N(j, q) : 0);
            // pairs {j,a} at i-centers: the j-neighbor is new, the a-neighbor
            // was already counted by B
            for (int a = 1; a <= L.w; ++a) {
                if (a != j)
                    t[L.at_a(i, j, a, q, qp)] = static_cast<std::uint8_t>(
                        N(j, qp) == 0 ? 0 : B(i, a, q, qp));
                if (a != i)
                    t[L.at_a(j, i, a, q, qp)] = static_cast<std::uint8_t>(
                        N(i, qp) == 0 ? 0 : B(j, a, q, qp));
            }
            t[L.at_a(i, j, j, q, qp)] =
                static_cast<std::uint8_t>(N(j, qp) == 2 ? N(i, q) : 0);
            t[L.at_a(j, i, i, q, qp)] =
                static_cast<std::uint8_t>(N(i, qp) == 2 ? N(j, q) : 0);
        }
    return t;
}

struct Prov {
    int color = 0;
    const DpState* left = nullptr;
    const DpState* right = nullptr;
};
using ProvTable = std::map<DpState, Prov>;

std::vector<ProvTable> run_dp(const WExpr& e, const CwLayout& L,
                              const CwOptions& opts) {
    std::vector<ProvTable> tables(e.nodes.size());
    long long total = 0;
    auto run = [&](auto&& self, int idx) -> void {
        const WNode& n = e.nodes[idx];
        ProvTable& out = tables[idx];
        switch (n.kind) {
            case WNode::Kind::intro:
                for (int q = 1; q <= L.k; ++q) {
                    DpState s(L.len, 0);
                    s[L.at_n(n.b, q)] = 1;
                    Prov p;
                    p.color = q;
                    out.emplace(std::move(s), p);
                }
                break;
            case WNode::Kind::unite: {
                self(self, n.left);
                self(self, n.right);
                for (const auto& [sl, pl] : tables[n.left])
                    for (const auto& [sr, pr] : tables[n.right]) {
                        Prov p;
                        p.left = &sl;
                        p.right = &sr;
                        out.emplace(add_states(sl, sr), p);
                    }
                break;
            }
            case WNode::Kind::relabel: {
                self(self, n.left);
                for (const auto& [sc, pc] : tables[n.left]) {
                    Prov p;
                    p.left = &sc;
                    out.emplace(relabel_state(L, n.a, n.b, sc), p);
                }
                break;
            }
            case WNode::Kind::join: {
                self(self, n.left);
                for (const auto& [sc, pc] : tables[n.left]) {
                    if (join_rejects(L, n.a, n.b, sc, opts.join_case_range))
                        continue;
                    Prov p;
                    p.left = &sc;
                    out.emplace(join_update(L, n.a, n.b, sc), p);
                }
                break;
            }
        }
        total += static_cast<long long>(out.size());
        if (total > opts.max_states)
            throw resource_error("state budget exceeded: " + std::to_string(total) +
                                 " > " + std::to_string(opts.max_states));
    };
    if (e.root >= 0) run(run, e.root);
    return tables;
}

void dump_tables(const std::vector<ProvTable>& tables, const CwLayout& L,
                 const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (size_t idx = 0; idx < tables.size(); ++idx) {
        std::ostringstream name;
        name << dir << "/node_";
        name.width(3);
        name.fill('0');
        name << idx << ".jsonl";
        std::ofstream out(name.str());
        auto slice = [&](std::ostream& os, const DpState& s, int from, int to) {
            os << "[";
            for (int t = from; t < to; ++t) {
                if (t > from) os << ",";
                os << int(s[t]);
            }
            os << "]";
        };
        for (const auto& [s, p] : tables[idx]) {
            out << "{\"N\":";
            slice(out, s, 0, L.b_off);
            out << ",\"B\":";
            slice(out, s, L.b_off, L.a_off);
            out << ",\"A\":";
            slice(out, s, L.a_off, L.len);
            out << "}\n";
        }
    }
}

}  // namespace

CwLayout::CwLayout(int w_, int k_) : w(w_), k(k_) {
    npairs = w * (w + 1) / 2;
    pair_rank.assign(static_cast<size_t>(w) * w, -1);
    int p = 0;
    for (int j = 1; j <= w; ++j)
        for (int l = j; l <= w; ++l) pair_rank[(j - 1) * w + (l - 1)] = p++;
    b_off = w * k;
    a_off = b_off + w * w * k * k;
    len = a_off + w * npairs * k * k;
}

DpState semantic_state(const LabeledGraph& lg, const Coloring& c,
                       const CwLayout& L) {
    DpState s(L.len, 0);
    auto bump = [&](int idx) {
        if (s[idx] < 2) ++s[idx];
    };
    std::vector<std::vector<int>> cnt(L.w + 1, std::vector<int>(L.k + 1, 0));
    for (int v = 1; v <= lg.g.num_vertices(); ++v) {
        int i = lg.labels[v], q = c.colors[v];
        bump(L.at_n(i, q));
        for (auto& row : cnt) std::fill(row.begin(), row.end(), 0);
        for (int u : lg.g.neighbors(v)) ++cnt[lg.labels[u]][c.colors[u]];
        for (int qp = 1; qp <= L.k; ++qp)
            for (int j = 1; j <= L.w; ++j) {
                if (cnt[j][qp] > 0) bump(L.at_b(i, j, q, qp));
                for (int l = j; l <= L.w; ++l) {
                    bool both = j == l ? cnt[j][qp] >= 2
                                       : cnt[j][qp] > 0 && cnt[l][qp] > 0;
                    if (both) bump(L.at_a(i, j, l, q, qp));
                }
            }
    }
    return s;
}

DpTable dp_introduce(const CwLayout& L, int i) {
    if (i < 1 || i > L.w) throw input_error("label out of range");
    DpTable out;
    for (int q = 1; q <= L.k; ++q) {
        DpState s(L.len, 0);
        s[L.at_n(i, q)] = 1;
        out.insert(std::move(s));
    }
    return out;
}

DpTable dp_union(const CwLayout& L, const DpTable& s1, const DpTable& s2) {
    DpTable out;
    for (const DpState& a : s1)
        for (const DpState& b : s2) {
            if (static_cast<int>(a.size()) != L.len || a.size() != b.size())
                throw input_error("state length mismatch");
            out.insert(add_states(a, b));
        }
    return out;
}

DpTable dp_relabel(const CwLayout& L, int i, int j, const DpTable& s) {
    check_labels(L, i, j);
    DpTable out;
    for (const DpState& st : s) out.insert(relabel_state(L, i, j, st));
    return out;
}

DpTable dp_join(const CwLayout& L, int i, int j, const DpTable& s,
                JoinCaseRange range) {
    check_labels(L, i, j);
    DpTable out;
    for (const DpState& st : s)
        if (!join_rejects(L, i, j, st, range)) out.insert(join_update(L, i, j, st));
    return out;
}

CwResult solve_cw(const WExpr& e, int k, const CwOptions& opts) {
    if (e.root < 0) throw input_error("empty expression");
    if (k < 0) throw input_error("color budget must be nonnegative");
    if (auto bad = check_nice(e)) {
        std::ostringstream os;
        os << "expression is not nice: join at node " << bad->node
           << " re-adds edge {" << bad->vertices.first << ","
           << bad->vertices.second << "}";
        throw input_error(os.str());
    }
    int w = std::max(width(e), std::max(e.declared_w, 1));
    CwLayout L(w, k);
    std::vector<ProvTable> tables = run_dp(e, L, opts);

    CwResult res;
    res.stats.nodes = static_cast<int>(e.nodes.size());
    for (const ProvTable& t : tables)
        res.stats.states_total += static_cast<long long>(t.size());
    res.feasible = !tables[e.root].empty();
    if (!opts.dump_dir.empty()) dump_tables(tables, L, opts.dump_dir);

    if (res.feasible && opts.want_witness) {
        LabeledGraph lg = evaluate(e);
        std::vector<int> ids;
        for (const WNode& n : e.nodes)
            if (n.kind == WNode::Kind::intro) ids.push_back(n.a);
        std::sort(ids.begin(), ids.end());
        std::map<int, int> rank;
        for (size_t t = 0; t < ids.size(); ++t) rank[ids[t]] = static_cast<int>(t) + 1;

        std::vector<int> colors(ids.size() + 1, 0);
        auto replay = [&](auto&& self, int idx, const DpState& st) -> void {
            const WNode& n = e.nodes[idx];
            const Prov& p = tables[idx].at(st);
            switch (n.kind) {
                case WNode::Kind::intro:
                    colors[rank.at(n.a)] = p.color;
                    break;
                case WNode::Kind::unite:
                    self(self, n.left, *p.left);
                    self(self, n.right, *p.right);
                    break;
                case WNode::Kind::relabel:
                case WNode::Kind::join:
                    self(self, n.left, *p.left);
                    break;
            }
        };
        replay(replay, e.root, tables[e.root].begin()->first);

        Coloring c{k, colors};
        StarVerdict verdict = is_star_coloring(lg.g, c);
        if (!verdict.ok)
            throw internal_error("replayed coloring failed verification: " +
                                 verdict.describe());
        res.coloring = c;
    }
    return res;
}

std::vector<DpTable> cw_tables(const WExpr& e, int k, const CwOptions& opts) {
    if (e.root < 0) throw input_error("empty expression");
    int w = std::max(width(e), std::max(e.declared_w, 1));
    CwLayout L(w, k);
    std::vector<ProvTable> tables = run_dp(e, L, opts);
    std::vector<DpTable> out(tables.size());
    for (size_t t = 0; t < tables.size(); ++t)
        for (const auto& [s, p] : tables[t]) out[t].insert(s);
    return out;
}

}  // namespace starcolor
