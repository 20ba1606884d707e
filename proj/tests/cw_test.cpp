#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "starcolor/corpus.hpp"
#include "starcolor/cw_solver.hpp"
#include "starcolor/errors.hpp"
#include "starcolor/oracle.hpp"
#include "starcolor/wexpr.hpp"

using namespace starcolor;

namespace {

const char* k2_text = "eta(1,2,u(v(1,1),v(2,2)))";
const char* k3_text = "eta(1,2,u(rho(2->1,eta(1,2,u(v(1,1),v(2,2)))),v(3,2)))";
const char* k4_text =
    "eta(1,2,u(rho(2->1,eta(1,2,u(rho(2->1,eta(1,2,u(v(1,1),v(2,2)))),"
    "v(3,2)))),v(4,2)))";
const char* p4_text =
    "eta(1,2,u(rho(2->1,rho(1->3,eta(1,2,u(rho(2->1,rho(1->3,eta(1,2,u(v(1,1),"
    "v(2,2))))),v(3,2))))),v(4,2)))";
const char* c4_text = "eta(1,2,u(u(v(1,1),v(2,1)),u(v(3,2),v(4,2))))";
const char* star3_text = "eta(1,2,u(v(1,1),u(v(2,2),u(v(3,2),v(4,2)))))";

// every total coloring of lg that is proper and bicolored-P4-free, as states
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

// all assignments of labels 1..w to the n vertices
std::vector<std::vector<int>> all_labelings(int n, int w) {
    std::vector<std::vector<int>> out;
    std::vector<int> lab(n + 1, 1);
    while (true) {
        out.push_back(lab);
        int v = 1;
        while (v <= n && ++lab[v] > w) lab[v++] = 1;
        if (v > n) break;
    }
    return out;
}

LabeledGraph relabeled(const LabeledGraph& lg, int i, int j) {
    LabeledGraph out = lg;
    for (size_t v = 1; v < out.labels.size(); ++v)
        if (out.labels[v] == i) out.labels[v] = j;
    return out;
}

bool has_cross_edge(const LabeledGraph& lg, int i, int j) {
    for (auto [u, v] : lg.g.edges()) {
        int a = lg.labels[u], b = lg.labels[v];
        if ((a == i && b == j) || (a == j && b == i)) return true;
    }
    return false;
}

LabeledGraph joined(const LabeledGraph& lg, int i, int j) {
    LabeledGraph out = lg;
    for (int u = 1; u <= out.g.num_vertices(); ++u)
        for (int v = u + 1; v <= out.g.num_vertices(); ++v) {
            int a = out.labels[u], b = out.labels[v];
            if ((a == i && b == j) || (a == j && b == i)) out.g.add_edge(u, v);
        }
    return out;
}

}  // namespace

TEST_CASE("state layout is a bijection onto the flat vector") {
    CwLayout L(3, 4);
    CHECK(L.len == 3 * 4 + 9 * 16 + 3 * 6 * 16);
    std::set<int> seen;
    for (int i = 1; i <= 3; ++i)
        for (int q = 1; q <= 4; ++q) seen.insert(L.at_n(i, q));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int q = 1; q <= 4; ++q)
                for (int qp = 1; qp <= 4; ++qp) seen.insert(L.at_b(i, j, q, qp));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int l = j; l <= 3; ++l)
                for (int q = 1; q <= 4; ++q)
                    for (int qp = 1; qp <= 4; ++qp) {
                        seen.insert(L.at_a(i, j, l, q, qp));
                        CHECK(L.at_a(i, l, j, q, qp) == L.at_a(i, j, l, q, qp));
                    }
    CHECK(static_cast<int>(seen.size()) == L.len);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == L.len - 1);
}

TEST_CASE("semantic states count the documented patterns") {
    {
        CwLayout L(1, 2);
        LabeledGraph lone{Graph(1), {0, 1}};
        DpState s = semantic_state(lone, Coloring{2, {0, 2}}, L);
        DpState want(L.len, 0);
        want[L.at_n(1, 2)] = 1;
        CHECK(s == want);
    }
    {
        CwLayout L(2, 2);
        LabeledGraph k2{Graph(2, {{1, 2}}), {0, 1, 2}};
        DpState s = semantic_state(k2, Coloring{2, {0, 1, 2}}, L);
        DpState want(L.len, 0);
        want[L.at_n(1, 1)] = 1;
        want[L.at_n(2, 2)] = 1;
        want[L.at_b(1, 2, 1, 2)] = 1;
        want[L.at_b(2, 1, 2, 1)] = 1;
        CHECK(s == want);
    }
    {
        // star: center label 1 color 1, two leaves label 2 color 2
        CwLayout L(2, 2);
        LabeledGraph st{Graph(3, {{1, 2}, {1, 3}}), {0, 1, 2, 2}};
        DpState s = semantic_state(st, Coloring{2, {0, 1, 2, 2}}, L);
        CHECK(int(s[L.at_a(1, 2, 2, 1, 2)]) == 1);
        CHECK(int(s[L.at_b(1, 2, 1, 2)]) == 1);
        CHECK(int(s[L.at_n(2, 2)]) == 2);
        CHECK(int(s[L.at_b(2, 1, 2, 1)]) == 2);
        // a third leaf saturates the cap
        LabeledGraph st3{Graph(4, {{1, 2}, {1, 3}, {1, 4}}), {0, 1, 2, 2, 2}};
        DpState s3 = semantic_state(st3, Coloring{2, {0, 1, 2, 2, 2}}, L);
        CHECK(int(s3[L.at_n(2, 2)]) == 2);
        CHECK(int(s3[L.at_b(2, 1, 2, 1)]) == 2);
        CHECK(int(s3[L.at_a(1, 2, 2, 1, 2)]) == 1);
    }
}

TEST_CASE("introduce tables are one state per color") {
    CwLayout L1(1, 2);
    CHECK(dp_introduce(L1, 1).size() == 2);
    CwLayout L2(2, 1);
    DpTable t = dp_introduce(L2, 2);
    REQUIRE(t.size() == 1);
    DpState want(L2.len, 0);
    want[L2.at_n(2, 1)] = 1;
    CHECK(*t.begin() == want);

    // agrees with the semantic view of a one-vertex graph
    CwLayout L(3, 3);
    for (int lab = 1; lab <= 3; ++lab) {
        LabeledGraph lone{Graph(1), {0, lab}};
        CHECK(dp_introduce(L, lab) == semantic_table(lone, 3, L));
    }
}

TEST_CASE("union tables match exhaustive coloring enumeration") {
    CwLayout L(2, 3);
    LabeledGraph k2{Graph(2, {{1, 2}}), {0, 1, 2}};
    DpTable t = semantic_table(k2, 3, L);
    LabeledGraph two{Graph(4, {{1, 2}, {3, 4}}), {0, 1, 2, 1, 2}};
    CHECK(dp_union(L, t, t) == semantic_table(two, 3, L));

    // same label, same color picked on both sides -> a capped count of 2
    CwLayout L1(1, 2);
    DpTable ones = dp_introduce(L1, 1);
    DpTable summed = dp_union(L1, ones, ones);
    DpState want(L1.len, 0);
    want[L1.at_n(1, 1)] = 2;
    CHECK(summed.count(want) == 1);
    CHECK(summed.size() == 3);  // {2,0}, {1,1}, {0,2}

    CHECK(dp_union(L1, DpTable{}, ones).empty());
}

TEST_CASE("relabel tables match the semantic oracle on all small graphs") {
    const int w = 3, k = 3;
    CwLayout L(w, k);
    for (int n = 1; n <= 4; ++n)
        for (const Graph& g : graph_atlas(n))
            for (const auto& lab : all_labelings(n, w)) {
                LabeledGraph lg{g, lab};
                DpTable t = semantic_table(lg, k, L);
                for (int i = 1; i <= w; ++i)
                    for (int j = 1; j <= w; ++j) {
                        if (i == j) continue;
                        CHECK(dp_relabel(L, i, j, t) ==
                              semantic_table(relabeled(lg, i, j), k, L));
                    }
            }
}

TEST_CASE("relabel stays exact on sampled five-vertex graphs") {
    const int w = 3, k = 3;
    CwLayout L(w, k);
    std::mt19937 rng(20240817);
    const auto& atlas = graph_atlas(5);
    for (int trial = 0; trial < 60; ++trial) {
        const Graph& g = atlas[rng() % atlas.size()];
        std::vector<int> lab(6, 0);
        for (int v = 1; v <= 5; ++v) lab[v] = 1 + static_cast<int>(rng() % w);
        int i = 1 + static_cast<int>(rng() % w);
        int j = 1 + static_cast<int>(rng() % w);
        if (i == j) j = 1 + (j % w);
        LabeledGraph lg{g, lab};
        DpTable t = semantic_table(lg, k, L);
        CHECK(dp_relabel(L, i, j, t) ==
              semantic_table(relabeled(lg, i, j), k, L));
    }
}

TEST_CASE("join tables match the semantic oracle on all small graphs") {
    const int w = 3;
    for (int k : {2, 3}) {
        CwLayout L(w, k);
        for (int n = 1; n <= 4; ++n)
            for (const Graph& g : graph_atlas(n))
                for (const auto& lab : all_labelings(n, w)) {
                    LabeledGraph lg{g, lab};
                    DpTable t;
                    bool have_t = false;
                    for (int i = 1; i <= w; ++i)
                        for (int j = 1; j <= w; ++j) {
                            if (i == j || has_cross_edge(lg, i, j)) continue;
                            if (!have_t) {
                                t = semantic_table(lg, k, L);
                                have_t = true;
                            }
                            DpTable want = semantic_table(joined(lg, i, j), k, L);
                            CHECK(dp_join(L, i, j, t, JoinCaseRange::narrow) == want);
                            CHECK(dp_join(L, i, j, t, JoinCaseRange::extended) == want);
                        }
                }
    }
}

TEST_CASE("join discards the four-vertex two-on-each-side pattern") {
    CwLayout L(2, 2);
    DpState s(L.len, 0);
    s[L.at_n(1, 1)] = 2;
    s[L.at_n(2, 2)] = 2;
    CHECK(dp_join(L, 1, 2, DpTable{s}, JoinCaseRange::narrow).empty());
    CHECK(dp_join(L, 1, 2, DpTable{s}, JoinCaseRange::extended).empty());

    // one on each side survives and records the new edge
    DpState ok(L.len, 0);
    ok[L.at_n(1, 1)] = 1;
    ok[L.at_n(2, 2)] = 1;
    DpTable out = dp_join(L, 1, 2, DpTable{ok}, JoinCaseRange::narrow);
    REQUIRE(out.size() == 1);
    CHECK(int((*out.begin())[L.at_b(1, 2, 1, 2)]) == 1);
    CHECK(int((*out.begin())[L.at_b(2, 1, 2, 1)]) == 1);
}

TEST_CASE("solver verdicts agree with the exhaustive search") {
    for (const char* text : {k2_text, k3_text, k4_text, p4_text, c4_text,
                             star3_text}) {
        WExpr e = parse_wexpr(text);
        Graph g = evaluate(e).g;
        for (int k = 0; k <= 4; ++k) {
            bool want = oracle_feasible(g, k).feasible;
            for (JoinCaseRange range :
                 {JoinCaseRange::narrow, JoinCaseRange::extended}) {
                CwOptions opts;
                opts.join_case_range = range;
                opts.want_witness = true;
                CwResult res = solve_cw(e, k, opts);
                CHECK(res.feasible == want);
                if (res.feasible) {
                    REQUIRE(res.coloring.has_value());
                    CHECK(is_star_coloring(g, *res.coloring).ok);
                    for (int v = 1; v <= g.num_vertices(); ++v) {
                        CHECK(res.coloring->colors[v] >= 1);
                        CHECK(res.coloring->colors[v] <= k);
                    }
                }
            }
        }
    }

    // the path needs three colors, two do not suffice
    WExpr p4 = parse_wexpr(p4_text);
    CHECK(!solve_cw(p4, 2).feasible);
    CHECK(solve_cw(p4, 3).feasible);
}

TEST_CASE("per-node tables equal the semantic sets along expressions") {
    for (const char* text : {k2_text, k3_text, p4_text, c4_text, star3_text}) {
        WExpr e = parse_wexpr(text);
        int w = std::max(width(e), 1);
        for (int k : {2, 3}) {
            CwLayout L(w, k);
            std::vector<DpTable> tables = cw_tables(e, k);
            for (size_t idx = 0; idx < e.nodes.size(); ++idx) {
                LabeledGraph lg = evaluate(subexpression(e, static_cast<int>(idx)));
                CHECK(tables[idx] == semantic_table(lg, k, L));
            }
        }
    }
}

TEST_CASE("solver rejects bad inputs and enforces its budget") {
    WExpr doubled = parse_wexpr("eta(1,2,eta(1,2,u(v(1,1),v(2,2))))");
    CHECK_THROWS_AS(solve_cw(doubled, 2), input_error);
    CHECK_THROWS_AS(solve_cw(parse_wexpr(k2_text), -1), input_error);

    CwOptions tight;
    tight.max_states = 3;
    CHECK_THROWS_AS(solve_cw(parse_wexpr(p4_text), 3, tight), resource_error);

    CHECK(!solve_cw(parse_wexpr(k3_text), 0).feasible);
}

TEST_CASE("table dumps are one sorted line per state") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "starcolor_cw_dump_test";
    fs::remove_all(dir);
    CwOptions opts;
    opts.dump_dir = dir.string();
    WExpr e = parse_wexpr(k2_text);
    solve_cw(e, 2, opts);
    std::vector<DpTable> tables = cw_tables(e, 2);
    for (size_t idx = 0; idx < e.nodes.size(); ++idx) {
        char name[32];
        std::snprintf(name, sizeof name, "node_%03zu.jsonl", idx);
        fs::path file = dir / name;
        REQUIRE(fs::exists(file));
        std::ifstream in(file);
        std::string line;
        size_t lines = 0;
        while (std::getline(in, line)) {
            ++lines;
            CHECK(line.find("\"N\":") != std::string::npos);
            CHECK(line.find("\"B\":") != std::string::npos);
            CHECK(line.find("\"A\":") != std::string::npos);
        }
        CHECK(lines == tables[idx].size());
    }
    fs::remove_all(dir);
}
