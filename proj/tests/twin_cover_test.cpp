#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "starcolor/corpus.hpp"
#include "starcolor/errors.hpp"
#include "starcolor/oracle.hpp"
#include "starcolor/twin_cover_solver.hpp"

using namespace starcolor;

namespace {

// reference minimum twin cover by subset enumeration
int brute_cover_size(const Graph& g) {
    int n = g.num_vertices();
    for (int s = 0; s <= n; ++s)
        for (unsigned m = 0; m < (1u << n); ++m) {
            if (__builtin_popcount(m) != s) continue;
            std::vector<int> x;
            for (int v = 1; v <= n; ++v)
                if (m >> (v - 1) & 1) x.push_back(v);
            if (is_twin_cover(g, x)) return s;
        }
    return n;
}

Graph two_triangles_shared_apex() {
    Graph g(5);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(1, 4);
    g.add_edge(1, 5);
    g.add_edge(2, 3);
    g.add_edge(4, 5);
    return g;
}

// three cover vertices in a row of singleton cliques: masks {1}, {1,2}, {2,3}
Graph chain_of_types() {
    Graph g(6);
    g.add_edge(1, 4);
    g.add_edge(1, 5);
    g.add_edge(2, 5);
    g.add_edge(2, 6);
    g.add_edge(3, 6);
    return g;
}

}  // namespace

TEST_CASE("twin cover recognition") {
    CHECK(is_twin_cover(testutil::complete(5), {}));  // all edges join true twins
    CHECK(is_twin_cover(testutil::star(3), {1}));
    CHECK(is_twin_cover(testutil::star(3), {2, 3, 4}));
    CHECK_FALSE(is_twin_cover(testutil::path(4), {2}));  // edge 3-4 uncovered
    CHECK(is_twin_cover(testutil::path(4), {2, 3}));
    CHECK_FALSE(is_twin_cover(testutil::cycle(5), {1, 2, 3}));  // 4-5 not twins
}

TEST_CASE("twin cover computation is minimum and deterministic") {
    CHECK(compute_twin_cover(testutil::complete(6), 6) == std::vector<int>{});
    CHECK(compute_twin_cover(testutil::star(3), 4) == std::vector<int>{1});
    CHECK(compute_twin_cover(testutil::path(4), 4) == std::vector<int>{1, 3});
    CHECK(compute_twin_cover(testutil::cycle(5), 2) == std::nullopt);
    CHECK(compute_twin_cover(testutil::cycle(5), 3).value().size() == 3);
    CHECK(compute_twin_cover(two_triangles_shared_apex(), 5) == std::vector<int>{1});

    for (const auto& g : graph_atlas(5)) {
        auto got = compute_twin_cover(g, 5);
        REQUIRE(got.has_value());
        CHECK(is_twin_cover(g, *got));
        CHECK(static_cast<int>(got->size()) == brute_cover_size(g));
        CHECK(compute_twin_cover(g, 5) == got);  // repeatable
    }
}

TEST_CASE("cover color partitions enumerate as restricted growth strings") {
    auto lst = enumerate_x_colorings(3, 3);
    std::vector<std::vector<int>> want = {
        {1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {1, 2, 2}, {1, 2, 3}};
    CHECK(lst == want);
    CHECK(enumerate_x_colorings(3, 2).size() == 4);  // drops {1,2,3}
    CHECK(enumerate_x_colorings(4, 4).size() == 15);
    CHECK(enumerate_x_colorings(4, 9).size() == 15);  // never more than t classes
    CHECK(enumerate_x_colorings(2, 1) == std::vector<std::vector<int>>{{1, 1}});
    CHECK(enumerate_x_colorings(0, 2) == std::vector<std::vector<int>>{{}});
    CHECK(enumerate_x_colorings(1, 0).empty());
}

TEST_CASE("clique types over the cover") {
    // two singleton cliques both seeing the whole cover
    Graph g(4);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(1, 4);
    g.add_edge(2, 4);
    auto bs = build_clique_types(g, {1, 2});
    REQUIRE(bs.cliques.size() == 2);
    CHECK(bs.cliques[0].vertices == std::vector<int>{3});
    CHECK(bs.cliques[1].vertices == std::vector<int>{4});
    CHECK(bs.cliques[0].mask == 3u);
    CHECK(bs.cliques[1].mask == 3u);
    CHECK(bs.cliques[0].block != bs.cliques[1].block);

    SUBCASE("repeated cover color merges the type into one block") {
        saturate_repeated_color_types(bs, {1, 1});
        CHECK(bs.cliques[0].block == bs.cliques[1].block);
        REQUIRE(bs.log.size() == 1);
        CHECK(bs.log[0].kind == SurgeryRecord::Kind::merge_within_type);
        CHECK(bs.log[0].vertices_a == std::vector<int>{3, 4});
        prune_duplicate_cliques(bs);  // merged block is not a duplicate
        CHECK(bs.deleted.empty());
    }
    SUBCASE("distinct cover colors leave duplicates to prune") {
        saturate_repeated_color_types(bs, {1, 2});
        CHECK(bs.cliques[0].block != bs.cliques[1].block);
        prune_duplicate_cliques(bs);
        REQUIRE(bs.deleted.size() == 1);
        CHECK(bs.deleted[0] == std::pair<int, int>{1, 0});  // keep 3, drop 4
        CHECK(bs.alive_cliques() == std::vector<int>{0});
        REQUIRE(bs.log.size() == 1);
        CHECK(bs.log[0].kind == SurgeryRecord::Kind::drop_duplicate_clique);
    }

    SUBCASE("rejects sets that are not twin covers") {
        CHECK_THROWS_AS(build_clique_types(testutil::path(4), {2}), input_error);
        CHECK_THROWS_AS(build_clique_types(testutil::cycle(5), {1, 2, 3}), input_error);
    }
}

TEST_CASE("overlapping types with a repeated color get linked") {
    Graph g = chain_of_types();
    auto bs = build_clique_types(g, {1, 2, 3});
    REQUIRE(bs.cliques.size() == 3);
    CHECK(bs.cliques[0].mask == 1u);  // {4} sees x1
    CHECK(bs.cliques[1].mask == 3u);  // {5} sees x1,x2
    CHECK(bs.cliques[2].mask == 6u);  // {6} sees x2,x3

    SUBCASE("f = (2,1,1) links the two overlapping types") {
        saturate_conflicting_type_pairs(bs, {2, 1, 1});
        CHECK(bs.linked[1][2]);
        CHECK(bs.linked[2][1]);
        CHECK_FALSE(bs.linked[0][1]);
        CHECK_FALSE(bs.linked[0][2]);
        REQUIRE(bs.log.size() == 1);
        CHECK(bs.log[0].kind == SurgeryRecord::Kind::link_across_types);
        CHECK(bs.log[0].vertices_a == std::vector<int>{5});
        CHECK(bs.log[0].vertices_b == std::vector<int>{6});
    }
    SUBCASE("rainbow f links nothing") {
        saturate_conflicting_type_pairs(bs, {1, 2, 3});
        for (const auto& row : bs.linked)
            for (bool v : row) CHECK_FALSE(v);
    }
}

TEST_CASE("fixed cover guess agrees with the pinned search") {
    auto check_graph = [](const Graph& g, const std::vector<int>& x, int kmax) {
        for (int k = 1; k <= kmax; ++k) {
            for (const auto& f : enumerate_x_colorings(static_cast<int>(x.size()), k)) {
                auto got = solve_for_fixed_f(g, x, f, k);
                std::vector<std::pair<int, int>> pins;
                for (size_t i = 0; i < x.size(); ++i) pins.push_back({x[i], f[i]});
                bool want = oracle_feasible_with_fixed(g, k, pins).feasible;
                CHECK(got.has_value() == want);
                if (got) {
                    CHECK(is_star_coloring(g, *got).ok);
                    for (size_t i = 0; i < x.size(); ++i)
                        CHECK(got->colors[x[i]] == f[i]);
                }
            }
        }
    };
    check_graph(testutil::path(4), {2, 3}, 4);
    check_graph(testutil::star(3), {1}, 3);
    check_graph(two_triangles_shared_apex(), {1}, 4);
    check_graph(chain_of_types(), {1, 2, 3}, 4);
    check_graph(testutil::cycle(5), {1, 3, 4}, 4);
    check_graph(testutil::cycle(6), {1, 3, 5}, 3);

    for (const auto& g : graph_atlas(5)) {
        auto x = compute_twin_cover(g, 5).value();
        check_graph(g, x, 3);
    }
}

TEST_CASE("cover solver verdicts match the exhaustive search") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& g : graph_atlas(n)) {
            auto x = compute_twin_cover(g, 3);
            if (!x) continue;
            for (int k = 1; k <= 4; ++k) {
                auto res = solve_tc(g, k, 3);
                CHECK(res.cover == *x);
                bool want = oracle_feasible(g, k).feasible;
                CHECK(res.feasible == want);
                if (res.feasible) {
                    REQUIRE(res.coloring.has_value());
                    CHECK(is_star_coloring(g, *res.coloring).ok);
                }
            }
        }
}

TEST_CASE("star example: one guess, duplicates dropped, leaves share a color") {
    auto res = solve_tc(testutil::star(3), 2, 1);
    REQUIRE(res.feasible);
    CHECK(res.cover == std::vector<int>{1});
    CHECK(res.coloring->colors == std::vector<int>{0, 1, 2, 2, 2});
    CHECK(res.stats.f_guesses == 1);
    int drops = 0;
    for (const auto& r : res.surgery)
        if (r.kind == SurgeryRecord::Kind::drop_duplicate_clique) ++drops;
    CHECK(drops == 2);
}

TEST_CASE("path example: covers both endpoints, needs three colors") {
    auto res2 = solve_tc(testutil::path(4), 2, 2);
    CHECK_FALSE(res2.feasible);
    CHECK(res2.cover == std::vector<int>{1, 3});
    CHECK(res2.stats.f_guesses == 2);  // (1,1) and (1,2)

    auto res3 = solve_tc(testutil::path(4), 3, 2);
    REQUIRE(res3.feasible);
    CHECK(res3.coloring->colors == std::vector<int>{0, 1, 2, 1, 3});
    CHECK(is_star_coloring(testutil::path(4), *res3.coloring).ok);
}

TEST_CASE("duplicate cliques are recolored from their representative") {
    Graph g = two_triangles_shared_apex();
    auto res = solve_tc(g, 3, 1);
    REQUIRE(res.feasible);
    CHECK(res.cover == std::vector<int>{1});
    // {4,5} copies the colors of the kept twin {2,3}
    CHECK(res.coloring->colors == std::vector<int>{0, 1, 2, 3, 2, 3});
    bool dropped = false;
    for (const auto& r : res.surgery)
        if (r.kind == SurgeryRecord::Kind::drop_duplicate_clique &&
            r.vertices_b == std::vector<int>{4, 5})
            dropped = true;
    CHECK(dropped);

    CHECK_FALSE(solve_tc(g, 2, 1).feasible);
}

TEST_CASE("supplied covers are validated and honored") {
    Graph p4 = testutil::path(4);
    TcOptions opts;
    opts.supplied_cover = std::vector<int>{2, 3, 4};  // valid but not minimum
    auto res = solve_tc(p4, 3, 0, opts);
    CHECK(res.cover == std::vector<int>{2, 3, 4});
    CHECK(res.feasible);
    CHECK(is_star_coloring(p4, *res.coloring).ok);

    opts.supplied_cover = std::vector<int>{2};
    CHECK_THROWS_AS(solve_tc(p4, 3, 0, opts), input_error);

    CHECK_THROWS_AS(solve_tc(testutil::cycle(5), 3, 2), resource_error);
}

TEST_CASE("cover solver is deterministic") {
    for (const Graph& g :
         {testutil::cycle(6), two_triangles_shared_apex(), chain_of_types()}) {
        auto a = solve_tc(g, 3, 4);
        auto b = solve_tc(g, 3, 4);
        REQUIRE(a.feasible == b.feasible);
        if (a.feasible) CHECK(a.coloring->colors == b.coloring->colors);
        CHECK(a.stats.f_guesses == b.stats.f_guesses);
        CHECK(a.stats.reuse_guesses == b.stats.reuse_guesses);
    }
}
