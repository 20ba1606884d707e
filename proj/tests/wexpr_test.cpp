#include <doctest.h>

#include <string>
#include <vector>

#include "starcolor/corpus.hpp"
#include "starcolor/errors.hpp"
#include "starcolor/wexpr.hpp"

using namespace starcolor;

namespace {

const char* k2_text = "eta(1,2,u(v(1,1),v(2,2)))";
const char* k3_text = "eta(1,2,u(rho(2->1,eta(1,2,u(v(1,1),v(2,2)))),v(3,2)))";
// path 1-2-3-4 grown one endpoint at a time, spent vertices parked in label 3
const char* p4_text =
    "eta(1,2,u(rho(2->1,rho(1->3,eta(1,2,u(rho(2->1,rho(1->3,eta(1,2,u(v(1,1),"
    "v(2,2))))),v(3,2))))),v(4,2)))";

bool same_graph(const Graph& a, const Graph& b) {
    return a.num_vertices() == b.num_vertices() && a.edges() == b.edges();
}

}  // namespace

TEST_CASE("expression parsing round-trips through printing") {
    for (const char* text : {k2_text, k3_text, p4_text, "v(1,1)",
                             "u(v(1,1),v(2,1))", "rho(1->2,v(1,1))"}) {
        WExpr e = parse_wexpr(text);
        CHECK(print_wexpr(e) == text);
        CHECK(print_wexpr(parse_wexpr(print_wexpr(e))) == text);
    }

    WExpr with_header = parse_wexpr("w 3\n eta( 1 , 2 , u( v(1,1), v(2,2) ) )");
    CHECK(with_header.declared_w == 3);
    CHECK(print_wexpr(with_header) == std::string("w 3\n") + k2_text);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_wexpr(""), input_error);
    CHECK_THROWS_AS(parse_wexpr("v(1)"), input_error);
    CHECK_THROWS_AS(parse_wexpr("x(1,2)"), input_error);
    CHECK_THROWS_AS(parse_wexpr("v(1,1) v(2,1)"), input_error);
    CHECK_THROWS_AS(parse_wexpr("v(0,1)"), input_error);
    CHECK_THROWS_AS(parse_wexpr("eta(1,2,u(v(1,1),v(1,2)))"), input_error);
    CHECK_THROWS_AS(parse_wexpr("rho(1->1,v(1,1))"), input_error);
    CHECK_THROWS_AS(parse_wexpr("eta(2,2,u(v(1,2),v(2,2)))"), input_error);
    CHECK_THROWS_AS(parse_wexpr("w 2\nv(1,3)"), input_error);
    CHECK_THROWS_AS(parse_wexpr("u(v(1,1),v(2,1)"), input_error);

    // positions point at the offending token
    try {
        parse_wexpr("u(v(1,1),\n  q(2,1))");
        CHECK(false);
    } catch (const input_error& err) {
        CHECK(std::string(err.what()).find("2:3") != std::string::npos);
    }
}

TEST_CASE("evaluation builds the documented graphs") {
    LabeledGraph k2 = evaluate(parse_wexpr(k2_text));
    CHECK(same_graph(k2.g, complete_graph(2)));
    CHECK(k2.labels == std::vector<int>{0, 1, 2});

    LabeledGraph k3 = evaluate(parse_wexpr(k3_text));
    CHECK(same_graph(k3.g, complete_graph(3)));
    CHECK(k3.labels == std::vector<int>{0, 1, 1, 2});

    LabeledGraph p4 = evaluate(parse_wexpr(p4_text));
    CHECK(same_graph(p4.g, path_graph(4)));

    LabeledGraph lone = evaluate(parse_wexpr("u(v(1,1),v(2,1))"));
    CHECK(lone.g.num_edges() == 0);
    CHECK(lone.labels == std::vector<int>{0, 1, 1});

    // vertex ids are ranked, not taken literally
    LabeledGraph gaps = evaluate(parse_wexpr("eta(1,2,u(v(10,1),v(4,2)))"));
    CHECK(gaps.g.num_vertices() == 2);
    CHECK(gaps.g.has_edge(1, 2));
    CHECK(gaps.labels == std::vector<int>{0, 2, 1});  // id 4 ranks first
}

TEST_CASE("niceness check finds re-introduced edges") {
    CHECK(!check_nice(parse_wexpr(k3_text)));
    CHECK(!check_nice(parse_wexpr(p4_text)));
    CHECK(!check_nice(parse_wexpr("v(1,1)")));

    WExpr doubled = parse_wexpr("eta(1,2,eta(1,2,u(v(1,1),v(2,2))))");
    auto bad = check_nice(doubled);
    REQUIRE(bad.has_value());
    CHECK(doubled.nodes[bad->node].kind == WNode::Kind::join);
    CHECK(bad->node == doubled.root);  // the outer join
    CHECK(bad->vertices == std::pair<int, int>{1, 2});
}

TEST_CASE("redundant joins are dropped, partial overlaps are not repaired") {
    WExpr doubled = parse_wexpr("eta(1,2,eta(1,2,u(v(1,1),v(2,2))))");
    WExpr cleaned = drop_redundant_joins(doubled);
    CHECK(!check_nice(cleaned));
    CHECK(print_wexpr(cleaned) == k2_text);
    CHECK(same_graph(evaluate(cleaned).g, evaluate(doubled).g));

    // already nice: untouched
    CHECK(print_wexpr(drop_redundant_joins(parse_wexpr(k3_text))) == k3_text);

    // join over an empty label class adds nothing
    WExpr empty_class = parse_wexpr("eta(1,3,u(v(1,1),v(2,2)))");
    CHECK(print_wexpr(drop_redundant_joins(empty_class)) == "u(v(1,1),v(2,2))");

    // a join that re-adds one edge but also adds a new one must stay, and the
    // expression stays non-nice
    WExpr partial =
        parse_wexpr("eta(1,2,u(eta(1,2,u(v(1,1),v(2,2))),v(3,2)))");
    WExpr kept = drop_redundant_joins(partial);
    CHECK(print_wexpr(kept) == print_wexpr(partial));
    CHECK(check_nice(kept).has_value());
}

TEST_CASE("width reports the largest label in the expression") {
    CHECK(width(parse_wexpr("v(1,3)")) == 3);
    CHECK(width(parse_wexpr(k3_text)) == 2);
    CHECK(width(parse_wexpr(p4_text)) == 3);
    CHECK(width(parse_wexpr("eta(1,4,u(v(1,1),v(2,4)))")) == 4);
    CHECK(width(parse_wexpr("rho(1->4,v(1,1))")) == 4);
}

TEST_CASE("nice expressions introduce every edge exactly once") {
    for (const char* text : {k3_text, p4_text, k2_text,
                             "eta(1,2,u(u(v(1,1),v(2,1)),u(v(3,2),v(4,2))))"}) {
        WExpr e = parse_wexpr(text);
        REQUIRE(!check_nice(e));
        int total = 0;
        for (size_t idx = 0; idx < e.nodes.size(); ++idx) {
            if (e.nodes[idx].kind != WNode::Kind::join) continue;
            WExpr whole = subexpression(e, static_cast<int>(idx));
            WExpr before = subexpression(e, e.nodes[idx].left);
            total += evaluate(whole).g.num_edges() - evaluate(before).g.num_edges();
        }
        CHECK(total == evaluate(e).g.num_edges());
    }
}

TEST_CASE("subexpression extraction keeps structure") {
    WExpr e = parse_wexpr(p4_text);
    WExpr sub = subexpression(e, e.nodes[e.root].left);
    CHECK(evaluate(sub).g.num_vertices() == 4);
    WExpr leaf = subexpression(e, 0);
    CHECK(evaluate(leaf).g.num_vertices() == 1);
    CHECK(print_wexpr(leaf) == "v(1,1)");
}
