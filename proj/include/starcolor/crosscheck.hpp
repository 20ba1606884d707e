#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starcolor/nd_solver.hpp"
#include "starcolor/wexpr.hpp"

namespace starcolor {

// Outcome of one cross-examination suite. A disagreement is any case where
// two independent routes to the same answer differ; the first few are kept
// as one-line reproducers (graph, parameters, both verdicts).
struct SuiteResult {
    std::string name;
    long long cases = 0;
    long long disagreements = 0;
    std::vector<std::string> reproducers;

    bool ok() const { return disagreements == 0; }
};

// Hand-written expression families (paths, cycles, cliques, stars, complete
// bipartite) plus `generated` random nice expressions. All members have
// n <= 8 and width <= 3.
std::vector<WExpr> expression_corpus(std::uint64_t seed, int generated);

// P4-enumeration verdict vs. star-forest verdict: exhaustive over all edge
// subsets on <= 5 vertices with all k<=3 colorings, plus seeded random
// (graph, coloring) pairs with n <= 10.
SuiteResult suite_verifier_pair(std::uint64_t seed, int trials);

// solve_nd vs. oracle on every atlas graph with n <= n_max, k in 1..k_max.
// Feasible answers must carry verified colorings, and every oracle witness
// must induce a count vector accepted by the built ILP. The build options
// are exposed so a deliberately broken rule set can be proven detectable.
SuiteResult suite_nd_vs_oracle(int n_max, int k_max, const NdIlpOptions& build = {});

// solve_tc vs. oracle on atlas graphs with twin cover <= 3; lifted colorings
// are re-verified on the original graph.
SuiteResult suite_tc_vs_oracle(int n_max, int k_max);

// Pinned-cover feasibility must be invariant under each structural rewrite
// (repeated-color saturation, duplicate-clique pruning, conflict linking),
// checked against a direct search honoring the rewritten constraints.
SuiteResult suite_surgery(std::uint64_t seed, int trials);

// solve_cw vs. oracle on evaluate(e) for every corpus expression, k in
// 1..k_max, under both join-case ranges. Reproducers name the range.
SuiteResult suite_cw_vs_oracle(const std::vector<WExpr>& corpus, int k_max);

// Every DP table along every corpus expression whose subexpression has <= 5
// vertices must equal the semantic state set exactly, for k in 1..k_max.
SuiteResult suite_cw_tables(const std::vector<WExpr>& corpus, int k_max);

// solve_feasibility vs. full box enumeration on seeded random instances
// with q <= 4 variables and |bounds| <= 3.
SuiteResult suite_ilp_enum(std::uint64_t seed, int instances);

// Known star chromatic numbers, computed by the oracle and then matched by
// every solver whose parameter regime covers the instance.
SuiteResult suite_known_values();

// Every suite in a fixed order. The defaults are the full documented
// scales; smaller values shrink the corpora proportionally.
std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int n_max = 7,
                                        int k_max = 4, int trials = 200);

}  // namespace starcolor
