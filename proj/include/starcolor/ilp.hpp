#pragma once

#include <string>
#include <vector>

namespace starcolor {

enum class Cmp { LE, GE, EQ };

struct LinTerm {
    int var;  // 0-based
    long long coef;
};

struct LinConstraint {
    std::vector<LinTerm> terms;
    Cmp cmp = Cmp::LE;
    long long rhs = 0;
    std::string name;
};

// "if antecedent holds then consequent holds"
struct Implication {
    LinConstraint antecedent;
    LinConstraint consequent;
    std::string name;
};

struct IlpInstance {
    int var_count = 0;
    std::vector<long long> lower, upper;   // inclusive box bounds per variable
    std::vector<LinConstraint> constraints;
    std::vector<Implication> implications;
    std::vector<std::string> var_names;    // optional, dump only
};

struct IlpOptions {
    long long node_budget = 100000000;  // throw resource_error beyond this
};

struct IlpResult {
    bool feasible = false;
    std::vector<long long> assignment;  // set iff feasible
    long long nodes = 0;
};

// Depth-first search in ascending variable/value order with interval-based
// pruning. Deterministic: returns the lexicographically smallest solution.
IlpResult solve_feasibility(const IlpInstance& inst, const IlpOptions& opts = {});

// Independent straight evaluation, shares no code with the solver.
bool check_assignment(const IlpInstance& inst, const std::vector<long long>& a);

std::string dump_ilp_json(const IlpInstance& inst);

}  // namespace starcolor
