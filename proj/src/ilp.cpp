#include "starcolor/ilp.hpp"

#include <algorithm>

#include <json.hpp>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

void validate(const IlpInstance& inst) {
    if (inst.var_count < 0) throw input_error("negative variable count");
    size_t vc = static_cast<size_t>(inst.var_count);
    if (inst.lower.size() != vc || inst.upper.size() != vc)
        throw input_error("bounds arrays must match variable count");
    for (int v = 0; v < inst.var_count; ++v)
        if (inst.lower[v] > inst.upper[v])
            throw input_error("empty domain for variable " + std::to_string(v));
    auto check_row = [&](const LinConstraint& c) {
        for (auto t : c.terms)
            if (t.var < 0 || t.var >= inst.var_count)
                throw input_error("constraint references unknown variable " +
                                  std::to_string(t.var));
    };
    for (const auto& c : inst.constraints) check_row(c);
    for (const auto& im : inst.implications) {
        check_row(im.antecedent);
        check_row(im.consequent);
    }
}

// One linear row with machinery for interval reasoning during the search:
// partial = contribution of assigned variables, suf_min/suf_max[d] = extreme
// contributions of variables d..end over their boxes.
struct Row {
    Cmp cmp;
    long long rhs;
    long long partial = 0;
    std::vector<long long> suf_min, suf_max;

    // can the row still be satisfied / is it satisfied in every completion?
    bool possibly_true(int d) const {
        long long lo = partial + suf_min[d], hi = partial + suf_max[d];
        switch (cmp) {
            case Cmp::LE: return lo <= rhs;
            case Cmp::GE: return hi >= rhs;
            case Cmp::EQ: return lo <= rhs && hi >= rhs;
        }
        return true;
    }
    bool necessarily_true(int d) const {
        long long lo = partial + suf_min[d], hi = partial + suf_max[d];
        switch (cmp) {
            case Cmp::LE: return hi <= rhs;
            case Cmp::GE: return lo >= rhs;
            case Cmp::EQ: return lo == rhs && hi == rhs;
        }
        return true;
    }
    bool necessarily_false(int d) const { return !possibly_true(d); }
};

struct Solver {
    const IlpInstance& inst;
    long long budget;
    std::vector<Row> rows;                      // constraints, then ant/cons pairs
    size_t plain_count;
    std::vector<std::vector<std::pair<int, long long>>> touch;  // var -> (row, coef)
    std::vector<long long> value;
    long long nodes = 0;

    explicit Solver(const IlpInstance& in, long long b) : inst(in), budget(b) {
        plain_count = inst.constraints.size();
        auto add_row = [&](const LinConstraint& c) {
            Row r;
            r.cmp = c.cmp;
            r.rhs = c.rhs;
            int vc = inst.var_count;
            std::vector<long long> at_min(vc, 0), at_max(vc, 0);
            for (auto t : c.terms) {
                long long a = t.coef * inst.lower[t.var];
                long long b2 = t.coef * inst.upper[t.var];
                at_min[t.var] += std::min(a, b2);
                at_max[t.var] += std::max(a, b2);
            }
            r.suf_min.assign(vc + 1, 0);
            r.suf_max.assign(vc + 1, 0);
            for (int d = vc - 1; d >= 0; --d) {
                r.suf_min[d] = r.suf_min[d + 1] + at_min[d];
                r.suf_max[d] = r.suf_max[d + 1] + at_max[d];
            }
            size_t idx = rows.size();
            for (auto t : c.terms)
                touch[t.var].push_back({static_cast<int>(idx), t.coef});
            rows.push_back(std::move(r));
        };
        touch.resize(inst.var_count);
        for (const auto& c : inst.constraints) add_row(c);
        for (const auto& im : inst.implications) {
            add_row(im.antecedent);
            add_row(im.consequent);
        }
        value.assign(inst.var_count, 0);
    }

    bool pruned(int d) const {
        for (size_t i = 0; i < plain_count; ++i)
            if (!rows[i].possibly_true(d)) return true;
        for (size_t i = plain_count; i < rows.size(); i += 2)
            if (rows[i].necessarily_true(d) && rows[i + 1].necessarily_false(d))
                return true;
        return false;
    }

    bool dfs(int d) {
        if (++nodes > budget)
            throw resource_error("ILP node budget exhausted (" + std::to_string(budget) + ")");
        if (pruned(d)) return false;
        if (d == inst.var_count) return true;
        for (long long val = inst.lower[d]; val <= inst.upper[d]; ++val) {
            value[d] = val;
            for (auto [row, coef] : touch[d]) rows[row].partial += coef * val;
            if (dfs(d + 1)) return true;
            for (auto [row, coef] : touch[d]) rows[row].partial -= coef * val;
        }
        return false;
    }
};

bool row_holds(const LinConstraint& c, const std::vector<long long>& a) {
    long long sum = 0;
    for (auto t : c.terms) sum += t.coef * a[t.var];
    switch (c.cmp) {
        case Cmp::LE: return sum <= c.rhs;
        case Cmp::GE: return sum >= c.rhs;
        case Cmp::EQ: return sum == c.rhs;
    }
    return false;
}

const char* cmp_str(Cmp c) {
    switch (c) {
        case Cmp::LE: return "<=";
        case Cmp::GE: return ">=";
        case Cmp::EQ: return "==";
    }
    return "?";
}

nlohmann::json row_json(const LinConstraint& c) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto t : c.terms) terms.push_back({{"var", t.var}, {"coef", t.coef}});
    return {{"name", c.name}, {"terms", terms}, {"cmp", cmp_str(c.cmp)}, {"rhs", c.rhs}};
}

}  // namespace

IlpResult solve_feasibility(const IlpInstance& inst, const IlpOptions& opts) {
    validate(inst);
    Solver s(inst, opts.node_budget);
    IlpResult res;
    res.feasible = s.dfs(0);
    res.nodes = s.nodes;
    if (res.feasible) {
        res.assignment = s.value;
        if (!check_assignment(inst, res.assignment))
            throw internal_error("ILP search accepted an assignment the checker rejects");
    }
    return res;
}

bool check_assignment(const IlpInstance& inst, const std::vector<long long>& a) {
    if (a.size() != static_cast<size_t>(inst.var_count)) return false;
    for (int v = 0; v < inst.var_count; ++v)
        if (a[v] < inst.lower[v] || a[v] > inst.upper[v]) return false;
    for (const auto& c : inst.constraints)
        if (!row_holds(c, a)) return false;
    for (const auto& im : inst.implications)
        if (row_holds(im.antecedent, a) && !row_holds(im.consequent, a)) return false;
    return true;
}

std::string dump_ilp_json(const IlpInstance& inst) {
    nlohmann::json vars = nlohmann::json::array();
    for (int v = 0; v < inst.var_count; ++v) {
        nlohmann::json jv{{"index", v},
                          {"lower", inst.lower[v]},
                          {"upper", inst.upper[v]}};
        if (v < static_cast<int>(inst.var_names.size())) jv["name"] = inst.var_names[v];
        vars.push_back(jv);
    }
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& c : inst.constraints) cons.push_back(row_json(c));
    nlohmann::json imps = nlohmann::json::array();
    for (const auto& im : inst.implications)
        imps.push_back({{"name", im.name},
                        {"if", row_json(im.antecedent)},
                        {"then", row_json(im.consequent)}});
    nlohmann::json j{{"vars", vars}, {"constraints", cons}, {"implications", imps}};
    return j.dump(2);
}

}  // namespace starcolor
