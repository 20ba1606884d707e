#include "starcolor/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "starcolor/crosscheck.hpp"
#include "starcolor/cw_solver.hpp"
#include "starcolor/dimacs.hpp"
#include "starcolor/errors.hpp"
#include "starcolor/generators.hpp"
#include "starcolor/nd_solver.hpp"
#include "starcolor/oracle.hpp"
#include "starcolor/twin_cover_solver.hpp"
#include "starcolor/wexpr.hpp"

namespace starcolor {

namespace {

using nlohmann::json;

class Stopwatch {
  public:
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << text;
}

json coloring_to_json(const Coloring& c, int n) {
    json colors = json::object();
    for (int v = 1; v <= n; ++v) colors[std::to_string(v)] = c.colors[v];
    return json{{"k", c.k}, {"colors", colors}};
}

json verdict_witness(const StarVerdict& v) {
    if (v.improper_edge)
        return json{{"improper_edge", {v.improper_edge->first, v.improper_edge->second}}};
    if (v.bicolored_path) {
        const auto& p = *v.bicolored_path;
        return json{{"bicolored_path", {p[0], p[1], p[2], p[3]}}};
    }
    return nullptr;
}

std::vector<int> parse_vertex_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw input_error("bad vertex list entry '" + item + "'");
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct SolveArgs {
    std::string input, method = "auto", cw_expr, output, twin_cover;
    std::string dump_ilp, dump_surgery, dump_tables;
    std::string join_case_range = "narrow";
    int k = 0;
    long long max_states = 1000000;
    bool witness = false;  // ask the expression solver for a coloring
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    Stopwatch clock;
    if (a.input.empty() && a.cw_expr.empty())
        throw input_error("solve needs --input or --cw-expr");
    std::optional<WExpr> expr;
    if (!a.cw_expr.empty()) expr = load_wexpr_file(a.cw_expr);

    Graph g;
    if (!a.input.empty()) {
        g = load_dimacs_file(a.input);
        if (expr) {
            Graph from_expr = evaluate(*expr).g;
            if (from_expr.num_vertices() != g.num_vertices() ||
                from_expr.edges() != g.edges())
                throw input_error(
                    "expression evaluates to a different graph than --input");
        }
    } else {
        g = evaluate(*expr).g;
    }
    int n = g.num_vertices();

    json params = json::object();
    std::string method = a.method;
    if (method == "auto") {
        if (!a.input.empty() && n <= 10) {
            method = "brute";
        } else {
            int t = compute_type_partition(g).count();
            params["nd_types"] = t;
            if (t <= 4) {
                method = "nd";
            } else {
                auto cover = compute_twin_cover(g, 3);
                if (cover) {
                    params["twin_cover_size"] = static_cast<int>(cover->size());
                    method = "twincover";
                } else if (expr) {
                    method = "cliquewidth";
                } else {
                    throw input_error(
                        "no method applies: n=" + std::to_string(n) +
                        ", nd types=" + std::to_string(t) +
                        ", twin cover exceeds 3, and no --cw-expr was given");
                }
            }
        }
    }

    json report{{"command", "solve"}, {"k", a.k}, {"n", n}};
    json counters = json::object();
    json flags = json::array();
    bool feasible = false;
    std::optional<Coloring> witness;
    bool boolean_only = false;

    if (method == "brute") {
        OracleResult res = oracle_feasible(g, a.k);
        feasible = res.feasible;
        witness = res.coloring;
        counters["oracle_states"] = res.states_explored;
    } else if (method == "nd") {
        NdResult res = solve_nd(g, a.k);
        feasible = res.feasible;
        witness = res.coloring;
        params["nd_types"] = res.type_count;
        counters["ilp_nodes"] = res.ilp_nodes;
        if (!a.dump_ilp.empty())
            write_file(a.dump_ilp,
                       dump_ilp_json(build_nd_ilp(compute_type_partition(g), a.k)));
    } else if (method == "twincover") {
        TcOptions opts;
        int t_max = 3;
        if (!a.twin_cover.empty()) {
            std::vector<int> cover = parse_vertex_list(a.twin_cover);
            for (int v : cover)
                if (v < 1 || v > n)
                    throw input_error("cover vertex " + std::to_string(v) +
                                      " out of range");
            if (!is_twin_cover(g, cover))
                throw input_error("--twin-cover is not a twin cover of the graph");
            t_max = static_cast<int>(cover.size());
            opts.supplied_cover = cover;
        }
        TcResult res = solve_tc(g, a.k, t_max, opts);
        feasible = res.feasible;
        witness = res.coloring;
        params["twin_cover_size"] = static_cast<int>(res.cover.size());
        params["twin_cover"] = res.cover;
        counters["f_guesses"] = res.stats.f_guesses;
        counters["reuse_guesses"] = res.stats.reuse_guesses;
        if (!a.dump_surgery.empty()) {
            json log = json::array();
            for (const SurgeryRecord& rec : res.surgery)
                log.push_back(json{{"kind", surgery_kind_name(rec.kind)},
                                   {"vertices_a", rec.vertices_a},
                                   {"vertices_b", rec.vertices_b},
                                   {"note", rec.note}});
            write_file(a.dump_surgery, log.dump(2) + "\n");
        }
    } else if (method == "cliquewidth") {
        if (!expr) throw input_error("method cliquewidth needs --cw-expr");
        CwOptions opts;
        opts.max_states = a.max_states;
        opts.want_witness = a.witness;
        if (a.join_case_range == "extended") {
            opts.join_case_range = JoinCaseRange::extended;
            flags.push_back("join-case-extended");
        } else if (a.join_case_range != "narrow") {
            throw input_error("unknown --join-case-range '" + a.join_case_range +
                              "'");
        }
        if (!a.dump_tables.empty()) {
            std::filesystem::create_directories(a.dump_tables);
            opts.dump_dir = a.dump_tables;
        }
        CwResult res = solve_cw(*expr, a.k, opts);
        feasible = res.feasible;
        witness = res.coloring;
        boolean_only = feasible && !a.witness;
        params["expression_width"] = std::max({width(*expr), expr->declared_w, 1});
        counters["dp_states"] = res.stats.states_total;
        flags.push_back("union-min-cap");
    } else {
        throw input_error("unknown method '" + method + "'");
    }

    bool verified = false;
    if (witness) {
        verified = is_star_coloring(g, *witness).ok;
        if (feasible && !verified)
            throw internal_error("witness failed verification before emission");
    }

    report["method"] = method;
    report["feasible"] = feasible;
    report["parameters"] = params;
    report["counters"] = counters;
    report["erratum_flags"] = flags;
    report["witness"] = witness ? coloring_to_json(*witness, n) : json(nullptr);
    report["witness_verified"] = witness ? json(verified) : json(nullptr);
    report["boolean_only"] = boolean_only;
    report["timings"] = json{{"total_ms", clock.ms()}};
    out << report.dump(2) << "\n";
    if (!a.output.empty() && witness)
        write_file(a.output, write_coloring_json(*witness, n));
    err << "solve: " << method << (feasible ? " feasible" : " infeasible")
        << " at k=" << a.k << "\n";
    return 0;
}

int cmd_verify(const std::string& input, const std::string& coloring_path,
               std::ostream& out, std::ostream& err) {
    Graph g = load_dimacs_file(input);
    Coloring c = load_coloring_file(coloring_path, g.num_vertices());
    StarVerdict v = is_star_coloring(g, c);
    json report{{"command", "verify"}, {"ok", v.ok}, {"witness", verdict_witness(v)}};
    out << report.dump(2) << "\n";
    err << "verify: " << (v.ok ? "valid star coloring" : v.describe()) << "\n";
    return v.ok ? 0 : 1;
}

int cmd_params(const std::string& input, std::ostream& out, std::ostream& err) {
    Graph g = load_dimacs_file(input);
    int n = g.num_vertices();
    TypePartition tp = compute_type_partition(g);
    // re-check the certificate before reporting it
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            auto nu = g.neighbors(u), nv = g.neighbors(v);
            nu.erase(v);
            nv.erase(u);
            bool same = nu == nv;
            if (same != (tp.type_of[u] == tp.type_of[v]))
                throw internal_error("type partition certificate failed");
        }
    auto cover = compute_twin_cover(g, n);
    if (!cover || !is_twin_cover(g, *cover))
        throw internal_error("twin cover certificate failed");
    json report{{"command", "params"},
                {"n", n},
                {"m", g.num_edges()},
                {"nd_types", tp.count()},
                {"types", tp.types},
                {"twin_cover_size", static_cast<int>(cover->size())},
                {"twin_cover", *cover}};
    out << report.dump(2) << "\n";
    err << "params: nd types " << tp.count() << ", twin cover "
        << cover->size() << "\n";
    return 0;
}

struct GenArgs {
    std::string model = "gnp", output, output_expr;
    int n = 6, t = 2, clusters = 2, max_clique = 3, w = 2;
    double p = 0.5;
    std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
    if (a.output.empty()) throw input_error("gen needs --output");
    Graph g;
    json report{{"command", "gen"}, {"model", a.model}, {"seed", a.seed},
                {"output", a.output}, {"expression", nullptr}};
    if (a.model == "gnp") {
        if (a.p < 0.0 || a.p > 1.0) throw input_error("gen: p must be in [0,1]");
        g = gnp_graph(a.n, a.p, a.seed);
    } else if (a.model == "cluster-plus-cover") {
        g = cluster_cover_graph(a.t, a.clusters, a.max_clique, a.seed);
    } else if (a.model == "expression") {
        if (a.output_expr.empty())
            throw input_error("gen --model expression needs --output-expr");
        WExpr e = random_nice_expression(a.n, a.w, a.seed);
        if (check_nice(e))
            throw internal_error("generated expression is not nice");
        write_file(a.output_expr, print_wexpr(e) + "\n");
        report["expression"] = a.output_expr;
        g = evaluate(e).g;
    } else {
        throw input_error("unknown model '" + a.model + "'");
    }
    write_file(a.output, write_dimacs(g));
    report["n"] = g.num_vertices();
    report["m"] = g.num_edges();
    out << report.dump(2) << "\n";
    err << "gen: " << a.model << " wrote " << a.output << "\n";
    return 0;
}

struct CrosscheckArgs {
    int n_max = 7, k_max = 4, trials = 200;
    std::uint64_t seed = 1;
    std::string suite = "all", reproducer_dir;
};

int cmd_crosscheck(const CrosscheckArgs& a, std::ostream& out, std::ostream& err) {
    Stopwatch clock;
    std::vector<SuiteResult> suites;
    if (a.n_max > 0) {
        if (a.suite == "all") {
            suites = run_all_suites(a.seed, a.n_max, a.k_max, a.trials);
        } else if (a.suite == "verifier-pair") {
            suites.push_back(suite_verifier_pair(a.seed, a.trials));
        } else if (a.suite == "nd-vs-oracle") {
            suites.push_back(suite_nd_vs_oracle(a.n_max, a.k_max));
        } else if (a.suite == "tc-vs-oracle") {
            suites.push_back(suite_tc_vs_oracle(a.n_max, a.k_max));
        } else if (a.suite == "surgery-safety") {
            suites.push_back(suite_surgery(a.seed, a.trials));
        } else if (a.suite == "cw-vs-oracle") {
            suites.push_back(
                suite_cw_vs_oracle(expression_corpus(a.seed, 30), a.k_max));
        } else if (a.suite == "cw-tables") {
            suites.push_back(
                suite_cw_tables(expression_corpus(a.seed, 30), a.k_max));
        } else if (a.suite == "ilp-vs-enumeration") {
            suites.push_back(suite_ilp_enum(a.seed, a.trials * 5));
        } else if (a.suite == "known-values") {
            suites.push_back(suite_known_values());
        } else {
            throw input_error("unknown suite '" + a.suite + "'");
        }
    }
    long long total = 0;
    json arr = json::array();
    for (const SuiteResult& r : suites) {
        total += r.disagreements;
        arr.push_back(json{{"name", r.name},
                           {"cases", r.cases},
                           {"disagreements", r.disagreements},
                           {"reproducers", r.reproducers}});
        if (!a.reproducer_dir.empty() && !r.reproducers.empty()) {
            std::filesystem::create_directories(a.reproducer_dir);
            for (size_t i = 0; i < r.reproducers.size(); ++i) {
                std::ostringstream name;
                name << a.reproducer_dir << "/repro_" << r.name << "_" << i
                     << ".txt";
                write_file(name.str(), r.reproducers[i] + "\n");
            }
        }
    }
    json report{{"command", "crosscheck"}, {"seed", a.seed},
                {"n_max", a.n_max},       {"k_max", a.k_max},
                {"trials", a.trials},     {"suites", arr},
                {"total_disagreements", total},
                {"timings", json{{"total_ms", clock.ms()}}}};
    out << report.dump(2) << "\n";
    err << "crosscheck: " << suites.size() << " suites, " << total
        << " disagreements\n";
    return total > 0 ? 4 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"star coloring toolkit"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "decide k-star-colorability");
    solve->add_option("--input", sa.input, "DIMACS graph file");
    solve->add_option("--k", sa.k, "number of colors")->required();
    solve->add_option("--method", sa.method,
                      "auto|brute|nd|twincover|cliquewidth");
    solve->add_option("--cw-expr", sa.cw_expr, "expression file");
    solve->add_option("--twin-cover", sa.twin_cover, "comma list of vertices");
    solve->add_option("--output", sa.output, "write the witness coloring here");
    solve->add_option("--max-states", sa.max_states, "expression DP budget");
    solve->add_option("--join-case-range", sa.join_case_range,
                      "narrow|extended");
    solve->add_flag("--witness", sa.witness,
                    "replay a coloring from the expression DP");
    solve->add_option("--dump-ilp", sa.dump_ilp, "write the type ILP here");
    solve->add_option("--dump-surgery", sa.dump_surgery,
                      "write the rewrite log here");
    solve->add_option("--dump-tables", sa.dump_tables,
                      "write per-node DP tables into this directory");

    std::string verify_input, verify_coloring;
    CLI::App* verify = app.add_subcommand("verify", "check a coloring file");
    verify->add_option("--input", verify_input, "DIMACS graph file")->required();
    verify->add_option("--coloring", verify_coloring, "coloring JSON file")
        ->required();

    std::string params_input;
    CLI::App* params = app.add_subcommand("params", "report graph parameters");
    params->add_option("--input", params_input, "DIMACS graph file")->required();

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("--model", ga.model, "gnp|cluster-plus-cover|expression");
    gen->add_option("--n", ga.n, "vertex count");
    gen->add_option("--p", ga.p, "edge probability");
    gen->add_option("--t", ga.t, "cover size");
    gen->add_option("--clusters", ga.clusters, "clique count");
    gen->add_option("--max-clique", ga.max_clique, "largest clique size");
    gen->add_option("--w", ga.w, "label budget");
    gen->add_option("--seed", ga.seed, "64-bit seed");
    gen->add_option("--output", ga.output, "graph file to write");
    gen->add_option("--output-expr", ga.output_expr, "expression file to write");

    CrosscheckArgs ca;
    CLI::App* crosscheck =
        app.add_subcommand("crosscheck", "cross-examine the solvers");
    crosscheck->add_option("--n-max", ca.n_max, "largest atlas size");
    crosscheck->add_option("--k-max", ca.k_max, "largest color budget");
    crosscheck->add_option("--trials,--count", ca.trials, "seeded trial count");
    crosscheck->add_option("--seed", ca.seed, "64-bit seed");
    crosscheck->add_option("--suite", ca.suite, "one suite name, or 'all'");
    crosscheck->add_option("--reproducer-dir", ca.reproducer_dir,
                           "write disagreement reproducers here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(sa, out, err);
        if (verify->parsed())
            return cmd_verify(verify_input, verify_coloring, out, err);
        if (params->parsed()) return cmd_params(params_input, out, err);
        if (gen->parsed()) return cmd_gen(ga, out, err);
        if (crosscheck->parsed()) return cmd_crosscheck(ca, out, err);
        err << "error: no subcommand\n";
        return 2;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace starcolor
