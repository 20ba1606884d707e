#include "starcolor/dimacs.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

[[noreturn]] void fail_line(int line_no, const std::string& what) {
    throw input_error("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph parse_dimacs(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool have_p = false;
    int n = 0;
    long declared_m = 0, seen_e = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "c") continue;
        if (tag == "p") {
            if (have_p) fail_line(line_no, "duplicate p-line");
            std::string fmt;
            if (!(ls >> fmt >> n >> declared_m))
                fail_line(line_no, "malformed p-line, expected 'p edge <n> <m>'");
            if (fmt != "edge" && fmt != "col")
                fail_line(line_no, "unsupported format '" + fmt + "', expected 'edge'");
            if (n < 0 || declared_m < 0) fail_line(line_no, "negative size in p-line");
            std::string rest;
            if (ls >> rest) fail_line(line_no, "trailing tokens after p-line");
            g = Graph(n);
            have_p = true;
        } else if (tag == "e") {
            if (!have_p) fail_line(line_no, "e-line before p-line");
            int u = 0, v = 0;
            if (!(ls >> u >> v)) fail_line(line_no, "malformed e-line, expected 'e <u> <v>'");
            std::string rest;
            if (ls >> rest) fail_line(line_no, "trailing tokens after e-line");
            ++seen_e;
            try {
                g.add_edge(u, v);
            } catch (const input_error& e) {
                fail_line(line_no, e.what());
            }
        } else {
            fail_line(line_no, "unknown line tag '" + tag + "'");
        }
    }
    if (!have_p) throw input_error("missing p-line");
    if (declared_m != seen_e)
        throw input_error("p-line declares " + std::to_string(declared_m) +
                          " edges but file has " + std::to_string(seen_e));
    return g;
}

Graph parse_dimacs_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

Graph load_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file: " + path);
    try {
        return parse_dimacs(in);
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

std::string write_dimacs(const Graph& g) {
    std::ostringstream os;
    os << "p edge " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
    return os.str();
}

Coloring parse_coloring_json(const std::string& text, int num_vertices) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("coloring is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("k") || !j.contains("colors"))
        throw input_error("coloring JSON must be an object with keys \"k\" and \"colors\"");
    if (!j["k"].is_number_integer()) throw input_error("\"k\" must be an integer");
    Coloring c;
    c.k = j["k"].get<int>();
    if (c.k < 0) throw input_error("\"k\" must be nonnegative");
    c.colors.assign(num_vertices + 1, 0);
    if (!j["colors"].is_object()) throw input_error("\"colors\" must be an object");
    for (auto& [key, val] : j["colors"].items()) {
        int v = 0;
        try {
            size_t pos = 0;
            v = std::stoi(key, &pos);
            if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw input_error("vertex key '" + key + "' is not an integer");
        }
        if (v < 1 || v > num_vertices)
            throw input_error("vertex " + key + " out of range 1.." +
                              std::to_string(num_vertices));
        if (!val.is_number_integer())
            throw input_error("color of vertex " + key + " must be an integer");
        int col = val.get<int>();
        if (col < 1 || col > c.k)
            throw input_error("color of vertex " + key + " outside 1..k");
        if (c.colors[v] != 0) throw input_error("vertex " + key + " listed twice");
        c.colors[v] = col;
    }
    for (int v = 1; v <= num_vertices; ++v)
        if (c.colors[v] == 0)
            throw input_error("vertex " + std::to_string(v) + " has no color");
    return c;
}

Coloring load_coloring_file(const std::string& path, int num_vertices) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open coloring file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_coloring_json(buf.str(), num_vertices);
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

std::string write_coloring_json(const Coloring& c, int num_vertices) {
    nlohmann::json colors = nlohmann::json::object();
    for (int v = 1; v <= num_vertices; ++v)
        colors[std::to_string(v)] = c.colors[v];
    nlohmann::json j{{"k", c.k}, {"colors", colors}};
    return j.dump();
}

}  // namespace starcolor
