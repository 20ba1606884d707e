#include "starcolor/wexpr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "starcolor/errors.hpp"

namespace starcolor {

namespace {

struct Token {
    enum class Type { word, number, lparen, rparen, comma, arrow, end };
    Type type;
    std::string text;
    long long value = 0;
    int line = 1;
    int col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    std::ostringstream os;
    os << "wexpr:" << line << ":" << col << ": " << msg;
    throw input_error(os.str());
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t by) {
        for (size_t j = 0; j < by; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += by;
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
            t.type = Token::Type::word;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.type = Token::Type::number;
            t.text = text.substr(i, j - i);
            if (t.text.size() > 9) fail_at(line, col, "number too large: " + t.text);
            t.value = std::stoll(t.text);
            advance(j - i);
        } else if (c == '(') {
            t.type = Token::Type::lparen;
            advance(1);
        } else if (c == ')') {
            t.type = Token::Type::rparen;
            advance(1);
        } else if (c == ',') {
            t.type = Token::Type::comma;
            advance(1);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.type = Token::Type::arrow;
            advance(2);
        } else {
            fail_at(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(t);
    }
    Token end;
    end.type = Token::Type::end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

struct Parser {
    explicit Parser(const std::vector<Token>& t) : toks(t) {}

    const std::vector<Token>& toks;
    size_t pos = 0;
    WExpr expr;

    const Token& peek() const { return toks[pos]; }
    const Token& take() { return toks[pos++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        fail_at(t.line, t.col, msg);
    }

    void expect(Token::Type type, const char* what) {
        const Token& t = take();
        if (t.type != type) fail(t, std::string("expected ") + what);
    }

    int number(const char* what) {
        const Token& t = take();
        if (t.type != Token::Type::number)
            fail(t, std::string("expected ") + what);
        if (t.value < 1 || t.value > 1000000)
            fail(t, std::string(what) + " out of range: " + t.text);
        return static_cast<int>(t.value);
    }

    int parse_node() {
        const Token& t = take();
        if (t.type != Token::Type::word)
            fail(t, "expected one of v, u, rho, eta");
        WNode node;
        if (t.text == "v") {
            node.kind = WNode::Kind::intro;
            expect(Token::Type::lparen, "'('");
            node.a = number("vertex id");
            expect(Token::Type::comma, "','");
            node.b = number("label");
            expect(Token::Type::rparen, "')'");
        } else if (t.text == "u") {
            node.kind = WNode::Kind::unite;
            expect(Token::Type::lparen, "'('");
            node.left = parse_node();
            expect(Token::Type::comma, "','");
            node.right = parse_node();
            expect(Token::Type::rparen, "')'");
        } else if (t.text == "rho") {
            node.kind = WNode::Kind::relabel;
            expect(Token::Type::lparen, "'('");
            node.a = number("label");
            expect(Token::Type::arrow, "'->'");
            node.b = number("label");
            if (node.a == node.b)
                fail(t, "relabel with identical labels " + std::to_string(node.a));
            expect(Token::Type::comma, "','");
            node.left = parse_node();
            expect(Token::Type::rparen, "')'");
        } else if (t.text == "eta") {
            node.kind = WNode::Kind::join;
            expect(Token::Type::lparen, "'('");
            node.a = number("label");
            expect(Token::Type::comma, "','");
            node.b = number("label");
            if (node.a == node.b)
                fail(t, "join with identical labels " + std::to_string(node.a));
            expect(Token::Type::comma, "','");
            node.left = parse_node();
            expect(Token::Type::rparen, "')'");
        } else {
            fail(t, "unknown operator '" + t.text + "'");
        }
        expr.nodes.push_back(node);
        return static_cast<int>(expr.nodes.size()) - 1;
    }
};

void print_node(const WExpr& e, int idx, std::ostream& os) {
    const WNode& n = e.nodes[idx];
    switch (n.kind) {
        case WNode::Kind::intro:
            os << "v(" << n.a << "," << n.b << ")";
            break;
        case WNode::Kind::unite:
            os << "u(";
            print_node(e, n.left, os);
            os << ",";
            print_node(e, n.right, os);
            os << ")";
            break;
        case WNode::Kind::relabel:
            os << "rho(" << n.a << "->" << n.b << ",";
            print_node(e, n.left, os);
            os << ")";
            break;
        case WNode::Kind::join:
            os << "eta(" << n.a << "," << n.b << ",";
            print_node(e, n.left, os);
            os << ")";
            break;
    }
}

// shared bottom-up walk: builds the graph, tracks current labels, and hands
// every join its two member classes before the edges are added
template <typename JoinHook>
LabeledGraph walk(const WExpr& e, JoinHook&& on_join) {
    std::vector<int> ids;
    for (const WNode& n : e.nodes)
        if (n.kind == WNode::Kind::intro) ids.push_back(n.a);
    std::sort(ids.begin(), ids.end());
    std::map<int, int> rank;
    for (size_t i = 0; i < ids.size(); ++i) rank[ids[i]] = static_cast<int>(i) + 1;

    LabeledGraph lg;
    lg.g = Graph(static_cast<int>(ids.size()));
    lg.labels.assign(ids.size() + 1, 0);

    // members of each subtree, kept ascending
    auto eval = [&](auto&& self, int idx) -> std::vector<int> {
        const WNode& n = e.nodes[idx];
        switch (n.kind) {
            case WNode::Kind::intro: {
                int v = rank.at(n.a);
                lg.labels[v] = n.b;
                return {v};
            }
            case WNode::Kind::unite: {
                std::vector<int> l = self(self, n.left);
                std::vector<int> r = self(self, n.right);
                std::vector<int> out;
                std::merge(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
                return out;
            }
            case WNode::Kind::relabel: {
                std::vector<int> m = self(self, n.left);
                for (int v : m)
                    if (lg.labels[v] == n.a) lg.labels[v] = n.b;
                return m;
            }
            case WNode::Kind::join: {
                std::vector<int> m = self(self, n.left);
                std::vector<int> li, lj;
                for (int v : m) {
                    if (lg.labels[v] == n.a) li.push_back(v);
                    if (lg.labels[v] == n.b) lj.push_back(v);
                }
                on_join(idx, li, lj, lg.g);
                for (int u : li)
                    for (int v : lj) lg.g.add_edge(u, v);
                return m;
            }
        }
        return {};
    };
    if (e.root >= 0) eval(eval, e.root);
    return lg;
}

int clone_subtree(const WExpr& from, int idx, WExpr& to,
                  const std::vector<bool>& skip_join) {
    const WNode& n = from.nodes[idx];
    if (n.kind == WNode::Kind::join && idx < static_cast<int>(skip_join.size()) &&
        skip_join[idx])
        return clone_subtree(from, n.left, to, skip_join);
    WNode copy = n;
    if (n.left >= 0) copy.left = clone_subtree(from, n.left, to, skip_join);
    if (n.right >= 0) copy.right = clone_subtree(from, n.right, to, skip_join);
    to.nodes.push_back(copy);
    return static_cast<int>(to.nodes.size()) - 1;
}

}  // namespace

WExpr parse_wexpr(const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    Parser p(toks);
    if (p.peek().type == Token::Type::end) fail_at(1, 1, "empty input");
    if (p.peek().type == Token::Type::word && p.peek().text == "w" &&
        toks[p.pos + 1].type == Token::Type::number) {
        p.take();
        p.expr.declared_w = p.number("width");
    }
    p.expr.root = p.parse_node();
    const Token& rest = p.peek();
    if (rest.type != Token::Type::end)
        fail_at(rest.line, rest.col, "trailing input after expression");

    std::set<int> seen_ids;
    for (const WNode& n : p.expr.nodes) {
        if (n.kind == WNode::Kind::unite) continue;
        int hi = n.kind == WNode::Kind::intro ? n.b : std::max(n.a, n.b);
        if (p.expr.declared_w > 0 && hi > p.expr.declared_w)
            throw input_error("wexpr: label " + std::to_string(hi) +
                              " exceeds declared width " +
                              std::to_string(p.expr.declared_w));
        if (n.kind == WNode::Kind::intro && !seen_ids.insert(n.a).second)
            throw input_error("wexpr: vertex id " + std::to_string(n.a) +
                              " introduced twice");
    }
    return p.expr;
}

std::string print_wexpr(const WExpr& e) {
    std::ostringstream os;
    if (e.declared_w > 0) os << "w " << e.declared_w << "\n";
    if (e.root >= 0) print_node(e, e.root, os);
    return os.str();
}

int width(const WExpr& e) {
    int w = 0;
    for (const WNode& n : e.nodes) {
        if (n.kind == WNode::Kind::intro)
            w = std::max(w, n.b);
        else if (n.kind != WNode::Kind::unite)
            w = std::max(w, std::max(n.a, n.b));
    }
    return w;
}

LabeledGraph evaluate(const WExpr& e) {
    return walk(e, [](int, const std::vector<int>&, const std::vector<int>&,
                      const Graph&) {});
}

std::optional<JoinViolation> check_nice(const WExpr& e) {
    std::optional<JoinViolation> bad;
    walk(e, [&](int idx, const std::vector<int>& li, const std::vector<int>& lj,
                const Graph& g) {
        if (bad) return;
        for (int u : li)
            for (int v : lj)
                if (g.has_edge(u, v)) {
                    bad = JoinViolation{idx, {std::min(u, v), std::max(u, v)}};
                    return;
                }
    });
    return bad;
}

WExpr drop_redundant_joins(const WExpr& e) {
    std::vector<bool> redundant(e.nodes.size(), false);
    walk(e, [&](int idx, const std::vector<int>& li, const std::vector<int>& lj,
                const Graph& g) {
        bool adds = false;
        for (int u : li) {
            for (int v : lj)
                if (!g.has_edge(u, v)) {
                    adds = true;
                    break;
                }
            if (adds) break;
        }
        if (!adds) redundant[idx] = true;
    });
    WExpr out;
    out.declared_w = e.declared_w;
    if (e.root >= 0) out.root = clone_subtree(e, e.root, out, redundant);
    return out;
}

WExpr subexpression(const WExpr& e, int node) {
    if (node < 0 || node >= static_cast<int>(e.nodes.size()))
        throw internal_error("subexpression: node out of range");
    WExpr out;
    out.declared_w = e.declared_w;
    out.root = clone_subtree(e, node, out, {});
    return out;
}

WExpr load_wexpr_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open expression file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_wexpr(buf.str());
}

}  // namespace starcolor
