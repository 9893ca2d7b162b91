#include "gridlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gridlab/errors.hpp"

namespace gridlab {
namespace {

struct Token {
    std::string text;
    int column = 0;
};

struct Line {
    int number = 0;
    std::vector<Token> tokens;
};

/// Splits into non-empty, non-comment lines of whitespace-separated tokens.
std::vector<Line> tokenize(const std::string& text, const std::string& comment_prefixes) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (line.tokens.empty()) continue;
        if (comment_prefixes.find(line.tokens[0].text[0]) != std::string::npos &&
            (line.tokens[0].text.size() == 1 || line.tokens[0].text[0] == '#')) {
            continue;
        }
        out.push_back(std::move(line));
    }
    return out;
}

long long to_int(const Line& line, const Token& t, const std::string& what) {
    long long v = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || end != t.text.data() + t.text.size()) {
        throw ParseError("expected an integer " + what + ", got '" + t.text + "'", line.number, t.column);
    }
    return v;
}

Rational to_rational(const Line& line, const Token& t) {
    try {
        return Rational::parse(t.text);
    } catch (const std::exception& e) {
        throw ParseError("malformed rational '" + t.text + "'", line.number, t.column);
    }
}

void expect_tokens(const Line& line, std::size_t count, const std::string& shape) {
    if (line.tokens.size() != count) {
        int col = line.tokens.size() > count ? line.tokens[count].column : 0;
        throw ParseError("expected \"" + shape + "\"", line.number, col);
    }
}

int in_range(const Line& line, const Token& t, long long lo, long long hi, const std::string& what) {
    long long v = to_int(line, t, what);
    if (v < lo || v > hi) {
        throw ParseError(what + " " + t.text + " out of range " + std::to_string(lo) + ".." + std::to_string(hi),
                         line.number, t.column);
    }
    return static_cast<int>(v);
}

}  // namespace

Graph parse_graph(const std::string& text) {
    auto lines = tokenize(text, "#");
    if (lines.empty()) throw ParseError("missing header \"n m\"", 1);
    const Line& head = lines[0];
    expect_tokens(head, 2, "n m");
    int n = in_range(head, head.tokens[0], 0, 100'000'000, "vertex count");
    int m = in_range(head, head.tokens[1], 0, 1'000'000'000, "edge count");
    if (static_cast<int>(lines.size()) - 1 != m) {
        int at = static_cast<int>(lines.size()) - 1 > m ? lines[m + 1].number : lines.back().number;
        throw ParseError("header announces " + std::to_string(m) + " edges, file has " +
                             std::to_string(lines.size() - 1),
                         at);
    }
    Graph g(n);
    std::map<Edge, int> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        expect_tokens(l, 2, "u v");
        int u = in_range(l, l.tokens[0], 0, n - 1, "vertex id");
        int v = in_range(l, l.tokens[1], 0, n - 1, "vertex id");
        if (u == v) throw ParseError("loop at vertex " + std::to_string(u), l.number, l.tokens[1].column);
        Edge e{std::min(u, v), std::max(u, v)};
        auto [it, fresh] = seen.emplace(e, l.number);
        if (!fresh) throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), l.number, 0, it->second);
        g.add_edge(u, v);
    }
    return g;
}

std::string emit_graph(const Graph& g) {
    std::ostringstream out;
    auto edges = g.edges();
    out << g.size() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
}

Representation parse_rep(const std::string& text) {
    auto lines = tokenize(text, "#");
    std::map<int, std::pair<Segment, int>> byid;
    for (const Line& l : lines) {
        expect_tokens(l, 5, "id H|V x y len");
        int id = in_range(l, l.tokens[0], 0, 100'000'000, "vertex id");
        const Token& o = l.tokens[1];
        if (o.text != "H" && o.text != "V") throw ParseError("orientation must be H or V", l.number, o.column);
        Segment s{o.text == "H" ? Orientation::Horizontal : Orientation::Vertical,
                  {to_rational(l, l.tokens[2]), to_rational(l, l.tokens[3])},
                  to_rational(l, l.tokens[4])};
        if (s.length <= Rational(0)) throw ParseError("length must be positive", l.number, l.tokens[4].column);
        auto [it, fresh] = byid.emplace(id, std::pair{s, l.number});
        if (!fresh) throw ParseError("vertex " + std::to_string(id) + " given twice", l.number, 1, it->second.second);
    }
    Representation rep;
    for (auto& [id, entry] : byid) {
        if (id != rep.size()) throw ParseError("vertex " + std::to_string(rep.size()) + " missing", entry.second);
        rep.segments.push_back(entry.first);
    }
    rep.unit_mode = std::all_of(rep.segments.begin(), rep.segments.end(),
                                [](const Segment& s) { return s.length == Rational(1); });
    return rep;
}

std::string emit_rep(const Representation& rep) {
    std::ostringstream out;
    for (Vertex v = 0; v < rep.size(); ++v) {
        const auto& s = rep[v];
        out << v << ' ' << orientation_char(s.orientation) << ' ' << s.anchor.x.str() << ' ' << s.anchor.y.str() << ' '
            << s.length.str() << '\n';
    }
    return out.str();
}

SatInstance parse_instance(const std::string& text) {
    auto lines = tokenize(text, "c%#");
    SatInstance inst;
    int declared = -1;
    int header_line = 0;
    std::vector<int> clause_line;
    std::vector<Literal> open;
    int open_line = 0;
    std::map<int, std::pair<std::vector<int>, const Line*>> rot_v;
    std::map<int, std::pair<std::vector<int>, const Line*>> rot_c;
    auto seen_pos = [](std::map<int, int>& seen, int id, int line, const std::string& what) {
        auto [it, fresh] = seen.emplace(id, line);
        if (!fresh) throw ParseError(what + " " + std::to_string(id + 1) + " given twice", line, 1, it->second);
    };
    std::map<int, int> e_seen, f_seen;
    auto need_header = [&](const Line& l) {
        if (declared < 0) throw ParseError("\"p cnf\" header must come first", l.number, 1);
    };
    for (const Line& l : lines) {
        const std::string& key = l.tokens[0].text;
        if (key == "p") {
            if (declared >= 0) throw ParseError("second header", l.number, 1, header_line);
            expect_tokens(l, 4, "p cnf vars clauses");
            if (l.tokens[1].text != "cnf") throw ParseError("only cnf is supported", l.number, l.tokens[1].column);
            inst.var_count = in_range(l, l.tokens[2], 0, 10'000'000, "variable count");
            declared = in_range(l, l.tokens[3], 0, 10'000'000, "clause count");
            header_line = l.number;
            continue;
        }
        need_header(l);
        int nv = inst.var_count;
        if (key == "x") {
            expect_tokens(l, 2, "x relaxed");
            if (l.tokens[1].text != "relaxed") throw ParseError("unknown directive", l.number, l.tokens[1].column);
            inst.relaxed = true;
        } else if (key == "r" || key == "q") {
            bool var_side = key == "r";
            if (l.tokens.size() < 2) throw ParseError("rotation line needs an id", l.number, 1);
            int id = in_range(l, l.tokens[1], 1, var_side ? nv : declared, var_side ? "variable" : "clause") - 1;
            std::vector<int> around;
            for (std::size_t i = 2; i < l.tokens.size(); ++i) {
                around.push_back(in_range(l, l.tokens[i], 1, var_side ? declared : nv, var_side ? "clause" : "variable") - 1);
            }
            auto& table = var_side ? rot_v : rot_c;
            auto [it, fresh] = table.emplace(id, std::pair{around, &l});
            if (!fresh) throw ParseError("rotation given twice", l.number, l.tokens[1].column, it->second.second->number);
        } else if (key == "e" || key == "f") {
            bool var_side = key == "e";
            expect_tokens(l, 4, key + " id x y");
            int id = in_range(l, l.tokens[1], 1, var_side ? nv : declared, var_side ? "variable" : "clause") - 1;
            seen_pos(var_side ? e_seen : f_seen, id, l.number, var_side ? "position of variable" : "position of clause");
            auto& table = var_side ? inst.var_position : inst.clause_position;
            table.resize(static_cast<std::size_t>(var_side ? nv : declared));
            table[id] = Point{to_rational(l, l.tokens[2]), to_rational(l, l.tokens[3])};
        } else {
            for (const Token& t : l.tokens) {
                long long lit = to_int(l, t, "literal");
                if (lit == 0) {
                    if (open.empty()) throw ParseError("empty clause", l.number, t.column);
                    inst.clauses.push_back(open);
                    clause_line.push_back(open_line);
                    open.clear();
                    continue;
                }
                if (lit < -nv || lit > nv) throw ParseError("literal " + t.text + " names an unknown variable", l.number, t.column);
                if (open.empty()) open_line = l.number;
                open.push_back({static_cast<int>(std::llabs(lit)) - 1, lit > 0});
            }
        }
    }
    if (declared < 0) throw ParseError("missing \"p cnf\" header", lines.empty() ? 1 : lines.front().number);
    if (!open.empty()) throw ParseError("clause not terminated by 0", open_line);
    if (static_cast<int>(inst.clauses.size()) != declared) {
        throw ParseError("header announces " + std::to_string(declared) + " clauses, file has " +
                             std::to_string(inst.clauses.size()),
                         header_line);
    }
    if (!inst.var_position.empty() || !inst.clause_position.empty()) {
        inst.var_position.resize(static_cast<std::size_t>(inst.var_count));
        inst.clause_position.resize(static_cast<std::size_t>(declared));
    }

    // Cross-check rotations against each other and against the clauses.
    for (const auto& [v, entry] : rot_v) {
        const auto& [around, line] = entry;
        for (int c : around) {
            if (!inst.literal_in(c, v)) {
                throw ParseError("variable " + std::to_string(v + 1) + " lists clause " + std::to_string(c + 1) +
                                     ", which does not contain it",
                                 line->number, 0, clause_line[c]);
            }
            auto q = rot_c.find(c);
            if (q != rot_c.end() && std::find(q->second.first.begin(), q->second.first.end(), v) == q->second.first.end()) {
                throw ParseError("variable " + std::to_string(v + 1) + " lists clause " + std::to_string(c + 1) +
                                     ", whose rotation omits the variable",
                                 line->number, 0, q->second.second->number);
            }
        }
    }
    for (const auto& [c, entry] : rot_c) {
        const auto& [around, line] = entry;
        for (int v : around) {
            if (!inst.literal_in(c, v)) {
                throw ParseError("clause " + std::to_string(c + 1) + " lists variable " + std::to_string(v + 1) +
                                     ", which it does not contain",
                                 line->number, 0, clause_line[c]);
            }
            auto r = rot_v.find(v);
            if (r != rot_v.end() && std::find(r->second.first.begin(), r->second.first.end(), c) == r->second.first.end()) {
                throw ParseError("clause " + std::to_string(c + 1) + " lists variable " + std::to_string(v + 1) +
                                     ", whose rotation omits the clause",
                                 line->number, 0, r->second.second->number);
            }
        }
    }
    if (!rot_v.empty()) {
        inst.var_rotation.resize(static_cast<std::size_t>(inst.var_count));
        for (auto& [v, entry] : rot_v) inst.var_rotation[v] = entry.first;
    }
    if (!rot_c.empty()) {
        inst.clause_rotation.resize(static_cast<std::size_t>(declared));
        for (auto& [c, entry] : rot_c) inst.clause_rotation[c] = entry.first;
    }
    // Without rotation lines a complete embedding supplies them.
    auto placed = [](const auto& ps) {
        return !ps.empty() && std::all_of(ps.begin(), ps.end(), [](const auto& p) { return p.has_value(); });
    };
    if (rot_v.empty() && rot_c.empty() && placed(inst.var_position) && placed(inst.clause_position)) {
        derive_rotations(inst);
    }
    return inst;
}

std::string emit_instance(const SatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.var_count << ' ' << inst.clause_count() << '\n';
    if (inst.relaxed) out << "x relaxed\n";
    for (const auto& cl : inst.clauses) {
        for (const auto& l : cl) out << (l.positive ? l.var + 1 : -(l.var + 1)) << ' ';
        out << "0\n";
    }
    for (std::size_t v = 0; v < inst.var_rotation.size(); ++v) {
        out << "r " << v + 1;
        for (int c : inst.var_rotation[v]) out << ' ' << c + 1;
        out << '\n';
    }
    for (std::size_t c = 0; c < inst.clause_rotation.size(); ++c) {
        out << "q " << c + 1;
        for (int v : inst.clause_rotation[c]) out << ' ' << v + 1;
        out << '\n';
    }
    for (std::size_t v = 0; v < inst.var_position.size(); ++v) {
        if (const auto& p = inst.var_position[v]) out << "e " << v + 1 << ' ' << p->x.str() << ' ' << p->y.str() << '\n';
    }
    for (std::size_t c = 0; c < inst.clause_position.size(); ++c) {
        if (const auto& p = inst.clause_position[c]) out << "f " << c + 1 << ' ' << p->x.str() << ' ' << p->y.str() << '\n';
    }
    return out.str();
}

std::vector<Role> parse_roles(const std::string& text, int n) {
    auto lines = tokenize(text, "#");
    std::vector<std::optional<Role>> roles(static_cast<std::size_t>(n));
    for (const Line& l : lines) {
        expect_tokens(l, 2, "id role");
        int id = in_range(l, l.tokens[0], 0, n - 1, "vertex id");
        try {
            roles[id] = parse_role(l.tokens[1].text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), l.number, l.tokens[1].column);
        }
    }
    std::vector<Role> out;
    for (int v = 0; v < n; ++v) {
        if (!roles[v]) throw ParseError("no role for vertex " + std::to_string(v), lines.empty() ? 1 : lines.back().number);
        out.push_back(*roles[v]);
    }
    return out;
}

std::string emit_roles(const std::vector<Role>& roles) {
    std::ostringstream out;
    for (std::size_t v = 0; v < roles.size(); ++v) out << v << ' ' << role_name(roles[v]) << '\n';
    return out.str();
}

namespace {

std::string number(const Rational& r) {
    if (r.is_integer()) return std::to_string(r.num());
    char buf[64];
    double d = static_cast<double>(r.num()) / static_cast<double>(r.den());
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, end);
}

}  // namespace

std::string render_svg(const Representation& rep, const std::vector<Role>& roles, const SvgOptions& opts) {
    const Rational& k = opts.scale;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    if (rep.empty()) {
        out << " viewBox=\"0 0 0 0\" width=\"0\" height=\"0\"></svg>\n";
        return out.str();
    }
    Box b = bounding_box(rep);
    Rational margin(1, 2);
    Rational x0 = (b.xmin - margin) * k, y0 = -(b.ymax + margin) * k;
    Rational w = (b.width() + 2 * margin) * k, h = (b.height() + 2 * margin) * k;
    out << " viewBox=\"" << number(x0) << ' ' << number(y0) << ' ' << number(w) << ' ' << number(h) << "\" width=\""
        << number(w) << "\" height=\"" << number(h) << "\">\n";
    out << "<style>line{stroke:#333;stroke-width:6;stroke-linecap:round}"
           ".red-path,.clause-red{stroke:#d62728}.blue-path,.clause-blue{stroke:#1f77b4}"
           ".var-a1,.var-a2,.splitter{stroke:#2ca02c}.dummy-path,.anchor-path{stroke:#999}</style>\n";
    for (Vertex v = 0; v < rep.size(); ++v) {
        const auto& s = rep[v];
        Point e = s.end();
        out << "<line class=\"seg";
        if (static_cast<std::size_t>(v) < roles.size()) out << ' ' << role_name(roles[v]);
        out << "\" data-v=\"" << v << "\" x1=\"" << number(s.anchor.x * k) << "\" y1=\"" << number(-s.anchor.y * k)
            << "\" x2=\"" << number(e.x * k) << "\" y2=\"" << number(-e.y * k) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed for " + path);
}

}  // namespace gridlab
