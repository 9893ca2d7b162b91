#include "gridlab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "gridlab/errors.hpp"

namespace gridlab {

bool SatInstance::has_embedding() const {
    auto all = [](const auto& v) { return std::all_of(v.begin(), v.end(), [](const auto& p) { return p.has_value(); }); };
    return !var_position.empty() && static_cast<int>(var_position.size()) == var_count &&
           static_cast<int>(clause_position.size()) == clause_count() && all(var_position) && all(clause_position);
}

std::optional<Literal> SatInstance::literal_in(int c, int var) const {
    for (const Literal& l : clauses.at(static_cast<std::size_t>(c)))
        if (l.var == var) return l;
    return std::nullopt;
}

namespace {

std::string var_label(int v) { return "variable " + std::to_string(v + 1); }
std::string clause_label(int c) { return "clause " + std::to_string(c + 1); }

bool same_members(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace

InstanceReport validate_instance(const SatInstance& inst) {
    InstanceReport rep;
    auto flag = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    const int nv = inst.var_count;
    const int nc = inst.clause_count();

    std::vector<std::vector<int>> occurs(static_cast<std::size_t>(std::max(nv, 0)));
    for (int c = 0; c < nc; ++c) {
        const auto& cl = inst.clauses[c];
        if (cl.size() != 3) flag(clause_label(c) + " has " + std::to_string(cl.size()) + " literals, expected 3");
        std::set<int> seen;
        for (const Literal& l : cl) {
            if (l.var < 0 || l.var >= nv) {
                flag(clause_label(c) + " uses unknown variable " + std::to_string(l.var + 1));
                continue;
            }
            if (!seen.insert(l.var).second) {
                flag(clause_label(c) + " mentions " + var_label(l.var) + " twice");
                continue;
            }
            occurs[l.var].push_back(c);
        }
    }
    for (int v = 0; v < nv; ++v) {
        const int k = static_cast<int>(occurs[v].size());
        if (k > 4) flag(var_label(v) + " occurs " + std::to_string(k) + " times, at most 4 allowed");
        if (k < 3) {
            if (inst.relaxed)
                rep.relaxed = true;
            else
                flag(var_label(v) + " occurs " + std::to_string(k) + " times, at least 3 required");
        }
    }

    if (static_cast<int>(inst.var_rotation.size()) != nv) {
        flag("rotation given for " + std::to_string(inst.var_rotation.size()) + " variables, expected " +
             std::to_string(nv));
    } else {
        for (int v = 0; v < nv; ++v)
            if (!same_members(inst.var_rotation[v], occurs[v]))
                flag("rotation of " + var_label(v) + " does not list exactly the clauses containing it");
    }
    if (static_cast<int>(inst.clause_rotation.size()) != nc) {
        flag("rotation given for " + std::to_string(inst.clause_rotation.size()) + " clauses, expected " +
             std::to_string(nc));
    } else {
        for (int c = 0; c < nc; ++c) {
            std::vector<int> vars;
            for (const Literal& l : inst.clauses[c]) vars.push_back(l.var);
            if (!same_members(inst.clause_rotation[c], vars))
                flag("rotation of " + clause_label(c) + " does not list exactly its variables");
        }
    }

    auto count_set = [](const auto& v) {
        return std::count_if(v.begin(), v.end(), [](const auto& p) { return p.has_value(); });
    };
    const auto placed = count_set(inst.var_position) + count_set(inst.clause_position);
    if (placed > 0 && !inst.has_embedding()) flag("embedding coordinates must be given for every variable and clause");
    return rep;
}

void derive_rotations(SatInstance& inst) {
    if (!inst.has_embedding()) throw InvalidInstance("rotations can only be derived from a complete embedding");
    auto angle = [](const Point& from, const Point& to) {
        const Rational dx = to.x - from.x, dy = to.y - from.y;
        return std::atan2(dy.num() / static_cast<double>(dy.den()), dx.num() / static_cast<double>(dx.den()));
    };
    // Clockwise means decreasing angle, starting from the positive x axis.
    auto clockwise = [&](const Point& centre, std::vector<int>& ids, const auto& pos) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) { return angle(centre, pos(a)) > angle(centre, pos(b)); });
    };
    inst.var_rotation.assign(static_cast<std::size_t>(inst.var_count), {});
    inst.clause_rotation.assign(inst.clauses.size(), {});
    for (int c = 0; c < inst.clause_count(); ++c)
        for (const Literal& l : inst.clauses[c]) {
            inst.var_rotation.at(static_cast<std::size_t>(l.var)).push_back(c);
            inst.clause_rotation[c].push_back(l.var);
        }
    for (int v = 0; v < inst.var_count; ++v)
        clockwise(*inst.var_position[v], inst.var_rotation[v], [&](int c) { return *inst.clause_position[c]; });
    for (int c = 0; c < inst.clause_count(); ++c)
        clockwise(*inst.clause_position[c], inst.clause_rotation[c], [&](int v) { return *inst.var_position[v]; });
}

ClauseColoring color_clause(const std::vector<Literal>& clause, const std::vector<int>& rotation) {
    if (clause.size() != 3) throw ArityError("clause gadget needs 3 literals, got " + std::to_string(clause.size()));
    if (rotation.size() != 3) throw ArityError("clause rotation must list 3 variables");
    ClauseColoring col;
    for (int i = 0; i < 3; ++i) {
        auto it = std::find_if(clause.begin(), clause.end(), [&](const Literal& l) { return l.var == rotation[i]; });
        if (it == clause.end()) throw ArityError("clause rotation names a variable outside the clause");
        col.var[i] = it->var;
        col.positive[i] = it->positive;
    }
    // First pair: the pendant is red iff the literal is positive. Second
    // pair: the cycle vertex is blue iff positive. Third pair: the cycle
    // vertex is red iff positive.
    col.cycle_red[0] = !col.positive[0];
    col.cycle_red[1] = !col.positive[1];
    col.cycle_red[2] = col.positive[2];
    return col;
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::UGIG5: return "ugig5";
        case Variant::GIG4: return "gig4";
        case Variant::STRING8: return "string8";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    for (Variant v : {Variant::UGIG5, Variant::GIG4, Variant::STRING8})
        if (variant_name(v) == name) return v;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

namespace {

constexpr Role kRoles[] = {Role::VarA1,        Role::VarA2,         Role::ClauseCycle,     Role::ClausePairRed,
                           Role::ClausePairBlue, Role::RedPathInner, Role::BluePathInner, Role::AnchorPathInner,
                           Role::DummyPathInner, Role::SplitterC};

}  // namespace

std::string role_name(Role r) {
    switch (r) {
        case Role::VarA1: return "var-a1";
        case Role::VarA2: return "var-a2";
        case Role::ClauseCycle: return "clause-cycle";
        case Role::ClausePairRed: return "clause-red";
        case Role::ClausePairBlue: return "clause-blue";
        case Role::RedPathInner: return "red-path";
        case Role::BluePathInner: return "blue-path";
        case Role::AnchorPathInner: return "anchor-path";
        case Role::DummyPathInner: return "dummy-path";
        case Role::SplitterC: return "splitter";
    }
    return "?";
}

Role parse_role(const std::string& name) {
    for (Role r : kRoles)
        if (role_name(r) == name) return r;
    throw std::invalid_argument("unknown role '" + name + "'");
}

namespace {

// Graph under construction with a 2-colouring tracked alongside.
struct Builder {
    Graph g;
    std::vector<Role> roles;
    std::vector<int> part;

    Vertex add(Role r, int p) {
        Vertex v = g.add_vertex();
        roles.push_back(r);
        part.push_back(p);
        return v;
    }

    // Least length >= at_least joining a and b without breaking the
    // colouring.
    int fit(Vertex a, Vertex b, int at_least) const {
        const int parity = part[a] != part[b] ? 1 : 0;
        int len = std::max(at_least, 1);
        if (len % 2 != parity) ++len;
        return len;
    }

    // Path of `len` edges from a to b; returns the inner vertices.
    std::vector<Vertex> path(Vertex a, Vertex b, int len, Role r) {
        std::vector<Vertex> inner;
        Vertex prev = a;
        for (int i = 1; i < len; ++i) {
            Vertex v = add(r, 1 - part[prev]);
            g.add_edge(prev, v);
            inner.push_back(v);
            prev = v;
        }
        g.add_edge(prev, b);
        return inner;
    }
};

void check_girth_param(int g) {
    if (g < 3) throw GirthTooSmall("girth parameter must be at least 3, got " + std::to_string(g));
}

// Red vertices go to part 0, blue ones to part 1.
ClauseGadget add_clause(Builder& b, const ClauseColoring& col, int g) {
    ClauseGadget cg;
    cg.coloring = col;
    for (int i = 0; i < 3; ++i) {
        const bool red = col.cycle_red[i];
        cg.cycle[i] = b.add(red ? Role::ClausePairRed : Role::ClausePairBlue, red ? 0 : 1);
        cg.pendant[i] = b.add(red ? Role::ClausePairBlue : Role::ClausePairRed, red ? 1 : 0);
        b.g.add_edge(cg.cycle[i], cg.pendant[i]);
    }
    for (int i = 0; i < 3; ++i) {
        Vertex u = cg.cycle[i], w = cg.cycle[(i + 1) % 3];
        cg.arcs[i] = b.path(u, w, b.fit(u, w, g), Role::ClauseCycle);
    }
    return cg;
}

double distance(const Point& a, const Point& b) {
    const double dx = (a.x - b.x).num() / static_cast<double>((a.x - b.x).den());
    const double dy = (a.y - b.y).num() / static_cast<double>((a.y - b.y).den());
    return std::hypot(dx, dy);
}

}  // namespace

ClauseGadget build_clause_gadget(const std::vector<Literal>& clause, const std::vector<int>& rotation, int g,
                                 Variant /*variant*/) {
    check_girth_param(g);
    Builder b;
    ClauseGadget cg = add_clause(b, color_clause(clause, rotation), g);
    cg.graph = std::move(b.g);
    cg.roles = std::move(b.roles);
    return cg;
}

int proportional_length(const SatInstance& inst, int var, int clause, int g) {
    if (!inst.has_embedding()) return g;
    double shortest = -1;
    for (int c = 0; c < inst.clause_count(); ++c)
        for (const Literal& l : inst.clauses[c]) {
            const double d = distance(*inst.var_position[l.var], *inst.clause_position[c]);
            if (d > 0 && (shortest < 0 || d < shortest)) shortest = d;
        }
    const double d = distance(*inst.var_position[var], *inst.clause_position[clause]);
    if (shortest <= 0 || d <= 0) return g;
    // The tolerance keeps exact multiples from rounding up.
    return std::max(g, static_cast<int>(std::ceil(g * d / shortest - 1e-9)));
}

GFGraph build_gf(const SatInstance& inst, int g, Variant variant) {
    check_girth_param(g);
    InstanceReport report = validate_instance(inst);
    if (!report.ok()) throw InvalidInstance("instance is not buildable: " + report.violations.front());

    Builder b;
    GFGraph out;
    out.girth_param = g;
    out.variant = variant;
    out.instance = inst;

    for (int c = 0; c < inst.clause_count(); ++c)
        out.clauses.push_back(add_clause(b, color_clause(inst.clauses[c], inst.clause_rotation[c]), g));

    for (int v = 0; v < inst.var_count; ++v) {
        GFVariable gv;
        const auto& rot = inst.var_rotation[v];
        const int real = static_cast<int>(rot.size());
        const int slots = real == 3 ? 4 : real;
        const int pairs = variant == Variant::UGIG5 ? 1 : std::max(slots, 1);
        for (int k = 0; k < pairs; ++k) {
            Vertex a1 = b.add(Role::VarA1, 0);
            Vertex a2 = b.add(Role::VarA2, 1);
            b.g.add_edge(a1, a2);
            gv.pairs.emplace_back(a1, a2);
        }
        auto anchor = [&](Vertex x, Vertex y) {
            gv.anchors.push_back({{x, y}, b.path(x, y, b.fit(x, y, g), Role::AnchorPathInner)});
        };
        if (variant == Variant::GIG4) {
            for (int k = 0; k + 1 < pairs; ++k) {
                anchor(gv.pairs[k].first, gv.pairs[k + 1].first);
                anchor(gv.pairs[k].second, gv.pairs[k + 1].second);
            }
        } else if (variant == Variant::STRING8) {
            Vertex c = b.add(Role::SplitterC, 0);
            gv.splitter = c;
            for (auto [a1, a2] : gv.pairs) {
                anchor(c, a1);
                anchor(c, a2);
            }
        }

        for (int k = 0; k < slots; ++k) {
            GFOccurrence occ;
            occ.var = v;
            occ.k = k;
            auto [a1, a2] = gv.pairs[variant == Variant::UGIG5 ? 0 : k];
            // a1 feeds the red ports of occurrences 1 and 3 and the blue
            // ports of occurrences 2 and 4.
            occ.red_source = k % 2 == 0 ? a1 : a2;
            occ.blue_source = k % 2 == 0 ? a2 : a1;
            Role red_role = Role::RedPathInner, blue_role = Role::BluePathInner;
            int len = g;
            if (k < real) {
                occ.clause = rot[k];
                const auto& crot = inst.clause_rotation[occ.clause];
                occ.slot = static_cast<int>(std::find(crot.begin(), crot.end(), v) - crot.begin());
                const ClauseGadget& cg = out.clauses[occ.clause];
                occ.red_port = cg.red_port(occ.slot);
                occ.blue_port = cg.blue_port(occ.slot);
                len = proportional_length(inst, v, occ.clause, g);
            } else {
                occ.red_port = b.add(Role::DummyPathInner, 0);
                occ.blue_port = b.add(Role::DummyPathInner, 1);
                b.g.add_edge(occ.red_port, occ.blue_port);
                red_role = blue_role = Role::DummyPathInner;
            }
            occ.red_path = b.path(occ.red_source, occ.red_port, b.fit(occ.red_source, occ.red_port, len), red_role);
            occ.blue_path =
                b.path(occ.blue_source, occ.blue_port, b.fit(occ.blue_source, occ.blue_port, len), blue_role);
            out.occurrence_index[{v, k}] = {occ.red_path.front(), occ.blue_path.front()};
            gv.occurrences.push_back(static_cast<int>(out.occurrences.size()));
            out.occurrences.push_back(std::move(occ));
        }

        if (slots == 4 && real == 3) {
            // The dummy's a1-side end meets the a1-side path of occurrence 1
            // and its a2-side end the a2-side path of occurrence 3, each at
            // the path midpoint.
            const GFOccurrence& o1 = out.occurrences[gv.occurrences[0]];
            const GFOccurrence& o3 = out.occurrences[gv.occurrences[2]];
            const GFOccurrence& dummy = out.occurrences[gv.occurrences[3]];
            auto mid = [](const std::vector<Vertex>& p) { return p[(p.size() - 1) / 2]; };
            const Vertex m1 = mid(o1.red_path), m3 = mid(o3.blue_path);
            const Vertex d1 = dummy.blue_port, d3 = dummy.red_port;
            gv.connectors.push_back({{d1, m1}, b.path(d1, m1, b.fit(d1, m1, g), Role::DummyPathInner)});
            gv.connectors.push_back({{d3, m3}, b.path(d3, m3, b.fit(d3, m3, g), Role::DummyPathInner)});
        }
        out.variables.push_back(std::move(gv));
    }

    out.graph = std::move(b.g);
    out.roles = std::move(b.roles);
    return out;
}

OrderingTriple OrderingTriple::from_index(int t) {
    OrderingTriple o;
    for (int i = 0; i < 3; ++i) o.red_before_blue[i] = (t >> i) & 1;
    return o;
}

namespace {

// Planarity model of the clause. Each crossing pair is a plus: a centre,
// four half nodes in cyclic order and a rim around them. Red halves are 0
// and 2, blue halves 1 and 3. A red attachment uses one of the red halves,
// so choosing the half is one bit per attachment. The outside of the
// clause is a wheel whose rim lists the external attachments clockwise.
struct Attachment {
    int cross;
    int color;  // 0 red, 1 blue
};

struct ClauseModel {
    std::vector<Attachment> atts;
    std::vector<std::pair<int, int>> links;  // attachments joined by a path
    std::vector<int> rim;                    // clockwise outer attachments
};

ClauseModel rainbow(const OrderingTriple& t) {
    ClauseModel m;
    auto att = [&](int cross, int color) {
        m.atts.push_back({cross, color});
        return static_cast<int>(m.atts.size()) - 1;
    };
    // The red strand runs through the red segments of the three crossing
    // pairs, the blue strand through the blue ones. Strand ends are fixed on
    // the outer face on both sides of the ports.
    for (int color : {0, 1})
        for (int x = 0; x + 1 < 3; ++x) m.links.emplace_back(att(x, color), att(x + 1, color));
    const int rl = att(0, 0), bl = att(0, 1), rr = att(2, 0), br = att(2, 1);
    m.rim = {bl, rl};
    for (int x = 0; x < 3; ++x) {
        const int r = att(x, 0), bl2 = att(x, 1);
        if (t.red_before_blue[x]) {
            m.rim.push_back(r);
            m.rim.push_back(bl2);
        } else {
            m.rim.push_back(bl2);
            m.rim.push_back(r);
        }
    }
    m.rim.push_back(br);
    m.rim.push_back(rr);
    return m;
}

using PlanarGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

class ModelSearch {
public:
    explicit ModelSearch(const ClauseModel& m) : m_(m), half_(m.atts.size(), -1) {
        // A half turn of a plus maps every half to its opposite, so the
        // first attachment of each cross may keep half 0 or 1.
        std::vector<char> seen(3, 0);
        for (std::size_t a = 0; a < m.atts.size(); ++a) {
            if (!seen[m.atts[a].cross]) {
                seen[m.atts[a].cross] = 1;
                half_[a] = m.atts[a].color;
            } else {
                free_.push_back(static_cast<int>(a));
            }
        }
    }

    bool run() { return descend(0); }
    [[nodiscard]] long long visited() const { return visited_; }
    [[nodiscard]] const std::vector<int>& halves() const { return half_; }

private:
    bool descend(std::size_t depth) {
        ++visited_;
        if (!planar()) return false;
        if (depth == free_.size()) return true;
        const int a = free_[depth];
        for (int flip : {0, 1}) {
            half_[a] = m_.atts[a].color + 2 * flip;
            if (descend(depth + 1)) return true;
        }
        half_[a] = -1;
        return false;
    }

    // Tests the subgraph induced by the attachments decided so far.
    bool planar() const {
        const int crosses = 3;
        const int nr = static_cast<int>(m_.rim.size());
        const int outer = 5 * crosses;
        const int rim0 = outer + 1;
        int n = rim0 + nr;
        std::vector<std::pair<int, int>> es;
        for (int c = 0; c < crosses; ++c) {
            const int ctr = 5 * c;
            for (int h = 0; h < 4; ++h) {
                es.emplace_back(ctr, ctr + 1 + h);
                es.emplace_back(ctr + 1 + h, ctr + 1 + (h + 1) % 4);
            }
        }
        auto node = [&](int a) { return 5 * m_.atts[a].cross + 1 + half_[a]; };
        for (int i = 0; i < nr; ++i) {
            es.emplace_back(rim0 + i, outer);
            es.emplace_back(rim0 + i, rim0 + (i + 1) % nr);
            if (half_[m_.rim[i]] >= 0) es.emplace_back(rim0 + i, node(m_.rim[i]));
        }
        for (auto [a, b] : m_.links) {
            if (half_[a] < 0 || half_[b] < 0) continue;
            es.emplace_back(node(a), n);
            es.emplace_back(n, node(b));
            ++n;
        }
        PlanarGraph pg(static_cast<std::size_t>(n));
        for (auto [u, v] : es) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), pg);
        return boost::boyer_myrvold_planarity_test(pg);
    }

    const ClauseModel& m_;
    std::vector<int> half_;
    std::vector<int> free_;
    long long visited_ = 0;
};

}  // namespace

ClauseFeasibility clause_ordering_feasible(const OrderingTriple& t) {
    ClauseModel m = rainbow(t);
    ModelSearch search(m);
    ClauseFeasibility out;
    out.feasible = search.run();
    out.completions = search.visited();
    if (out.feasible) {
        out.template_id = t.index();
        out.halves = search.halves();
    } else {
        out.obstruction = "all " + std::to_string(out.completions) +
                          " partial half assignments examined; every completion forces a crossing";
    }
    return out;
}

OrderingTriple ordering_for(const SatInstance& inst, int clause, const std::vector<bool>& assignment) {
    OrderingTriple t;
    const auto& rot = inst.clause_rotation.at(static_cast<std::size_t>(clause));
    for (int i = 0; i < 3 && i < static_cast<int>(rot.size()); ++i) {
        auto lit = inst.literal_in(clause, rot[i]);
        t.red_before_blue[i] = lit && assignment.at(static_cast<std::size_t>(lit->var)) == lit->positive;
    }
    return t;
}

bool satisfies(const SatInstance& inst, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != inst.var_count) return false;
    return std::all_of(inst.clauses.begin(), inst.clauses.end(), [&](const auto& cl) {
        return std::any_of(cl.begin(), cl.end(), [&](const Literal& l) { return assignment[l.var] == l.positive; });
    });
}

}  // namespace gridlab
