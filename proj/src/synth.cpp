#include "gridlab/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "gridlab/errors.hpp"

namespace gridlab {
namespace {

// Segment centres live on a 1/kDen grid; a half unit is kDen/2.
constexpr std::int64_t kDen = 1920;
constexpr std::int64_t kHalf = kDen / 2;
constexpr std::int64_t kJog = kDen / 64;
constexpr double kStepLo = 0.30;
constexpr double kStepHi = 0.355;
constexpr double kStep = 0.33;
constexpr double kRay = 3.0;
constexpr double kHalfWidth = 0.9;  // ribbon wire offset from its axis
constexpr double kClear = 1.45;     // minimum distance between foreign wires
constexpr double kPi = std::numbers::pi;

struct Vec {
    double x = 0;
    double y = 0;
};

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double k, Vec a) { return {k * a.x, k * a.y}; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
double norm(Vec a) { return std::hypot(a.x, a.y); }
Vec unit(Vec a) { return (1.0 / norm(a)) * a; }
Vec perp(Vec a) { return {-a.y, a.x}; }
Vec polar(double r, double a) { return {r * std::cos(a), r * std::sin(a)}; }
double angle_of(Vec a) { return std::atan2(a.y, a.x); }
double deg(double d) { return d * kPi / 180; }

using Polyline = std::vector<Vec>;

double length(const Polyline& p) {
    double s = 0;
    for (std::size_t i = 1; i < p.size(); ++i) s += norm(p[i] - p[i - 1]);
    return s;
}

void append(Polyline& p, const Polyline& q) {
    for (const auto& v : q) {
        if (p.empty() || norm(v - p.back()) > 1e-9) p.push_back(v);
    }
}

/// Cuts every corner at distance c so that no turn is sharper than the
/// original angle split in two.
Polyline chamfer(const Polyline& p, double c) {
    if (p.size() < 3) return p;
    Polyline out{p.front()};
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        Vec a = p[i - 1], b = p[i], d = p[i + 1];
        double la = norm(a - b), lb = norm(d - b);
        double ca = std::min(c, la / 2.2), cb = std::min(c, lb / 2.2);
        append(out, {b + (ca / la) * (a - b), b + (cb / lb) * (d - b)});
    }
    append(out, {p.back()});
    return out;
}

/// Points of the circle arc around c from angle a0 to a1 (either direction).
Polyline circle_arc(Vec c, double r, double a0, double a1) {
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(a1 - a0) * r / 0.4)));
    Polyline out;
    for (int i = 0; i <= steps; ++i) out.push_back(c + polar(r, a0 + (a1 - a0) * i / steps));
    return out;
}

/// Points at arc lengths k * len / (count + 1), k = 1..count.
std::vector<Vec> resample(const Polyline& p, int count) {
    std::vector<Vec> out;
    double total = length(p);
    std::size_t i = 1;
    double done = 0;
    for (int k = 1; k <= count; ++k) {
        double s = total * k / (count + 1);
        while (i + 1 < p.size() && done + norm(p[i] - p[i - 1]) < s) {
            done += norm(p[i] - p[i - 1]);
            ++i;
        }
        double seg = norm(p[i] - p[i - 1]);
        double t = seg > 0 ? std::clamp((s - done) / seg, 0.0, 1.0) : 0.0;
        out.push_back(p[i - 1] + t * (p[i] - p[i - 1]));
    }
    return out;
}

double point_segment_distance(Vec p, Vec a, Vec b) {
    Vec d = b - a;
    double l2 = dot(d, d);
    double t = l2 > 0 ? std::clamp(dot(p - a, d) / l2, 0.0, 1.0) : 0.0;
    return norm(p - (a + t * d));
}

double segment_distance(Vec a, Vec b, Vec c, Vec d) {
    auto orient = [](Vec p, Vec q, Vec r) { return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x); };
    double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0;
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

std::int64_t snap(double v) { return std::llround(v * kDen); }

/// Rigid motion of a template: optional mirror in x, then `quarter` turns
/// clockwise, then a translation.
struct Frame {
    Vec origin;
    int quarter = 0;
    bool mirror = false;

    [[nodiscard]] Vec dir(Vec v) const {
        if (mirror) v.x = -v.x;
        for (int i = 0; i < quarter; ++i) v = {v.y, -v.x};
        return v;
    }
    [[nodiscard]] Vec at(Vec v) const { return origin + dir(v); }
    [[nodiscard]] Orientation orient(Orientation o) const {
        if (quarter % 2 == 0) return o;
        return o == Orientation::Horizontal ? Orientation::Vertical : Orientation::Horizontal;
    }
};

struct Stub {
    Orientation o;
    Vec c;
};

constexpr auto H = Orientation::Horizontal;
constexpr auto V = Orientation::Vertical;

/// Segment placement on the exact grid with a spatial hash. Sampled
/// vertices may be jogged sideways to dodge parallel overlaps and stray
/// crossings with everything already placed.
class Canvas {
public:
    Canvas(const Graph& g, std::vector<Orientation> orient)
        : g_(g), orient_(std::move(orient)), pos_(static_cast<std::size_t>(g.size())) {}

    [[nodiscard]] bool placed(Vertex v) const { return pos_[v].has_value(); }
    [[nodiscard]] Orientation orientation(Vertex v) const { return orient_[v]; }

    void fix(Vertex v, Vec c) { put(v, {snap(c.x), snap(c.y)}); }

    void sample(Vertex v, Vec c) {
        Cell base{snap(c.x), snap(c.y)};
        static constexpr std::array<int, 7> kOffsets{0, 1, -1, 2, -2, 3, -3};
        for (int k : kOffsets) {
            Cell cand = base;
            (orient_[v] == H ? cand.y : cand.x) += k * kJog;
            if (fits(v, cand)) {
                put(v, cand);
                return;
            }
        }
        put(v, base);
    }

    [[nodiscard]] Representation finish() const {
        Representation rep;
        for (Vertex v = 0; v < g_.size(); ++v) {
            if (!pos_[v]) throw RoutingFailure("vertex " + std::to_string(v) + " was never placed");
            auto [x, y] = *pos_[v];
            if (orient_[v] == H) {
                rep.segments.push_back(Segment::horizontal(Rational(x - kHalf, kDen), Rational(y, kDen)));
            } else {
                rep.segments.push_back(Segment::vertical(Rational(x, kDen), Rational(y - kHalf, kDen)));
            }
        }
        return rep;
    }

private:
    struct Cell {
        std::int64_t x;
        std::int64_t y;
    };

    static std::int64_t key(std::int64_t cx, std::int64_t cy) { return cx * 73856093LL ^ cy * 19349663LL; }
    static std::int64_t bucket(std::int64_t v) { return v >= 0 ? v / kDen : -((-v + kDen - 1) / kDen); }

    [[nodiscard]] bool meets(Vertex a, Cell p, Vertex b, Cell q) const {
        if (orient_[a] == orient_[b]) return false;
        return std::abs(p.x - q.x) <= kHalf && std::abs(p.y - q.y) <= kHalf;
    }
    [[nodiscard]] bool overlaps(Vertex a, Cell p, Vertex b, Cell q) const {
        if (orient_[a] != orient_[b]) return false;
        if (orient_[a] == H) return p.y == q.y && std::abs(p.x - q.x) <= kDen;
        return p.x == q.x && std::abs(p.y - q.y) <= kDen;
    }

    [[nodiscard]] bool fits(Vertex v, Cell c) const {
        std::int64_t bx = bucket(c.x), by = bucket(c.y);
        for (std::int64_t i = bx - 2; i <= bx + 2; ++i) {
            for (std::int64_t j = by - 2; j <= by + 2; ++j) {
                auto it = hash_.find(key(i, j));
                if (it == hash_.end()) continue;
                for (Vertex u : it->second) {
                    Cell q = *pos_[u];
                    if (overlaps(v, c, u, q)) return false;
                    if (meets(v, c, u, q) != g_.has_edge(u, v)) return false;
                }
            }
        }
        return true;
    }

    void put(Vertex v, Cell c) {
        pos_[v] = c;
        hash_[key(bucket(c.x), bucket(c.y))].push_back(v);
    }

    const Graph& g_;
    std::vector<Orientation> orient_;
    std::vector<std::optional<Cell>> pos_;
    std::unordered_map<std::int64_t, std::vector<Vertex>> hash_;
};

/// Template wire: fixed stub segments in path order, then a straight ray.
struct Exit {
    std::vector<Stub> stubs;
    Vec ray_end;
};

Exit make_exit(const Frame& f, std::vector<Stub> local, double ray_deg) {
    Exit e;
    for (auto& s : local) e.stubs.push_back({f.orient(s.o), f.at(s.c)});
    Vec dir = f.dir(polar(1.0, deg(ray_deg)));
    e.ray_end = e.stubs.back().c + kRay * dir;
    return e;
}

/// Eight wires around a crossing pair. Slot s sits in quarter s / 2 and
/// hangs off a1 when that quarter is even; slots run clockwise.
Exit pinwheel_exit(Vec centre, int slot) {
    Frame f{centre, slot / 2, false};
    if (slot % 2 == 0) return make_exit(f, {{V, {-0.45, 0.5}}, {H, {-0.9, 0.95}}}, 150);
    return make_exit(f, {{V, {-0.35, 0.5}}, {H, {0.1, 0.9}}, {V, {0.4, 1.2}}}, 100);
}

bool slot_on_a1(int slot) { return (slot / 2) % 2 == 0; }

/// One clause port: cycle vertex z, pendant y, and the two wires leaving
/// them. In the unmirrored frame the z wire comes first clockwise.
struct Port {
    Frame frame;
    Vec z;
    Vec y;
    Exit z_exit;
    Exit y_exit;
    Vec arc_out;  ///< first bend of the arc towards the next port
    Vec arc_in;   ///< last bend of the arc from the previous port
};

Port make_port(Vec z, int quarter, bool mirror) {
    Frame f{z, quarter, mirror};
    Frame plain{z, quarter, false};
    Port p{f, z, f.at({0.05, 0.5}), make_exit(f, {{V, {-0.15, 0.5}}, {H, {-0.6, 0.9}}}, 100),
           make_exit(f, {{H, {0.5, 0.95}}}, 80), plain.at({0.85, -0.85}), plain.at({-0.85, -0.85})};
    return p;
}

struct ClauseLayout {
    Vec centre;
    double radius = 0;
    std::array<Port, 3> ports;
    std::array<Polyline, 3> arcs;  ///< z_i to z_{i+1}
};

/// Clockwise arc around the loop from angle a0 down to a1 at radius r with
/// `legs` radial teeth reaching in to radius r_in.
Polyline toothed_arc(Vec c, double r, double a0, double a1, int legs, double r_in) {
    double margin = 1.2 / r;
    Polyline p;
    if (legs == 0) return circle_arc(c, r, a0, a1);
    double lo = a1 + margin, hi = a0 - margin;
    double step = (hi - lo) / (legs + 1);
    double at = a0;
    for (int k = 0; k < legs; k += 2) {
        double b0 = hi - step * (k + 1), b1 = hi - step * (k + 2);
        append(p, circle_arc(c, r, at, b0));
        append(p, circle_arc(c, r_in, b0, b1));
        at = b1;
    }
    append(p, circle_arc(c, r, at, a1));
    return p;
}

double wrap_down(double from, double to) {
    double d = std::fmod(from - to, 2 * kPi);
    if (d <= 1e-9) d += 2 * kPi;
    return from - d;
}

/// Fits the three cycle arcs of a clause gadget on a loop. Pair i gets a
/// side of the loop matching its cycle vertex (top or bottom when
/// horizontal), sides advancing clockwise from the top.
std::optional<ClauseLayout> layout_clause(const ClauseGadget& cg, const std::vector<Orientation>& orient,
                                          const std::array<bool, 3>& mirror, Vec centre,
                                          const std::optional<std::array<double, 3>>& towards = std::nullopt) {
    // Ports may sit up to 40 degrees either side of the middle of a side
    // whose frame suits their cycle vertex. Keep them at least 60 degrees
    // apart, close to the ribbon directions when given, else spread out.
    std::array<int, 3> side{};
    std::array<double, 3> alpha{};
    double best = -1e18;
    auto options = [&](int i) {
        std::vector<std::pair<int, int>> out;  // (angle in degrees, side)
        bool horiz = orient[cg.cycle[i]] == H;
        for (int s = horiz ? 0 : 1; s < 4; s += 2) {
            for (int d = -40; d <= 40; d += 5) out.emplace_back(90 - 90 * s + d, s);
        }
        return out;
    };
    auto below = [](int a, int ref) {
        while (a >= ref) a -= 360;
        while (a < ref - 360) a += 360;
        return a;
    };
    for (auto [a0, s0] : options(0)) {
        for (auto [b, s1] : options(1)) {
            int a1 = below(b, a0);
            for (auto [c, s2] : options(2)) {
                int a2 = below(c, a1);
                if (a2 <= a0 - 360) continue;
                int gap = std::min({a0 - a1, a1 - a2, a2 - (a0 - 360)});
                double score = gap;
                if (towards) {
                    if (gap < 60) continue;
                    score = 1000;
                    for (int i = 0; i < 3; ++i) {
                        int a = i == 0 ? a0 : i == 1 ? a1 : a2;
                        score -= std::abs(std::remainder(deg(a) - (*towards)[i], 2 * kPi));
                    }
                }
                if (score > best) {
                    best = score;
                    side = {s0, s1, s2};
                    alpha = {deg(a0), deg(a1), deg(a2)};
                }
            }
        }
    }
    if (best == -1e18) return std::nullopt;
    for (double radius = 6; radius <= 400; radius += 1) {
        ClauseLayout out;
        out.centre = centre;
        out.radius = radius;
        for (int i = 0; i < 3; ++i) out.ports[i] = make_port(centre + polar(radius, alpha[i]), side[i], mirror[i]);
        double ra = radius - 1.8;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            const Port& a = out.ports[i];
            const Port& b = out.ports[(i + 1) % 3];
            double a0 = angle_of(a.arc_out - centre);
            double a1 = wrap_down(a0, angle_of(b.arc_in - centre));
            auto route = [&](int legs, double r_in) {
                Polyline p{a.z, a.arc_out};
                append(p, toothed_arc(centre, ra, a0, a1, legs, r_in));
                append(p, {b.arc_in, b.z});
                return chamfer(p, 0.4);
            };
            int inner = static_cast<int>(cg.arcs[i].size());
            double target = kStep * (inner + 1);
            Polyline best = route(0, ra);
            double base = length(best);
            if (base > kStepHi * (inner + 1)) {
                if (radius == 6) throw RoutingFailure("girth too small for the clause loop");
                ok = false;
                break;
            }
            if (base < kStepLo * (inner + 1)) {
                bool found = false;
                double span = (a0 - a1) - 2.4 / ra;
                for (int legs = 2; !found; legs += 2) {
                    double step = span / (legs + 1);
                    double r_lo = std::max(1.8 / step, 1.0);
                    if (r_lo > ra - 1.0) break;
                    if (length(route(legs, r_lo)) < target) continue;
                    double lo = r_lo, hi = ra;
                    for (int it = 0; it < 60; ++it) {
                        double mid = (lo + hi) / 2;
                        (length(route(legs, mid)) >= target ? lo : hi) = mid;
                    }
                    best = route(legs, lo);
                    found = true;
                }
                ok = found;
            }
            out.arcs[i] = best;
        }
        if (ok) return out;
    }
    return std::nullopt;
}

/// H iff the vertex shares a bipartition class with a red clause vertex or
/// a1 of its component.
std::vector<Orientation> orientations(const Graph& g, const std::vector<Role>& roles) {
    auto part = bipartition(g);
    if (!part) throw RoutingFailure("graph is not bipartite");
    auto comp = components(g);
    std::unordered_map<int, int> ref;
    for (Vertex v = 0; v < g.size(); ++v) {
        if ((roles[v] == Role::VarA1 || roles[v] == Role::ClausePairRed) && !ref.contains(comp[v])) {
            ref[comp[v]] = (*part)[v];
        }
    }
    std::vector<Orientation> out(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v) {
        auto it = ref.find(comp[v]);
        int r = it == ref.end() ? 0 : it->second;
        out[v] = (*part)[v] == r ? H : V;
    }
    return out;
}

/// Ribbon of a wire from A to B with `legs` teeth of the given depth pushed
/// towards `side`.
Polyline meander(Vec a, Vec b, Vec side, int legs, double depth) {
    if (legs == 0 || depth <= 0) return {a, b};
    Vec t = unit(b - a);
    double mid = norm(b - a) / 2;
    Polyline p{a};
    for (int k = 0; k < legs; k += 2) {
        double x0 = mid - (legs - 1) * 0.9 + 1.8 * k;
        Vec b0 = a + x0 * t, b1 = a + (x0 + 1.8) * t;
        append(p, {b0, b0 + depth * side, b1 + depth * side, b1});
    }
    append(p, {b});
    return p;
}

struct Wire {
    int occ = 0;
    bool red = false;
    int side = 1;  ///< +1 on the left of the variable-to-clause direction
    Exit var_exit;
    Exit clause_exit;
    int free = 0;  ///< path vertices sampled along the route
    Polyline var_fan;
    Polyline clause_fan;  ///< from the clause exit outwards
    Polyline route;
};

class Router {
public:
    Router(const GFGraph& gf, const std::vector<bool>& assignment)
        : gf_(gf), inst_(gf.instance), orient_(orientations(gf.graph, gf.roles)) {
        int nv = inst_.var_count, nc = inst_.clause_count();
        for (int v = 0; v < nv; ++v) var_pos_.push_back(to_vec(*inst_.var_position[v]));
        for (int c = 0; c < nc; ++c) clause_pos_.push_back(to_vec(*inst_.clause_position[c]));
        grow_.assign(static_cast<std::size_t>(nv + nc), 0.0);
        mirror_.assign(static_cast<std::size_t>(nc), {});
        pair_occ_.assign(static_cast<std::size_t>(nc), {-1, -1, -1});
        for (int o = 0; o < static_cast<int>(gf.occurrences.size()); ++o) {
            const auto& occ = gf.occurrences[o];
            pair_occ_[occ.clause][occ.slot] = o;
            Vec u = unit(clause_pos_[occ.clause] - var_pos_[occ.var]);
            dir_.push_back(u);
            int pair = assignment[occ.var] ? occ.k : (occ.k + 1) % 4;
            int s1 = (2 * pair + 1) % 8, s2 = (2 * pair + 2) % 8;
            bool red_on_a1 = occ.red_source == gf.variables[occ.var].pairs[0].first;
            Wire first, second;
            first.red = slot_on_a1(s1) == red_on_a1;
            second.red = !first.red;
            first.side = 1;
            second.side = -1;
            first.occ = second.occ = o;
            slots_.push_back({s1, s2});
            bool z_red = gf.clauses[occ.clause].coloring.cycle_red[occ.slot];
            // The clause sees the ribbon reversed: the variable's second
            // wire comes first clockwise, and the z wire is first unless
            // the port is mirrored.
            mirror_[occ.clause][occ.slot] = z_red == first.red;
            wires_.push_back(first);
            wires_.push_back(second);
        }
    }

    Representation run(const SynthOptions& opts) {
        std::string last = "no attempt made";
        double scale = opts.scale;
        for (int attempt = 0; attempt <= std::max(0, opts.attempts); ++attempt) {
            auto rep = attempt_layout(scale, last);
            if (rep) return *rep;
            if (scale > 0) scale *= 0.985;
        }
        throw RoutingFailure(last);
    }

private:
    static Vec to_vec(const Point& p) {
        return {static_cast<double>(p.x.num()) / static_cast<double>(p.x.den()),
                static_cast<double>(p.y.num()) / static_cast<double>(p.y.den())};
    }

    [[nodiscard]] int clause_node(int c) const { return inst_.var_count + c; }
    [[nodiscard]] const std::vector<Vertex>& path(const Wire& w) const {
        const auto& occ = gf_.occurrences[w.occ];
        return w.red ? occ.red_path : occ.blue_path;
    }

    /// Lays out everything at one scale; returns nullopt with a reason when
    /// the attempt fails. A zero scale is picked automatically and refined.
    std::optional<Representation> attempt_layout(double& scale, std::string& why) {
        for (int round = 0; round < 24; ++round) {
            double k = scale;
            why.clear();
            if (!build_templates(why)) return std::nullopt;
            if (k <= 0) k = auto_scale();
            scale_ = k;
            if (!route(k, why)) return std::nullopt;
            auto crowded = clearance();
            if (crowded) {
                grow_[*crowded] += 3;
                continue;
            }
            scale = k;
            return place(why);
        }
        why = "could not separate the wires around a node";
        return std::nullopt;
    }

    /// Node-local geometry at the origin: exits, ribbon radii and fans.
    bool build_templates(std::string& why) {
        int nv = inst_.var_count, nc = inst_.clause_count();
        clauses_.assign(static_cast<std::size_t>(nc), {});
        for (int c = 0; c < nc; ++c) {
            std::array<double, 3> towards{};
            for (int i = 0; i < 3; ++i) towards[i] = angle_of(-1.0 * dir_[pair_occ_[c][i]]);
            auto lay = layout_clause(gf_.clauses[c], orient_, mirror_[c], {0, 0}, towards);
            if (!lay) {
                why = "clause " + std::to_string(c + 1) + " loop does not fit";
                return false;
            }
            clauses_[c] = *lay;
        }
        for (auto& w : wires_) {
            const auto& occ = gf_.occurrences[w.occ];
            const auto& slots = slots_[w.occ];
            w.var_exit = pinwheel_exit({0, 0}, w.side > 0 ? slots.first : slots.second);
            const Port& port = clauses_[occ.clause].ports[occ.slot];
            bool z_red = gf_.clauses[occ.clause].coloring.cycle_red[occ.slot];
            w.clause_exit = w.red == z_red ? port.z_exit : port.y_exit;
            w.free = static_cast<int>(path(w).size()) - static_cast<int>(w.var_exit.stubs.size()) -
                     static_cast<int>(w.clause_exit.stubs.size());
            if (w.free < 4) {
                why = "girth too small: occurrence path too short for the wire templates";
                return false;
            }
        }
        radius_.assign(static_cast<std::size_t>(nv + nc), 0.0);
        for (int node = 0; node < nv + nc; ++node) {
            if (!fan(node, why)) return false;
        }
        return true;
    }

    /// Wires at a node with exits relative to the node centre and the
    /// outward ribbon direction.
    struct FanWire {
        Wire* w;
        Vec exit;
        Vec out;
    };

    std::vector<FanWire> fan_wires(int node) {
        std::vector<FanWire> out;
        for (auto& w : wires_) {
            const auto& occ = gf_.occurrences[w.occ];
            if (node < inst_.var_count && occ.var == node) out.push_back({&w, w.var_exit.ray_end, dir_[w.occ]});
            if (node >= inst_.var_count && occ.clause == node - inst_.var_count) {
                out.push_back({&w, w.clause_exit.ray_end, -1.0 * dir_[w.occ]});
            }
        }
        return out;
    }

    /// Spirals from each exit to the ribbon start at the node's fan radius,
    /// keeping the cyclic order. Fans are built around the origin.
    bool fan(int node, std::string& why) {
        auto fw = fan_wires(node);
        if (fw.empty()) return true;
        double r_exit = 0;
        for (auto& f : fw) r_exit = std::max(r_exit, norm(f.exit));
        auto cw = [](double from, double to) {
            double d = std::fmod(from - to, 2 * kPi);
            return d < 0 ? d + 2 * kPi : d;
        };
        double phi0 = angle_of(fw[0].exit);
        std::sort(fw.begin(), fw.end(),
                  [&](const FanWire& a, const FanWire& b) { return cw(phi0, angle_of(a.exit)) < cw(phi0, angle_of(b.exit)); });
        std::size_t m = fw.size();
        double gap = 2 * kPi, gamma = 2 * kPi;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& a = fw[i];
            const auto& b = fw[(i + 1) % m];
            if (m > 1) gap = std::min(gap, cw(angle_of(a.exit), angle_of(b.exit)));
            if (a.w->occ != b.w->occ && m > 2) gamma = std::min(gamma, cw(angle_of(a.out), angle_of(b.out)));
        }
        auto unwrap = [&](auto angle_fn, double start) {
            std::vector<double> out(m);
            out[0] = start;
            for (std::size_t i = 1; i < m; ++i) out[i] = start - cw(angle_of(angle_fn(fw[0])), angle_of(angle_fn(fw[i])));
            return out;
        };
        auto phi = unwrap([](const FanWire& f) { return f.exit; }, angle_of(fw[0].exit));
        auto side = [&](const FanWire& f) { return static_cast<double>(f.w->side) * perp(dir_[f.w->occ]); };
        auto target_at = [&](const FanWire& f, double r) { return r * f.out + kHalfWidth * side(f); };
        auto solve = [&](double r) {
            double best = 1e18;
            std::vector<double> theta;
            auto base = unwrap([&](const FanWire& f) { return target_at(f, r); }, 0);
            double t0 = angle_of(target_at(fw[0], r));
            for (int turns = -2; turns <= 2; ++turns) {
                double cost = 0;
                std::vector<double> cand(m);
                for (std::size_t i = 0; i < m; ++i) {
                    cand[i] = base[i] + t0 + 2 * kPi * turns;
                    cost += std::abs(cand[i] - phi[i]);
                }
                if (cost < best) {
                    best = cost;
                    theta = cand;
                }
            }
            return theta;
        };
        double mid_ring = r_exit + 2 + 0.9 * static_cast<double>(m) + grow_[node];
        // Outer legs run parallel to the ribbon, so a wire reaches its ring
        // where the ring meets its leg line.
        auto leg_at = [&](const FanWire& f, double ring) {
            return std::sqrt(ring * ring - kHalfWidth * kHalfWidth) * f.out + kHalfWidth * side(f);
        };
        auto theta = solve(std::sqrt(mid_ring * mid_ring - kHalfWidth * kHalfWidth));
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (theta[i + 1] >= theta[i]) {
                why = "fan order mismatch at node " + std::to_string(node);
                return false;
            }
        }
        // Each wire runs out radially, turns along its own ring to the
        // ribbon angle and runs out again. A leg inside another wire's turn
        // forces the ring order; rings are the longest-path levels.
        auto inside = [&](std::size_t i, double a, double margin) {
            double lo = std::min(phi[i], theta[i]) - margin, hi = std::max(phi[i], theta[i]) + margin;
            double k = std::floor((hi - a) / (2 * kPi));
            return a + 2 * kPi * k >= lo;
        };
        std::vector<std::vector<std::size_t>> above(m);  // above[j]: rings that must lie outside j
        std::vector<int> indeg(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                if (inside(i, phi[j], 1.8 / mid_ring)) above[j].push_back(i), ++indeg[i];
                bool partner = fw[i].w->occ == fw[j].w->occ;
                if (!partner && inside(i, theta[j], 0.5 / mid_ring)) above[i].push_back(j), ++indeg[j];
            }
        }
        std::vector<int> level(m, 0);
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < m; ++i) {
            if (indeg[i] == 0) queue.push_back(i);
        }
        for (std::size_t q = 0; q < queue.size(); ++q) {
            for (std::size_t i : above[queue[q]]) {
                level[i] = std::max(level[i], level[queue[q]] + 1);
                if (--indeg[i] == 0) queue.push_back(i);
            }
        }
        if (queue.size() != m) {
            why = "wires at node " + std::to_string(node) + " cannot be untwisted";
            return false;
        }
        double r = r_exit + 4.5 + 1.8 * *std::max_element(level.begin(), level.end()) + grow_[node];
        if (m > 2) r = std::max(r, (2 * kHalfWidth + 2) / gamma + 1);
        radius_[node] = r;
        for (std::size_t i = 0; i < m; ++i) {
            double ring = r_exit + 2 + 1.8 * level[i] + grow_[node];
            Vec t = target_at(fw[i], r);
            Vec land = leg_at(fw[i], ring);
            double end = theta[i] + std::remainder(angle_of(land) - theta[i], 2 * kPi);
            Polyline p{fw[i].exit, polar(ring, phi[i])};
            append(p, circle_arc({0, 0}, ring, phi[i], end));
            append(p, {land, t});
            (node < inst_.var_count ? fw[i].w->var_fan : fw[i].w->clause_fan) = p;
        }
        return true;
    }

    static Polyline shifted(const Polyline& p, Vec d) {
        Polyline out;
        for (const auto& v : p) out.push_back(v + d);
        return out;
    }

    [[nodiscard]] Polyline base_route(const Wire& w, double k, const Polyline& middle) const {
        const auto& occ = gf_.occurrences[w.occ];
        Vec pv = k * var_pos_[occ.var], pc = k * clause_pos_[occ.clause];
        Polyline p{pv + w.var_exit.stubs.back().c};
        append(p, shifted(w.var_fan, pv));
        append(p, middle);
        Polyline back = shifted(w.clause_fan, pc);
        std::reverse(back.begin(), back.end());
        append(p, back);
        append(p, {pc + w.clause_exit.stubs.back().c});
        return chamfer(p, 0.35);
    }

    [[nodiscard]] std::pair<Vec, Vec> ribbon_ends(const Wire& w, double k) const {
        const auto& occ = gf_.occurrences[w.occ];
        return {k * var_pos_[occ.var] + w.var_fan.back(), k * clause_pos_[occ.clause] + w.clause_fan.back()};
    }

    double auto_scale() {
        double k = 1e18;
        for (const auto& w : wires_) {
            const auto& occ = gf_.occurrences[w.occ];
            double d = norm(clause_pos_[occ.clause] - var_pos_[occ.var]);
            // Measure the fixed part with the nodes far apart.
            constexpr double kFar = 1e4;
            auto [a, b] = ribbon_ends(w, kFar / d);
            double fixed = length(base_route(w, kFar / d, {a, b})) - norm(b - a);
            // Ribbon length grows by exactly d per unit of scale.
            double budget = 0.35 * (w.free + 1) - fixed;
            k = std::min(k, (budget + radius_[occ.var] + radius_[clause_node(occ.clause)]) / d);
        }
        return k;
    }

    /// Room for teeth on each side of a ribbon before meeting another ribbon
    /// or a foreign node.
    [[nodiscard]] double corridor(int o, double k) const {
        const auto& occ = gf_.occurrences[o];
        Vec a = k * var_pos_[occ.var] + radius_[occ.var] * dir_[o];
        Vec b = k * clause_pos_[occ.clause] - radius_[clause_node(occ.clause)] * dir_[o];
        double room = 40;
        for (int f = 0; f < static_cast<int>(gf_.occurrences.size()); ++f) {
            if (f == o) continue;
            const auto& of = gf_.occurrences[f];
            Vec c = k * var_pos_[of.var] + radius_[of.var] * dir_[f];
            Vec d = k * clause_pos_[of.clause] - radius_[clause_node(of.clause)] * dir_[f];
            room = std::min(room, segment_distance(a, b, c, d) / 2 - kHalfWidth - 1.2);
        }
        for (int v = 0; v < inst_.var_count; ++v) {
            if (v == occ.var) continue;
            room = std::min(room, point_segment_distance(k * var_pos_[v], a, b) - radius_[v] - kHalfWidth - 1.5);
        }
        for (int c = 0; c < inst_.clause_count(); ++c) {
            if (c == occ.clause) continue;
            room = std::min(room, point_segment_distance(k * clause_pos_[c], a, b) - radius_[clause_node(c)] -
                                      kHalfWidth - 1.5);
        }
        return room;
    }

    bool route(double k, std::string& why) {
        for (std::size_t o = 0; o < gf_.occurrences.size(); ++o) {
            const auto& occ = gf_.occurrences[o];
            double need = radius_[occ.var] + radius_[clause_node(occ.clause)] + 4;
            if (k * norm(clause_pos_[occ.clause] - var_pos_[occ.var]) < need) {
                why = "girth too small: variable " + std::to_string(occ.var + 1) + " and clause " +
                      std::to_string(occ.clause + 1) + " cannot be drawn apart";
                return false;
            }
        }
        for (auto& w : wires_) {
            auto [a, b] = ribbon_ends(w, k);
            w.route = base_route(w, k, {a, b});
            double base = length(w.route);
            if (base > kStepHi * (w.free + 1)) {
                why = "occurrence path too short for its edge at scale " + std::to_string(k);
                return false;
            }
            if (base >= kStepLo * (w.free + 1)) continue;
            double target = kStep * (w.free + 1);
            double room = corridor(w.occ, k);
            Vec side = static_cast<double>(w.side) * perp(dir_[w.occ]);
            int max_legs = static_cast<int>((norm(b - a) - 4) / 1.8);
            bool found = false;
            for (int legs = 2; legs <= max_legs && !found; legs += 2) {
                if (room < 1.0) break;
                auto at = [&](double depth) { return base_route(w, k, meander(a, b, side, legs, depth)); };
                if (length(at(room)) < target) continue;
                double lo = 0, hi = room;
                for (int it = 0; it < 60; ++it) {
                    double mid = (lo + hi) / 2;
                    (length(at(mid)) < target ? lo : hi) = mid;
                }
                w.route = at(hi);
                found = true;
            }
            if (!found) {
                why = "no room to lengthen occurrence " + std::to_string(w.occ);
                return false;
            }
        }
        return true;
    }

    /// Node whose wires come too close to each other, if any.
    std::optional<int> clearance() const {
        struct Probe {
            Vec p;
            int wire;
        };
        std::unordered_map<std::int64_t, std::vector<Probe>> cells;
        auto cell = [](Vec p) {
            auto cx = static_cast<std::int64_t>(std::floor(p.x / kClear));
            auto cy = static_cast<std::int64_t>(std::floor(p.y / kClear));
            return std::pair{cx, cy};
        };
        auto key = [](std::int64_t x, std::int64_t y) { return x * 73856093LL ^ y * 19349663LL; };
        std::vector<Probe> probes;
        for (int i = 0; i < static_cast<int>(wires_.size()); ++i) {
            const auto& w = wires_[i];
            const auto& route = w.route;
            // Skip the template parts near both ends.
            double total = length(route);
            int count = static_cast<int>(total / 0.3);
            auto pts = resample(route, count);
            double skip_front = norm(w.var_exit.ray_end - w.var_exit.stubs.back().c) + 0.2;
            double skip_back = norm(w.clause_exit.ray_end - w.clause_exit.stubs.back().c) + 0.2;
            for (int j = 0; j < count; ++j) {
                double s = total * (j + 1) / (count + 1);
                if (s < skip_front || s > total - skip_back) continue;
                probes.push_back({pts[j], i});
            }
        }
        for (const auto& pr : probes) {
            auto [cx, cy] = cell(pr.p);
            cells[key(cx, cy)].push_back(pr);
        }
        for (const auto& pr : probes) {
            auto [cx, cy] = cell(pr.p);
            for (std::int64_t i = cx - 1; i <= cx + 1; ++i) {
                for (std::int64_t j = cy - 1; j <= cy + 1; ++j) {
                    auto it = cells.find(key(i, j));
                    if (it == cells.end()) continue;
                    for (const auto& q : it->second) {
                        if (q.wire == pr.wire || norm(q.p - pr.p) >= kClear) continue;
                        return nearest_node(pr.p);
                    }
                }
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] int nearest_node(Vec p) const {
        int best = 0;
        double best_d = 1e18;
        int nv = inst_.var_count;
        for (int v = 0; v < nv; ++v) {
            double d = norm(p - scale_ * var_pos_[v]) - radius_[v];
            if (d < best_d) best_d = d, best = v;
        }
        for (int c = 0; c < inst_.clause_count(); ++c) {
            double d = norm(p - scale_ * clause_pos_[c]) - radius_[clause_node(c)];
            if (d < best_d) best_d = d, best = clause_node(c);
        }
        return best;
    }

    std::optional<Representation> place(std::string& why) {
        Canvas canvas(gf_.graph, orient_);
        double k = scale_;
        auto fix = [&](Vertex v, Orientation o, Vec c) {
            if (orient_[v] != o) throw RoutingFailure("template orientation disagrees at vertex " + std::to_string(v));
            canvas.fix(v, c);
        };
        double spare_x = -1e18, spare_y = 1e18;
        for (int v = 0; v < inst_.var_count; ++v) {
            spare_x = std::max(spare_x, k * var_pos_[v].x + radius_[v]);
            spare_y = std::min(spare_y, k * var_pos_[v].y - radius_[v]);
        }
        for (int c = 0; c < inst_.clause_count(); ++c) {
            spare_x = std::max(spare_x, k * clause_pos_[c].x + radius_[clause_node(c)]);
            spare_y = std::min(spare_y, k * clause_pos_[c].y - radius_[clause_node(c)]);
        }
        int spare = 0;
        for (int v = 0; v < inst_.var_count; ++v) {
            auto [a1, a2] = gf_.variables[v].pairs[0];
            Vec pv = k * var_pos_[v];
            if (gf_.variables[v].occurrences.empty()) pv = {spare_x + 10 + 3 * spare++, spare_y - 10};
            fix(a1, H, pv);
            fix(a2, V, pv);
        }
        for (int c = 0; c < inst_.clause_count(); ++c) {
            const auto& cg = gf_.clauses[c];
            Vec pc = k * clause_pos_[c];
            for (int i = 0; i < 3; ++i) {
                const Port& port = clauses_[c].ports[i];
                fix(cg.cycle[i], port.frame.orient(H), pc + port.z);
                fix(cg.pendant[i], port.frame.orient(V), pc + port.y);
            }
        }
        for (const auto& w : wires_) {
            const auto& occ = gf_.occurrences[w.occ];
            const auto& p = path(w);
            Vec pv = k * var_pos_[occ.var], pc = k * clause_pos_[occ.clause];
            for (std::size_t j = 0; j < w.var_exit.stubs.size(); ++j) {
                fix(p[j], w.var_exit.stubs[j].o, pv + w.var_exit.stubs[j].c);
            }
            for (std::size_t j = 0; j < w.clause_exit.stubs.size(); ++j) {
                fix(p[p.size() - 1 - j], w.clause_exit.stubs[j].o, pc + w.clause_exit.stubs[j].c);
            }
        }
        for (int c = 0; c < inst_.clause_count(); ++c) {
            const auto& cg = gf_.clauses[c];
            Vec pc = k * clause_pos_[c];
            for (int i = 0; i < 3; ++i) {
                auto pts = resample(shifted(clauses_[c].arcs[i], pc), static_cast<int>(cg.arcs[i].size()));
                for (std::size_t j = 0; j < pts.size(); ++j) canvas.sample(cg.arcs[i][j], pts[j]);
            }
        }
        for (const auto& w : wires_) {
            const auto& p = path(w);
            auto pts = resample(w.route, w.free);
            auto first = w.var_exit.stubs.size();
            for (int j = 0; j < w.free; ++j) canvas.sample(p[first + j], pts[j]);
        }
        auto rep = canvas.finish();
        auto report = verify(rep, gf_.graph);
        if (report.ok()) return rep;
        why = "layout check failed: " + describe(report.mismatches.front()) + " (" +
              std::to_string(report.mismatches.size()) + " mismatches)";
        return std::nullopt;
    }

    const GFGraph& gf_;
    const SatInstance& inst_;
    std::vector<Orientation> orient_;
    std::vector<Vec> var_pos_;
    std::vector<Vec> clause_pos_;
    std::vector<Vec> dir_;  ///< unit direction variable to clause per occurrence
    std::vector<std::pair<int, int>> slots_;
    std::vector<std::array<bool, 3>> mirror_;
    std::vector<std::array<int, 3>> pair_occ_;
    std::vector<Wire> wires_;  ///< two per occurrence, first then second clockwise at the variable
    std::vector<ClauseLayout> clauses_;
    std::vector<double> radius_;
    std::vector<double> grow_;
    double scale_ = 1;
};

}  // namespace

namespace {

bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto it = std::find(b.begin(), b.end(), a[0]);
    if (it == b.end()) return false;
    auto shift = static_cast<std::size_t>(it - b.begin());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[(i + shift) % b.size()]) return false;
    }
    return true;
}

Vec centre_of(const Segment& s) {
    auto half = Rational(1, 2);
    Point c = s.is_horizontal() ? Point{s.anchor.x + half, s.anchor.y} : Point{s.anchor.x, s.anchor.y + half};
    return {static_cast<double>(c.x.num()) / static_cast<double>(c.x.den()),
            static_cast<double>(c.y.num()) / static_cast<double>(c.y.den())};
}

}  // namespace

Representation synth_representation(const GFGraph& gf, const std::vector<bool>& assignment,
                                    const SynthOptions& opts) {
    const auto& inst = gf.instance;
    if (static_cast<int>(assignment.size()) != inst.var_count) {
        throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " values for " +
                                    std::to_string(inst.var_count) + " variables");
    }
    if (!satisfies(inst, assignment)) throw UnsatisfiableAssignment("assignment falsifies some clause");
    if (gf.variant != Variant::UGIG5) {
        throw UnsupportedVariant("representations are only synthesized for the " + variant_name(Variant::UGIG5) +
                                 " variant");
    }
    for (const auto& occ : gf.occurrences) {
        if (occ.clause < 0) throw RoutingFailure("dummy occurrences are not routed");
    }
    if (!inst.has_embedding()) throw RoutingFailure("synthesis needs positions for every variable and clause");
    SatInstance drawn = inst;
    derive_rotations(drawn);
    for (int v = 0; v < inst.var_count; ++v) {
        if (!same_cycle(drawn.var_rotation[v], inst.var_rotation[v])) {
            throw RoutingFailure("positions disagree with the rotation at variable " + std::to_string(v + 1));
        }
    }
    for (int c = 0; c < inst.clause_count(); ++c) {
        if (!same_cycle(drawn.clause_rotation[c], inst.clause_rotation[c])) {
            throw RoutingFailure("positions disagree with the rotation at clause " + std::to_string(c + 1));
        }
    }
    Router router(gf, assignment);
    return router.run(opts);
}

ClauseTemplate clause_template(const OrderingTriple& t, int g, int stub_length) {
    ClauseTemplate out;
    out.triple = t;
    std::vector<Literal> clause{{0, true}, {1, true}, {2, true}};
    out.gadget = build_clause_gadget(clause, {0, 1, 2}, g);
    const auto& cg = out.gadget;
    out.graph = cg.graph;
    out.roles = cg.roles;
    for (int i = 0; i < 3; ++i) {
        for (bool red : {true, false}) {
            std::vector<Vertex> stub;
            Vertex prev = red ? cg.red_port(i) : cg.blue_port(i);
            for (int j = 0; j < stub_length; ++j) {
                Vertex v = out.graph.add_vertex();
                out.roles.push_back(red ? Role::RedPathInner : Role::BluePathInner);
                out.graph.add_edge(prev, v);
                stub.push_back(v);
                prev = v;
            }
            out.stubs.push_back(stub);
        }
    }
    auto orient = orientations(out.graph, out.roles);
    std::array<bool, 3> mirror{};
    for (int i = 0; i < 3; ++i) mirror[i] = cg.coloring.cycle_red[i] != t.red_before_blue[i];
    auto lay = layout_clause(cg, orient, mirror, {0, 0});
    if (!lay) throw RoutingFailure("clause loop does not fit");

    Canvas canvas(out.graph, orient);
    auto fix = [&](Vertex v, Orientation o, Vec c) {
        if (orient[v] != o) throw RoutingFailure("template orientation disagrees at vertex " + std::to_string(v));
        canvas.fix(v, c);
    };
    std::vector<std::pair<const std::vector<Vertex>*, const Exit*>> wires;
    for (int i = 0; i < 3; ++i) {
        const Port& port = lay->ports[i];
        fix(cg.cycle[i], port.frame.orient(H), port.z);
        fix(cg.pendant[i], port.frame.orient(V), port.y);
        bool z_red = cg.coloring.cycle_red[i];
        wires.emplace_back(&out.stubs[2 * i], z_red ? &port.z_exit : &port.y_exit);
        wires.emplace_back(&out.stubs[2 * i + 1], z_red ? &port.y_exit : &port.z_exit);
    }
    for (auto [stub, exit] : wires) {
        if (stub->size() <= exit->stubs.size()) throw GirthTooSmall("stub paths are shorter than the port templates");
        for (std::size_t j = 0; j < exit->stubs.size(); ++j) fix((*stub)[j], exit->stubs[j].o, exit->stubs[j].c);
    }
    for (int i = 0; i < 3; ++i) {
        auto pts = resample(lay->arcs[i], static_cast<int>(cg.arcs[i].size()));
        for (std::size_t j = 0; j < pts.size(); ++j) canvas.sample(cg.arcs[i][j], pts[j]);
    }
    for (auto [stub, exit] : wires) {
        int free = static_cast<int>(stub->size() - exit->stubs.size());
        Vec from = exit->stubs.back().c;
        Vec to = from + kStep * (free + 1) * unit(exit->ray_end - from);
        auto pts = resample({from, to}, free);
        for (int j = 0; j < free; ++j) canvas.sample((*stub)[exit->stubs.size() + j], pts[j]);
    }
    out.rep = canvas.finish();
    return out;
}

bool template_red_first(const ClauseTemplate& t, int pair) {
    Vec centre;
    for (Vertex z : t.gadget.cycle) centre = centre + (1.0 / 3) * centre_of(t.rep[z]);
    double red = angle_of(centre_of(t.rep[t.stubs[2 * pair].back()]) - centre);
    double blue = angle_of(centre_of(t.rep[t.stubs[2 * pair + 1].back()]) - centre);
    double d = std::remainder(red - blue, 2 * kPi);
    return d > 0;
}

}  // namespace gridlab
