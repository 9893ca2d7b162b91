#include "gridlab/canonical.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "gridlab/errors.hpp"

namespace gridlab {

namespace {

bool along(const Segment& s, Axis axis) { return s.is_horizontal() == (axis == Axis::X); }

Rational& coord(Segment& s, Axis axis) { return axis == Axis::X ? s.anchor.x : s.anchor.y; }

std::vector<Rational> projected_values(const Representation& rep, Axis axis) {
    std::vector<Rational> vals;
    for (const auto& s : rep.segments) {
        Rational l = assigned_coordinate(s, axis);
        vals.push_back(l);
        vals.push_back(l + 1);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

// Order constraints that keep every tied adjacency alive once offsets are
// added: before[u] lists the vertices whose offset must exceed u's.
std::vector<std::vector<Vertex>> tie_constraints(const Representation& rep, const Graph& g, Axis axis) {
    std::vector<std::vector<Vertex>> after(static_cast<std::size_t>(rep.size()));
    for (auto [u, v] : g.edges()) {
        Vertex a = along(rep[u], axis) ? u : v;  // interval on this axis
        Vertex p = a == u ? v : u;               // point on this axis
        Rational start = rep[a].start();
        Rational point = rep[p].fixed();
        if (point == start) after[a].push_back(p);
        if (point == start + rep[a].length) after[p].push_back(a);
    }
    return after;
}

std::vector<int> topological_rank(const std::vector<std::vector<Vertex>>& after) {
    const int n = static_cast<int>(after.size());
    std::vector<int> indeg(n, 0);
    for (const auto& out : after)
        for (Vertex w : out) ++indeg[w];
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> rank(n, -1);
    int next = 0;
    while (!ready.empty()) {
        Vertex v = ready.top();
        ready.pop();
        rank[v] = next++;
        for (Vertex w : after[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (next != n) throw PerturbationFailed("cyclic tie constraints");
    return rank;
}

}  // namespace

Rational assigned_coordinate(const Segment& s, Axis axis) {
    if (along(s, axis)) return s.start();
    return s.fixed() - 1;
}

SweepSchedule sweep_schedule(const Representation& rep, Axis axis) {
    SweepSchedule sched{axis, {}};
    for (Vertex v = 0; v < rep.size(); ++v) sched.ordered_events.emplace_back(v, assigned_coordinate(rep[v], axis));
    std::stable_sort(sched.ordered_events.begin(), sched.ordered_events.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    return sched;
}

bool in_general_position(const Representation& rep, Axis axis) {
    auto vals = projected_values(rep, axis);
    return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

Representation perturb_to_general_position(const Representation& rep) {
    if (in_general_position(rep, Axis::X) && in_general_position(rep, Axis::Y)) return rep;
    const Graph g = extract_graph(rep);
    const int n = rep.size();
    Representation out = rep;
    for (Axis axis : {Axis::X, Axis::Y}) {
        if (in_general_position(out, axis)) continue;
        auto vals = projected_values(out, axis);
        Rational gap(1);
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (vals[i] != vals[i - 1]) gap = min(gap, vals[i] - vals[i - 1]);
        const Rational eps = gap / Rational(4 * n);
        auto rank = topological_rank(tie_constraints(out, g, axis));
        for (Vertex v = 0; v < n; ++v) coord(out[v], axis) += eps * Rational(rank[v]);
    }
    if (!in_general_position(out, Axis::X) || !in_general_position(out, Axis::Y) || extract_graph(out) != g) {
        throw PerturbationFailed("perturbation changed the arrangement");
    }
    return out;
}

Representation sweep_axis(const Representation& rep, Axis axis) {
    if (!rep.unit_mode) throw NotUnitMode("sweep needs unit segments");
    if (!in_general_position(rep, axis)) throw NotGeneralPosition("projected endpoints coincide");
    const int n = rep.size();
    const std::int64_t q = std::max(n, 1);
    auto sched = sweep_schedule(rep, axis);
    const std::size_t m = sched.ordered_events.size();
    // Numerators over q. The greedy smallest slot can paint itself into a
    // corner (no integer left between two right endpoints), so candidates
    // are tried smallest first with backtracking. Upper cap keeps the
    // extent within n+1.
    const std::int64_t cap = q * q - q;
    std::vector<std::int64_t> placed(m);
    std::vector<char> used(static_cast<std::size_t>(q), 0);
    auto residue = [&](std::int64_t k) { return static_cast<std::size_t>(((k % q) + q) % q); };
    std::function<bool(std::size_t)> place = [&](std::size_t j) -> bool {
        if (j == m) return true;
        const Rational& lj = sched.ordered_events[j].second;
        std::int64_t lo = placed[j - 1];
        std::int64_t hi = cap + 1;
        for (std::size_t i = 0; i < j; ++i) {
            if (lj > sched.ordered_events[i].second + 1) lo = std::max(lo, placed[i] + q);
            else hi = std::min(hi, placed[i] + q);
        }
        for (std::int64_t k = lo + 1; k < hi; ++k) {
            if (used[residue(k)]) continue;
            placed[j] = k;
            used[residue(k)] = 1;
            if (place(j + 1)) return true;
            used[residue(k)] = 0;
        }
        return false;
    };
    if (m > 0) {
        placed[0] = -q;
        used[0] = 1;
        if (!place(1)) throw Error("no order-preserving placement at granularity 1/" + std::to_string(q));
    }
    Representation out = rep;
    for (std::size_t j = 0; j < m; ++j) {
        Segment& s = out[sched.ordered_events[j].first];
        Rational value(placed[j], q);
        coord(s, axis) = along(s, axis) ? value : value + 1;
    }
    return out;
}

Representation canonicalize(const Representation& rep) {
    require_valid(rep);
    Representation r = perturb_to_general_position(rep);
    r = sweep_axis(r, Axis::X);
    return sweep_axis(r, Axis::Y);
}

CanonicalCheck check_canonical(const Representation& rep) {
    CanonicalCheck out;
    const int n = rep.size();
    if (n == 0) return out;
    for (Vertex v = 0; v < n; ++v) {
        const auto& s = rep[v];
        for (const Rational* c : {&s.anchor.x, &s.anchor.y, &s.length}) {
            if (!c->is_multiple_of_inverse(n)) {
                out.violations.push_back("vertex " + std::to_string(v) + " has coordinate " + c->str() +
                                         ", not a multiple of 1/" + std::to_string(n));
                break;
            }
        }
    }
    Box b = bounding_box(rep);
    if (b.width() > Rational(n + 1)) out.violations.push_back("width " + b.width().str() + " exceeds n+1");
    if (b.height() > Rational(n + 1)) out.violations.push_back("height " + b.height().str() + " exceeds n+1");
    for (Axis axis : {Axis::X, Axis::Y}) {
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (assigned_coordinate(rep[u], axis).fractional_part() ==
                    assigned_coordinate(rep[v], axis).fractional_part()) {
                    out.violations.push_back(std::string("vertices ") + std::to_string(u) + " and " +
                                             std::to_string(v) + " share a fractional part on the " +
                                             (axis == Axis::X ? "x" : "y") + " axis");
                    out.clashing_pairs.emplace_back(u, v);
                }
            }
        }
    }
    return out;
}

}  // namespace gridlab
