#include "gridlab/recognize.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "gridlab/errors.hpp"

namespace gridlab {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Accept: return "accept";
        case Outcome::Reject: return "reject";
        case Outcome::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
using i64 = std::int64_t;

struct OutOfBudget {};

// Shared between workers: node counter, stop flag and the incumbent bound.
struct SearchState {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::atomic<i64> best{std::numeric_limits<i64>::max()};
    std::uint64_t node_budget = 0;
    Clock::time_point deadline;
    std::mutex mu;
    std::optional<Representation> result;
    i64 result_value = std::numeric_limits<i64>::max();
};

// Backtracking over anchors that are integer multiples of 1/q. Orientation
// is fixed per vertex before the search starts.
class UnitGridSearch {
public:
    UnitGridSearch(const Graph& g, std::vector<char> horiz, std::vector<Vertex> order, i64 lo, i64 hi,
                   bool minimize, i64 cap, SearchState& st)
        : g_(g), n_(g.size()), q_(std::max(g.size(), 1)), lo_(lo), hi_(hi), horiz_(std::move(horiz)),
          order_(std::move(order)), minimize_(minimize), cap_(cap), st_(st),
          x_(n_), y_(n_), placed_(n_, 0), used_x_(q_, 0), used_y_(q_, 0) {}

    // Runs the subtree in which the first vertex sits at one of `firsts`.
    void run(const std::vector<std::pair<i64, i64>>& firsts) {
        if (n_ == 0) return;
        Vertex v = order_[0];
        for (auto [x, y] : firsts) {
            if (st_.stop.load()) return;
            Box b = extent(v, x, y);
            if (minimize_ && !worth(b)) continue;
            put(v, x, y);
            descend(1, b);
            take(v);
        }
    }

    std::vector<std::pair<i64, i64>> first_positions(bool fix_residue) const {
        std::vector<std::pair<i64, i64>> out;
        for (i64 x = lo_; x <= hi_; ++x) {
            if (fix_residue && mod(x) != 0) continue;
            for (i64 y = lo_; y <= hi_; ++y) {
                if (fix_residue && mod(y) != 0) continue;
                out.emplace_back(x, y);
            }
        }
        return out;
    }

private:
    struct Box {
        i64 x0, x1, y0, y1;
    };

    i64 mod(i64 k) const { return ((k % q_) + q_) % q_; }

    Box extent(Vertex v, i64 x, i64 y) const {
        return horiz_[v] ? Box{x, x + q_, y, y} : Box{x, x, y, y + q_};
    }

    static Box merge(const Box& a, const Box& b) {
        return {std::min(a.x0, b.x0), std::max(a.x1, b.x1), std::min(a.y0, b.y0), std::max(a.y1, b.y1)};
    }

    bool worth(const Box& b) const {
        i64 size = (b.x1 - b.x0) + (b.y1 - b.y0);
        return size <= cap_ && size < st_.best.load();
    }

    void put(Vertex v, i64 x, i64 y) {
        x_[v] = x;
        y_[v] = y;
        placed_[v] = 1;
        used_x_[mod(x)] = 1;
        used_y_[mod(y)] = 1;
    }

    void take(Vertex v) {
        placed_[v] = 0;
        used_x_[mod(x_[v])] = 0;
        used_y_[mod(y_[v])] = 0;
    }

    bool meets(Vertex h, Vertex v) const {
        return x_[h] <= x_[v] && x_[v] <= x_[h] + q_ && y_[v] <= y_[h] && y_[h] <= y_[v] + q_;
    }

    void tick() {
        std::uint64_t c = st_.nodes.fetch_add(1) + 1;
        if (c > st_.node_budget) throw OutOfBudget{};
        if ((c & 0x3fff) == 0 && Clock::now() > st_.deadline) throw OutOfBudget{};
    }

    void record(const Box& b) {
        Representation rep;
        for (Vertex v = 0; v < n_; ++v) {
            Rational x(x_[v], q_);
            Rational y(y_[v], q_);
            rep.segments.push_back(horiz_[v] ? Segment::horizontal(x, y) : Segment::vertical(x, y));
        }
        i64 value = minimize_ ? (b.x1 - b.x0) + (b.y1 - b.y0) : 0;
        std::lock_guard<std::mutex> lk(st_.mu);
        if (!st_.result || value < st_.result_value) {
            st_.result = std::move(rep);
            st_.result_value = value;
        }
        if (minimize_) {
            i64 cur = st_.best.load();
            while (value < cur && !st_.best.compare_exchange_weak(cur, value)) {
            }
        } else {
            st_.stop = true;
        }
    }

    bool descend(std::size_t depth, const Box& box) {
        if (st_.stop.load()) return true;
        if (depth == order_.size()) {
            record(box);
            return !minimize_;
        }
        const Vertex v = order_[depth];
        i64 xl = lo_, xh = hi_, yl = lo_, yh = hi_;
        for (Vertex u : g_.neighbors(v)) {
            if (!placed_[u]) continue;
            if (horiz_[v]) {
                xl = std::max(xl, x_[u] - q_);
                xh = std::min(xh, x_[u]);
                yl = std::max(yl, y_[u]);
                yh = std::min(yh, y_[u] + q_);
            } else {
                xl = std::max(xl, x_[u]);
                xh = std::min(xh, x_[u] + q_);
                yl = std::max(yl, y_[u] - q_);
                yh = std::min(yh, y_[u]);
            }
        }
        const auto& nb = g_.neighbors(v);
        for (i64 x = xl; x <= xh; ++x) {
            if (used_x_[mod(x)]) continue;
            for (i64 y = yl; y <= yh; ++y) {
                if (used_y_[mod(y)]) continue;
                tick();
                x_[v] = x;
                y_[v] = y;
                bool ok = true;
                for (std::size_t i = 0; i < depth && ok; ++i) {
                    Vertex u = order_[i];
                    if (horiz_[u] == horiz_[v]) continue;
                    bool adj = std::binary_search(nb.begin(), nb.end(), u);
                    bool hit = horiz_[v] ? meets(v, u) : meets(u, v);
                    ok = adj == hit;
                }
                if (!ok) continue;
                Box b = merge(box, extent(v, x, y));
                if (minimize_ && !worth(b)) continue;
                put(v, x, y);
                bool done = descend(depth + 1, b);
                take(v);
                if (done) return true;
            }
        }
        return false;
    }

    const Graph& g_;
    int n_;
    i64 q_;
    i64 lo_, hi_;
    std::vector<char> horiz_;
    std::vector<Vertex> order_;
    bool minimize_;
    i64 cap_;
    SearchState& st_;
    std::vector<i64> x_, y_;
    std::vector<char> placed_;
    std::vector<char> used_x_, used_y_;
};

std::vector<Vertex> degree_order(const Graph& g) {
    std::vector<Vertex> order(static_cast<std::size_t>(g.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    return order;
}

// Every orientation consistent with the bipartition: one bit per component.
std::vector<std::vector<char>> orientations(const Graph& g, const std::vector<int>& color, bool fix_first,
                                            Vertex first) {
    auto comp = components(g);
    int c = g.size() == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<char>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
        if (fix_first && ((mask >> comp[first]) & 1)) continue;
        std::vector<char> h(static_cast<std::size_t>(g.size()));
        for (Vertex v = 0; v < g.size(); ++v) h[v] = static_cast<char>(color[v] ^ ((mask >> comp[v]) & 1)) == 0;
        out.push_back(std::move(h));
    }
    return out;
}

struct UnitSearchSetup {
    i64 lo, hi;
    bool fix_residue;
};

UnitSearchSetup unit_setup(const Graph& g, const SearchOptions& opts, bool allow_residue_fix) {
    i64 q = std::max(g.size(), 1);
    i64 top = opts.grid_extent_override ? *opts.grid_extent_override : g.size() + 1;
    // Translating a canonical representation right by less than one unit
    // stays inside [-1, n+1], so the first segment's residues may be fixed.
    bool fix = allow_residue_fix && opts.symmetry_pruning && !opts.grid_extent_override;
    return {-q, q * top, fix};
}

// Runs the unit grid search over all orientations. Returns false if the
// budget ran out.
bool run_unit_search(const Graph& g, const SearchOptions& opts, bool minimize, i64 cap, SearchState& st,
                     bool allow_residue_fix) {
    st.node_budget = opts.node_budget;
    st.deadline = Clock::now() + opts.time_budget;
    auto color = bipartition(g);
    if (!color) return true;
    auto order = degree_order(g);
    auto setup = unit_setup(g, opts, allow_residue_fix);
    auto orients = orientations(g, *color, opts.symmetry_pruning, order.empty() ? 0 : order[0]);
    std::atomic<bool> exhausted{false};
    for (const auto& h : orients) {
        if (st.stop.load()) break;
        UnitGridSearch probe(g, h, order, setup.lo, setup.hi, minimize, cap, st);
        auto firsts = probe.first_positions(setup.fix_residue);
        unsigned workers = opts.parallel_branches ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
        auto work = [&](unsigned k) {
            std::vector<std::pair<i64, i64>> mine;
            for (std::size_t i = k; i < firsts.size(); i += workers) mine.push_back(firsts[i]);
            UnitGridSearch s(g, h, order, setup.lo, setup.hi, minimize, cap, st);
            try {
                s.run(mine);
            } catch (const OutOfBudget&) {
                exhausted = true;
                st.stop = true;
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work, k);
            for (auto& t : pool) t.join();
        }
        if (exhausted) return false;
    }
    return true;
}

// Path as a diagonal staircase: element j sits at offset j/2 on both axes.
void place_path(const std::vector<Vertex>& path, const std::vector<char>& horiz, Rational ox, Rational oy,
                Representation& rep) {
    const Rational half(1, 2);
    for (std::size_t j = 0; j < path.size(); ++j) {
        Rational c = Rational(static_cast<std::int64_t>(j)) * half;
        Vertex v = path[j];
        rep[v] = horiz[v] ? Segment::horizontal(ox + c - half, oy + c) : Segment::vertical(ox + c, oy + c - half);
    }
}

// Even cycle as two rows of horizontal segments joined by short verticals;
// the row step and the top row offset are searched over sixteenths until
// the result verifies.
std::optional<Representation> ring(int m, const std::vector<Vertex>& cyc, int n) {
    const Rational tenth(1, 10);
    if (m == 2) {
        Representation rep;
        rep.segments.assign(static_cast<std::size_t>(n), Segment{});
        rep[cyc[0]] = Segment::horizontal(0, Rational(1, 4));
        rep[cyc[1]] = Segment::vertical(Rational(1, 4), 0);
        rep[cyc[2]] = Segment::horizontal(0, Rational(3, 4));
        rep[cyc[3]] = Segment::vertical(Rational(3, 4), 0);
        return rep;
    }
    const int p = (m + 1) / 2;
    const int r = m - p;
    Graph want(2 * m);
    for (int i = 0; i < 2 * m; ++i) want.add_edge(i, (i + 1) % (2 * m));
    for (int si = 9; si <= 15; ++si) {
        Rational s(si, 16);
        for (int oi = -16 * m; oi <= 16 * m; ++oi) {
            Rational o(oi, 16);
            // Local ids follow the cycle: B_0, v, B_1, ..., B_{p-1}, vR, T_0, ..., T_{r-1}, vL.
            std::vector<Segment> seg;
            for (int i = 0; i < p; ++i) {
                seg.push_back(Segment::horizontal(s * Rational(i), tenth * Rational(i % 2)));
                if (i + 1 < p) {
                    Rational x = s * Rational(i + 1) + (Rational(1) - s) / Rational(2);
                    seg.push_back(Segment::vertical(x, Rational(-1, 2)));
                }
            }
            auto t_left = [&](int j) { return o + s * Rational(r - 1 - j); };
            auto t_y = [&](int j) { return Rational(4, 5) + tenth * Rational((r - 1 - j) % 2); };
            // Exclusive stretches at both ends of each row.
            Rational b_last_lo = p >= 2 ? s * Rational(p - 2) + 1 : Rational(0);
            Rational b_last_hi = s * Rational(p - 1) + 1;
            Rational t_first_lo = r >= 2 ? t_left(1) + 1 : t_left(0);
            Rational t_first_hi = t_left(0) + 1;
            Rational xr_lo = max(b_last_lo, t_first_lo), xr_hi = min(b_last_hi, t_first_hi);
            Rational b_first_hi = p >= 2 ? s : Rational(1);
            Rational t_last_lo = t_left(r - 1);
            Rational t_last_hi = r >= 2 ? t_left(r - 2) : t_left(r - 1) + 1;
            Rational xl_lo = max(Rational(0), t_last_lo), xl_hi = min(b_first_hi, t_last_hi);
            if (xr_lo >= xr_hi || xl_lo >= xl_hi) continue;
            Rational xr = (xr_lo + xr_hi) / Rational(2);
            Rational xl = (xl_lo + xl_hi) / Rational(2);
            if (xr == xl) continue;
            seg.push_back(Segment::vertical(xr, 0));
            for (int j = 0; j < r; ++j) {
                seg.push_back(Segment::horizontal(t_left(j), t_y(j)));
                if (j + 1 < r) {
                    Rational x = t_left(j + 1) + s + (Rational(1) - s) / Rational(2);
                    seg.push_back(Segment::vertical(x, Rational(7, 10)));
                }
            }
            seg.push_back(Segment::vertical(xl, 0));
            Representation local{seg, true};
            if (!validate(local).empty() || !verify(local, want).ok()) continue;
            Representation rep;
            rep.segments.assign(static_cast<std::size_t>(n), Segment{});
            for (int i = 0; i < 2 * m; ++i) rep[cyc[i]] = seg[i];
            return rep;
        }
    }
    return std::nullopt;
}

}  // namespace

Representation degree_two_representation(const Graph& g) {
    const int n = g.size();
    auto color = bipartition(g);
    if (!color || max_degree(g) > 2) throw std::invalid_argument("needs a bipartite graph of maximum degree 2");
    Representation rep;
    rep.segments.assign(static_cast<std::size_t>(n), Segment{});
    std::vector<char> seen(n, 0);
    Rational ox(0);
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        // Walk from an endpoint if the component is a path.
        Vertex start = s;
        {
            std::vector<Vertex> stack{s};
            std::vector<char> mark(n, 0);
            mark[s] = 1;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                if (g.degree(v) < 2) start = v;
                for (Vertex w : g.neighbors(v))
                    if (!mark[w]) mark[w] = 1, stack.push_back(w);
            }
        }
        std::vector<Vertex> walk{start};
        seen[start] = 1;
        for (;;) {
            Vertex cur = walk.back(), next = -1;
            for (Vertex w : g.neighbors(cur))
                if (!seen[w]) { next = w; break; }
            if (next < 0) break;
            seen[next] = 1;
            walk.push_back(next);
        }
        const bool cycle = walk.size() > 2 && g.has_edge(walk.front(), walk.back());
        std::vector<char> horiz(n, 0);
        for (Vertex v : walk) horiz[v] = (*color)[v] == (*color)[walk[0]];
        Box placed_box{};
        if (cycle) {
            auto r = ring(static_cast<int>(walk.size()) / 2, walk, n);
            if (!r) throw std::logic_error("ring construction failed");
            for (Vertex v : walk) rep[v] = (*r)[v];
        } else {
            place_path(walk, horiz, 0, 0, rep);
        }
        Representation part;
        for (Vertex v : walk) part.segments.push_back(rep[v]);
        placed_box = bounding_box(part);
        Rational shift = ox - placed_box.xmin;
        for (Vertex v : walk) rep[v].anchor.x += shift;
        ox += placed_box.width() + 2;
    }
    return rep;
}

std::optional<QuickResult> quick_reject(const Graph& g) {
    if (!bipartition(g)) return QuickResult{QuickVerdict::NonBipartite, std::nullopt};
    if (max_degree(g) <= 2) return QuickResult{QuickVerdict::TrivialAccept, degree_two_representation(g)};
    return std::nullopt;
}

RecognitionResult recognize_ugig(const Graph& g, const SearchOptions& opts) {
    RecognitionResult res;
    if (auto quick = quick_reject(g); quick && !opts.grid_extent_override) {
        if (quick->verdict == QuickVerdict::NonBipartite) {
            res.reason = "not bipartite";
            return res;
        }
        res.outcome = Outcome::Accept;
        res.rep = quick->rep;
        res.reason = "maximum degree at most 2";
        return res;
    }
    if (!bipartition(g)) {
        res.reason = "not bipartite";
        return res;
    }
    SearchState st;
    bool complete = run_unit_search(g, opts, false, std::numeric_limits<i64>::max(), st, true);
    res.nodes = st.nodes.load();
    if (st.result) {
        res.outcome = Outcome::Accept;
        res.rep = std::move(st.result);
    } else if (!complete) {
        res.outcome = Outcome::BudgetExceeded;
        res.reason = "budget exhausted";
    } else {
        res.reason = "canonical grid exhausted";
    }
    return res;
}

BoundSearch bound_search(const Graph& g, const Rational& cap, const SearchOptions& opts,
                         const std::optional<Representation>& seed) {
    if (cap <= Rational(0)) throw std::invalid_argument("cap must be positive");
    const i64 q = std::max(g.size(), 1);
    BoundSearch out;
    if (!bipartition(g)) {
        out.complete = true;
        return out;
    }
    SearchState st;
    if (seed && verify(*seed, g).ok()) {
        Rational value = boundary_size(*seed) * Rational(q);
        if (value.is_integer() && value <= cap * Rational(q)) {
            st.result = *seed;
            st.result_value = value.num();
            st.best = value.num();
        }
    }
    out.complete = run_unit_search(g, opts, true, (cap * Rational(q)).floor(), st, false);
    out.nodes = st.nodes.load();
    if (st.result) out.best = BoundResult{*st.result, Rational(st.result_value, q), out.nodes};
    return out;
}

std::optional<BoundResult> min_boundary(const Graph& g, const Rational& cap, const SearchOptions& opts) {
    auto s = bound_search(g, cap, opts);
    if (!s.complete) throw BudgetExceeded("boundary search stopped after " + std::to_string(s.nodes) + " nodes");
    return s.best;
}

// Normal form: H segments on distinct integer rows, V segments on distinct
// integer columns, endpoints half a unit beyond the outermost crossing.
RecognitionResult recognize_gig(const Graph& g, const SearchOptions& opts) {
    RecognitionResult res;
    auto color = bipartition(g);
    if (!color) {
        res.reason = "not bipartite";
        return res;
    }
    const int n = g.size();
    const auto deadline = Clock::now() + opts.time_budget;
    auto comp = components(g);
    int c = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
        if (opts.symmetry_pruning && n > 0 && (mask & 1)) continue;
        std::vector<Vertex> hs, vs;
        for (Vertex v = 0; v < n; ++v) (((*color)[v] ^ ((mask >> comp[v]) & 1)) == 0 ? hs : vs).push_back(v);
        std::vector<int> row(n, 0), col(n, 0);
        std::vector<int> hperm(hs.size()), vperm(vs.size());
        std::iota(hperm.begin(), hperm.end(), 1);
        do {
            for (std::size_t i = 0; i < hs.size(); ++i) row[hs[i]] = hperm[i];
            std::iota(vperm.begin(), vperm.end(), 1);
            do {
                if (++res.nodes > opts.node_budget || ((res.nodes & 0xfff) == 0 && Clock::now() > deadline)) {
                    res.outcome = Outcome::BudgetExceeded;
                    res.reason = "budget exhausted";
                    return res;
                }
                for (std::size_t i = 0; i < vs.size(); ++i) col[vs[i]] = vperm[i];
                // Doubled coordinates keep half-integers integral.
                std::vector<int> lo(n), hi(n);
                for (Vertex v = 0; v < n; ++v) {
                    bool h = ((*color)[v] ^ ((mask >> comp[v]) & 1)) == 0;
                    if (g.degree(v) == 0) {
                        int spare = 2 * static_cast<int>(h ? vs.size() : hs.size()) + 2;
                        lo[v] = spare - 1;
                        hi[v] = spare + 1;
                        continue;
                    }
                    int a = std::numeric_limits<int>::max(), b = std::numeric_limits<int>::min();
                    for (Vertex u : g.neighbors(v)) {
                        int pos = 2 * (h ? col[u] : row[u]);
                        a = std::min(a, pos);
                        b = std::max(b, pos);
                    }
                    lo[v] = a - 1;
                    hi[v] = b + 1;
                }
                bool ok = true;
                for (Vertex h : hs) {
                    for (Vertex v : vs) {
                        if (g.has_edge(h, v)) continue;
                        int x = 2 * col[v], y = 2 * row[h];
                        if (lo[h] <= x && x <= hi[h] && lo[v] <= y && y <= hi[v]) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                Representation rep;
                rep.unit_mode = false;
                rep.segments.resize(static_cast<std::size_t>(n));
                for (Vertex h : hs) rep[h] = Segment::horizontal(Rational(lo[h], 2), row[h], Rational(hi[h] - lo[h], 2));
                for (Vertex v : vs) rep[v] = Segment::vertical(col[v], Rational(lo[v], 2), Rational(hi[v] - lo[v], 2));
                res.outcome = Outcome::Accept;
                res.rep = std::move(rep);
                return res;
            } while (std::next_permutation(vperm.begin(), vperm.end()));
        } while (std::next_permutation(hperm.begin(), hperm.end()));
    }
    res.reason = "normal form exhausted";
    return res;
}

}  // namespace gridlab
