// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria not named with --allow-fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../support/instances.hpp"
#include "../support/oracles.hpp"
#include "gridlab/canonical.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/io.hpp"
#include "gridlab/random.hpp"
#include "gridlab/recognize.hpp"
#include "gridlab/reduction.hpp"
#include "gridlab/synth.hpp"
#include "gridlab/treebound.hpp"

using namespace gridlab;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) note << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

// Independent canonical-form check: coordinates on the 1/n grid, box inside
// [-1, n] + unit, distinct fractional parts on each axis.
bool canonical_by_hand(const Representation& rep) {
    const int n = rep.size();
    std::set<Rational> fx, fy;
    Rational lo_x(1'000'000), lo_y(1'000'000), hi_x(-1'000'000), hi_y(-1'000'000);
    for (const auto& s : rep.segments) {
        if (n % s.anchor.x.den() != 0 || n % s.anchor.y.den() != 0) return false;
        fx.insert(s.anchor.x.fractional_part());
        fy.insert(s.anchor.y.fractional_part());
        auto e = s.end();
        lo_x = min(lo_x, s.anchor.x);
        lo_y = min(lo_y, s.anchor.y);
        hi_x = max(hi_x, e.x);
        hi_y = max(hi_y, e.y);
    }
    Rational side(n + 1);
    return static_cast<int>(fx.size()) == n && static_cast<int>(fy.size()) == n && hi_x - lo_x <= side &&
           hi_y - lo_y <= side;
}

Verdict criterion1() {
    Verdict v;
    std::mt19937_64 rng(20240601);
    double worst = 0;
    int trials = 0;
    for (; trials < 180; ++trials) {
        int n = 2 + trials % 9;
        auto rep = random_unit_arrangement(n, rng);
        auto t0 = Clock::now();
        auto out = canonicalize(rep);
        worst = std::max(worst, seconds_since(t0));
        auto g = extract_graph(rep);
        v.require(check_canonical(out).ok(), "check_canonical on trial " + std::to_string(trials));
        v.require(canonical_by_hand(out), "grid, box or fractional parts on trial " + std::to_string(trials));
        v.require(oracle::represents(out, g), "graph changed on trial " + std::to_string(trials));
    }
    v.require(worst < 1.0, "an instance took over 1 s");
    v.note << trials << " arrangements, n in [2,10], slowest " << worst << " s";
    return v;
}

// Representations of K_{1,4} on the unit grid of the given granularity in
// which the leaves sit at pairwise distinct fractional parts along the hub.
bool star_fits(int q) {
    bool found = false;
    oracle::UnitGrid grid{q, q, -1, 2, false};
    oracle::each_unit_rep(star(4), grid, [&](const Representation& r) {
        std::set<Rational> frac;
        for (Vertex l = 1; l <= 4; ++l) frac.insert(r[l].fixed().fractional_part());
        found = frac.size() == 4;
        return found;
    });
    return found;
}

Verdict criterion2() {
    Verdict v;
    auto t0 = Clock::now();
    const int n = 5;
    auto g = star(n - 1);
    auto res = recognize_ugig(g);
    v.require(res.outcome == Outcome::Accept && res.rep, "K_{1,4} not accepted");
    if (res.rep) {
        v.require(oracle::represents(*res.rep, g), "accepted representation is wrong");
        std::set<Rational> along;
        for (Vertex l = 1; l < n; ++l) along.insert((*res.rep)[l].fixed());
        v.require(along.size() == 4, "leaf coordinates of the accepted representation coincide");
    }
    // Every representation the oracle can find on a window of the 1/n grid
    // has distinct leaf coordinates along the hub.
    long long seen = 0;
    bool all_distinct = true;
    oracle::each_unit_rep(g, {n, n, 0, 1, false}, [&](const Representation& r) {
        std::set<Rational> along;
        for (Vertex l = 1; l < n; ++l) along.insert(r[l].fixed());
        all_distinct = all_distinct && along.size() == 4;
        return ++seen >= 200000;
    });
    v.require(seen > 0 && all_distinct, "oracle representation with coinciding leaves");
    v.require(!star_fits(n - 2), "granularity 1/(n-2) admits distinct leaves");
    v.require(star_fits(n - 1), "granularity 1/(n-1) control found nothing");
    double t = seconds_since(t0);
    v.require(t < 60, "over 60 s");
    v.note << seen << " oracle representations checked, 1/3 grid empty, 1/4 grid has one, " << t << " s";
    return v;
}

Verdict criterion3() {
    Verdict v;
    auto t0 = Clock::now();
    int graphs = 0, accepted = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const auto& g : oracle::graphs_up_to_iso(n)) {
            bool bip = oracle::two_colour(g).has_value();
            auto u = recognize_ugig(g);
            bool naive_u = bip && oracle::find_unit_rep(g, {n, n, -1, n + 1, true}).has_value();
            v.require(u.outcome != Outcome::BudgetExceeded, "ugig budget exceeded");
            v.require((u.outcome == Outcome::Accept) == naive_u, "ugig disagrees with the enumerator");
            if (u.rep) v.require(oracle::represents(*u.rep, g), "ugig representation is wrong");

            auto gg = recognize_gig(g);
            bool naive_g = oracle::find_gig_rep(g).has_value();
            v.require(gg.outcome != Outcome::BudgetExceeded, "gig budget exceeded");
            v.require((gg.outcome == Outcome::Accept) == naive_g, "gig disagrees with the enumerator");
            if (gg.rep) v.require(verify(*gg.rep, g).ok(), "gig representation is wrong");
            if (bip) ++graphs;
            accepted += u.outcome == Outcome::Accept;
        }
    }
    double t = seconds_since(t0);
    v.require(t < 600, "over 10 min");
    v.note << graphs << " bipartite graphs up to isomorphism, " << accepted << " unit-accepted, " << t << " s";
    return v;
}

Verdict criterion4() {
    Verdict v;
    auto t0 = Clock::now();
    int feasible = 0;
    for (int t = 0; t < 8; ++t) {
        auto r = clause_ordering_feasible(OrderingTriple::from_index(t));
        feasible += r.feasible;
        if (t == 0) v.require(!r.feasible, "the all-blue-first triple is feasible");
    }
    v.require(feasible == 7, "feasible count is " + std::to_string(feasible));
    for (int t = 1; t < 8; ++t) {
        std::string base = std::string(GRIDLAB_DATA_DIR) + "/templates/t" + std::to_string(t);
        auto rep = parse_rep(read_file(base + ".rep"));
        auto g = parse_graph(read_file(base + ".graph"));
        auto report = verify(rep, g);
        v.require(validate(rep).empty() && report.mismatches.empty(), "template " + std::to_string(t) + " fails verify");
        v.require(oracle::represents(rep, g), "template " + std::to_string(t) + " fails the pairwise oracle");
    }
    double t = seconds_since(t0);
    v.require(t < 1, "over 1 s");
    v.note << feasible << " of 8 triples feasible, 7 templates verified, " << t << " s";
    return v;
}

Verdict criterion5() {
    Verdict v;
    auto t0 = Clock::now();
    auto inst = instances::fig3();
    for (Variant variant : {Variant::UGIG5, Variant::GIG4, Variant::STRING8}) {
        const std::string name = variant_name(variant);
        for (int g : {6, 12, 20}) {
            auto gf = build_gf(inst, g, variant);
            const std::string at = name + " g=" + std::to_string(g);
            int deg = 0;
            for (Vertex x = 0; x < gf.graph.size(); ++x) deg = std::max(deg, gf.graph.degree(x));
            if (variant == Variant::UGIG5) v.require(deg == 5, at + " max degree " + std::to_string(deg));
            if (variant == Variant::GIG4) v.require(deg == 4, at + " max degree " + std::to_string(deg));
            if (variant == Variant::STRING8) v.require(deg <= 8, at + " max degree " + std::to_string(deg));
            auto colour = oracle::two_colour(gf.graph);
            v.require(colour.has_value(), at + " not bipartite");
            if (colour) {
                std::set<int> red_sides;
                for (Vertex x = 0; x < gf.graph.size(); ++x)
                    if (gf.roles[x] == Role::ClausePairRed) red_sides.insert((*colour)[x]);
                v.require(red_sides.size() == 1, at + " red clause vertices split");
            }
            int girth = oracle::girth(gf.graph);
            v.require(girth < 0 || girth >= g, at + " girth " + std::to_string(girth));
        }
        double ratio = double(build_gf(inst, 24, variant).graph.size()) / build_gf(inst, 12, variant).graph.size();
        v.require(ratio >= 1.8 && ratio <= 2.2, name + " size ratio " + std::to_string(ratio));
        v.note << name << " ratio " << ratio << ", ";
    }
    double t = seconds_since(t0);
    v.require(t < 5, "over 5 s");
    v.note << t << " s";
    return v;
}

Verdict criterion6() {
    Verdict v;
    auto t0 = Clock::now();
    std::vector<SatInstance> suite;
    for (int neg = 0; neg < 8; ++neg) suite.push_back(instances::single_clause(neg));
    for (int neg : {0b000000, 0b100110, 0b011001, 0b111111}) {
        suite.push_back(instances::two_clauses(0, neg));
        suite.push_back(instances::two_clauses(1, neg));
    }
    int built = 0, rejected = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& inst = suite[i];
        auto gf = build_gf(inst, 300, Variant::UGIG5);
        for (int a = 0; a < (1 << inst.var_count); ++a) {
            std::vector<bool> as;
            for (int x = 0; x < inst.var_count; ++x) as.push_back((a >> x) & 1);
            bool sat = satisfies(inst, as);
            // Independent truth check straight from the clauses.
            bool direct = true;
            for (const auto& c : inst.clauses) {
                bool any = false;
                for (const auto& l : c) any = any || as[l.var] == l.positive;
                direct = direct && any;
            }
            v.require(sat == direct, "satisfies disagrees with direct evaluation");
            std::string at = "instance " + std::to_string(i) + " assignment " + std::to_string(a);
            try {
                auto rep = synth_representation(gf, as);
                ++built;
                v.require(direct, at + " built for a falsifying assignment");
                v.require(verify(rep, gf.graph).ok(), at + " fails verify");
            } catch (const UnsatisfiableAssignment&) {
                ++rejected;
                v.require(!direct, at + " rejected although satisfying");
            } catch (const Error& e) {
                v.require(false, at + ": " + e.what());
            }
        }
    }
    double t = seconds_since(t0);
    v.require(t < 60, "over 1 min");
    v.note << suite.size() << " instances at g=300, " << built << " built, " << rejected << " rejected, " << t << " s";
    return v;
}

int depth_by_bfs(const Graph& g, Vertex root, std::vector<int>& dist) {
    dist.assign(static_cast<std::size_t>(g.size()), -1);
    std::queue<Vertex> q;
    q.push(root);
    dist[root] = 0;
    int deepest = 0;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        deepest = std::max(deepest, dist[x]);
        for (Vertex y : g.neighbors(x))
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return deepest;
}

Verdict criterion7(double budget_seconds) {
    Verdict v;
    for (int n : {2, 3}) {
        auto t = gen_tree(n);
        std::string at = "T_" + std::to_string(n);
        v.require(t.graph.degree(t.root) == 16 * n + 1, at + " root degree");
        v.require(t.graph.edge_count() + 1 == static_cast<std::size_t>(t.graph.size()), at + " is not a tree");
        std::vector<int> dist;
        int deepest = depth_by_bfs(t.graph, t.root, dist);
        v.require(deepest == 2 * (n - 1), at + " depth " + std::to_string(deepest));
        v.require(t.grandchildren.size() == t.children.size(), at + " grandchild count");
        for (Vertex gc : t.grandchildren) v.require(dist[gc] == 2, at + " grandchild not at depth 2");
    }
    SearchOptions opts;
    opts.time_budget = std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000));
    auto est = empirical_bound(2, opts);
    v.require(est.lower >= Rational(2), "lower bound below 2");
    if (est.witness) v.require(oracle::represents(*est.witness, gen_tree(2).graph), "witness is wrong");
    v.note << "T_2 boundary size in [" << est.lower << ", " << (est.upper ? est.upper->str() : "?") << "] after "
           << est.nodes << " nodes; ";
    v.require(est.exact, "the optimum is not pinned down, so it cannot be matched against an exhaustive search");
    v.note << "the linear lower bound for all n and the hardness theorems are beyond desk scale";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> allowed;
    double tree_budget = 20;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--allow-fail" && i + 1 < argc) {
            allowed.insert(std::stoi(argv[++i]));
        } else if (a == "--tree-seconds" && i + 1 < argc) {
            tree_budget = std::stod(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--allow-fail N]... [--tree-seconds S]\n";
            return 64;
        }
    }
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"canonicalization bound", criterion1},
        {"granularity tightness on K_{1,4}", criterion2},
        {"recognizers agree with the enumerators", criterion3},
        {"clause case analysis and templates", criterion4},
        {"reduction structure", criterion5},
        {"satisfiability link at desk scale", criterion6},
        {"tree bound base case", [&] { return criterion7(tree_budget); }},
    };
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.note << "threw: " << e.what();
        }
        std::cout << (v.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << criteria[i].first << ": " << v.note.str()
                  << std::endl;
        if (!v.pass && !allowed.count(id)) ++unexpected;
    }
    return unexpected;
}
