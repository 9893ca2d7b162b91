#include <doctest.h>

#include "../support/oracles.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/recognize.hpp"

using namespace gridlab;

namespace {

Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

oracle::UnitGrid canonical_grid(int n, std::optional<int> extent = std::nullopt) {
    return {n, n, -1, extent ? *extent : n + 1, true};
}

}  // namespace

TEST_CASE("quick_reject") {
    auto k3 = quick_reject(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    REQUIRE(k3);
    CHECK(k3->verdict == QuickVerdict::NonBipartite);

    Graph petersen(10);
    for (int i = 0; i < 5; ++i) {
        petersen.add_edge(i, (i + 1) % 5);
        petersen.add_edge(i, i + 5);
        petersen.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    auto p = quick_reject(petersen);
    REQUIRE(p);
    CHECK(p->verdict == QuickVerdict::NonBipartite);

    auto c6 = quick_reject(cycle(6));
    REQUIRE(c6);
    CHECK(c6->verdict == QuickVerdict::TrivialAccept);
    CHECK(verify(*c6->rep, cycle(6)).ok());
    CHECK_FALSE(quick_reject(star(3)));
}

TEST_CASE("degree-two constructions verify for paths, cycles and mixtures") {
    for (int len = 4; len <= 40; len += 2) CHECK(verify(degree_two_representation(cycle(len)), cycle(len)).ok());
    Graph mixed(23);
    for (int i = 0; i < 5; ++i) mixed.add_edge(i, i + 1);        // path of 6
    for (int i = 6; i < 16; ++i) mixed.add_edge(i, i == 15 ? 6 : i + 1);  // C_10
    mixed.add_edge(16, 17);                                       // K_2, then isolated vertices
    auto rep = degree_two_representation(mixed);
    CHECK(validate(rep).empty());
    CHECK(verify(rep, mixed).ok());
}

TEST_CASE("K_{1,4} is accepted with pairwise distinct leaf crossings") {
    auto res = recognize_ugig(star(4));
    REQUIRE(res.outcome == Outcome::Accept);
    CHECK(verify(*res.rep, star(4)).ok());
    std::set<Rational> along;
    for (int i = 1; i <= 4; ++i) along.insert((*res.rep)[i].fixed());
    CHECK(along.size() == 4);
}

TEST_CASE("recognize_gig basics") {
    Graph k33(6);
    for (int h = 0; h < 3; ++h)
        for (int v = 3; v < 6; ++v) k33.add_edge(h, v);
    auto a = recognize_gig(k33);
    REQUIRE(a.outcome == Outcome::Accept);
    CHECK(verify(*a.rep, k33).ok());
    CHECK(recognize_gig(Graph(3, {{0, 1}, {1, 2}, {0, 2}})).outcome == Outcome::Reject);
    auto s = recognize_gig(star(6));
    REQUIRE(s.outcome == Outcome::Accept);
    CHECK(verify(*s.rep, star(6)).ok());
}

TEST_CASE("budget exhaustion is reported, not collapsed into reject") {
    SearchOptions tiny;
    tiny.node_budget = 3;
    auto res = recognize_ugig(star(4), tiny);
    CHECK(res.outcome == Outcome::BudgetExceeded);
    CHECK_THROWS_AS(min_boundary(star(3), Rational(100), tiny), BudgetExceeded);
}

TEST_CASE("symmetry pruning never changes the answer on up to 4 vertices") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : oracle::graphs_up_to_iso(n)) {
            if (!bipartition(g)) continue;
            for (std::optional<int> extent : {std::optional<int>{}, std::optional<int>{0}, std::optional<int>{1}}) {
                SearchOptions on, off;
                on.grid_extent_override = off.grid_extent_override = extent;
                off.symmetry_pruning = false;
                CHECK(recognize_ugig(g, on).outcome == recognize_ugig(g, off).outcome);
            }
        }
    }
}

TEST_CASE("restricted extents agree with the naive enumerator") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto& g : oracle::graphs_up_to_iso(n)) {
            if (!bipartition(g)) continue;
            for (int extent : {0, 1}) {
                SearchOptions opts;
                opts.grid_extent_override = extent;
                auto res = recognize_ugig(g, opts);
                bool naive = oracle::find_unit_rep(g, canonical_grid(n, extent)).has_value();
                CHECK((res.outcome == Outcome::Accept) == naive);
                if (res.rep) CHECK(verify(*res.rep, g).ok());
            }
        }
    }
}

TEST_CASE("min_boundary on tiny graphs") {
    auto one = min_boundary(Graph(1), Rational(10));
    REQUIRE(one);
    CHECK(one->size == Rational(1));
    auto k2 = min_boundary(Graph(2, {{0, 1}}), Rational(10));
    REQUIRE(k2);
    CHECK(k2->size == Rational(2));
    CHECK_FALSE(min_boundary(Graph(2, {{0, 1}}), Rational(3, 2)));
    for (const auto& g : {star(2), star(3), cycle(4), Graph(3, {{0, 1}})}) {
        auto best = min_boundary(g, Rational(20));
        REQUIRE(best);
        CHECK(verify(best->rep, g).ok());
        CHECK(boundary_size(best->rep) == best->size);
        auto naive = oracle::min_unit_boundary(g, canonical_grid(g.size()));
        REQUIRE(naive);
        CHECK(*naive == best->size);
    }
}
