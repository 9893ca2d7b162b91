#include <doctest.h>

#include <algorithm>

#include "../support/instances.hpp"
#include "../support/oracles.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/reduction.hpp"

using namespace gridlab;

TEST_CASE("validate_instance") {
    auto inst = instances::fig3();
    CHECK(validate_instance(inst).ok());
    CHECK(inst.var_rotation[0].size() == 3);
    CHECK(inst.clause_rotation[2].size() == 3);

    auto few = instances::single_clause(0);
    few.relaxed = false;
    auto rep = validate_instance(few);
    CHECK(rep.violations.size() == 3);
    few.relaxed = true;
    rep = validate_instance(few);
    CHECK(rep.ok());
    CHECK(rep.relaxed);

    auto four = instances::fig3();
    four.clauses.push_back({{0, true}, {1, true}, {3, true}});
    four.clause_position.push_back(Point{2, 2});
    derive_rotations(four);
    CHECK(validate_instance(four).ok());

    auto five = instances::fig3();
    for (int i = 0; i < 2; ++i) {
        five.clauses.push_back({{0, true}, {1, i == 0}, {2, false}});
        five.clause_position.push_back(Point{2 + i, 2});
    }
    derive_rotations(five);
    rep = validate_instance(five);
    CHECK(std::any_of(rep.violations.begin(), rep.violations.end(),
                      [](const std::string& s) { return s.find("occurs 5 times") != std::string::npos; }));

    auto partial = instances::fig3();
    partial.var_position[1].reset();
    CHECK_FALSE(validate_instance(partial).ok());
    CHECK_THROWS_AS(derive_rotations(partial), InvalidInstance);

    auto dup = instances::fig3();
    dup.clauses[0][1].var = 0;
    CHECK_FALSE(validate_instance(dup).ok());
}

TEST_CASE("clause coloring") {
    std::vector<Literal> all_pos{{0, true}, {1, true}, {2, true}};
    auto c = color_clause(all_pos, {0, 1, 2});
    CHECK(c.cycle_red == std::array<bool, 3>{false, false, true});
    auto rotated = color_clause(all_pos, {1, 2, 0});
    CHECK(rotated.var == std::array<int, 3>{1, 2, 0});

    // Negating a literal swaps the colors of its pair and nothing else.
    for (int i = 0; i < 3; ++i) {
        auto neg = all_pos;
        neg[i].positive = false;
        auto d = color_clause(neg, {0, 1, 2});
        for (int j = 0; j < 3; ++j) CHECK((d.cycle_red[j] != c.cycle_red[j]) == (i == j));
        auto gp = build_clause_gadget(all_pos, {0, 1, 2}, 6);
        auto gn = build_clause_gadget(neg, {0, 1, 2}, 6);
        CHECK(gp.red_port(i) == gn.blue_port(i));
    }
    CHECK_THROWS_AS(color_clause({{0, true}, {1, true}}, {0, 1}), ArityError);
    CHECK_THROWS_AS(color_clause(all_pos, {0, 1, 3}), ArityError);
}

TEST_CASE("clause gadget") {
    std::vector<Literal> cl{{0, true}, {1, false}, {2, true}};
    for (int g : {3, 6, 11}) {
        auto cg = build_clause_gadget(cl, {0, 1, 2}, g);
        CHECK(oracle::girth(cg.graph) >= g);
        auto colour = oracle::two_colour(cg.graph);
        REQUIRE(colour);
        for (int i = 0; i < 3; ++i) {
            CHECK(cg.graph.has_edge(cg.cycle[i], cg.pendant[i]));
            CHECK(cg.graph.degree(cg.pendant[i]) == 1);
            CHECK((*colour)[cg.red_port(i)] == (*colour)[cg.red_port(0)]);
            CHECK((*colour)[cg.blue_port(i)] != (*colour)[cg.red_port(0)]);
        }
    }
    CHECK_THROWS_AS(build_clause_gadget(cl, {0, 1, 2}, 2), GirthTooSmall);
}

TEST_CASE("build_gf invariants") {
    auto inst = instances::fig3();
    for (Variant variant : {Variant::UGIG5, Variant::GIG4, Variant::STRING8}) {
        for (int g : {6, 12, 20}) {
            auto gf = build_gf(inst, g, variant);
            CAPTURE(variant_name(variant));
            CAPTURE(g);
            CHECK(oracle::girth(gf.graph) >= g);
            auto colour = oracle::two_colour(gf.graph);
            REQUIRE(colour);
            int red_side = -1;
            for (Vertex v = 0; v < gf.graph.size(); ++v) {
                if (gf.roles[v] != Role::ClausePairRed) continue;
                if (red_side < 0) red_side = (*colour)[v];
                CHECK((*colour)[v] == red_side);
            }
            int deg = max_degree(gf.graph);
            if (variant == Variant::UGIG5) CHECK(deg == 5);
            if (variant == Variant::GIG4) CHECK(deg == 4);
            if (variant == Variant::STRING8) CHECK(deg <= 8);
            CHECK(gf.occurrences.size() == 16);  // 12 real, one dummy per variable
            CHECK(gf.occurrence_index.size() == 16);
            for (const auto& v : gf.variables) CHECK(v.connectors.size() == 2);
        }
    }
    CHECK_THROWS_AS(build_gf(inst, 2, Variant::UGIG5), GirthTooSmall);
    auto bad = inst;
    bad.clause_rotation[0] = {0, 1, 3};
    CHECK_THROWS_AS(build_gf(bad, 6, Variant::UGIG5), InvalidInstance);
}

TEST_CASE("vertex count grows linearly") {
    auto inst = instances::fig3();
    for (Variant variant : {Variant::UGIG5, Variant::GIG4, Variant::STRING8}) {
        double a = build_gf(inst, 12, variant).graph.size();
        double b = build_gf(inst, 24, variant).graph.size();
        double c = build_gf(inst, 48, variant).graph.size();
        CHECK((c - b) / (b - a) == doctest::Approx(2.0).epsilon(0.1));
        CHECK(b / a >= 1.8);
        CHECK(b / a <= 2.2);
    }
}

TEST_CASE("relaxed instances use the real occurrence count") {
    auto gf = build_gf(instances::two_clauses(0, 0), 8, Variant::UGIG5);
    CHECK(gf.occurrences.size() == 6);
    for (const auto& v : gf.variables) CHECK(v.connectors.empty());
}

TEST_CASE("clause ordering case analysis") {
    int feasible = 0;
    for (int t = 0; t < 8; ++t) {
        auto r = clause_ordering_feasible(OrderingTriple::from_index(t));
        CAPTURE(t);
        CHECK(r.feasible == (t != 0));
        if (r.feasible) {
            ++feasible;
            CHECK(r.template_id == t);
            CHECK_FALSE(r.halves.empty());
        } else {
            CHECK_FALSE(r.obstruction.empty());
        }
    }
    CHECK(feasible == 7);
}

TEST_CASE("orderings follow the assignment") {
    auto inst = instances::fig3();
    for (int a = 0; a < 16; ++a) {
        std::vector<bool> as{bool(a & 1), bool(a & 2), bool(a & 4), bool(a & 8)};
        bool all_feasible = true;
        for (int c = 0; c < inst.clause_count(); ++c) {
            if (ordering_for(inst, c, as).index() == 0) all_feasible = false;
        }
        CHECK(all_feasible == satisfies(inst, as));
    }
    CHECK(satisfies(inst, {true, true, true, true}));
}
