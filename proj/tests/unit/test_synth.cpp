#include <doctest.h>

#include "../support/instances.hpp"
#include "../support/oracles.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/synth.hpp"

using namespace gridlab;

TEST_CASE("clause templates realize every pair order") {
    for (int t = 0; t < 8; ++t) {
        auto triple = OrderingTriple::from_index(t);
        auto tp = clause_template(triple, 40);
        CAPTURE(t);
        CHECK(verify(tp.rep, tp.graph).ok());
        for (int i = 0; i < 3; ++i) CHECK(template_red_first(tp, i) == triple.red_before_blue[i]);
    }
    CHECK(oracle::represents(clause_template(OrderingTriple::from_index(5), 40).rep,
                             clause_template(OrderingTriple::from_index(5), 40).graph));
}

TEST_CASE("synthesis on a single clause") {
    auto inst = instances::single_clause(2);
    auto gf = build_gf(inst, 300, Variant::UGIG5);
    int built = 0;
    for (int a = 0; a < 8; ++a) {
        std::vector<bool> as{bool(a & 1), bool(a & 2), bool(a & 4)};
        CAPTURE(a);
        if (!satisfies(inst, as)) {
            CHECK_THROWS_AS(synth_representation(gf, as), UnsatisfiableAssignment);
            continue;
        }
        auto rep = synth_representation(gf, as);
        CHECK(verify(rep, gf.graph).ok());
        ++built;
    }
    CHECK(built == 7);
}

TEST_CASE("synthesized representation passes the pairwise oracle") {
    auto inst = instances::two_clauses(1, 0b100110);
    auto gf = build_gf(inst, 300, Variant::UGIG5);
    std::vector<bool> as{true, false, true, false};
    REQUIRE(satisfies(inst, as));
    auto rep = synth_representation(gf, as);
    CHECK(oracle::represents(rep, gf.graph));
}

TEST_CASE("synthesis errors") {
    auto inst = instances::single_clause(0);
    auto gig = build_gf(inst, 300, Variant::GIG4);
    CHECK_THROWS_AS(synth_representation(gig, {true, true, true}), UnsupportedVariant);
    auto small = build_gf(inst, 12, Variant::UGIG5);
    CHECK_THROWS_AS(synth_representation(small, {true, true, true}), RoutingFailure);
    CHECK_THROWS_AS(synth_representation(small, {false, false, false}), UnsatisfiableAssignment);
    auto fig3 = build_gf(instances::fig3(), 300, Variant::UGIG5);
    CHECK_THROWS_AS(synth_representation(fig3, {true, true, true, true}), RoutingFailure);
}
