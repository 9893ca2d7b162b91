#include <doctest.h>

#include "gridlab/canonical.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/random.hpp"

using namespace gridlab;

namespace {
Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

std::vector<Vertex> order_of(const Representation& rep, Axis axis) {
    std::vector<Vertex> out;
    for (auto& [v, pos] : sweep_schedule(rep, axis).ordered_events) out.push_back(v);
    return out;
}
}  // namespace

TEST_CASE("perturbation separates ties and keeps the graph") {
    Representation rep{{Segment::horizontal(0, 0), Segment::horizontal(2, 0), Segment::vertical(1, -1)}};
    auto out = perturb_to_general_position(rep);
    CHECK(out[0].anchor.y != out[1].anchor.y);
    CHECK(in_general_position(out, Axis::X));
    CHECK(in_general_position(out, Axis::Y));
    CHECK(extract_graph(out) == extract_graph(rep));

    Representation general{{Segment::horizontal(0, 0), Segment::vertical(q(1, 2), q(-1, 3))}};
    CHECK(perturb_to_general_position(general) == general);
}

TEST_CASE("sweep places the first interval at [-1, 0]") {
    Representation one{{Segment::horizontal(q(5, 3), 7)}};
    auto out = sweep_axis(one, Axis::X);
    CHECK(out[0].anchor.x == q(-1));
    CHECK(out[0].end().x == q(0));
}

TEST_CASE("disjoint intervals advance by 1 + 1/n") {
    Representation two{{Segment::horizontal(0, 0), Segment::horizontal(3, q(1, 2))}};
    auto out = sweep_axis(two, Axis::X);
    CHECK(out[1].anchor.x == out[0].anchor.x + 1 + q(1, 2));
}

TEST_CASE("collinear disjoint segments fit in n+1") {
    for (int n = 1; n <= 8; ++n) {
        Representation rep;
        for (int i = 0; i < n; ++i) rep.segments.push_back(Segment::horizontal(3 * i, q(i, 10)));
        auto out = sweep_axis(rep, Axis::X);
        CHECK(bounding_box(out).width() <= q(n + 1));
    }
}

TEST_CASE("sweep preconditions") {
    Representation tied{{Segment::horizontal(0, 0), Segment::vertical(0, -1)}};
    CHECK_THROWS_AS(sweep_axis(tied, Axis::X), NotGeneralPosition);
    Representation gig{{Segment::horizontal(0, 0, 2)}, false};
    CHECK_THROWS_AS(sweep_axis(gig, Axis::X), NotUnitMode);
}

TEST_CASE("K_{1,4} canonicalizes into a 6x6 grid at granularity 1/5") {
    Representation star{{Segment::horizontal(0, 0), Segment::vertical(0, -1), Segment::vertical(q(1, 3), 0),
                         Segment::vertical(q(2, 3), q(-1, 2)), Segment::vertical(1, -1)}};
    auto out = canonicalize(star);
    CHECK(check_canonical(out).ok());
    CHECK(extract_graph(out) == extract_graph(star));
    for (const auto& s : out.segments) {
        CHECK(s.anchor.x.is_multiple_of_inverse(5));
        CHECK(s.anchor.y.is_multiple_of_inverse(5));
    }
}

TEST_CASE("check_canonical flags clashes and wrong granularity") {
    Representation rep{{Segment::horizontal(0, 0), Segment::horizontal(2, q(1, 2))}};
    auto c = check_canonical(rep);
    CHECK_FALSE(c.ok());
    REQUIRE(c.clashing_pairs.size() == 1);
    CHECK(c.clashing_pairs[0] == std::pair<Vertex, Vertex>{0, 1});

    Representation coarse{{Segment::horizontal(q(1, 3), 0), Segment::vertical(q(1, 2), q(-1, 2))}};
    CHECK_FALSE(check_canonical(coarse).ok());
    CHECK(check_canonical(Representation{{Segment::horizontal(0, 0)}}).ok());
}

TEST_CASE("random arrangements canonicalize, keep their graph and endpoint order") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + trial % 9;
        auto rep = random_unit_arrangement(n, rng);
        auto out = canonicalize(rep);
        auto check = check_canonical(out);
        INFO("trial " << trial);
        CHECK(check.ok());
        CHECK(extract_graph(out) == extract_graph(rep));
        CHECK(boundary_size(out) <= q(2 * (n + 1)));
        auto general = perturb_to_general_position(rep);
        CHECK(order_of(out, Axis::X) == order_of(general, Axis::X));
        CHECK(order_of(out, Axis::Y) == order_of(general, Axis::Y));
        auto again = canonicalize(out);
        CHECK(check_canonical(again).ok());
        CHECK(extract_graph(again) == extract_graph(rep));
    }
}
