#include <doctest.h>

#include <random>
#include <regex>
#include <set>

#include "../support/instances.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/io.hpp"
#include "gridlab/random.hpp"

using namespace gridlab;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

template <class F>
ParseError parse_error(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected ParseError");
    return ParseError("", 0);
}

// Coordinates of every line element, read back with a regex rather than the
// renderer's own formatting code.
std::multiset<std::array<double, 4>> svg_lines(const std::string& svg) {
    static const std::regex line(R"re(<line [^>]*x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)")re");
    std::multiset<std::array<double, 4>> out;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line); it != std::sregex_iterator(); ++it) {
        out.insert({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3]), std::stod((*it)[4])});
    }
    return out;
}

double d(const Rational& r) { return static_cast<double>(r.num()) / static_cast<double>(r.den()); }

}  // namespace

TEST_CASE("representation round trip") {
    Representation rep;
    rep.segments = {Segment::horizontal(q(0), q(1, 3)),      Segment::horizontal(q(2), q(-5, 7)),
                    Segment::vertical(q(1, 2), q(0)),        Segment::vertical(q(-3, 4), q(1, 9)),
                    Segment::horizontal(q(7, 5), q(11, 3)), Segment::vertical(q(4), q(-2))};
    auto text = emit_rep(rep);
    CHECK(parse_rep(text) == rep);
    CHECK(emit_rep(parse_rep(text)) == text);
    CHECK(text.find('.') == std::string::npos);

    Representation general;
    general.unit_mode = false;
    general.segments = {Segment::horizontal(q(0), q(0), q(5, 2)), Segment::vertical(q(1), q(-1), q(3))};
    CHECK(parse_rep(emit_rep(general)) == general);

    std::mt19937_64 rng(11);
    auto sample = random_unit_arrangement(40, rng);
    CHECK(parse_rep(emit_rep(sample)) == sample);
}

TEST_CASE("graph round trip and duplicate edges") {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    CHECK(parse_graph(emit_graph(g)) == g);
    CHECK(parse_graph("# comment\n2 1\n0 1\n") == parse_graph("2 1\n1 0\n"));

    auto e = parse_error([] { parse_graph("3 2\n0 1\n1 0\n"); });
    CHECK(e.line() == 3);
    CHECK(e.other_line() == 2);
    CHECK_THROWS_AS(parse_graph("2 1\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("2 1\n0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("2 2\n0 1\n"), ParseError);
}

TEST_CASE("malformed rationals are rejected, not guessed") {
    for (const char* bad : {"0 H 0.5 0 1\n", "0 H 1/0 0 1\n", "0 H 1/ 0 1\n", "0 H 1//2 0 1\n", "0 H x 0 1\n",
                            "0 H 1/2/3 0 1\n", "0 H 1e3 0 1\n", "0 Q 0 0 1\n", "0 H 0 0\n"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_rep(bad), ParseError);
    }
    auto e = parse_error([] { parse_rep("0 H 0 0 1\n1 V 1/2 abc 1\n"); });
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
    auto dup = parse_error([] { parse_rep("0 H 0 0 1\n0 V 1 1 1\n"); });
    CHECK(dup.other_line() == 1);
    CHECK_THROWS_AS(parse_rep("0 H 0 0 1\n2 V 1 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_rep("0 H 0 0 -1\n"), ParseError);
}

TEST_CASE("instance round trip") {
    for (auto inst : {instances::fig3(), instances::single_clause(5), instances::two_clauses(1, 0b100110)}) {
        auto text = emit_instance(inst);
        CHECK(parse_instance(text) == inst);
        CHECK(emit_instance(parse_instance(text)) == text);
    }
    // Rotations follow from the positions when they are not listed.
    auto bare = parse_instance("p cnf 3 1\nx relaxed\n1 2 3 0\nf 1 0 0\ne 1 0 1\ne 2 1 -1\ne 3 -1 -1\n");
    CHECK(bare == instances::single_clause(0));
}

TEST_CASE("inconsistent rotation cites both lines") {
    // Variable 1 lists clause 1, but clause 1's rotation leaves it out.
    const char* text =
        "p cnf 3 2\n"      // 1
        "1 2 3 0\n"        // 2
        "-1 2 -3 0\n"      // 3
        "r 1 1 2\n"        // 4
        "q 1 2 3 3\n";     // 5
    CHECK_THROWS_AS(parse_instance(text), ParseError);

    const char* omitted =
        "p cnf 4 2\n"      // 1
        "1 2 3 0\n"        // 2
        "1 2 4 0\n"        // 3
        "q 1 2 3 4\n"      // 4
        "r 1 1 2\n";       // 5
    auto e = parse_error([&] { parse_instance(omitted); });
    CHECK(std::set{e.line(), e.other_line()} == std::set{4, 5});

    const char* missing =
        "p cnf 3 1\n"      // 1
        "1 2 3 0\n"        // 2
        "r 1 1\n"          // 3
        "q 1 2 3 1\n"      // 4
        "r 2 1\n"          // 5
        "r 3 1\n";         // 6
    CHECK_NOTHROW(parse_instance(missing));

    const char* omits_var =
        "p cnf 3 1\n"      // 1
        "1 2 3 0\n"        // 2
        "r 1 1\n"          // 3
        "q 1 2 3\n";       // 4
    auto f = parse_error([&] { parse_instance(omits_var); });
    CHECK(std::set{f.line(), f.other_line()} == std::set{3, 4});
}

TEST_CASE("roles round trip") {
    auto gf = build_gf(instances::single_clause(1), 12, Variant::UGIG5);
    CHECK(parse_roles(emit_roles(gf.roles), gf.graph.size()) == gf.roles);
    CHECK_THROWS_AS(parse_roles("0 nonsense\n", 1), ParseError);
}

TEST_CASE("svg of a single horizontal segment") {
    Representation rep;
    rep.segments = {Segment::horizontal(q(1, 4), q(1, 2))};
    auto svg = render_svg(rep);
    auto lines = svg_lines(svg);
    REQUIRE(lines.size() == 1);
    CHECK(*lines.begin() == std::array<double, 4>{16, -32, 80, -32});
    // The view box holds the segment with half a unit to spare.
    CHECK(svg.find("viewBox=\"-16 -64 128 64\"") != std::string::npos);
    CHECK(svg_lines(render_svg(rep, {}, {q(8)})) == std::multiset<std::array<double, 4>>{{2, -4, 10, -4}});
}

TEST_CASE("svg of an empty representation") {
    auto svg = render_svg(Representation{});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg_lines(svg).empty());
}

TEST_CASE("svg of a clause template matches its representation file") {
    auto rep = parse_rep(read_file(std::string(GRIDLAB_DATA_DIR) + "/templates/t5.rep"));
    auto roles = parse_roles(read_file(std::string(GRIDLAB_DATA_DIR) + "/templates/t5.roles"), rep.size());
    auto svg = render_svg(rep, roles);
    std::multiset<std::array<double, 4>> expected;
    for (const auto& s : rep.segments) {
        auto e = s.end();
        expected.insert({d(s.anchor.x * 64), d(-s.anchor.y * 64), d(e.x * 64), d(-e.y * 64)});
    }
    CHECK(svg_lines(svg) == expected);
    CHECK(svg == render_svg(parse_rep(emit_rep(rep)), roles));
    CHECK(svg.find("class=\"seg red-path\"") != std::string::npos);
    CHECK(svg.find("class=\"seg blue-path\"") != std::string::npos);
}
