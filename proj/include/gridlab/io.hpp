#pragma once

#include <string>
#include <vector>

#include "gridlab/geometry.hpp"
#include "gridlab/graph.hpp"
#include "gridlab/rational.hpp"
#include "gridlab/reduction.hpp"

namespace gridlab {

/// "n m" then m lines "u v" (0-based). Lines starting with '#' are comments.
/// Throws ParseError, citing both lines for a repeated edge.
Graph parse_graph(const std::string& text);
std::string emit_graph(const Graph& g);

/// One line per vertex: "id H|V x y len" with rationals "p/q", anchor at
/// the left or bottom endpoint. The representation is in unit mode iff every
/// length is 1.
Representation parse_rep(const std::string& text);
std::string emit_rep(const Representation& rep);

/// DIMACS CNF plus "r v c1 c2 ..." (clauses clockwise around v),
/// "q c v1 v2 v3" (variables clockwise around c), "e v x y" and "f c x y"
/// (variable and clause positions) and "x relaxed". Ids are 1-based.
/// Rotations that contradict each other or the clauses are reported with
/// both line numbers.
SatInstance parse_instance(const std::string& text);
std::string emit_instance(const SatInstance& inst);

/// "id role" per line, role names as in role_name.
std::vector<Role> parse_roles(const std::string& text, int n);
std::string emit_roles(const std::vector<Role>& roles);

struct SvgOptions {
    Rational scale{64};
};

/// One line element per segment, y pointing up, classes from the roles when
/// given. Equal inputs give byte-identical output.
std::string render_svg(const Representation& rep, const std::vector<Role>& roles = {}, const SvgOptions& opts = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace gridlab
