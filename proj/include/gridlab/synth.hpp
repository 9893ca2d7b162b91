#pragma once

#include <vector>

#include "gridlab/geometry.hpp"
#include "gridlab/graph.hpp"
#include "gridlab/reduction.hpp"

namespace gridlab {

struct SynthOptions {
    /// Units per embedding unit; 0 picks the largest scale at which no
    /// occurrence path is stretched too far.
    double scale = 0;
    /// Scale reductions tried after a failed attempt.
    int attempts = 4;
};

/// Unit representation of gf.graph in which every occurrence pair is
/// ordered red-before-blue clockwise at its variable iff the variable is
/// true. Throws UnsupportedVariant unless gf.variant is UGIG5,
/// UnsatisfiableAssignment if the assignment falsifies a clause and
/// RoutingFailure if no layout is found.
Representation synth_representation(const GFGraph& gf, const std::vector<bool>& assignment,
                                    const SynthOptions& opts = {});

/// Clause gadget of an all-positive clause with a short path hanging from
/// each port, drawn with the given pair orders.
struct ClauseTemplate {
    Graph graph;
    std::vector<Role> roles;
    Representation rep;
    OrderingTriple triple;
    ClauseGadget gadget;
    /// Stub paths per pair: red path then blue path, port side first.
    std::vector<std::vector<Vertex>> stubs;
};

ClauseTemplate clause_template(const OrderingTriple& t, int g, int stub_length = 10);

/// Clockwise order of the two stub paths of pair i in a template: true iff
/// the red stub comes first going clockwise around the clause.
bool template_red_first(const ClauseTemplate& t, int pair);

}  // namespace gridlab
