#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridlab/geometry.hpp"
#include "gridlab/graph.hpp"
#include "gridlab/rational.hpp"

namespace gridlab {

struct Literal {
    int var = 0;  ///< 0-based variable id
    bool positive = true;
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// 3-SAT instance with a rotation system on its variable-clause incidence
/// graph. All ids are 0-based; rotations list neighbours clockwise.
struct SatInstance {
    int var_count = 0;
    std::vector<std::vector<Literal>> clauses;
    std::vector<std::vector<int>> var_rotation;     ///< clause ids around each variable
    std::vector<std::vector<int>> clause_rotation;  ///< variable ids around each clause
    /// Optional straight-line embedding. Either every variable and clause has
    /// a position or none does.
    std::vector<std::optional<Point>> var_position;
    std::vector<std::optional<Point>> clause_position;
    /// Accept variables with fewer than three occurrences.
    bool relaxed = false;

    [[nodiscard]] int clause_count() const { return static_cast<int>(clauses.size()); }
    [[nodiscard]] bool has_embedding() const;
    /// Literal of `var` in clause `c`, if any.
    [[nodiscard]] std::optional<Literal> literal_in(int c, int var) const;

    friend bool operator==(const SatInstance&, const SatInstance&) = default;
};

struct InstanceReport {
    std::vector<std::string> violations;
    bool relaxed = false;  ///< some variable relied on relaxed mode
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

InstanceReport validate_instance(const SatInstance& inst);

/// Fills both rotations from the embedding, clockwise with y pointing up.
/// Throws InvalidInstance without a complete embedding.
void derive_rotations(SatInstance& inst);

/// Red/blue labels of a clause gadget. Pair i belongs to the i-th variable in
/// clockwise order; each pair is a cycle vertex plus a pendant vertex.
struct ClauseColoring {
    std::array<int, 3> var{};
    std::array<bool, 3> positive{};
    std::array<bool, 3> cycle_red{};  ///< the cycle vertex of pair i is red
    friend bool operator==(const ClauseColoring&, const ClauseColoring&) = default;
};

/// Throws ArityError unless the clause has exactly three literals whose
/// variables match the rotation.
ClauseColoring color_clause(const std::vector<Literal>& clause, const std::vector<int>& rotation);

enum class Variant { UGIG5, GIG4, STRING8 };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& name);

enum class Role {
    VarA1,
    VarA2,
    ClauseCycle,
    ClausePairRed,
    ClausePairBlue,
    RedPathInner,
    BluePathInner,
    AnchorPathInner,
    DummyPathInner,
    SplitterC,
};

std::string role_name(Role r);
Role parse_role(const std::string& name);

struct ClauseGadget {
    Graph graph;
    std::vector<Role> roles;
    ClauseColoring coloring;
    std::array<Vertex, 3> cycle{};    ///< cycle vertex of each pair
    std::array<Vertex, 3> pendant{};  ///< pendant vertex of each pair
    /// Inner vertices of the cycle arc from pair i to pair i+1 (mod 3).
    std::array<std::vector<Vertex>, 3> arcs;

    [[nodiscard]] Vertex red_port(int i) const { return coloring.cycle_red[i] ? cycle[i] : pendant[i]; }
    [[nodiscard]] Vertex blue_port(int i) const { return coloring.cycle_red[i] ? pendant[i] : cycle[i]; }
};

/// Throws GirthTooSmall for g < 3 and ArityError for malformed clauses.
ClauseGadget build_clause_gadget(const std::vector<Literal>& clause, const std::vector<int>& rotation, int g,
                                 Variant variant = Variant::UGIG5);

/// Occurrence k (0-based, clockwise from the first rotation entry) of a
/// variable: two paths from the variable gadget to the clause ports.
struct GFOccurrence {
    int var = 0;
    int k = 0;
    int clause = -1;  ///< -1 for a dummy occurrence
    int slot = -1;    ///< pair index inside the clause
    Vertex red_source = -1;   ///< variable-side vertex the red path starts at
    Vertex blue_source = -1;
    Vertex red_port = -1;     ///< clause-side vertex the red path ends at
    Vertex blue_port = -1;
    std::vector<Vertex> red_path;   ///< inner vertices, source side first
    std::vector<Vertex> blue_path;
};

struct GFVariable {
    /// One crossing pair per occurrence slot; UGIG5 uses a single pair.
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::optional<Vertex> splitter;
    /// Paths between gadget vertices (ladder rungs or splitter spokes):
    /// endpoints then inner vertices.
    std::vector<std::pair<std::pair<Vertex, Vertex>, std::vector<Vertex>>> anchors;
    /// Dummy occurrence connector paths, same format.
    std::vector<std::pair<std::pair<Vertex, Vertex>, std::vector<Vertex>>> connectors;
    std::vector<int> occurrences;  ///< indices into GFGraph::occurrences
};

struct GFGraph {
    Graph graph;
    std::vector<Role> roles;
    /// (variable, k) -> (red path start, blue path start), path endpoints
    /// adjacent to the variable gadget.
    std::map<std::pair<int, int>, std::pair<Vertex, Vertex>> occurrence_index;
    int girth_param = 0;
    Variant variant = Variant::UGIG5;

    SatInstance instance;
    std::vector<GFVariable> variables;
    std::vector<ClauseGadget> clauses;  ///< vertex ids are global
    std::vector<GFOccurrence> occurrences;
};

/// Builds G(F). Throws InvalidInstance if validate_instance reports problems
/// and GirthTooSmall for g < 3.
GFGraph build_gf(const SatInstance& inst, int g, Variant variant);

/// Occurrence path length (edges from the variable gadget to the clause port)
/// before parity adjustment.
int proportional_length(const SatInstance& inst, int var, int clause, int g);

/// Clockwise pair order flags in the all-positive normal form: bit i set iff
/// pair i has red before blue, which is iff literal i is true.
struct OrderingTriple {
    std::array<bool, 3> red_before_blue{};
    [[nodiscard]] int index() const { return red_before_blue[0] | red_before_blue[1] << 1 | red_before_blue[2] << 2; }
    static OrderingTriple from_index(int t);
    friend bool operator==(const OrderingTriple&, const OrderingTriple&) = default;
};

struct ClauseFeasibility {
    bool feasible = false;
    int template_id = 0;        ///< witness: template number when feasible
    std::vector<int> halves;    ///< witness: half chosen per attachment
    long long completions = 0;  ///< completions examined
    std::string obstruction;    ///< empty when feasible
};

/// Decides whether the clause gadget admits a crossing-preserving planar
/// drawing with the given orders of its occurrence pairs. Every crossing
/// pair is a plus whose four half-segments are the only attachment points;
/// all completions are enumerated.
ClauseFeasibility clause_ordering_feasible(const OrderingTriple& t);

/// Orderings the variable assignment induces on each clause.
OrderingTriple ordering_for(const SatInstance& inst, int clause, const std::vector<bool>& assignment);
bool satisfies(const SatInstance& inst, const std::vector<bool>& assignment);

}  // namespace gridlab
