#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridlab/graph.hpp"
#include "gridlab/rational.hpp"

namespace gridlab {

enum class Orientation { Horizontal, Vertical };

inline char orientation_char(Orientation o) { return o == Orientation::Horizontal ? 'H' : 'V'; }

struct Point {
    Rational x;
    Rational y;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned closed segment. The anchor is the left endpoint of a
/// horizontal segment and the bottom endpoint of a vertical one.
struct Segment {
    Orientation orientation = Orientation::Horizontal;
    Point anchor;
    Rational length{1};

    static Segment horizontal(Rational x, Rational y, Rational len = Rational(1)) {
        return {Orientation::Horizontal, {x, y}, len};
    }
    static Segment vertical(Rational x, Rational y, Rational len = Rational(1)) {
        return {Orientation::Vertical, {x, y}, len};
    }

    [[nodiscard]] bool is_horizontal() const { return orientation == Orientation::Horizontal; }
    [[nodiscard]] Point end() const {
        return is_horizontal() ? Point{anchor.x + length, anchor.y} : Point{anchor.x, anchor.y + length};
    }
    /// Coordinate shared by every point of the segment (y for H, x for V).
    [[nodiscard]] const Rational& fixed() const { return is_horizontal() ? anchor.y : anchor.x; }
    /// Start of the varying coordinate (x for H, y for V).
    [[nodiscard]] const Rational& start() const { return is_horizontal() ? anchor.x : anchor.y; }
    [[nodiscard]] Rational stop() const { return start() + length; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// True iff the segments are perpendicular and share a point. Parallel
/// segments never intersect in this model.
bool intersects(const Segment& a, const Segment& b);

/// Vertex-indexed segments (vertex v is segments[v]).
struct Representation {
    std::vector<Segment> segments;
    bool unit_mode = true;

    [[nodiscard]] int size() const { return static_cast<int>(segments.size()); }
    [[nodiscard]] bool empty() const { return segments.empty(); }
    const Segment& operator[](Vertex v) const { return segments.at(static_cast<std::size_t>(v)); }
    Segment& operator[](Vertex v) { return segments.at(static_cast<std::size_t>(v)); }

    friend bool operator==(const Representation&, const Representation&) = default;
};

/// Invariant violations: non-positive lengths, non-unit lengths in unit mode,
/// and pairs of parallel segments that share a point. Empty means valid.
std::vector<std::string> validate(const Representation& rep);
/// Throws InvalidRepresentation with the first violation.
void require_valid(const Representation& rep);

/// Intersection graph on the same vertex ids.
Graph extract_graph(const Representation& rep);

struct Mismatch {
    enum class Kind {
        MissingIntersection,   ///< edge in the graph, segments disjoint
        SpuriousIntersection,  ///< segments intersect, no edge in the graph
    };
    Kind kind;
    Vertex u;
    Vertex v;
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
    std::vector<Mismatch> mismatches;
    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

/// Compares adjacency of `g` against the intersections of `rep`. Throws
/// VertexMismatch if the vertex counts differ.
VerificationReport verify(const Representation& rep, const Graph& g);

struct Box {
    Rational xmin, ymin, xmax, ymax;
    [[nodiscard]] Rational width() const { return xmax - xmin; }
    [[nodiscard]] Rational height() const { return ymax - ymin; }
};

Box bounding_box(const Representation& rep);
/// Semiperimeter of the bounding box. Throws EmptyRepresentation.
Rational boundary_size(const Representation& rep);

std::string describe(const Mismatch& m);

}  // namespace gridlab
