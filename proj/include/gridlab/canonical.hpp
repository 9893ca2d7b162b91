#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gridlab/geometry.hpp"

namespace gridlab {

enum class Axis { X, Y };

// Left endpoints of the projected unit intervals on one axis, in sweep order.
// A segment perpendicular to the axis projects to a point p, which is
// extended to [p-1, p].
struct SweepSchedule {
    Axis axis = Axis::X;
    std::vector<std::pair<Vertex, Rational>> ordered_events;
};

SweepSchedule sweep_schedule(const Representation& rep, Axis axis);

// Shifts segments by distinct multiples of a small epsilon so that no two
// projected endpoints coincide on either axis. Adjacency is kept intact.
Representation perturb_to_general_position(const Representation& rep);
bool in_general_position(const Representation& rep, Axis axis);

// Re-places every segment along one axis at multiples of 1/n, keeping the
// order of all projected endpoints.
Representation sweep_axis(const Representation& rep, Axis axis);

Representation canonicalize(const Representation& rep);

struct CanonicalCheck {
    std::vector<std::string> violations;
    std::vector<std::pair<Vertex, Vertex>> clashing_pairs;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

CanonicalCheck check_canonical(const Representation& rep);

// Coordinate assigned to a segment by the sweep: the left end of its
// projected unit interval on that axis.
Rational assigned_coordinate(const Segment& s, Axis axis);

}  // namespace gridlab
