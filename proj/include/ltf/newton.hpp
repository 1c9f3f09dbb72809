#pragma once

// Newton polygons: the lower convex hull of the points (i, ord(c_i)) of a
// polynomial or truncated series.  Slopes increase strictly along the hull;
// a segment of slope -v and horizontal length l certifies l roots of
// valuation v (with multiplicity), which is all the torsion and
// disk-preimage analysis here ever needs.

#include "ltf/rational.hpp"

#include <vector>

namespace ltf {

struct NewtonSegment {
    Rat slope;
    long long length;  // horizontal span
};

struct NewtonPolygon {
    std::vector<std::pair<long long, Rat>> points;    // finite input points
    std::vector<std::pair<long long, Rat>> vertices;  // lower hull subsequence
    std::vector<NewtonSegment> segments;

    /// (valuation, multiplicity) pairs, valuations increasing.
    std::vector<std::pair<Rat, long long>> root_valuations() const;
};

/// Lower convex hull of the finite points.  Throws if fewer than two
/// finite points are supplied.
NewtonPolygon newton_polygon(const std::vector<std::pair<long long, Rat>>& points);

} // namespace ltf
