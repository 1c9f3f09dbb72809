#include "ltf/newton.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltf {

NewtonPolygon newton_polygon(const std::vector<std::pair<long long, Rat>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("newton_polygon: need at least two finite points");
    NewtonPolygon np;
    np.points = points;
    std::sort(np.points.begin(), np.points.end(),
              [](const auto& a, const auto& b) {
                  return a.first < b.first || (a.first == b.first && a.second < b.second);
              });
    // keep only the lowest point per abscissa
    std::vector<std::pair<long long, Rat>> pts;
    for (const auto& pt : np.points)
        if (pts.empty() || pts.back().first != pt.first) pts.push_back(pt);
    if (pts.size() < 2)
        throw std::invalid_argument("newton_polygon: need at least two distinct indices");

    // monotone-chain lower hull; cross product in exact rationals
    auto keeps_convex = [](const std::pair<long long, Rat>& a,
                           const std::pair<long long, Rat>& b,
                           const std::pair<long long, Rat>& c) {
        // drop b when it is on or above the segment a-c
        Rat lhs = (b.second - a.second) * Rat(c.first - a.first);
        Rat rhs = (c.second - a.second) * Rat(b.first - a.first);
        return lhs < rhs;
    };
    std::vector<std::pair<long long, Rat>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && !keeps_convex(hull[hull.size() - 2], hull.back(), pt))
            hull.pop_back();
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (size_t k = 1; k < hull.size(); ++k) {
        long long dx = hull[k].first - hull[k - 1].first;
        np.segments.push_back({(hull[k].second - hull[k - 1].second) / Rat(dx), dx});
    }
    return np;
}

std::vector<std::pair<Rat, long long>> NewtonPolygon::root_valuations() const {
    std::vector<std::pair<Rat, long long>> out;
    // roots ordered by increasing valuation = reversed segment order
    for (auto it = segments.rbegin(); it != segments.rend(); ++it)
        out.emplace_back(-it->slope, it->length);
    return out;
}

} // namespace ltf
