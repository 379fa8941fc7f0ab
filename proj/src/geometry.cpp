#include "triwave/geometry.hpp"

#include <algorithm>
#include <utility>

namespace triwave {

namespace {

double max_pairwise_distance(Vec2 p0, Vec2 p1, Vec2 p2) {
    return std::max({norm(p1 - p0), norm(p2 - p1), norm(p0 - p2)});
}

}  // namespace

Triangle::Triangle(Vec2 p0, Vec2 p1, Vec2 p2) : v_{p0, p1, p2} {
    const double twice_area = cross(p1 - p0, p2 - p0);
    const double diam = max_pairwise_distance(p0, p1, p2);
    if (std::abs(twice_area) < 1e-12 * diam * diam) {
        throw CollinearVertices("triangle vertices are collinear or coincident");
    }
    if (twice_area < 0.0) {
        std::swap(v_[1], v_[2]);
    }
    area_ = std::abs(twice_area) / 2.0;
}

Vec2 Triangle::centroid() const {
    return {(v_[0].x + v_[1].x + v_[2].x) / 3.0, (v_[0].y + v_[1].y + v_[2].y) / 3.0};
}

Triangle triangle_from_vertices(Vec2 p0, Vec2 p1, Vec2 p2) {
    return Triangle(p0, p1, p2);
}

double altitude(const Triangle& tri, int side) {
    return 2.0 * tri.area() / tri.side_length(side);
}

double longest_side(const Triangle& tri) {
    return std::max({tri.side_length(0), tri.side_length(1), tri.side_length(2)});
}

SideFrame side_frame(const Triangle& tri, int side) {
    SideFrame f;
    f.side = side;
    f.origin = tri.vertex(side);
    const Vec2 s0 = tri.side_start(side);
    const Vec2 s1 = tri.side_end(side);

    // Foot of the perpendicular from the opposite vertex onto the side's line.
    const Vec2 d = s1 - s0;
    const double t = dot(f.origin - s0, d) / dot(d, d);
    const Vec2 foot = s0 + t * d;

    f.altitude = norm(foot - f.origin);
    f.axis_x = (1.0 / f.altitude) * (foot - f.origin);
    f.axis_y = perp(f.axis_x);

    const double y0 = dot(s0 - f.origin, f.axis_y);
    const double y1 = dot(s1 - f.origin, f.axis_y);
    const double y_lo = std::min(y0, y1);
    const double y_hi = std::max(y0, y1);
    f.offset_below = -y_lo;
    f.offset_above = y_hi;

    const double tol = 1e-9 * tri.side_length(side);
    const double m = std::min(f.offset_below, f.offset_above);
    if (m < -tol) {
        f.kind = SideKind::Obtuse;
    } else if (m <= tol) {
        f.kind = SideKind::Right;
    } else {
        f.kind = SideKind::Acute;
    }
    return f;
}

SideKind classify_triangle(const Triangle& tri) {
    // Largest angle is opposite the longest side; use the cosine sign there.
    int longest = 0;
    for (int s = 1; s < 3; ++s) {
        if (tri.side_length(s) > tri.side_length(longest)) longest = s;
    }
    const Vec2 apex = tri.vertex(longest);
    const Vec2 e0 = tri.side_start(longest) - apex;
    const Vec2 e1 = tri.side_end(longest) - apex;
    const double c = dot(e0, e1) / (norm(e0) * norm(e1));
    const double tol = 1e-9;
    if (c < -tol) return SideKind::Obtuse;
    if (c <= tol) return SideKind::Right;
    return SideKind::Acute;
}

}  // namespace triwave
