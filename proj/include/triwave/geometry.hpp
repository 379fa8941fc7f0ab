#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace triwave {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
// Rotate by +90 degrees (counterclockwise).
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

struct CollinearVertices : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A planar triangle with counterclockwise orientation enforced on
/// construction. Sides are labeled by the index of the opposite vertex:
/// side s runs from vertex (s+1)%3 to vertex (s+2)%3.
class Triangle {
public:
    Triangle(Vec2 p0, Vec2 p1, Vec2 p2);

    const Vec2& vertex(int i) const { return v_[i]; }
    Vec2 side_start(int side) const { return v_[(side + 1) % 3]; }
    Vec2 side_end(int side) const { return v_[(side + 2) % 3]; }
    double side_length(int side) const { return norm(side_end(side) - side_start(side)); }
    double area() const { return area_; }
    Vec2 centroid() const;

private:
    std::array<Vec2, 3> v_;
    double area_ = 0.0;
};

Triangle triangle_from_vertices(Vec2 p0, Vec2 p1, Vec2 p2);

/// Perpendicular distance from the side's line to the opposite vertex,
/// i.e. 2*area/|side|.
double altitude(const Triangle& tri, int side);

double longest_side(const Triangle& tri);

/// Classification of a side's frame: Acute when the altitude foot falls
/// strictly inside the side, Right when it coincides with an endpoint,
/// Obtuse when it falls outside (one signed offset negative).
enum class SideKind { Acute, Right, Obtuse };

/// Rigid frame attached to one side: the opposite vertex sits at the
/// origin, the x-axis points toward the foot of the altitude, and the
/// side lies in the line {x = altitude}. In frame coordinates the side
/// occupies y in [-offset_below, offset_above], so the two offsets sum
/// to the side length and exactly one of them is negative in the obtuse
/// case.
struct SideFrame {
    int side = 0;
    Vec2 origin;        // world position of the vertex opposite the side
    Vec2 axis_x;        // unit vector from the origin toward the altitude foot
    Vec2 axis_y;        // axis_x rotated +90 degrees
    double altitude = 0.0;
    double offset_below = 0.0;  // -(lowest frame y on the side)
    double offset_above = 0.0;  // highest frame y on the side
    SideKind kind = SideKind::Acute;

    Vec2 to_frame(Vec2 p) const {
        Vec2 d = p - origin;
        return {dot(d, axis_x), dot(d, axis_y)};
    }
    // World-coordinate gradient expressed in frame coordinates.
    Vec2 gradient_to_frame(Vec2 g) const { return {dot(g, axis_x), dot(g, axis_y)}; }
};

SideFrame side_frame(const Triangle& tri, int side);

/// Whole-triangle classification derived from the largest angle.
SideKind classify_triangle(const Triangle& tri);

}  // namespace triwave
