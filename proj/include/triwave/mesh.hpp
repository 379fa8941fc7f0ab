#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "triwave/geometry.hpp"

namespace triwave {

struct LevelTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundaryEdge {
    int node_a = 0;        // ordered along the side, a -> b
    int node_b = 0;
    int side = 0;          // geometric side label (opposite vertex index)
    int element = 0;       // the unique adjacent element
    int opposite_node = 0; // the adjacent element's node not on this edge
    double length = 0.0;
    Vec2 normal;           // outward unit normal
    Vec2 midpoint;
};

/// Structured triangulation of a Triangle obtained by uniform 4-way
/// refinement of the barycentric lattice. Node numbering is row-major in
/// the lattice indices (i, j), elements are counterclockwise, and nodes of
/// level k reappear unchanged at level k+1.
class Mesh {
public:
    const Triangle& triangle() const { return tri_; }
    int level() const { return level_; }
    int divisions() const { return n_; }  // 2^level intervals per side

    const std::vector<Vec2>& nodes() const { return nodes_; }
    const std::vector<std::array<int, 3>>& elements() const { return elements_; }
    const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

    bool is_interior(int node) const { return interior_index_[node] >= 0; }
    /// Index into interior-only vectors, or -1 for boundary nodes.
    int interior_index(int node) const { return interior_index_[node]; }
    int interior_count() const { return interior_count_; }
    /// Lattice coordinates (i, j) of a node; barycentric weights are
    /// (1 - (i+j)/n, i/n, j/n).
    std::array<int, 2> lattice(int node) const { return lattice_[node]; }

    double h_min() const { return h_min_; }
    double h_max() const { return h_max_; }

    double element_area(int e) const;

    friend Mesh refine_uniform(const Triangle& tri, int level);

private:
    explicit Mesh(const Triangle& tri) : tri_(tri) {}

    Triangle tri_;
    int level_ = 0;
    int n_ = 1;
    std::vector<Vec2> nodes_;
    std::vector<std::array<int, 2>> lattice_;
    std::vector<std::array<int, 3>> elements_;
    std::vector<BoundaryEdge> boundary_edges_;
    std::vector<int> interior_index_;
    int interior_count_ = 0;
    double h_min_ = 0.0;
    double h_max_ = 0.0;
};

Mesh refine_uniform(const Triangle& tri, int level);

/// Boundary edges of one side, ordered from side_start to side_end.
std::vector<BoundaryEdge> boundary_restriction(const Mesh& mesh, int side);

/// Plain-text dump: node table, element table, boundary table.
std::string mesh_dump(const Mesh& mesh);

}  // namespace triwave
