#include "triwave/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace triwave {

namespace {

// Row-major index of lattice point (i, j), rows indexed by j.
int lattice_index(int n, int i, int j) {
    // Row j starts after rows 0..j-1 of lengths (n+1), n, ..., (n+2-j).
    return j * (n + 1) - j * (j - 1) / 2 + i;
}

}  // namespace

double Mesh::element_area(int e) const {
    const auto& el = elements_[e];
    return 0.5 * cross(nodes_[el[1]] - nodes_[el[0]], nodes_[el[2]] - nodes_[el[0]]);
}

Mesh refine_uniform(const Triangle& tri, int level) {
    if (level < 0 || level > 12) {
        throw LevelTooLarge("refinement level must be in [0, 12]");
    }
    Mesh mesh(tri);
    mesh.level_ = level;
    const int n = 1 << level;
    mesh.n_ = n;

    const Vec2 v0 = tri.vertex(0);
    const Vec2 e1 = tri.vertex(1) - v0;
    const Vec2 e2 = tri.vertex(2) - v0;

    mesh.nodes_.reserve(static_cast<std::size_t>(n + 1) * (n + 2) / 2);
    mesh.interior_index_.reserve(mesh.nodes_.capacity());
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n - j; ++i) {
            const double a = static_cast<double>(i) / n;
            const double b = static_cast<double>(j) / n;
            mesh.nodes_.push_back(v0 + a * e1 + b * e2);
            mesh.lattice_.push_back({i, j});
            const bool interior = i > 0 && j > 0 && i + j < n;
            mesh.interior_index_.push_back(interior ? mesh.interior_count_++ : -1);
        }
    }

    mesh.elements_.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n - j; ++i) {
            const int p00 = lattice_index(n, i, j);
            const int p10 = lattice_index(n, i + 1, j);
            const int p01 = lattice_index(n, i, j + 1);
            mesh.elements_.push_back({p00, p10, p01});
            if (i + j < n - 1) {
                const int p11 = lattice_index(n, i + 1, j + 1);
                mesh.elements_.push_back({p10, p11, p01});
            }
        }
    }

    // Adjacency of boundary edges: map each lattice edge to its element.
    std::map<std::pair<int, int>, std::pair<int, int>> edge_owner;  // edge -> (element, opposite node)
    for (int e = 0; e < static_cast<int>(mesh.elements_.size()); ++e) {
        const auto& el = mesh.elements_[e];
        for (int k = 0; k < 3; ++k) {
            const int a = el[(k + 1) % 3];
            const int b = el[(k + 2) % 3];
            edge_owner[{std::min(a, b), std::max(a, b)}] = {e, el[k]};
        }
    }

    const Vec2 centroid = tri.centroid();
    auto push_edges = [&](int side, auto node_at) {
        for (int k = 0; k < n; ++k) {
            BoundaryEdge be;
            be.node_a = node_at(k);
            be.node_b = node_at(k + 1);
            be.side = side;
            const auto owner = edge_owner.at({std::min(be.node_a, be.node_b),
                                              std::max(be.node_a, be.node_b)});
            be.element = owner.first;
            be.opposite_node = owner.second;
            const Vec2 pa = mesh.nodes_[be.node_a];
            const Vec2 pb = mesh.nodes_[be.node_b];
            be.length = norm(pb - pa);
            be.midpoint = 0.5 * (pa + pb);
            Vec2 nrm = perp(pb - pa);
            nrm = (1.0 / norm(nrm)) * nrm;
            if (dot(nrm, be.midpoint - centroid) < 0.0) {
                nrm = -1.0 * nrm;
            }
            be.normal = nrm;
            mesh.boundary_edges_.push_back(be);
        }
    };
    // Side 0 (opposite vertex 0): lattice points with i + j = n, from vertex 1 to vertex 2.
    push_edges(0, [&](int k) { return lattice_index(n, n - k, k); });
    // Side 1 (opposite vertex 1): i = 0, from vertex 2 to vertex 0.
    push_edges(1, [&](int k) { return lattice_index(n, 0, n - k); });
    // Side 2 (opposite vertex 2): j = 0, from vertex 0 to vertex 1.
    push_edges(2, [&](int k) { return lattice_index(n, k, 0); });

    double h_min = mesh.nodes_.size() > 1 ? 1e300 : 0.0;
    double h_max = 0.0;
    for (const auto& el : mesh.elements_) {
        for (int k = 0; k < 3; ++k) {
            const double len = norm(mesh.nodes_[el[(k + 1) % 3]] - mesh.nodes_[el[k]]);
            h_min = std::min(h_min, len);
            h_max = std::max(h_max, len);
        }
    }
    mesh.h_min_ = h_min;
    mesh.h_max_ = h_max;
    return mesh;
}

std::vector<BoundaryEdge> boundary_restriction(const Mesh& mesh, int side) {
    std::vector<BoundaryEdge> edges;
    for (const auto& be : mesh.boundary_edges()) {
        if (be.side == side) edges.push_back(be);
    }
    return edges;
}

std::string mesh_dump(const Mesh& mesh) {
    std::string out;
    char buf[160];
    out += "# nodes: id x y interior\n";
    for (int i = 0; i < static_cast<int>(mesh.nodes().size()); ++i) {
        std::snprintf(buf, sizeof(buf), "%d %.17g %.17g %d\n", i, mesh.nodes()[i].x,
                      mesh.nodes()[i].y, mesh.is_interior(i) ? 1 : 0);
        out += buf;
    }
    out += "# elements: id n0 n1 n2\n";
    for (int e = 0; e < static_cast<int>(mesh.elements().size()); ++e) {
        const auto& el = mesh.elements()[e];
        std::snprintf(buf, sizeof(buf), "%d %d %d %d\n", e, el[0], el[1], el[2]);
        out += buf;
    }
    out += "# boundary: node_a node_b side element length\n";
    for (const auto& be : mesh.boundary_edges()) {
        std::snprintf(buf, sizeof(buf), "%d %d %d %d %.17g\n", be.node_a, be.node_b, be.side,
                      be.element, be.length);
        out += buf;
    }
    return out;
}

}  // namespace triwave
