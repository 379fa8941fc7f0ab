#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "triwave/mesh.hpp"
#include "triwave/numeric.hpp"

using namespace triwave;

namespace {

const Triangle kTri({0.2, -0.1}, {3.1, 0.4}, {1.0, 2.3});

}  // namespace

TEST_CASE("element and node counts per level") {
    struct Expect {
        int level;
        int elements;
        int nodes;
    };
    for (const Expect e : {Expect{0, 1, 3}, Expect{1, 4, 6}, Expect{3, 64, 45}}) {
        const Mesh mesh = refine_uniform(kTri, e.level);
        CHECK(static_cast<int>(mesh.elements().size()) == e.elements);
        CHECK(static_cast<int>(mesh.nodes().size()) == e.nodes);
    }
    // closed-form counts at every level: 4^k elements, (2^k+1)(2^k+2)/2 nodes
    for (int level = 0; level <= 6; ++level) {
        const Mesh mesh = refine_uniform(kTri, level);
        const int n = 1 << level;
        CHECK(static_cast<int>(mesh.elements().size()) == n * n);
        CHECK(static_cast<int>(mesh.nodes().size()) == (n + 1) * (n + 2) / 2);
        CHECK(static_cast<int>(mesh.boundary_edges().size()) == 3 * n);
    }
    CHECK_THROWS_AS(refine_uniform(kTri, 13), LevelTooLarge);
    CHECK_THROWS_AS(refine_uniform(kTri, -1), LevelTooLarge);
}

TEST_CASE("elements are counterclockwise and tile the triangle") {
    for (int level : {0, 1, 2, 4}) {
        const Mesh mesh = refine_uniform(kTri, level);
        KahanSum total;
        for (int e = 0; e < static_cast<int>(mesh.elements().size()); ++e) {
            const double area = mesh.element_area(e);
            CHECK(area > 0.0);
            total.add(area);
        }
        CHECK(total.value() == doctest::Approx(kTri.area()).epsilon(1e-12));
    }
}

TEST_CASE("mesh is conforming") {
    const Mesh mesh = refine_uniform(kTri, 3);
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& el : mesh.elements()) {
        for (int k = 0; k < 3; ++k) {
            const int a = el[k];
            const int b = el[(k + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}] += 1;
        }
    }
    std::set<std::pair<int, int>> boundary;
    for (const auto& be : mesh.boundary_edges()) {
        boundary.insert({std::min(be.node_a, be.node_b), std::max(be.node_a, be.node_b)});
    }
    for (const auto& [edge, count] : edge_count) {
        if (boundary.count(edge)) {
            CHECK(count == 1);
        } else {
            CHECK(count == 2);
        }
    }
}

TEST_CASE("boundary restriction") {
    const Mesh level2 = refine_uniform(kTri, 2);
    for (int s = 0; s < 3; ++s) {
        const auto edges = boundary_restriction(level2, s);
        REQUIRE(edges.size() == 4);
        for (const auto& be : edges) {
            CHECK(be.length == doctest::Approx(kTri.side_length(s) / 4.0).epsilon(1e-13));
        }
        double total = 0.0;
        for (const auto& be : edges) total += be.length;
        CHECK(total == doctest::Approx(kTri.side_length(s)).epsilon(1e-12));
        // ordered along the side: node_a of edge k+1 equals node_b of edge k
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            CHECK(edges[k].node_b == edges[k + 1].node_a);
        }
        CHECK(norm(level2.nodes()[edges.front().node_a] - kTri.side_start(s)) < 1e-12);
        CHECK(norm(level2.nodes()[edges.back().node_b] - kTri.side_end(s)) < 1e-12);
    }

    const Mesh level0 = refine_uniform(kTri, 0);
    for (int s = 0; s < 3; ++s) {
        CHECK(boundary_restriction(level0, s).size() == 1);
    }
}

TEST_CASE("outward normals integrate to zero over the whole boundary") {
    const Mesh mesh = refine_uniform(kTri, 3);
    Vec2 total{0.0, 0.0};
    const Vec2 centroid = kTri.centroid();
    for (const auto& be : mesh.boundary_edges()) {
        CHECK(norm(be.normal) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(dot(be.normal, be.midpoint - centroid) > 0.0);
        total = total + be.length * be.normal;
    }
    CHECK(norm(total) < 1e-12 * longest_side(kTri));
}

TEST_CASE("boundary edges lie on the geometric side lines") {
    const Mesh mesh = refine_uniform(kTri, 4);
    const double big_l = longest_side(kTri);
    for (const auto& be : mesh.boundary_edges()) {
        const Vec2 p0 = kTri.side_start(be.side);
        const Vec2 d = kTri.side_end(be.side) - p0;
        for (int node : {be.node_a, be.node_b}) {
            const double dist =
                std::abs(cross(d, mesh.nodes()[node] - p0)) / norm(d);
            CHECK(dist <= 1e-10 * big_l);
        }
    }
}

TEST_CASE("refinement is nested and halves h_max") {
    Mesh coarse = refine_uniform(kTri, 2);
    for (int level = 3; level <= 5; ++level) {
        const Mesh fine = refine_uniform(kTri, level);
        CHECK(fine.h_max() == doctest::Approx(coarse.h_max() / 2.0).epsilon(1e-13));
        CHECK(fine.h_min() == doctest::Approx(coarse.h_min() / 2.0).epsilon(1e-13));
        // every coarse node appears among the fine nodes
        std::vector<Vec2> fine_nodes = fine.nodes();
        for (const Vec2& p : coarse.nodes()) {
            bool found = false;
            for (const Vec2& q : fine_nodes) {
                if (norm(p - q) <= 1e-12 * (1.0 + norm(p))) {
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }
        coarse = fine;
    }
}

TEST_CASE("interior node identification") {
    const Mesh mesh = refine_uniform(kTri, 3);
    const int n = mesh.divisions();
    int interior = 0;
    for (int node = 0; node < static_cast<int>(mesh.nodes().size()); ++node) {
        const auto [i, j] = mesh.lattice(node);
        const bool expect_interior = i > 0 && j > 0 && i + j < n;
        CHECK(mesh.is_interior(node) == expect_interior);
        if (expect_interior) ++interior;
    }
    CHECK(mesh.interior_count() == interior);
    CHECK(interior == (n - 1) * (n - 2) / 2);
}

TEST_CASE("mesh dump of the level-0 unit right triangle") {
    const Mesh mesh = refine_uniform(Triangle({0, 0}, {1, 0}, {0, 1}), 0);
    const std::string expected =
        "# nodes: id x y interior\n"
        "0 0 0 0\n"
        "1 1 0 0\n"
        "2 0 1 0\n"
        "# elements: id n0 n1 n2\n"
        "0 0 1 2\n"
        "# boundary: node_a node_b side element length\n"
        "1 2 0 0 1.4142135623730951\n"
        "2 0 1 0 1\n"
        "0 1 2 0 1\n";
    CHECK(mesh_dump(mesh) == expected);
}
