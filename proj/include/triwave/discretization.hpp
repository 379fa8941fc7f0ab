#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "triwave/mesh.hpp"
#include "triwave/sparse.hpp"

namespace triwave {

struct NoInteriorNodes : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteSample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Values at interior nodes, ordered by Mesh::interior_index.
using NodalField = std::vector<double>;

enum class Operator { Mass, Stiffness };

/// Piecewise-linear mass and stiffness operators restricted to interior
/// nodes (homogeneous Dirichlet rows and columns eliminated). The mass is
/// either the consistent element integral or its row-sum lumped diagonal.
struct DiscretePair {
    CsrMatrix mass;
    CsrMatrix stiffness;
    bool lumped = false;
    std::vector<double> mass_diag;  // populated when lumped
};

DiscretePair assemble(const Mesh& mesh, bool lumped);

/// Unconstrained operators on all nodes (no Dirichlet elimination); used
/// for invariant checks and boundary-trace tests.
CsrMatrix assemble_full_stiffness(const Mesh& mesh);
CsrMatrix assemble_full_mass(const Mesh& mesh, bool lumped);

/// Nodal interpolation of f at interior nodes.
NodalField project_initial(const Mesh& mesh, const std::function<double(Vec2)>& f);

/// Nodal interpolation at every node (boundary included).
std::vector<double> interpolate_all_nodes(const Mesh& mesh, const std::function<double(Vec2)>& f);

NodalField apply_operator(const DiscretePair& pair, Operator which, const NodalField& x);

/// Expand an interior field to all nodes, zero on the boundary.
std::vector<double> scatter_to_all_nodes(const Mesh& mesh, const NodalField& interior);

/// Restrict an all-nodes field to interior nodes.
NodalField restrict_to_interior(const Mesh& mesh, const std::vector<double>& all_nodes);

}  // namespace triwave
