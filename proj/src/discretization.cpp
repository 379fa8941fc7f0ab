#include "triwave/discretization.hpp"

#include <cmath>

namespace triwave {

namespace {

struct LocalMatrices {
    double stiffness[3][3];
    double mass[3][3];
    double area;
};

// Exact element integrals for linear barycentric basis functions:
//   K_ab = area * grad(l_a) . grad(l_b)
//   M_ab = area/12 * (1 + delta_ab)
LocalMatrices local_matrices(Vec2 p0, Vec2 p1, Vec2 p2) {
    LocalMatrices lm;
    const double twice_area = cross(p1 - p0, p2 - p0);
    lm.area = 0.5 * twice_area;
    const Vec2 grads[3] = {
        (1.0 / twice_area) * perp(p2 - p1),
        (1.0 / twice_area) * perp(p0 - p2),
        (1.0 / twice_area) * perp(p1 - p0),
    };
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            lm.stiffness[a][b] = lm.area * dot(grads[a], grads[b]);
            lm.mass[a][b] = lm.area / 12.0 * (a == b ? 2.0 : 1.0);
        }
    }
    return lm;
}

enum class Restriction { Interior, All };

CsrMatrix assemble_matrix(const Mesh& mesh, Operator which, bool lumped, Restriction restriction) {
    const bool interior_only = restriction == Restriction::Interior;
    const int dim = interior_only ? mesh.interior_count() : static_cast<int>(mesh.nodes().size());
    auto index_of = [&](int node) {
        return interior_only ? mesh.interior_index(node) : node;
    };

    std::vector<CsrMatrix::Triplet> triplets;
    triplets.reserve(mesh.elements().size() * 9);
    for (const auto& el : mesh.elements()) {
        const LocalMatrices lm =
            local_matrices(mesh.nodes()[el[0]], mesh.nodes()[el[1]], mesh.nodes()[el[2]]);
        for (int a = 0; a < 3; ++a) {
            const int ra = index_of(el[a]);
            if (ra < 0) continue;
            for (int b = 0; b < 3; ++b) {
                const int cb = index_of(el[b]);
                if (cb < 0) continue;
                double value;
                if (which == Operator::Stiffness) {
                    value = lm.stiffness[a][b];
                } else if (lumped) {
                    // Row-sum lumping: the whole row collapses onto the diagonal.
                    if (a != b) continue;
                    value = lm.area / 3.0;
                } else {
                    value = lm.mass[a][b];
                }
                triplets.push_back({ra, cb, value});
            }
        }
    }
    return CsrMatrix::from_triplets(dim, triplets);
}

}  // namespace

DiscretePair assemble(const Mesh& mesh, bool lumped) {
    if (mesh.interior_count() == 0) {
        throw NoInteriorNodes("mesh has no interior nodes; refine to level >= 2");
    }
    DiscretePair pair;
    pair.lumped = lumped;
    pair.stiffness = assemble_matrix(mesh, Operator::Stiffness, false, Restriction::Interior);
    pair.mass = assemble_matrix(mesh, Operator::Mass, lumped, Restriction::Interior);
    if (lumped) {
        pair.mass_diag.assign(mesh.interior_count(), 0.0);
        for (int r = 0; r < pair.mass.rows(); ++r) {
            pair.mass_diag[r] = pair.mass.coeff(r, r);
        }
    }
    return pair;
}

CsrMatrix assemble_full_stiffness(const Mesh& mesh) {
    return assemble_matrix(mesh, Operator::Stiffness, false, Restriction::All);
}

CsrMatrix assemble_full_mass(const Mesh& mesh, bool lumped) {
    return assemble_matrix(mesh, Operator::Mass, lumped, Restriction::All);
}

NodalField project_initial(const Mesh& mesh, const std::function<double(Vec2)>& f) {
    NodalField field(mesh.interior_count(), 0.0);
    for (int node = 0; node < static_cast<int>(mesh.nodes().size()); ++node) {
        const int idx = mesh.interior_index(node);
        if (idx < 0) continue;
        const double value = f(mesh.nodes()[node]);
        if (!std::isfinite(value)) {
            throw NonFiniteSample("initial data sample is not finite");
        }
        field[idx] = value;
    }
    return field;
}

std::vector<double> interpolate_all_nodes(const Mesh& mesh, const std::function<double(Vec2)>& f) {
    std::vector<double> values(mesh.nodes().size(), 0.0);
    for (std::size_t node = 0; node < mesh.nodes().size(); ++node) {
        const double value = f(mesh.nodes()[node]);
        if (!std::isfinite(value)) {
            throw NonFiniteSample("sample is not finite");
        }
        values[node] = value;
    }
    return values;
}

NodalField apply_operator(const DiscretePair& pair, Operator which, const NodalField& x) {
    const CsrMatrix& m = which == Operator::Mass ? pair.mass : pair.stiffness;
    if (static_cast<int>(x.size()) != m.rows()) {
        throw DimensionMismatch("field size does not match operator");
    }
    return m.multiply(x);
}

std::vector<double> scatter_to_all_nodes(const Mesh& mesh, const NodalField& interior) {
    if (static_cast<int>(interior.size()) != mesh.interior_count()) {
        throw DimensionMismatch("interior field size does not match the mesh");
    }
    std::vector<double> all(mesh.nodes().size(), 0.0);
    for (int node = 0; node < static_cast<int>(mesh.nodes().size()); ++node) {
        const int idx = mesh.interior_index(node);
        if (idx >= 0) all[node] = interior[idx];
    }
    return all;
}

NodalField restrict_to_interior(const Mesh& mesh, const std::vector<double>& all_nodes) {
    if (all_nodes.size() != mesh.nodes().size()) {
        throw DimensionMismatch("nodal field size does not match the mesh");
    }
    NodalField interior(mesh.interior_count(), 0.0);
    for (int node = 0; node < static_cast<int>(mesh.nodes().size()); ++node) {
        const int idx = mesh.interior_index(node);
        if (idx >= 0) interior[idx] = all_nodes[node];
    }
    return interior;
}

}  // namespace triwave
