#pragma once

#include <variant>

#include "hypcc/model.hpp"

namespace hypcc::tri {

using Vertex = std::variant<model::ProjectivePoint, model::IdealPoint>;

/// Triangle with interior and/or ideal vertices; construction checks that the
/// vertices are pairwise projectively distinct.
struct TriangleConfig {
    TriangleConfig(Vertex a, Vertex b, Vertex c);
    std::array<Vertex, 3> vertices;
};

/// Equiradial points of a triangle xyz: u on side yz, v on xz, w on xy; the
/// tangency points of the three pairwise tangent (horo)spheres centered at the
/// vertices.
struct EquiradialTriple {
    model::ProjectivePoint u;
    model::ProjectivePoint v;
    model::ProjectivePoint w;
};

/// Finite triangle: points located by arc length from each vertex,
/// |uz| = |vz| = (x|y)_z and cyclically.
EquiradialTriple equiradial_finite(const model::ProjectivePoint& x,
                                   const model::ProjectivePoint& y,
                                   const model::ProjectivePoint& z);

/// Ideal triangle: points located on each side at the Busemann level given by
/// the opposite Gromov product, (eta|zeta)_b = b(v) = b(w) for b centered at xi.
EquiradialTriple equiradial_ideal(const model::IdealPoint& xi,
                                  const model::IdealPoint& eta,
                                  const model::IdealPoint& zeta);

/// One interior vertex a and two ideal vertices eta, zeta.
EquiradialTriple equiradial_mixed(const model::ProjectivePoint& a,
                                  const model::IdealPoint& eta,
                                  const model::IdealPoint& zeta);

struct SeparatedPair {
    model::ProjectivePoint v_off;
    model::ProjectivePoint w_off;
    double separation = 0.0;
};

/// Advances v toward zeta and w toward eta by `offset` along their sides and
/// reports |v' w'|.
SeparatedPair separated_points(const EquiradialTriple& triple,
                               const model::IdealPoint& eta,
                               const model::IdealPoint& zeta, double offset);

} // namespace hypcc::tri
