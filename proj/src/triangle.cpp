#include "hypcc/triangle.hpp"

#include "hypcc/chart.hpp"

namespace hypcc::tri {

using model::BusemannChart;
using model::IdealPoint;
using model::ProjectivePoint;

namespace {

bool distinct(const Vertex& a, const Vertex& b) {
    return std::visit(
        [](const auto& x, const auto& y) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>,
                                         std::decay_t<decltype(y)>>)
                return !model::projectively_equal(x, y);
            else
                return true;
        },
        a, b);
}

ProjectivePoint along_segment(const ProjectivePoint& from, const ProjectivePoint& to,
                              double s) {
    if (s == 0.0) return from;
    return model::geodesic_ray(from, model::unit_tangent_toward(from, to), s);
}

ProjectivePoint along_ray(const ProjectivePoint& from, const IdealPoint& to, double s) {
    if (s == 0.0) return from;
    return model::geodesic_ray(from, model::unit_tangent_toward(from, to), s);
}

/// Reference interior point for anchoring Busemann charts on an ideal triangle.
ProjectivePoint anchor_point(const IdealPoint& eta, const IdealPoint& zeta) {
    return model::geodesic_between_ideal(eta, zeta).at(0.0);
}

} // namespace

TriangleConfig::TriangleConfig(Vertex a, Vertex b, Vertex c)
    : vertices{std::move(a), std::move(b), std::move(c)} {
    if (!distinct(vertices[0], vertices[1]) || !distinct(vertices[0], vertices[2]) ||
        !distinct(vertices[1], vertices[2]))
        throw DegeneracyError("triangle vertices must be pairwise distinct");
}

EquiradialTriple equiradial_finite(const ProjectivePoint& x, const ProjectivePoint& y,
                                   const ProjectivePoint& z) {
    if (model::projectively_equal(x, y) || model::projectively_equal(x, z) ||
        model::projectively_equal(y, z))
        throw DegeneracyError("coincident triangle vertices");
    const double pz = model::gromov_product(x, y, z);
    const double py = model::gromov_product(x, z, y);
    return {
        along_segment(z, y, pz),  // u on yz, |uz| = (x|y)_z
        along_segment(z, x, pz),  // v on xz, |vz| = (x|y)_z
        along_segment(y, x, py),  // w on xy, |wy| = (x|z)_y
    };
}

EquiradialTriple equiradial_ideal(const IdealPoint& xi, const IdealPoint& eta,
                                  const IdealPoint& zeta) {
    if (model::projectively_equal(xi, eta) || model::projectively_equal(xi, zeta) ||
        model::projectively_equal(eta, zeta))
        throw DegeneracyError("coincident ideal vertices");
    const ProjectivePoint o = anchor_point(eta, zeta);
    const BusemannChart b_xi(xi, o);
    const BusemannChart b_eta(eta, o);
    const double level_vw = model::gromov_product(eta, zeta, b_xi);
    const double level_u = model::gromov_product(xi, zeta, b_eta);
    return {
        corr::radial_project_horosphere(b_eta, zeta, level_u),  // u on eta-zeta
        corr::radial_project_horosphere(b_xi, zeta, level_vw),  // v on xi-zeta
        corr::radial_project_horosphere(b_xi, eta, level_vw),   // w on xi-eta
    };
}

EquiradialTriple equiradial_mixed(const ProjectivePoint& a, const IdealPoint& eta,
                                  const IdealPoint& zeta) {
    if (model::projectively_equal(eta, zeta))
        throw DegeneracyError("coincident ideal vertices");
    const double s = model::gromov_product(eta, zeta, a);
    const BusemannChart b_eta(eta, a);
    const double level_u = model::gromov_product(a, zeta, b_eta);
    return {
        corr::radial_project_horosphere(b_eta, zeta, level_u),  // u on eta-zeta
        along_ray(a, zeta, s),                                  // v on a-zeta
        along_ray(a, eta, s),                                   // w on a-eta
    };
}

SeparatedPair separated_points(const EquiradialTriple& triple, const IdealPoint& eta,
                               const IdealPoint& zeta, double offset) {
    const ProjectivePoint v_off = along_ray(triple.v, zeta, offset);
    const ProjectivePoint w_off = along_ray(triple.w, eta, offset);
    return {v_off, w_off, model::distance(v_off, w_off)};
}

} // namespace hypcc::tri
