#pragma once

#include <Eigen/Core>
#include <vector>

#include "hypcc/heisenberg.hpp"
#include "hypcc/model.hpp"

namespace hypcc::corr {

using model::Cvec;
using model::Scalar;

/// Identification of the Heisenberg group N with the horosphere H = b^{-1}(0)
/// through a null frame (P, Q, W): P a scaled center representative with
/// <o, P> = -1, Q = 2o - P, and W an orthonormal basis of their form-orthogonal
/// complement. embed(z, t) = W z + ((1+|z|^2+2it)/2) P + Q/2 realizes the
/// simply transitive unipotent action, with embed(identity) = basepoint.
class HoroChart {
public:
    explicit HoroChart(model::BusemannChart chart);

    const model::BusemannChart& chart() const { return chart_; }
    const model::ModelSpace& space() const { return space_; }
    int heis_dim() const { return static_cast<int>(frame_w_.cols()); }
    const Cvec& null_center() const { return p_; }
    const Cvec& q() const { return q_; }
    const Eigen::MatrixXcd& frame_w() const { return frame_w_; }

    void check_heis_input(const heis::HeisPoint& p) const;

    model::ProjectivePoint embed(const heis::HeisPoint& p) const;
    heis::HeisPoint to_heis(const model::ProjectivePoint& x) const;

    /// Ambient E(-1) direction at embed(p) matching the E1 direction eps.
    model::TangentVector embed_horizontal(const heis::HeisPoint& p, const Cvec& eps) const;

private:
    model::BusemannChart chart_;
    model::ModelSpace space_;
    Cvec p_, q_;
    Eigen::MatrixXcd frame_w_;
};

/// Extends a HoroChart by the radial identification of N with the boundary
/// minus the chart center.
class BoundaryChart {
public:
    explicit BoundaryChart(HoroChart horo) : horo_(std::move(horo)) {}

    const HoroChart& horo() const { return horo_; }

    model::IdealPoint ideal(const heis::HeisPoint& p) const;
    heis::HeisPoint to_heis(const model::IdealPoint& xi) const;

private:
    HoroChart horo_;
};

/// Validation battery for the chart invariants (level, left-invariance,
/// differential isometry, radial consistency). Throws ChartError on failure.
void validate_chart(const BoundaryChart& bc, int samples, std::uint64_t seed);

/// Point on the geodesic center->xi at Busemann level t (1-D monotone root find).
model::ProjectivePoint radial_project_horosphere(const model::BusemannChart& chart,
                                                 const model::IdealPoint& xi, double t);

/// rho_o: unit tangent at o of the geodesic o -> x.
model::TangentVector radial_project_sphere(const model::ProjectivePoint& o,
                                           const model::ProjectivePoint& x);
model::TangentVector radial_project_sphere(const model::ProjectivePoint& o,
                                           const model::IdealPoint& xi);

enum class HoroMethod { Heis, Ambient };

/// Horospherical distance d_b between boundary points (center excluded).
/// Heis: CC distance of the Heisenberg preimages. Ambient: discretized
/// horizontal-path optimization on H inside the ambient model.
double horospherical_distance(const BoundaryChart& bc, const model::IdealPoint& xi,
                              const model::IdealPoint& eta, HoroMethod method,
                              int resolution = 256,
                              heis::SolveDiagnostics* diag = nullptr);

struct LevelProjection {
    std::vector<model::ProjectivePoint> points;
    double length = 0.0;  // ambient chord-sum length on the level horosphere
};

/// Radial projection of a boundary horizontal curve onto the level-t horosphere.
LevelProjection project_curve_to_level(const BoundaryChart& bc,
                                       const heis::HorizontalPath& boundary_curve,
                                       double t);

/// Spherical distance d_inf based at o: half the CC distance on the unit
/// tangent sphere with the round metric restricted to E(-1).
double spherical_distance(const model::ProjectivePoint& o, const model::IdealPoint& xi,
                          const model::IdealPoint& eta, int resolution = 256,
                          heis::SolveDiagnostics* diag = nullptr);

/// f = rho_o . r_{b,0}: maps a point of H to a unit tangent vector at the
/// chart basepoint.
model::TangentVector horo_to_sphere_map(const HoroChart& hc,
                                        const model::ProjectivePoint& x);

/// Ideal endpoint (away from the chart center) of the center-geodesic through x.
model::IdealPoint radial_ideal_through(const HoroChart& hc,
                                       const model::ProjectivePoint& x);

} // namespace hypcc::corr
