#pragma once

#include <Eigen/Core>
#include <complex>
#include <utility>

#include "hypcc/errors.hpp"
#include "hypcc/numeric.hpp"

namespace hypcc::model {

using Scalar = std::complex<double>;
using Cvec = Eigen::VectorXcd;

enum class Field { Real, Complex };

/// Ambient projective model of H^n (Field::Real) or CH^n (Field::Complex),
/// curvature normalized to the pinching [-4, -1]. Points live in the cone
/// <X,X> < 0 of the signature-(n,1) form <z,w> = sum_i conj(z_i) w_i - conj(z_{n+1}) w_{n+1}.
struct ModelSpace {
    Field field = Field::Real;
    int n = 2;

    int ambient_dim() const { return n + 1; }
    bool operator==(const ModelSpace&) const = default;
};

inline ModelSpace real_h(int n) { return {Field::Real, n}; }
inline ModelSpace complex_h(int n) { return {Field::Complex, n}; }

/// Signature-(n,1) Hermitian pairing, conjugate-linear in the first argument.
Scalar form(const Cvec& a, const Cvec& b);

/// Interior point, stored with <rep,rep> = -1 (up to the accuracy of its construction).
class ProjectivePoint {
public:
    ProjectivePoint(ModelSpace space, Cvec rep);

    const ModelSpace& space() const { return space_; }
    const Cvec& rep() const { return rep_; }

    /// Wraps a representative already satisfying <X,X> = -1 by construction.
    /// Used where recomputing the self-pairing would lose precision.
    static ProjectivePoint trusted(ModelSpace space, Cvec rep);

private:
    ProjectivePoint() = default;
    ModelSpace space_;
    Cvec rep_;
};

/// Boundary-at-infinity point: a nonzero null vector up to projective scale.
class IdealPoint {
public:
    IdealPoint(ModelSpace space, Cvec rep);

    const ModelSpace& space() const { return space_; }
    const Cvec& rep() const { return rep_; }

private:
    ModelSpace space_;
    Cvec rep_;
};

/// Tangent vector at a point: <at.rep, vec> = 0 (the horizontal lift condition).
struct TangentVector {
    ProjectivePoint at;
    Cvec vec;

    double norm() const;
};

/// Busemann function b centered at `center`, pinned by b(basepoint) = 0.
class BusemannChart {
public:
    BusemannChart(IdealPoint center, ProjectivePoint basepoint);

    const IdealPoint& center() const { return center_; }
    const ProjectivePoint& basepoint() const { return basepoint_; }
    /// Center representative scaled so that <basepoint, omega> = -1.
    const Cvec& scaled_center() const { return scaled_center_; }

private:
    IdealPoint center_;
    ProjectivePoint basepoint_;
    Cvec scaled_center_;
};

/// Unit-speed curve X(t) = decay e^{-t} + grow e^{t} (a geodesic when both
/// coefficient vectors come from one of the factory functions below).
/// Keeping the exponential frame explicit preserves accuracy at large |t|.
struct AsymptoticGeodesic {
    ModelSpace space;
    Cvec decay;
    Cvec grow;

    ProjectivePoint at(double t) const;
    IdealPoint forward_ideal() const;
    IdealPoint backward_ideal() const;
};

// ---- predicates -----------------------------------------------------------

bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b);
bool projectively_equal(const IdealPoint& a, const IdealPoint& b);

/// True iff the two smallest of {a,b,c} differ by at most delta.
bool is_delta_triple(double a, double b, double c, double delta);

// ---- distances and geodesics ----------------------------------------------

double distance(const ProjectivePoint& x, const ProjectivePoint& y);

/// X(t) = cosh(t) O + sinh(t) U; requires |u| = 1 and <O, u> = 0.
ProjectivePoint geodesic_ray(const ProjectivePoint& o, const TangentVector& u, double t);

/// The ray as an asymptotic frame (for limits and far evaluations).
AsymptoticGeodesic ray_frame(const ProjectivePoint& o, const TangentVector& u);

/// Unique unit-speed geodesic with backward endpoint xi, forward endpoint eta.
AsymptoticGeodesic geodesic_between_ideal(const IdealPoint& xi, const IdealPoint& eta);

/// Unit tangent at o of the geodesic from o to x (x interior or ideal).
TangentVector unit_tangent_toward(const ProjectivePoint& o, const ProjectivePoint& x);
TangentVector unit_tangent_toward(const ProjectivePoint& o, const IdealPoint& x);

/// Ideal endpoint of the ray from o in direction u.
IdealPoint ideal_endpoint(const ProjectivePoint& o, const TangentVector& u);

/// Ideal point omega with o on the geodesic (omega, xi).
IdealPoint opposite_ideal(const ProjectivePoint& o, const IdealPoint& xi);

// ---- Busemann functions ----------------------------------------------------

double busemann_value(const BusemannChart& chart, const ProjectivePoint& x);

/// Unit gradient of b at x: tangent of the geodesic center->x, pointing away
/// from the center.
TangentVector busemann_gradient(const BusemannChart& chart, const ProjectivePoint& x);

/// Defining-limit evaluation b(x) ~ |x gamma(t)| - t along the ray basepoint->center.
double busemann_value_by_limit(const BusemannChart& chart, const ProjectivePoint& x, double t);

// ---- Gromov products --------------------------------------------------------

double gromov_product(const ProjectivePoint& x, const ProjectivePoint& y,
                      const ProjectivePoint& base);

/// Limit product (xi|eta)_o; +infinity iff the arguments coincide.
double gromov_product(const IdealPoint& xi, const IdealPoint& eta,
                      const ProjectivePoint& base);

/// Limit product (xi|eta)_b; may take any real value; +infinity iff xi = eta.
double gromov_product(const IdealPoint& xi, const IdealPoint& eta,
                      const BusemannChart& chart);

/// Mixed product (x|eta)_b of an interior and an ideal point.
double gromov_product(const ProjectivePoint& x, const IdealPoint& eta,
                      const BusemannChart& chart);

// ---- curvature --------------------------------------------------------------

struct EigenSplit {
    TangentVector e_minus1;  // component in E(-1)
    TangentVector e_minus4;  // component in E(-4); zero in the real model
};

/// Splits v (orthogonal to the unit vector u) along the curvature-operator
/// eigenspaces E_u(-1) and E_u(-4).
EigenSplit curvature_eigensplit(const TangentVector& u, const TangentVector& v);

enum class JacobiKind { Sphere, Horosphere };

/// Jacobi-field growth factor: sinh(t sqrt|l|)/sqrt|l| (sphere kind, V(0)=0)
/// or e^{t sqrt|l|} (horosphere kind, V -> 0 backward).
double jacobi_scale(double lambda, double t, JacobiKind kind);

// ---- internal-but-shared helpers --------------------------------------------

/// Pairing <g1(s), g2(t)> assembled in the exponential frame.
Scalar frame_pairing(const AsymptoticGeodesic& g1, double s,
                     const AsymptoticGeodesic& g2, double t);

void require_same_space(const ModelSpace& a, const ModelSpace& b);

} // namespace hypcc::model
