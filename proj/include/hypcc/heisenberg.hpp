#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "hypcc/errors.hpp"

namespace hypcc::heis {

using Scalar = std::complex<double>;
using Cvec = Eigen::VectorXcd;

/// Algebra element of N = E1 + E2: horizontal part z, vertical part t.
struct HeisVector {
    Cvec z;
    double t = 0.0;
};

/// Group element in exponential coordinates. The group law is
/// (z,t)(z',t') = (z+z', t+t'+Im<z,z'>), matching the bracket [v,w] = 2 Im(v,w).
struct HeisPoint {
    Cvec z;
    double t = 0.0;
};

HeisPoint identity(int dim);
HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q);
HeisPoint inverse(const HeisPoint& p);
HeisVector bracket(const HeisVector& v, const HeisVector& w);

/// h_lambda: (z,t) -> (lambda z, lambda^2 t); a group automorphism.
HeisPoint dilation(double lambda, const HeisPoint& p);

/// Gauge (|z|^4 + t^2)^{1/4} of p^{-1} q; a left-invariant comparator.
double cygan_distance(const HeisPoint& p, const HeisPoint& q);

enum class CcMethod { Variational, Shooting };

struct SolveDiagnostics {
    bool converged = true;
    bool fallback = false;   // shooting bracket failed, variational used instead
    double residual = 0.0;
    int iterations = 0;
    std::string note;
};

/// Carnot-Caratheodory distance: infimum of lengths of E1-horizontal curves.
/// Shooting reduces to the scalar equation mu(theta) = |t|/|z|^2 for the swept
/// angle of the rotating horizontal velocity; the variational route minimizes a
/// discretized horizontal polyline with an endpoint penalty schedule.
double cc_distance(const HeisPoint& p, const HeisPoint& q, CcMethod method,
                   int resolution = 256, SolveDiagnostics* diag = nullptr);

/// Geodesic distance of the left-invariant Riemannian metric in which
/// E1 + E2 is orthonormal (the induced horosphere metric d_H).
double riemannian_distance(const HeisPoint& p, const HeisPoint& q,
                           int resolution = 128, SolveDiagnostics* diag = nullptr);

/// Polyline whose vertical increments follow the group law of its horizontal ones.
struct HorizontalPath {
    std::vector<HeisPoint> samples;
    int resolution = 0;
};

/// Throws ConstraintViolationError (with the worst step) if a step's vertical
/// increment deviates from the group-law lift by more than 1e-8.
void validate_horizontal(const HorizontalPath& path);

/// Sum of E1-increment norms.
double horizontal_length(const HorizontalPath& path);

/// Straight E1 segment from `start` with total horizontal displacement dz.
HorizontalPath straight_horizontal(const HeisPoint& start, const Cvec& dz, int resolution);

/// Re-lifts a sampled z-polyline into an exactly group-law-horizontal path.
HorizontalPath lift_horizontal(const std::vector<Cvec>& z_samples, double t0);

/// Pointwise dilation of a path (preserves horizontality exactly).
HorizontalPath dilate_path(const HorizontalPath& path, double lambda);

/// Sampled CC geodesic from p to q (shooting profile, discretely re-lifted).
HorizontalPath cc_geodesic_path(const HeisPoint& p, const HeisPoint& q, int resolution);

} // namespace hypcc::heis
