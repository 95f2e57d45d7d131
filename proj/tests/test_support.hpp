#pragma once

#include <Eigen/Core>
#include <complex>

#include "hypcc/model.hpp"
#include "hypcc/numeric.hpp"

namespace hypcc::testing {

using model::Cvec;
using model::Scalar;

/// Random point of the model at distance <= radius from a reference point.
inline model::ProjectivePoint random_point(const model::ModelSpace& space, Rng& rng,
                                           double radius = 2.0) {
    const bool cx = space.field == model::Field::Complex;
    const int d = space.ambient_dim();
    Cvec orep = Cvec::Zero(d);
    orep(d - 1) = Scalar(1, 0);
    model::ProjectivePoint o(space, orep);
    Cvec g(d);
    for (int j = 0; j < d; ++j) g(j) = Scalar(rng.normal(), cx ? rng.normal() : 0.0);
    Cvec v = g + model::form(orep, g) * orep;
    const double nrm = std::sqrt(model::form(v, v).real());
    if (nrm < 1e-9) return o;
    return model::geodesic_ray(o, {o, v / nrm}, radius * rng.uniform01());
}

/// Random boundary point (uniform-ish direction from the model origin).
inline model::IdealPoint random_ideal(const model::ModelSpace& space, Rng& rng) {
    const bool cx = space.field == model::Field::Complex;
    const int d = space.ambient_dim();
    Cvec v(d);
    double n2 = 0.0;
    for (int j = 0; j < d - 1; ++j) {
        v(j) = Scalar(rng.normal(), cx ? rng.normal() : 0.0);
        n2 += std::norm(v(j));
    }
    v.head(d - 1) /= std::sqrt(n2);
    v(d - 1) = Scalar(1, 0);
    return model::IdealPoint(space, v);
}

/// Random unit tangent vector at x.
inline model::TangentVector random_tangent(const model::ProjectivePoint& x, Rng& rng) {
    const bool cx = x.space().field == model::Field::Complex;
    const int d = x.space().ambient_dim();
    Cvec g(d);
    for (int j = 0; j < d; ++j) g(j) = Scalar(rng.normal(), cx ? rng.normal() : 0.0);
    Cvec v = g + model::form(x.rep(), g) * x.rep();
    return {x, v / std::sqrt(model::form(v, v).real())};
}

/// Random form-preserving linear map, as a product of a unitary block on the
/// positive part and hyperbolic rotations mixing in the negative direction.
inline Eigen::MatrixXcd random_isometry(const model::ModelSpace& space, Rng& rng) {
    const bool cx = space.field == model::Field::Complex;
    const int d = space.ambient_dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);

    // unitary (orthogonal) block on the first n coordinates via Gram-Schmidt
    Eigen::MatrixXcd a(d - 1, d - 1);
    for (int i = 0; i < d - 1; ++i)
        for (int j = 0; j < d - 1; ++j)
            a(i, j) = Scalar(rng.normal(), cx ? rng.normal() : 0.0);
    for (int j = 0; j < d - 1; ++j) {
        for (int k = 0; k < j; ++k) a.col(j) -= a.col(k).dot(a.col(j)) * a.col(k);
        a.col(j) /= a.col(j).norm();
    }
    m.topLeftCorner(d - 1, d - 1) = a;

    // two boosts mixing random positive directions with the last coordinate
    for (int rep = 0; rep < 2; ++rep) {
        const int axis = static_cast<int>(rng.integer() % static_cast<std::uint64_t>(d - 1));
        const double s = rng.uniform(-1.0, 1.0);
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(d, d);
        b(axis, axis) = std::cosh(s);
        b(axis, d - 1) = std::sinh(s);
        b(d - 1, axis) = std::sinh(s);
        b(d - 1, d - 1) = std::cosh(s);
        m = b * m;
    }
    return m;
}

} // namespace hypcc::testing
