#include "hypcc/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hypcc::model {

namespace {

constexpr double kOrthoTol = 1e-8;
constexpr double kStability = 1e-8;  // limit stability window
constexpr double kLimitCap = 40.0;

void require_dim(const ModelSpace& space, const Cvec& v) {
    if (v.size() != space.ambient_dim())
        throw DimensionMismatchError("ambient vector has wrong dimension");
}

/// For the real model, imaginary parts are rounding debris; scrub them.
Cvec scrub_real(const ModelSpace& space, Cvec v) {
    if (space.field == Field::Real) {
        double imax = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            imax = std::max(imax, std::abs(v(i).imag()));
        if (imax > 1e-9 * (1.0 + v.norm()))
            throw RepresentationError("real-model representative has complex entries");
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Scalar(v(i).real(), 0.0);
    }
    return v;
}

double wedge_norm(const Cvec& a, const Cvec& b) {
    const Cvec an = a / a.norm();
    const Cvec bn = b / b.norm();
    double s = 0.0;
    for (Eigen::Index i = 0; i < an.size(); ++i)
        for (Eigen::Index j = i + 1; j < an.size(); ++j)
            s += std::norm(an(i) * bn(j) - an(j) * bn(i));
    return std::sqrt(s);
}

/// Evaluates g at t = 20, 25, 30, ... until two successive values agree to
/// 1e-8, then extrapolates the geometric tail. Cap at t = 40.
double limit_schedule(const std::function<double(double)>& g, const char* what) {
    double p1 = g(20.0);
    double p2 = g(25.0);
    double p3 = g(30.0);
    double t = 30.0;
    while (std::abs(p3 - p2) > kStability) {
        t += 5.0;
        if (t > kLimitCap + 1e-9)
            throw ConvergenceError(std::string(what) + ": tail not stable at cap t = 40", p3, p2);
        p1 = p2;
        p2 = p3;
        p3 = g(t);
    }
    return aitken_extrapolate(p1, p2, p3);
}

double busemann_along(const AsymptoticGeodesic& g, double s, const Cvec& omega) {
    const Scalar cd = form(g.decay, omega);
    const Scalar cg = form(g.grow, omega);
    return std::log(std::abs(cd * std::exp(-s) + cg * std::exp(s)));
}

} // namespace

void require_same_space(const ModelSpace& a, const ModelSpace& b) {
    if (!(a == b)) throw ModelMismatchError("operands belong to different model spaces");
}

Scalar form(const Cvec& a, const Cvec& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("form operands differ in dimension");
    const Eigen::Index n = a.size() - 1;
    return a.head(n).dot(b.head(n)) - std::conj(a(n)) * b(n);
}

ProjectivePoint::ProjectivePoint(ModelSpace space, Cvec rep) : space_(space) {
    require_dim(space, rep);
    rep = scrub_real(space, std::move(rep));
    const double s = -form(rep, rep).real();
    if (s <= kRepresentationTol * rep.squaredNorm())
        throw RepresentationError("representative is not timelike");
    rep_ = rep / std::sqrt(s);
}

ProjectivePoint ProjectivePoint::trusted(ModelSpace space, Cvec rep) {
    ProjectivePoint p;
    p.space_ = space;
    p.rep_ = std::move(rep);
    return p;
}

IdealPoint::IdealPoint(ModelSpace space, Cvec rep) : space_(space) {
    require_dim(space, rep);
    rep = scrub_real(space, std::move(rep));
    double m = 0.0;
    for (Eigen::Index i = 0; i < rep.size(); ++i) m = std::max(m, std::abs(rep(i)));
    if (m == 0.0) throw RepresentationError("zero vector is not an ideal point");
    rep /= m;
    if (std::abs(form(rep, rep).real()) > kNullTol * rep.size())
        throw RepresentationError("representative is not null");
    rep_ = std::move(rep);
}

double TangentVector::norm() const {
    return std::sqrt(std::max(0.0, form(vec, vec).real()));
}

BusemannChart::BusemannChart(IdealPoint center, ProjectivePoint basepoint)
    : center_(std::move(center)), basepoint_(std::move(basepoint)) {
    require_same_space(center_.space(), basepoint_.space());
    const Scalar w = form(basepoint_.rep(), center_.rep());
    scaled_center_ = center_.rep() * (-1.0 / w);
}

ProjectivePoint AsymptoticGeodesic::at(double t) const {
    return ProjectivePoint::trusted(space, decay * std::exp(-t) + grow * std::exp(t));
}

IdealPoint AsymptoticGeodesic::forward_ideal() const { return IdealPoint(space, grow); }
IdealPoint AsymptoticGeodesic::backward_ideal() const { return IdealPoint(space, decay); }

bool projectively_equal(const ProjectivePoint& a, const ProjectivePoint& b) {
    require_same_space(a.space(), b.space());
    return wedge_norm(a.rep(), b.rep()) <= kProjectiveTol;
}

bool projectively_equal(const IdealPoint& a, const IdealPoint& b) {
    require_same_space(a.space(), b.space());
    return wedge_norm(a.rep(), b.rep()) <= kProjectiveTol;
}

bool is_delta_triple(double a, double b, double c, double delta) {
    double lo = a, mid = b, hi = c;
    if (lo > mid) std::swap(lo, mid);
    if (mid > hi) std::swap(mid, hi);
    if (lo > mid) std::swap(lo, mid);
    return mid - lo <= delta;
}

double distance(const ProjectivePoint& x, const ProjectivePoint& y) {
    require_same_space(x.space(), y.space());
    return acosh_stable(std::abs(form(x.rep(), y.rep())));
}

ProjectivePoint geodesic_ray(const ProjectivePoint& o, const TangentVector& u, double t) {
    require_same_space(o.space(), u.at.space());
    if (std::abs(form(u.vec, u.vec).real() - 1.0) > kOrthoTol)
        throw NormalizationError("ray direction is not a unit vector");
    if (std::abs(form(o.rep(), u.vec)) > kOrthoTol)
        throw PreconditionError("ray direction is not tangent at the base point");
    return ProjectivePoint::trusted(o.space(),
                                    std::cosh(t) * o.rep() + std::sinh(t) * u.vec);
}

AsymptoticGeodesic ray_frame(const ProjectivePoint& o, const TangentVector& u) {
    return {o.space(), 0.5 * (o.rep() - u.vec), 0.5 * (o.rep() + u.vec)};
}

AsymptoticGeodesic geodesic_between_ideal(const IdealPoint& xi, const IdealPoint& eta) {
    require_same_space(xi.space(), eta.space());
    if (projectively_equal(xi, eta))
        throw DegenerateGeodesicError("coincident ideal endpoints");
    const Scalar c = form(xi.rep(), eta.rep());
    const double ac = std::abs(c);
    const double alpha = 1.0 / std::sqrt(2.0 * ac);
    const Scalar beta = -std::conj(c) / (2.0 * alpha * ac * ac);
    return {xi.space(), alpha * xi.rep(), beta * eta.rep()};
}

TangentVector unit_tangent_toward(const ProjectivePoint& o, const ProjectivePoint& x) {
    require_same_space(o.space(), x.space());
    if (projectively_equal(o, x))
        throw DegeneracyError("no direction toward a coincident point");
    const Scalar w = form(o.rep(), x.rep());
    const double aw = std::abs(w);
    const Cvec aligned = x.rep() * (-aw / w);
    const Cvec v = aligned - aw * o.rep();
    return {o, v / std::sqrt(aw * aw - 1.0)};
}

TangentVector unit_tangent_toward(const ProjectivePoint& o, const IdealPoint& x) {
    require_same_space(o.space(), x.space());
    const Scalar w = form(o.rep(), x.rep());
    const Cvec aligned = x.rep() * (-1.0 / w);
    return {o, aligned - o.rep()};
}

IdealPoint ideal_endpoint(const ProjectivePoint& o, const TangentVector& u) {
    return IdealPoint(o.space(), o.rep() + u.vec);
}

IdealPoint opposite_ideal(const ProjectivePoint& o, const IdealPoint& xi) {
    const TangentVector u = unit_tangent_toward(o, xi);
    return IdealPoint(o.space(), o.rep() - u.vec);
}

double busemann_value(const BusemannChart& chart, const ProjectivePoint& x) {
    require_same_space(chart.basepoint().space(), x.space());
    return std::log(std::abs(form(x.rep(), chart.scaled_center())));
}

TangentVector busemann_gradient(const BusemannChart& chart, const ProjectivePoint& x) {
    require_same_space(chart.basepoint().space(), x.space());
    const Cvec& omega = chart.scaled_center();
    const Cvec g = omega / form(x.rep(), omega) + x.rep();
    return {x, g};
}

double busemann_value_by_limit(const BusemannChart& chart, const ProjectivePoint& x,
                               double t) {
    const TangentVector u = unit_tangent_toward(chart.basepoint(), chart.center());
    const AsymptoticGeodesic ray = ray_frame(chart.basepoint(), u);
    const Scalar cd = form(ray.decay, x.rep());
    const Scalar cg = form(ray.grow, x.rep());
    const double d = acosh_stable(std::abs(cd * std::exp(-t) + cg * std::exp(t)));
    return d - t;
}

Scalar frame_pairing(const AsymptoticGeodesic& g1, double s,
                     const AsymptoticGeodesic& g2, double t) {
    return form(g1.decay, g2.decay) * std::exp(-s - t) +
           form(g1.decay, g2.grow) * std::exp(-s + t) +
           form(g1.grow, g2.decay) * std::exp(s - t) +
           form(g1.grow, g2.grow) * std::exp(s + t);
}

double gromov_product(const ProjectivePoint& x, const ProjectivePoint& y,
                      const ProjectivePoint& base) {
    const double p =
        0.5 * (distance(x, base) + distance(y, base) - distance(x, y));
    return std::max(0.0, p);
}

double gromov_product(const IdealPoint& xi, const IdealPoint& eta,
                      const ProjectivePoint& base) {
    require_same_space(xi.space(), base.space());
    require_same_space(eta.space(), base.space());
    if (projectively_equal(xi, eta)) return kInf;
    const AsymptoticGeodesic r1 = ray_frame(base, unit_tangent_toward(base, xi));
    const AsymptoticGeodesic r2 = ray_frame(base, unit_tangent_toward(base, eta));
    auto g = [&](double t) {
        return 0.5 * (2.0 * t - acosh_stable(std::abs(frame_pairing(r1, t, r2, t))));
    };
    return limit_schedule(g, "gromov product over a base point");
}

double gromov_product(const IdealPoint& xi, const IdealPoint& eta,
                      const BusemannChart& chart) {
    if (projectively_equal(xi, chart.center()) || projectively_equal(eta, chart.center()))
        throw CenterCollisionError("boundary point coincides with the chart center");
    if (projectively_equal(xi, eta)) return kInf;
    const AsymptoticGeodesic g1 = geodesic_between_ideal(chart.center(), xi);
    const AsymptoticGeodesic g2 = geodesic_between_ideal(chart.center(), eta);
    const Cvec& omega = chart.scaled_center();
    auto g = [&](double t) {
        const double d = acosh_stable(std::abs(frame_pairing(g1, t, g2, t)));
        return 0.5 * (busemann_along(g1, t, omega) + busemann_along(g2, t, omega) - d);
    };
    return limit_schedule(g, "gromov product over a Busemann chart");
}

double gromov_product(const ProjectivePoint& x, const IdealPoint& eta,
                      const BusemannChart& chart) {
    if (projectively_equal(eta, chart.center()))
        throw CenterCollisionError("boundary point coincides with the chart center");
    const AsymptoticGeodesic g2 = geodesic_between_ideal(chart.center(), eta);
    const Cvec& omega = chart.scaled_center();
    const double bx = busemann_value(chart, x);
    const Scalar cd = form(x.rep(), g2.decay);
    const Scalar cg = form(x.rep(), g2.grow);
    auto g = [&](double t) {
        const double d = acosh_stable(std::abs(cd * std::exp(-t) + cg * std::exp(t)));
        return 0.5 * (bx + busemann_along(g2, t, omega) - d);
    };
    return limit_schedule(g, "mixed gromov product over a Busemann chart");
}

EigenSplit curvature_eigensplit(const TangentVector& u, const TangentVector& v) {
    if ((u.at.rep() - v.at.rep()).norm() > 1e-9)
        throw PreconditionError("tangent vectors anchored at different representatives");
    if (std::abs(form(u.vec, u.vec).real() - 1.0) > kOrthoTol)
        throw NormalizationError("eigensplit axis is not a unit vector");
    if (std::abs(form(u.vec, v.vec).real()) > kOrthoTol * (1.0 + v.norm()))
        throw PreconditionError("eigensplit input is not orthogonal to the axis");
    if (u.at.space().field == Field::Real) {
        Cvec zero = Cvec::Zero(v.vec.size());
        return {v, {v.at, zero}};
    }
    const Cvec ju = Scalar(0.0, 1.0) * u.vec;
    const double c = form(ju, v.vec).real();
    TangentVector e4{v.at, c * ju};
    TangentVector e1{v.at, v.vec - e4.vec};
    return {e1, e4};
}

double jacobi_scale(double lambda, double t, JacobiKind kind) {
    double root;
    if (std::abs(lambda + 1.0) < 1e-12)
        root = 1.0;
    else if (std::abs(lambda + 4.0) < 1e-12)
        root = 2.0;
    else
        throw DomainError("curvature eigenvalue must be -1 or -4");
    if (kind == JacobiKind::Sphere) {
        if (t < 0.0) throw DomainError("sphere Jacobi factor needs t >= 0");
        return std::sinh(root * t) / root;
    }
    return std::exp(root * t);
}

} // namespace hypcc::model
