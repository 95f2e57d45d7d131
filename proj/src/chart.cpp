#include "hypcc/chart.hpp"

#include <algorithm>
#include <cmath>

#include "hypcc/lbfgs.hpp"
#include "hypcc/numeric.hpp"

namespace hypcc::corr {

using heis::HeisPoint;
using model::AsymptoticGeodesic;
using model::BusemannChart;
using model::Field;
using model::IdealPoint;
using model::ModelSpace;
using model::ProjectivePoint;
using model::TangentVector;

namespace {

Scalar herm(const Cvec& a, const Cvec& b) { return a.dot(b); }

/// Form-orthonormal basis of the orthogonal complement of {O, U}; for a sphere
/// frame pass U empty to complement O alone.
Eigen::MatrixXcd complement_frame(const ModelSpace& space, const Cvec& o, const Cvec* u,
                                  int count) {
    const int dim = space.ambient_dim();
    Eigen::MatrixXcd w(dim, count);
    int built = 0;
    std::vector<Cvec> chosen;
    for (int pass = 0; pass < 2 && built < count; ++pass) {
        for (int j = 0; j < dim && built < count; ++j) {
            Cvec v = Cvec::Zero(dim);
            v(j) = Scalar(1, 0);
            if (pass == 1) v(j) = Scalar(0, 1);  // only reachable for degenerate picks
            v += model::form(o, v) * o;
            if (u) v -= model::form(*u, v) * (*u);
            for (const auto& prev : chosen) v -= model::form(prev, v) * prev;
            const double nrm2 = model::form(v, v).real();
            if (nrm2 < 1e-6) continue;
            v /= std::sqrt(nrm2);
            chosen.push_back(v);
            w.col(built++) = v;
        }
    }
    if (built < count) throw ChartError("failed to build an orthonormal frame");
    return w;
}

} // namespace

HoroChart::HoroChart(BusemannChart chart)
    : chart_(std::move(chart)), space_(chart_.basepoint().space()) {
    const Cvec& o = chart_.basepoint().rep();
    p_ = chart_.scaled_center();
    q_ = 2.0 * o - p_;
    const Cvec u = o - p_;  // unit tangent at o away from the center
    frame_w_ = complement_frame(space_, o, &u, space_.n - 1);
}

void HoroChart::check_heis_input(const HeisPoint& p) const {
    if (p.z.size() != heis_dim())
        throw DimensionMismatchError("Heisenberg coordinate has wrong dimension");
    if (space_.field == Field::Real) {
        if (std::abs(p.t) > 1e-12 || p.z.imag().norm() > 1e-12)
            throw ChartError("real-model horosphere charts carry real coordinates only");
    }
}

ProjectivePoint HoroChart::embed(const HeisPoint& p) const {
    check_heis_input(p);
    const Scalar a(0.5 * (1.0 + p.z.squaredNorm()), p.t);
    Cvec x = frame_w_ * p.z + a * p_ + 0.5 * q_;
    return ProjectivePoint::trusted(space_, std::move(x));
}

heis::HeisPoint HoroChart::to_heis(const ProjectivePoint& x) const {
    model::require_same_space(space_, x.space());
    const Scalar beta_q = -0.5 * model::form(p_, x.rep());
    if (std::abs(beta_q) < 1e-12)
        throw ChartError("point is asymptotic to the chart center");
    const Cvec xn = x.rep() / (2.0 * beta_q);
    Cvec z(heis_dim());
    for (int j = 0; j < heis_dim(); ++j) z(j) = model::form(frame_w_.col(j), xn);
    const Scalar alpha = -0.5 * model::form(q_, xn);
    const double expected = 0.5 * (1.0 + z.squaredNorm());
    if (std::abs(alpha.real() - expected) > 1e-6 * (1.0 + std::abs(expected)))
        throw ChartError("point does not lie on the chart horosphere");
    HeisPoint p{std::move(z), alpha.imag()};
    if (space_.field == Field::Real) {
        p.t = 0.0;
        p.z = p.z.real().cast<Scalar>();
    }
    return p;
}

TangentVector HoroChart::embed_horizontal(const HeisPoint& p, const Cvec& eps) const {
    check_heis_input(p);
    if (eps.size() != heis_dim())
        throw DimensionMismatchError("horizontal direction has wrong dimension");
    Cvec v = frame_w_ * eps + herm(p.z, eps) * p_;
    return {embed(p), std::move(v)};
}

IdealPoint BoundaryChart::ideal(const HeisPoint& p) const {
    horo_.check_heis_input(p);
    const Scalar a(p.z.squaredNorm(), 2.0 * p.t);
    Cvec xi = 2.0 * (horo_.frame_w() * p.z);
    xi += a * horo_.null_center();
    xi += horo_.q();
    return IdealPoint(horo_.space(), std::move(xi));
}

heis::HeisPoint BoundaryChart::to_heis(const IdealPoint& xi) const {
    model::require_same_space(horo_.space(), xi.space());
    const Scalar beta_q = -0.5 * model::form(horo_.null_center(), xi.rep());
    if (std::abs(beta_q) < 1e-10)
        throw CenterCollisionError("boundary point coincides with the chart center");
    const Cvec xn = xi.rep() / beta_q;
    const int dim = horo_.heis_dim();
    Cvec z(dim);
    for (int j = 0; j < dim; ++j) z(j) = 0.5 * model::form(horo_.frame_w().col(j), xn);
    const Scalar alpha = -0.5 * model::form(horo_.q(), xn);
    if (std::abs(alpha.real() - z.squaredNorm()) > 1e-6 * (1.0 + z.squaredNorm()))
        throw ChartError("ideal point fails the chart consistency check");
    HeisPoint p{std::move(z), 0.5 * alpha.imag()};
    if (horo_.space().field == Field::Real) {
        p.t = 0.0;
        p.z = p.z.real().cast<Scalar>();
    }
    return p;
}

model::ProjectivePoint radial_project_horosphere(const BusemannChart& chart,
                                                 const IdealPoint& xi, double t) {
    if (model::projectively_equal(xi, chart.center()))
        throw CenterCollisionError("cannot project the chart center");
    const AsymptoticGeodesic g = model::geodesic_between_ideal(chart.center(), xi);
    auto level = [&](double tau) { return model::busemann_value(chart, g.at(tau)) - t; };
    // b has unit slope along the center geodesic, so this is Newton with slope 1
    double tau = t - model::busemann_value(chart, g.at(0.0));
    for (int i = 0; i < 64; ++i) {
        const double f = level(tau);
        if (std::abs(f) <= 1e-12) break;
        tau -= f;
    }
    if (std::abs(level(tau)) > 1e-10)
        throw ConvergenceError("Busemann level search did not reach tolerance",
                               tau, level(tau));
    return g.at(tau);
}

TangentVector radial_project_sphere(const ProjectivePoint& o, const ProjectivePoint& x) {
    return model::unit_tangent_toward(o, x);
}

TangentVector radial_project_sphere(const ProjectivePoint& o, const IdealPoint& xi) {
    return model::unit_tangent_toward(o, xi);
}

// ---- ambient horizontal-path optimizer --------------------------------------

namespace {

/// Horizontal polyline on H in chart coordinates with E1-increments as the
/// unknowns; the vertical coordinate follows the group-law lift, which makes
/// each step exactly E(-1)-horizontal (Im<X_k, X_{k+1}> = 0). Steps are
/// measured with the ambient metric: <X_k, X_{k+1}> = -1 - |dz|^2/2 for a
/// horizontal step, so the energy carries a quartic ambient correction.
class AmbientHoroObjective final : public opt::Objective {
public:
    AmbientHoroObjective(Cvec target_z, double target_t, int steps, bool complex_model)
        : target_z_(std::move(target_z)), target_t_(target_t), m_(steps),
          dim_(static_cast<int>(target_z_.size())), complex_(complex_model) {}

    void set_weight(double w) { weight_ = w; }
    int reals_per_step() const { return complex_ ? 2 * dim_ : dim_; }
    int variables() const { return reals_per_step() * m_; }

    double value_and_gradient(const std::vector<double>& x,
                              std::vector<double>& grad) override {
        grad.assign(x.size(), 0.0);
        prefix_.assign(static_cast<std::size_t>(m_ + 1) * dim_, Scalar(0, 0));
        double value = 0.0;
        double t_end = 0.0;
        std::vector<double> u2(m_, 0.0);
        for (int k = 0; k < m_; ++k) {
            for (int j = 0; j < dim_; ++j) {
                const Scalar d = delta(x, k, j);
                const Scalar z = prefix_[k * dim_ + j];
                prefix_[(k + 1) * dim_ + j] = z + d;
                u2[k] += std::norm(d);
                t_end += std::imag(std::conj(z) * d);
            }
            value += 0.5 * m_ * (u2[k] + 0.25 * u2[k] * u2[k]);
        }
        double mismatch2 = 0.0;
        for (int j = 0; j < dim_; ++j)
            mismatch2 += std::norm(prefix_[m_ * dim_ + j] - target_z_(j));
        const double dt = complex_ ? t_end - target_t_ : 0.0;
        value += 0.5 * weight_ * (mismatch2 + dt * dt);

        const double r = weight_ * dt;
        for (int k = 0; k < m_; ++k) {
            const double fz = m_ * (1.0 + 0.5 * u2[k]);
            for (int j = 0; j < dim_; ++j) {
                const Scalar d = delta(x, k, j);
                const Scalar z_k = prefix_[k * dim_ + j];
                const Scalar z_end = prefix_[m_ * dim_ + j];
                const Scalar suffix = z_end - prefix_[(k + 1) * dim_ + j];
                const Scalar ez = weight_ * (z_end - target_z_(j));
                double gx = fz * d.real() + ez.real();
                gx += r * (-z_k.imag() + suffix.imag());
                grad[idx(k, j)] = gx;
                if (complex_) {
                    double gy = fz * d.imag() + ez.imag();
                    gy += r * (z_k.real() - suffix.real());
                    grad[idx(k, j) + 1] = gy;
                }
            }
        }
        return value;
    }

    double length(const std::vector<double>& x) const {
        double len = 0.0;
        for (int k = 0; k < m_; ++k) {
            double u = 0.0;
            for (int j = 0; j < dim_; ++j) u += std::norm(delta(x, k, j));
            len += acosh_stable(1.0 + 0.5 * u);
        }
        return len;
    }

    double endpoint_residual(const std::vector<double>& x) const {
        Cvec z = Cvec::Zero(dim_);
        double t = 0.0;
        for (int k = 0; k < m_; ++k)
            for (int j = 0; j < dim_; ++j) {
                const Scalar d = delta(x, k, j);
                t += std::imag(std::conj(z(j)) * d);
                z(j) += d;
            }
        const double dz = (z - target_z_).norm();
        return complex_ ? std::hypot(dz, t - target_t_) : dz;
    }

    std::vector<double> initial() const {
        // chord with a vertical-matching sine bulge, as in the flat CC solver
        std::vector<Cvec> z(m_ + 1, Cvec::Zero(dim_));
        const double rr = target_z_.norm();
        const bool vertical =
            complex_ && target_t_ != 0.0 && (rr < 1e-12 || std::abs(target_t_) > 0.7 * rr * rr);
        if (!vertical) {
            const double beta =
                (complex_ && rr > 1e-12) ? -std::numbers::pi * target_t_ / (4.0 * rr) : 0.0;
            const Cvec dir = (rr > 1e-12) ? Cvec(target_z_ / rr) : Cvec::Zero(dim_);
            for (int k = 0; k <= m_; ++k) {
                const double s = static_cast<double>(k) / m_;
                z[k] = s * target_z_ +
                       Scalar(0.0, beta * std::sin(std::numbers::pi * s)) * dir;
            }
        } else {
            Cvec dir = Cvec::Zero(dim_);
            dir(0) = Scalar(1, 0);
            if (rr > 1e-12) dir = target_z_ / rr;
            const int half = m_ / 2;
            for (int k = 0; k <= half; ++k)
                z[k] = (static_cast<double>(k) / half) * target_z_;
            const double rho = std::sqrt(std::abs(target_t_) / (2.0 * std::numbers::pi));
            const double sign = target_t_ >= 0.0 ? 1.0 : -1.0;
            for (int k = half; k <= m_; ++k) {
                const double s = static_cast<double>(k - half) / (m_ - half);
                const Scalar loop =
                    rho * (std::exp(Scalar(0, sign * 2.0 * std::numbers::pi * s)) - 1.0);
                z[k] = target_z_ + loop * dir;
            }
        }
        std::vector<double> x(static_cast<std::size_t>(variables()));
        for (int k = 0; k < m_; ++k)
            for (int j = 0; j < dim_; ++j) {
                const Scalar d = z[k + 1](j) - z[k](j);
                x[idx(k, j)] = d.real();
                if (complex_) x[idx(k, j) + 1] = d.imag();
            }
        return x;
    }

private:
    int idx(int k, int j) const { return reals_per_step() * k + (complex_ ? 2 * j : j); }
    Scalar delta(const std::vector<double>& x, int k, int j) const {
        if (complex_) return {x[idx(k, j)], x[idx(k, j) + 1]};
        return {x[idx(k, j)], 0.0};
    }

    Cvec target_z_;
    double target_t_;
    int m_;
    int dim_;
    bool complex_;
    double weight_ = 1.0;
    std::vector<Scalar> prefix_;
};

} // namespace

double horospherical_distance(const BoundaryChart& bc, const IdealPoint& xi,
                              const IdealPoint& eta, HoroMethod method, int resolution,
                              heis::SolveDiagnostics* diag) {
    if (model::projectively_equal(xi, eta)) return 0.0;
    const HeisPoint p = bc.to_heis(xi);
    const HeisPoint q = bc.to_heis(eta);
    if (method == HoroMethod::Heis)
        return heis::cc_distance(p, q, heis::CcMethod::Shooting, resolution, diag);

    const HeisPoint w = heis::group_mul(heis::inverse(p), q);
    const bool complex_model = bc.horo().space().field == Field::Complex;
    AmbientHoroObjective objective(w.z, w.t, resolution, complex_model);
    std::vector<double> x = objective.initial();
    opt::LbfgsOptions options;
    options.max_iterations = 600;
    const double scale = w.z.norm() + std::sqrt(std::abs(w.t)) + 1e-9;
    int iterations = 0;
    for (double pw : {1e2, 1e4, 1e6, 1e8, 1e10}) {
        objective.set_weight(pw);
        options.gradient_tol = 1e-9 * scale * std::sqrt(pw);
        const auto res = opt::minimize(objective, x, options);
        iterations += res.iterations;
    }
    const double residual = objective.endpoint_residual(x);
    const bool ok = residual <= 1e-6 * scale;
    if (diag) {
        diag->iterations += iterations;
        diag->residual = residual;
        diag->converged = diag->converged && ok;
    }
    if (!ok)
        throw ConvergenceError("ambient horospherical optimizer endpoint residual too large",
                               residual, scale);
    return objective.length(x);
}

LevelProjection project_curve_to_level(const BoundaryChart& bc,
                                       const heis::HorizontalPath& boundary_curve,
                                       double t) {
    heis::validate_horizontal(boundary_curve);
    LevelProjection out;
    out.points.reserve(boundary_curve.samples.size());
    for (const auto& p : boundary_curve.samples)
        out.points.push_back(radial_project_horosphere(bc.horo().chart(), bc.ideal(p), t));
    for (std::size_t k = 0; k + 1 < out.points.size(); ++k)
        out.length += model::distance(out.points[k], out.points[k + 1]);
    return out;
}

// ---- spherical CC optimizer ---------------------------------------------------

namespace {

/// CC path on the unit tangent sphere in orthonormal coordinates; tangency is
/// held by a norm anchor and the contact constraint by Im<u_k, u_{k+1}>.
class SphereObjective final : public opt::Objective {
public:
    SphereObjective(Cvec a, Cvec b, int steps)
        : a_(std::move(a)), b_(std::move(b)), m_(steps),
          dim_(static_cast<int>(a_.size())) {}

    void set_weights(double contact, double norm) {
        wc_ = contact;
        wn_ = norm;
    }
    int variables() const { return 2 * dim_ * (m_ - 1); }

    double value_and_gradient(const std::vector<double>& x,
                              std::vector<double>& grad) override {
        grad.assign(x.size(), 0.0);
        double value = 0.0;
        for (int k = 0; k < m_; ++k) {
            double chord2 = 0.0;
            Scalar pair(0, 0);
            for (int j = 0; j < dim_; ++j) {
                const Scalar uk = u_at(x, k, j);
                const Scalar uk1 = u_at(x, k + 1, j);
                chord2 += std::norm(uk1 - uk);
                pair += std::conj(uk) * uk1;
            }
            const double g = pair.imag();
            value += 0.5 * m_ * chord2 + 0.5 * wc_ * m_ * g * g;
            for (int j = 0; j < dim_; ++j) {
                const Scalar uk = u_at(x, k, j);
                const Scalar uk1 = u_at(x, k + 1, j);
                const Scalar dz = uk1 - uk;
                if (k >= 1) {
                    add(grad, k, j, 0, -m_ * dz.real() + wc_ * m_ * g * uk1.imag());
                    add(grad, k, j, 1, -m_ * dz.imag() - wc_ * m_ * g * uk1.real());
                }
                if (k + 1 <= m_ - 1) {
                    add(grad, k + 1, j, 0, m_ * dz.real() - wc_ * m_ * g * uk.imag());
                    add(grad, k + 1, j, 1, m_ * dz.imag() + wc_ * m_ * g * uk.real());
                }
            }
        }
        for (int i = 1; i <= m_ - 1; ++i) {
            double n2 = 0.0;
            for (int j = 0; j < dim_; ++j) n2 += std::norm(u_at(x, i, j));
            const double excess = n2 - 1.0;
            value += 0.5 * wn_ * excess * excess;
            for (int j = 0; j < dim_; ++j) {
                const Scalar u = u_at(x, i, j);
                add(grad, i, j, 0, 2.0 * wn_ * excess * u.real());
                add(grad, i, j, 1, 2.0 * wn_ * excess * u.imag());
            }
        }
        return value;
    }

    double arc_length(const std::vector<double>& x) const {
        double len = 0.0;
        for (int k = 0; k < m_; ++k) {
            double chord2 = 0.0;
            double nk = 0.0, nk1 = 0.0;
            Cvec uk(dim_), uk1(dim_);
            for (int j = 0; j < dim_; ++j) {
                uk(j) = u_at(x, k, j);
                uk1(j) = u_at(x, k + 1, j);
                nk += std::norm(uk(j));
                nk1 += std::norm(uk1(j));
            }
            uk /= std::sqrt(nk);
            uk1 /= std::sqrt(nk1);
            chord2 = (uk1 - uk).squaredNorm();
            len += 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
        }
        return len;
    }

    double worst_contact(const std::vector<double>& x) const {
        double worst = 0.0;
        for (int k = 0; k < m_; ++k) {
            Scalar pair(0, 0);
            for (int j = 0; j < dim_; ++j)
                pair += std::conj(u_at(x, k, j)) * u_at(x, k + 1, j);
            worst = std::max(worst, std::abs(pair.imag()) * m_);
        }
        return worst;
    }

    std::vector<double> slerp_init() const {
        std::vector<Cvec> pts(m_ + 1);
        const Scalar overlap = a_.dot(b_);
        Cvec mid;
        if (std::abs(overlap + 1.0) < 1e-6) {
            // near-antipodal: route through a deterministic orthogonal waypoint
            int c = 0;
            double best = kInf;
            for (int j = 0; j < dim_; ++j)
                if (std::abs(a_(j)) < best) {
                    best = std::abs(a_(j));
                    c = j;
                }
            mid = Cvec::Zero(dim_);
            mid(c) = Scalar(1, 0);
            mid -= a_ * a_.dot(mid);
            mid.normalize();
        }
        for (int k = 0; k <= m_; ++k) {
            const double s = static_cast<double>(k) / m_;
            Cvec v;
            if (mid.size() == 0) {
                v = (1.0 - s) * a_ + s * b_;
            } else {
                v = (s < 0.5) ? Cvec((1.0 - 2.0 * s) * a_ + 2.0 * s * mid)
                              : Cvec((2.0 - 2.0 * s) * mid + (2.0 * s - 1.0) * b_);
            }
            const double nrm = v.norm();
            pts[k] = (nrm > 1e-9) ? Cvec(v / nrm) : mid;
        }
        std::vector<double> x(static_cast<std::size_t>(variables()));
        for (int k = 1; k < m_; ++k)
            for (int j = 0; j < dim_; ++j) {
                x[2 * ((k - 1) * dim_ + j)] = pts[k](j).real();
                x[2 * ((k - 1) * dim_ + j) + 1] = pts[k](j).imag();
            }
        return x;
    }

private:
    Scalar u_at(const std::vector<double>& x, int k, int j) const {
        if (k == 0) return a_(j);
        if (k == m_) return b_(j);
        return {x[2 * ((k - 1) * dim_ + j)], x[2 * ((k - 1) * dim_ + j) + 1]};
    }
    void add(std::vector<double>& g, int k, int j, int part, double v) const {
        g[2 * ((k - 1) * dim_ + j) + part] += v;
    }

    Cvec a_, b_;
    int m_;
    int dim_;
    double wc_ = 0.0;
    double wn_ = 1.0;
};

} // namespace

double spherical_distance(const ProjectivePoint& o, const IdealPoint& xi,
                          const IdealPoint& eta, int resolution,
                          heis::SolveDiagnostics* diag) {
    model::require_same_space(o.space(), xi.space());
    model::require_same_space(o.space(), eta.space());
    if (model::projectively_equal(xi, eta)) return 0.0;
    const Cvec u = model::unit_tangent_toward(o, xi).vec;
    const Cvec v = model::unit_tangent_toward(o, eta).vec;

    if (o.space().field == Field::Real) {
        // E(-1) is the whole tangent sphere; CC = round distance.
        const double chord2 = model::form(u - v, u - v).real();
        const double angle = 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
        return 0.5 * angle;
    }

    const int n = o.space().n;
    const Eigen::MatrixXcd frame = complement_frame(o.space(), o.rep(), nullptr, n);
    Cvec a(n), b(n);
    for (int j = 0; j < n; ++j) {
        a(j) = model::form(frame.col(j), u);
        b(j) = model::form(frame.col(j), v);
    }

    SphereObjective objective(a, b, resolution);
    std::vector<double> x = objective.slerp_init();
    opt::LbfgsOptions options;
    options.max_iterations = 2000;
    int iterations = 0;
    double len = 0.0, prev_len = kInf;
    for (double wc : {1e2, 1e4, 1e6, 1e8}) {
        objective.set_weights(wc, std::max(1e4, wc));
        options.gradient_tol = 1e-8 * std::sqrt(wc);
        const auto res = opt::minimize(objective, x, options);
        iterations += res.iterations;
        prev_len = len;
        len = objective.arc_length(x);
    }
    const double contact = objective.worst_contact(x);
    const bool ok = contact <= 1e-3 && std::abs(len - prev_len) <= 1e-4 * (1.0 + len);
    if (diag) {
        diag->iterations += iterations;
        diag->residual = contact;
        diag->converged = diag->converged && ok;
    }
    if (!ok)
        throw ConvergenceError("sphere CC optimizer did not converge", contact,
                               std::abs(len - prev_len));
    return 0.5 * len;
}

model::IdealPoint radial_ideal_through(const HoroChart& hc, const ProjectivePoint& x) {
    const Scalar c = model::form(x.rep(), hc.null_center());
    Cvec xi = 2.0 * x.rep() + hc.null_center() / c;
    return IdealPoint(hc.space(), std::move(xi));
}

TangentVector horo_to_sphere_map(const HoroChart& hc, const ProjectivePoint& x) {
    if (std::abs(model::busemann_value(hc.chart(), x)) > 1e-6)
        throw ChartError("point is off the chart horosphere");
    const IdealPoint xi = radial_ideal_through(hc, x);
    return model::unit_tangent_toward(hc.chart().basepoint(), xi);
}

void validate_chart(const BoundaryChart& bc, int samples, std::uint64_t seed) {
    const HoroChart& hc = bc.horo();
    const bool complex_model = hc.space().field == Field::Complex;
    const int dim = hc.heis_dim();
    Rng rng(seed);

    auto sample_point = [&]() {
        Cvec z(dim);
        for (int j = 0; j < dim; ++j)
            z(j) = Scalar(rng.normal(), complex_model ? rng.normal() : 0.0);
        const double t = complex_model ? rng.uniform(-3.0, 3.0) : 0.0;
        return HeisPoint{z, t};
    };

    for (int i = 0; i < samples; ++i) {
        const HeisPoint p = sample_point();
        const HeisPoint q = sample_point();
        const HeisPoint g = sample_point();

        const ProjectivePoint ep = hc.embed(p);
        if (std::abs(model::busemann_value(hc.chart(), ep)) > 1e-8)
            throw ChartError("embed left the zero horosphere");

        // round trips
        const HeisPoint back = hc.to_heis(ep);
        if ((back.z - p.z).norm() + std::abs(back.t - p.t) > 1e-8)
            throw ChartError("horosphere chart round trip failed");
        const HeisPoint bback = bc.to_heis(bc.ideal(p));
        if ((bback.z - p.z).norm() + std::abs(bback.t - p.t) > 1e-8)
            throw ChartError("boundary chart round trip failed");

        // left-invariance of embedded distances
        const double d0 = model::distance(hc.embed(p), hc.embed(q));
        const double d1 = model::distance(hc.embed(heis::group_mul(g, p)),
                                          hc.embed(heis::group_mul(g, q)));
        if (std::abs(d0 - d1) > 1e-8 * (1.0 + d0))
            throw ChartError("embedded distances are not left-invariant");

        // radial consistency: the center geodesic through ideal(p) meets H at embed(p)
        const ProjectivePoint on_h =
            radial_project_horosphere(hc.chart(), bc.ideal(p), 0.0);
        if (model::distance(on_h, ep) > 1e-6)
            throw ChartError("radial projection misses the embedded point");

        // differential isometry, finite differences at step 1e-4
        Cvec dz(dim);
        for (int j = 0; j < dim; ++j)
            dz(j) = Scalar(rng.normal(), complex_model ? rng.normal() : 0.0);
        double dt = complex_model ? rng.normal() : 0.0;
        const double nrm = std::sqrt(dz.squaredNorm() + dt * dt);
        dz /= nrm;
        dt /= nrm;
        const double h = 1e-4;
        const HeisPoint step{h * dz, h * dt};
        const double fd = model::distance(hc.embed(heis::group_mul(p, step)), ep) / h;
        if (std::abs(fd - 1.0) > 1e-5)
            throw ChartError("chart differential is not isometric");
    }
}

} // namespace hypcc::corr
