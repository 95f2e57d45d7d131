#include "hypcc/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypcc/lbfgs.hpp"
#include "hypcc/numeric.hpp"

namespace hypcc::heis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_dim(const Cvec& a, const Cvec& b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("Heisenberg operands differ in dimension");
}

Scalar herm(const Cvec& a, const Cvec& b) { return a.dot(b); }  // conjugates a

/// Swept-angle profile mu(theta) = (theta - sin theta) / (4 sin^2(theta/2)),
/// strictly increasing from 0 to +inf on (0, 2 pi).
double mu_profile(double theta) {
    if (theta < 0.05) {
        const double t2 = theta * theta;
        return theta / 6.0 * (1.0 + t2 / 30.0 + t2 * t2 / 840.0);
    }
    const double s = std::sin(0.5 * theta);
    return (theta - std::sin(theta)) / (4.0 * s * s);
}

double arc_length_for(double r, double theta) {
    if (theta < 1e-8) return r;
    return r * 0.5 * theta / std::sin(0.5 * theta);
}

// ---- variational solver -----------------------------------------------------

/// Horizontal polyline with increments as unknowns; the vertical coordinate is
/// reconstructed by the group law and the endpoint enters through a penalty.
class CcObjective final : public opt::Objective {
public:
    CcObjective(Cvec target_z, double target_t, int steps)
        : target_z_(std::move(target_z)), target_t_(target_t), m_(steps),
          dim_(static_cast<int>(target_z_.size())) {}

    void set_weight(double w) { weight_ = w; }
    int variables() const { return 2 * dim_ * m_; }

    double value_and_gradient(const std::vector<double>& x,
                              std::vector<double>& grad) override {
        grad.assign(x.size(), 0.0);
        prefix_.assign(static_cast<std::size_t>(m_ + 1) * dim_, Scalar(0, 0));
        double energy = 0.0;
        double t_end = 0.0;
        for (int k = 0; k < m_; ++k) {
            for (int j = 0; j < dim_; ++j) {
                const Scalar d(x[idx(k, j)], x[idx(k, j) + 1]);
                const Scalar z = prefix_[k * dim_ + j];
                prefix_[(k + 1) * dim_ + j] = z + d;
                energy += std::norm(d);
                t_end += std::imag(std::conj(z) * d);
            }
        }
        double value = 0.5 * m_ * energy;

        double mismatch2 = 0.0;
        for (int j = 0; j < dim_; ++j)
            mismatch2 += std::norm(prefix_[m_ * dim_ + j] - target_z_(j));
        const double dt = t_end - target_t_;
        value += 0.5 * weight_ * (mismatch2 + dt * dt);

        const double r = weight_ * dt;
        for (int k = 0; k < m_; ++k) {
            for (int j = 0; j < dim_; ++j) {
                const Scalar d(x[idx(k, j)], x[idx(k, j) + 1]);
                const Scalar z_k = prefix_[k * dim_ + j];
                const Scalar z_end = prefix_[m_ * dim_ + j];
                const Scalar suffix = z_end - prefix_[(k + 1) * dim_ + j];
                const Scalar ez = weight_ * (z_end - target_z_(j));
                double gx = m_ * d.real() + ez.real();
                double gy = m_ * d.imag() + ez.imag();
                gx += r * (-z_k.imag() + suffix.imag());
                gy += r * (z_k.real() - suffix.real());
                grad[idx(k, j)] = gx;
                grad[idx(k, j) + 1] = gy;
            }
        }
        return value;
    }

    Cvec end_z(const std::vector<double>& x) const {
        Cvec z = Cvec::Zero(dim_);
        for (int k = 0; k < m_; ++k)
            for (int j = 0; j < dim_; ++j)
                z(j) += Scalar(x[idx(k, j)], x[idx(k, j) + 1]);
        return z;
    }

    double end_t(const std::vector<double>& x) const {
        Cvec z = Cvec::Zero(dim_);
        double t = 0.0;
        for (int k = 0; k < m_; ++k)
            for (int j = 0; j < dim_; ++j) {
                const Scalar d(x[idx(k, j)], x[idx(k, j) + 1]);
                t += std::imag(std::conj(z(j)) * d);
                z(j) += d;
            }
        return t;
    }

    double length(const std::vector<double>& x) const {
        double len = 0.0;
        for (int k = 0; k < m_; ++k) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j) {
                s += x[idx(k, j)] * x[idx(k, j)] + x[idx(k, j) + 1] * x[idx(k, j) + 1];
            }
            len += std::sqrt(s);
        }
        return len;
    }

private:
    int idx(int k, int j) const { return 2 * (k * dim_ + j); }

    Cvec target_z_;
    double target_t_;
    int m_;
    int dim_;
    double weight_ = 1.0;
    std::vector<Scalar> prefix_;
};

/// Deterministic initial polyline: a chord with a sine bulge matching the
/// vertical gain, or chord + closing loop when the target is strongly vertical.
std::vector<double> initial_increments(const Cvec& target_z, double target_t, int m) {
    const int dim = static_cast<int>(target_z.size());
    const double r = target_z.norm();
    std::vector<Cvec> z(m + 1, Cvec::Zero(dim));
    const bool vertical = target_t != 0.0 && (r < 1e-12 || std::abs(target_t) > 0.7 * r * r);
    if (!vertical) {
        const double beta = (r > 1e-12) ? -std::numbers::pi * target_t / (4.0 * r) : 0.0;
        const Cvec dir = (r > 1e-12) ? Cvec(target_z / r) : Cvec::Zero(dim);
        for (int k = 0; k <= m; ++k) {
            const double s = static_cast<double>(k) / m;
            z[k] = s * target_z + Scalar(0.0, beta * std::sin(std::numbers::pi * s)) * dir;
        }
    } else {
        // First half: chord to target_z. Second half: closing circle whose
        // enclosed area supplies the remaining vertical gain.
        Cvec dir = Cvec::Zero(dim);
        dir(0) = Scalar(1, 0);
        if (r > 1e-12) dir = target_z / r;
        const int half = m / 2;
        for (int k = 0; k <= half; ++k)
            z[k] = (static_cast<double>(k) / half) * target_z;
        const double rho = std::sqrt(std::abs(target_t) / kTwoPi);
        const double sign = target_t >= 0.0 ? 1.0 : -1.0;
        for (int k = half; k <= m; ++k) {
            const double s = static_cast<double>(k - half) / (m - half);
            const Scalar loop = rho * (std::exp(Scalar(0, sign * kTwoPi * s)) - 1.0);
            z[k] = target_z + loop * dir;
        }
    }
    std::vector<double> x(static_cast<std::size_t>(2 * dim * m));
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < dim; ++j) {
            const Scalar d = z[k + 1](j) - z[k](j);
            x[2 * (k * dim + j)] = d.real();
            x[2 * (k * dim + j) + 1] = d.imag();
        }
    return x;
}

double cc_variational(const Cvec& target_z, double target_t, int m,
                      SolveDiagnostics* diag) {
    CcObjective objective(target_z, target_t, m);
    std::vector<double> x = initial_increments(target_z, target_t, m);
    const double scale = target_z.norm() + std::sqrt(std::abs(target_t)) + 1e-9;

    opt::LbfgsOptions options;
    options.max_iterations = 600;
    int iterations = 0;
    bool converged = true;
    for (double w : {1e2, 1e4, 1e6, 1e8, 1e10}) {
        objective.set_weight(w);
        options.gradient_tol = 1e-9 * scale * std::sqrt(w);
        const auto res = opt::minimize(objective, x, options);
        iterations += res.iterations;
        converged = res.converged;
    }
    const double res_z = (objective.end_z(x) - target_z).norm();
    const double res_t = std::abs(objective.end_t(x) - target_t);
    const double residual = std::hypot(res_z, res_t);
    if (diag) {
        diag->iterations += iterations;
        diag->residual = residual;
        diag->converged = diag->converged && converged && residual <= 1e-6 * scale;
    }
    if (residual > 1e-4 * scale)
        throw ConvergenceError("variational CC solver endpoint residual too large",
                               residual, res_t);
    return objective.length(x);
}

// ---- Riemannian solver ------------------------------------------------------

/// Discrete energy of a path through interior points (z_k, t_k) in the
/// left-invariant metric making E1 + E2 orthonormal; endpoints fixed.
class RiemannianObjective final : public opt::Objective {
public:
    RiemannianObjective(Cvec target_z, double target_t, int steps)
        : target_z_(std::move(target_z)), target_t_(target_t), m_(steps),
          dim_(static_cast<int>(target_z_.size())) {}

    int variables() const { return (2 * dim_ + 1) * (m_ - 1); }

    double value_and_gradient(const std::vector<double>& x,
                              std::vector<double>& grad) override {
        grad.assign(x.size(), 0.0);
        double value = 0.0;
        for (int k = 0; k < m_; ++k) {
            Scalar zk, zk1;
            double dtau = t_at(x, k + 1) - t_at(x, k);
            double dz2 = 0.0;
            for (int j = 0; j < dim_; ++j) {
                zk = z_at(x, k, j);
                zk1 = z_at(x, k + 1, j);
                const Scalar dz = zk1 - zk;
                dz2 += std::norm(dz);
                dtau -= std::imag(std::conj(zk) * dz);
            }
            value += dz2 + dtau * dtau;
            // gradient contributions
            for (int j = 0; j < dim_; ++j) {
                zk = z_at(x, k, j);
                zk1 = z_at(x, k + 1, j);
                const Scalar dz = zk1 - zk;
                if (k >= 1) {  // left endpoint is a variable
                    add(grad, k, j, 0,
                        -2.0 * dz.real() + 2.0 * dtau * (-zk1.imag()));
                    add(grad, k, j, 1,
                        -2.0 * dz.imag() + 2.0 * dtau * (zk1.real()));
                }
                if (k + 1 <= m_ - 1) {  // right endpoint is a variable
                    add(grad, k + 1, j, 0,
                        2.0 * dz.real() + 2.0 * dtau * (zk.imag()));
                    add(grad, k + 1, j, 1,
                        2.0 * dz.imag() + 2.0 * dtau * (-zk.real()));
                }
            }
            if (k >= 1) add_t(grad, k, -2.0 * dtau);
            if (k + 1 <= m_ - 1) add_t(grad, k + 1, 2.0 * dtau);
        }
        for (double& g : grad) g *= 0.5 * m_;
        return 0.5 * m_ * value;
    }

    double length(const std::vector<double>& x) const {
        double len = 0.0;
        for (int k = 0; k < m_; ++k) {
            double dtau = t_at(x, k + 1) - t_at(x, k);
            double dz2 = 0.0;
            for (int j = 0; j < dim_; ++j) {
                const Scalar dz = z_at(x, k + 1, j) - z_at(x, k, j);
                dz2 += std::norm(dz);
                dtau -= std::imag(std::conj(z_at(x, k, j)) * dz);
            }
            len += std::sqrt(dz2 + dtau * dtau);
        }
        return len;
    }

    std::vector<double> linear_init() const {
        std::vector<double> x(static_cast<std::size_t>(variables()));
        for (int k = 1; k < m_; ++k) {
            const double s = static_cast<double>(k) / m_;
            for (int j = 0; j < dim_; ++j) {
                x[base(k) + 2 * j] = s * target_z_(j).real();
                x[base(k) + 2 * j + 1] = s * target_z_(j).imag();
            }
            x[base(k) + 2 * dim_] = s * target_t_;
        }
        return x;
    }

private:
    int base(int k) const { return (2 * dim_ + 1) * (k - 1); }
    Scalar z_at(const std::vector<double>& x, int k, int j) const {
        if (k == 0) return {0.0, 0.0};
        if (k == m_) return target_z_(j);
        return {x[base(k) + 2 * j], x[base(k) + 2 * j + 1]};
    }
    double t_at(const std::vector<double>& x, int k) const {
        if (k == 0) return 0.0;
        if (k == m_) return target_t_;
        return x[base(k) + 2 * dim_];
    }
    void add(std::vector<double>& g, int k, int j, int part, double v) const {
        g[base(k) + 2 * j + part] += v;
    }
    void add_t(std::vector<double>& g, int k, double v) const {
        g[base(k) + 2 * dim_] += v;
    }

    Cvec target_z_;
    double target_t_;
    int m_;
    int dim_;
};

double shooting_theta(double r, double t, bool* bracket_ok) {
    const double target = std::abs(t) / (r * r);
    const double hi = kTwoPi - 1e-6;
    if (target > mu_profile(hi)) {
        *bracket_ok = false;
        return 0.0;
    }
    *bracket_ok = true;
    if (target <= mu_profile(1e-12)) return 1e-12;
    return bisect([&](double th) { return mu_profile(th) - target; }, 1e-12, hi, 1e-13);
}

} // namespace

HeisPoint identity(int dim) { return {Cvec::Zero(dim), 0.0}; }

HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q) {
    require_same_dim(p.z, q.z);
    return {p.z + q.z, p.t + q.t + std::imag(herm(p.z, q.z))};
}

HeisPoint inverse(const HeisPoint& p) { return {-p.z, -p.t}; }

HeisVector bracket(const HeisVector& v, const HeisVector& w) {
    require_same_dim(v.z, w.z);
    return {Cvec::Zero(v.z.size()), 2.0 * std::imag(herm(v.z, w.z))};
}

HeisPoint dilation(double lambda, const HeisPoint& p) {
    if (lambda <= 0.0) throw DomainError("dilation coefficient must be positive");
    return {lambda * p.z, lambda * lambda * p.t};
}

double cygan_distance(const HeisPoint& p, const HeisPoint& q) {
    const HeisPoint w = group_mul(inverse(p), q);
    const double z2 = w.z.squaredNorm();
    return std::pow(z2 * z2 + w.t * w.t, 0.25);
}

double cc_distance(const HeisPoint& p, const HeisPoint& q, CcMethod method,
                   int resolution, SolveDiagnostics* diag) {
    const HeisPoint w = group_mul(inverse(p), q);
    const double r = w.z.norm();
    const double at = std::abs(w.t);
    if (r < 1e-15 && at < 1e-15) return 0.0;
    if (at <= 1e-14 * std::max(1.0, r * r)) return r;  // straight horizontal chord

    if (method == CcMethod::Shooting) {
        if (r <= 1e-12 * std::sqrt(at)) return std::sqrt(kTwoPi * at);
        bool ok = false;
        const double theta = shooting_theta(r, w.t, &ok);
        if (ok) return arc_length_for(r, theta);
        if (diag) {
            diag->fallback = true;
            diag->note = "shooting bracket exhausted; variational fallback";
        }
        // fall through to the variational route
    }
    return cc_variational(w.z, w.t, resolution, diag);
}

double riemannian_distance(const HeisPoint& p, const HeisPoint& q, int resolution,
                           SolveDiagnostics* diag) {
    const HeisPoint w = group_mul(inverse(p), q);
    if (w.z.norm() < 1e-15 && std::abs(w.t) < 1e-15) return 0.0;
    RiemannianObjective objective(w.z, w.t, resolution);
    std::vector<double> x = objective.linear_init();
    const double scale = 1.0 + w.z.norm() + std::abs(w.t);
    opt::LbfgsOptions options;
    options.max_iterations = 2000;
    options.gradient_tol = 1e-7 * scale;
    const auto res = opt::minimize(objective, x, options);
    // near the optimum the value error is ~ |grad|^2 / lambda_min, so a
    // 1e-4-scale gradient already pins the length far below test tolerances
    const bool ok = res.gradient_norm <= 1e-4 * scale;
    if (diag) {
        diag->iterations += res.iterations;
        diag->residual = res.gradient_norm;
        diag->converged = diag->converged && ok;
    }
    if (!ok)
        throw ConvergenceError("Riemannian path optimizer did not converge",
                               res.gradient_norm, res.value);
    return objective.length(x);
}

void validate_horizontal(const HorizontalPath& path) {
    double worst = 0.0;
    int worst_step = -1;
    for (std::size_t k = 0; k + 1 < path.samples.size(); ++k) {
        const auto& a = path.samples[k];
        const auto& b = path.samples[k + 1];
        const double lift = std::imag(herm(a.z, Cvec(b.z - a.z)));
        const double viol = std::abs(b.t - a.t - lift);
        if (viol > worst) {
            worst = viol;
            worst_step = static_cast<int>(k);
        }
    }
    if (worst > 1e-8)
        throw ConstraintViolationError("path is not horizontal", worst_step, worst);
}

double horizontal_length(const HorizontalPath& path) {
    validate_horizontal(path);
    double len = 0.0;
    for (std::size_t k = 0; k + 1 < path.samples.size(); ++k)
        len += (path.samples[k + 1].z - path.samples[k].z).norm();
    return len;
}

HorizontalPath straight_horizontal(const HeisPoint& start, const Cvec& dz, int resolution) {
    HorizontalPath path;
    path.resolution = resolution;
    path.samples.reserve(resolution + 1);
    path.samples.push_back(start);
    const HeisPoint step{dz / resolution, 0.0};
    for (int k = 0; k < resolution; ++k)
        path.samples.push_back(group_mul(path.samples.back(), step));
    return path;
}

HorizontalPath lift_horizontal(const std::vector<Cvec>& z_samples, double t0) {
    HorizontalPath path;
    path.resolution = static_cast<int>(z_samples.size()) - 1;
    path.samples.reserve(z_samples.size());
    double t = t0;
    for (std::size_t k = 0; k < z_samples.size(); ++k) {
        if (k > 0) t += std::imag(herm(z_samples[k - 1], Cvec(z_samples[k] - z_samples[k - 1])));
        path.samples.push_back({z_samples[k], t});
    }
    return path;
}

HorizontalPath dilate_path(const HorizontalPath& path, double lambda) {
    HorizontalPath out;
    out.resolution = path.resolution;
    out.samples.reserve(path.samples.size());
    for (const auto& p : path.samples) out.samples.push_back(dilation(lambda, p));
    return out;
}

HorizontalPath cc_geodesic_path(const HeisPoint& p, const HeisPoint& q, int resolution) {
    const HeisPoint w = group_mul(inverse(p), q);
    const double r = w.z.norm();
    const int dim = static_cast<int>(w.z.size());
    std::vector<Cvec> zs(resolution + 1, Cvec::Zero(dim));

    Cvec dir = Cvec::Zero(dim);
    dir(0) = Scalar(1, 0);
    if (r > 1e-14) dir = w.z / r;

    double theta = 0.0;
    double arc = r;
    if (std::abs(w.t) > 1e-14 * std::max(1.0, r * r)) {
        if (r <= 1e-12 * std::sqrt(std::abs(w.t))) {
            theta = kTwoPi * (w.t >= 0 ? 1.0 : -1.0);
            arc = std::sqrt(kTwoPi * std::abs(w.t));
        } else {
            bool ok = false;
            theta = shooting_theta(r, w.t, &ok) * (w.t >= 0 ? 1.0 : -1.0);
            if (!ok) throw ConvergenceError("no shooting profile for this pair", r, w.t);
            arc = arc_length_for(r, std::abs(theta));
        }
    }
    for (int k = 0; k <= resolution; ++k) {
        const double s = static_cast<double>(k) / resolution;
        Scalar zeta;
        if (std::abs(theta) < 1e-9) {
            zeta = arc * s;
        } else {
            zeta = arc * (std::exp(Scalar(0, theta * s)) - 1.0) / Scalar(0, theta);
        }
        zs[k] = zeta * dir;
    }
    // rotate the profile so its endpoint matches w.z exactly in phase
    if (r > 1e-14 && std::abs(theta) >= 1e-9) {
        const Scalar endpoint = arc * (std::exp(Scalar(0, theta)) - 1.0) / Scalar(0, theta);
        const Scalar phase = (std::abs(endpoint) > 0) ? Scalar(r, 0) / endpoint : Scalar(1, 0);
        for (auto& z : zs) z *= phase;
    }
    HorizontalPath reduced = lift_horizontal(zs, 0.0);
    HorizontalPath out;
    out.resolution = resolution;
    out.samples.reserve(reduced.samples.size());
    for (const auto& s : reduced.samples) out.samples.push_back(group_mul(p, s));
    return out;
}

} // namespace hypcc::heis
