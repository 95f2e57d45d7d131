#include "hypcc/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace hypcc::opt {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_norm(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

LbfgsResult minimize(Objective& objective, std::vector<double>& x,
                     const LbfgsOptions& options) {
    const std::size_t n = x.size();
    std::vector<double> grad(n), new_x(n), new_grad(n), direction(n);
    std::deque<std::pair<std::vector<double>, std::vector<double>>> pairs;  // (s, y)
    std::deque<double> rho;

    double f = objective.value_and_gradient(x, grad);
    LbfgsResult result;
    result.value = f;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        result.iterations = iter;
        result.gradient_norm = max_norm(grad);
        if (result.gradient_norm <= options.gradient_tol) {
            result.converged = true;
            break;
        }

        // Two-loop recursion.
        direction = grad;
        std::vector<double> alpha(pairs.size());
        for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i) {
            alpha[i] = rho[i] * dot(pairs[i].first, direction);
            for (std::size_t j = 0; j < n; ++j)
                direction[j] -= alpha[i] * pairs[i].second[j];
        }
        if (!pairs.empty()) {
            const auto& [s, y] = pairs.back();
            const double gamma = dot(s, y) / std::max(dot(y, y), 1e-300);
            for (double& v : direction) v *= gamma;
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const double beta = rho[i] * dot(pairs[i].second, direction);
            for (std::size_t j = 0; j < n; ++j)
                direction[j] += (alpha[i] - beta) * pairs[i].first[j];
        }
        for (double& v : direction) v = -v;

        double descent = dot(grad, direction);
        if (descent >= 0.0) {  // fall back to steepest descent
            for (std::size_t j = 0; j < n; ++j) direction[j] = -grad[j];
            descent = -dot(grad, grad);
        }

        // Armijo backtracking.
        double step = pairs.empty() ? std::min(1.0, 1.0 / std::max(1e-12, max_norm(direction)))
                                    : 1.0;
        double new_f = f;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            for (std::size_t j = 0; j < n; ++j) new_x[j] = x[j] + step * direction[j];
            new_f = objective.value_and_gradient(new_x, new_grad);
            if (new_f <= f + 1e-4 * step * descent) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no progress possible at double precision

        std::vector<double> s(n), y(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = new_x[j] - x[j];
            y[j] = new_grad[j] - grad[j];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
            pairs.emplace_back(std::move(s), std::move(y));
            rho.push_back(1.0 / sy);
            if (static_cast<int>(pairs.size()) > options.memory) {
                pairs.pop_front();
                rho.pop_front();
            }
        }

        const double decrease = f - new_f;
        x.swap(new_x);
        grad.swap(new_grad);
        f = new_f;
        result.value = f;
        if (decrease <= options.step_tol * (std::abs(f) + 1.0)) {
            result.gradient_norm = max_norm(grad);
            result.converged = result.gradient_norm <= 1e3 * options.gradient_tol;
            break;
        }
    }
    result.value = f;
    result.gradient_norm = max_norm(grad);
    if (result.gradient_norm <= options.gradient_tol) result.converged = true;
    return result;
}

std::vector<double> numerical_gradient(Objective& objective, const std::vector<double>& x,
                                       double h) {
    std::vector<double> g(x.size()), scratch(x.size());
    std::vector<double> xp = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + h;
        const double fp = objective.value_and_gradient(xp, scratch);
        xp[i] = x[i] - h;
        const double fm = objective.value_and_gradient(xp, scratch);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

} // namespace hypcc::opt
