#pragma once

#include <vector>

namespace hypcc::opt {

/// Smooth objective with analytic gradient, over a flat real parameter vector.
class Objective {
public:
    virtual ~Objective() = default;
    virtual double value_and_gradient(const std::vector<double>& x,
                                      std::vector<double>& grad) = 0;
};

struct LbfgsOptions {
    int max_iterations = 400;
    int memory = 8;
    double gradient_tol = 1e-9;   // on the max-norm of the gradient
    double step_tol = 1e-14;      // relative function decrease considered stalled
};

struct LbfgsResult {
    double value = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Limited-memory BFGS with Armijo backtracking. Minimizes in place.
LbfgsResult minimize(Objective& objective, std::vector<double>& x,
                     const LbfgsOptions& options = {});

/// Central-difference gradient, for gradient checks in tests.
std::vector<double> numerical_gradient(Objective& objective, const std::vector<double>& x,
                                       double h = 1e-6);

} // namespace hypcc::opt
