#pragma once

#include <functional>
#include <vector>

namespace closet {

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

struct MinimizeOptions {
    int max_iters = 500;
    double f_tol = 1e-8;     // relative objective decrease
    double g_tol = 1e-10;    // gradient infinity norm
    double grad_step = 1e-6; // central-difference step
    int history = 6;         // L-BFGS memory
};

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    int iters = 0;
    bool converged = false;
};

std::vector<double> numeric_gradient(const ObjectiveFn& f, const std::vector<double>& x,
                                     double step);

// Limited-memory BFGS with numeric gradients and Armijo backtracking.
MinimizeResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double> x0,
                              const MinimizeOptions& opts = {});

} // namespace closet
