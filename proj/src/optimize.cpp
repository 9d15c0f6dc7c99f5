#include "closet/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace closet {

std::vector<double> numeric_gradient(const ObjectiveFn& f, const std::vector<double>& x,
                                     double step) {
    std::vector<double> g(x.size());
    std::vector<double> probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + step;
        double hi = f(probe);
        probe[i] = x[i] - step;
        double lo = f(probe);
        probe[i] = x[i];
        g[i] = (hi - lo) / (2.0 * step);
    }
    return g;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

MinimizeResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double> x0,
                              const MinimizeOptions& opts) {
    const std::size_t dim = x0.size();
    MinimizeResult res;
    res.x = std::move(x0);
    res.f = f(res.x);

    std::vector<double> grad = numeric_gradient(f, res.x, opts.grad_step);

    struct Pair {
        std::vector<double> s, y;
        double rho;
    };
    std::deque<Pair> history;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        res.iters = iter + 1;
        if (inf_norm(grad) <= opts.g_tol) {
            res.converged = true;
            break;
        }

        // two-loop recursion for the search direction
        std::vector<double> q = grad;
        std::vector<double> alpha(history.size());
        for (std::size_t k = history.size(); k-- > 0;) {
            alpha[k] = history[k].rho * dot(history[k].s, q);
            for (std::size_t i = 0; i < dim; ++i) q[i] -= alpha[k] * history[k].y[i];
        }
        if (!history.empty()) {
            const Pair& last = history.back();
            double gamma = dot(last.s, last.y) / dot(last.y, last.y);
            for (double& qi : q) qi *= gamma;
        }
        for (std::size_t k = 0; k < history.size(); ++k) {
            double beta = history[k].rho * dot(history[k].y, q);
            for (std::size_t i = 0; i < dim; ++i) q[i] += history[k].s[i] * (alpha[k] - beta);
        }
        for (double& qi : q) qi = -qi;

        double descent = dot(q, grad);
        if (descent >= 0.0) {
            // not a descent direction; fall back to steepest descent
            for (std::size_t i = 0; i < dim; ++i) q[i] = -grad[i];
            descent = dot(q, grad);
            history.clear();
        }

        // Armijo backtracking
        const double c1 = 1e-4;
        double step = 1.0;
        std::vector<double> x_new(dim);
        double f_new = res.f;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            for (std::size_t i = 0; i < dim; ++i) x_new[i] = res.x[i] + step * q[i];
            f_new = f(x_new);
            if (f_new <= res.f + c1 * step * descent) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = true; // no progress possible at this scale
            break;
        }

        std::vector<double> grad_new = numeric_gradient(f, x_new, opts.grad_step);
        Pair p;
        p.s.resize(dim);
        p.y.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            p.s[i] = x_new[i] - res.x[i];
            p.y[i] = grad_new[i] - grad[i];
        }
        double sy = dot(p.s, p.y);
        if (sy > 1e-12 * std::sqrt(dot(p.s, p.s)) * std::sqrt(dot(p.y, p.y))) {
            p.rho = 1.0 / sy;
            history.push_back(std::move(p));
            if (int(history.size()) > opts.history) history.pop_front();
        }

        double f_prev = res.f;
        res.x = std::move(x_new);
        res.f = f_new;
        grad = std::move(grad_new);
        x_new.assign(dim, 0.0);

        if (std::abs(f_prev - res.f) <= opts.f_tol * std::max(1.0, std::abs(res.f))) {
            res.converged = true;
            break;
        }
    }
    return res;
}

} // namespace closet
