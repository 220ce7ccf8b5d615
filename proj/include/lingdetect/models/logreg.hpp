#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lingdetect/detail/math.hpp"

namespace lingdetect {

struct LogRegParams {
    double l2_strength = 1.0;  // penalty on weights, never on the bias
    int max_iterations = 1000;
    double tolerance = 1e-8;  // max-norm of the gradient
};

struct LogRegModel {
    std::vector<double> weights;
    double bias = 0.0;
    int iterations = 0;
    bool converged = false;

    double decision_margin(const std::vector<double>& x) const {
        double m = bias;
        for (std::size_t j = 0; j < weights.size(); ++j) m += weights[j] * x[j];
        return m;
    }

    double predict_proba(const std::vector<double>& x) const {
        return 1.0 / (1.0 + std::exp(-decision_margin(x)));
    }
};

// Newton / IRLS fit of L2-regularized logistic regression. The Hessian
// X'WX + lambda*I (bias unpenalized) is solved by Cholesky each step.
inline LogRegModel fit_logreg(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y,
                              const LogRegParams& params) {
    const std::size_t n = x.size();
    const std::size_t d = x[0].size();
    const std::size_t m = d + 1;  // weights plus bias as the last entry

    LogRegModel model;
    model.weights.assign(d, 0.0);

    std::vector<double> theta(m, 0.0);
    std::vector<double> p(n), grad(m), hess(m * m);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double margin = theta[d];
            for (std::size_t j = 0; j < d; ++j) margin += theta[j] * x[i][j];
            p[i] = 1.0 / (1.0 + std::exp(-margin));
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        std::fill(hess.begin(), hess.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = p[i] - static_cast<double>(y[i]);
            const double w = std::max(p[i] * (1.0 - p[i]), 1e-12);
            for (std::size_t j = 0; j < d; ++j) grad[j] += r * x[i][j];
            grad[d] += r;
            for (std::size_t j = 0; j < m; ++j) {
                const double xj = j < d ? x[i][j] : 1.0;
                for (std::size_t k = j; k < m; ++k) {
                    const double xk = k < d ? x[i][k] : 1.0;
                    hess[j * m + k] += w * xj * xk;
                }
            }
        }
        for (std::size_t j = 0; j < d; ++j) {
            grad[j] += params.l2_strength * theta[j];
            hess[j * m + j] += params.l2_strength;
        }
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < j; ++k) hess[j * m + k] = hess[k * m + j];

        double gmax = 0.0;
        for (double g : grad) gmax = std::max(gmax, std::fabs(g));
        model.iterations = iter;
        if (gmax < params.tolerance) {
            model.converged = true;
            break;
        }

        const std::vector<double> step =
            detail::cholesky_solve(hess, grad, m);
        for (std::size_t j = 0; j < m; ++j) theta[j] -= step[j];
    }

    for (std::size_t j = 0; j < d; ++j) model.weights[j] = theta[j];
    model.bias = theta[d];
    return model;
}

} // namespace lingdetect
