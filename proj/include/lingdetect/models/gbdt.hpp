#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "lingdetect/models/tree.hpp"

namespace lingdetect {

struct GbdtParams {
    int n_rounds = 400;
    int max_depth = 6;
    double learning_rate = 0.1;
    double lambda = 1.0;
    double min_child_weight = 1.0;
    double base_margin = 0.0;
};

// Gradient-boosted trees with logistic loss. Trees store leaf values
// already scaled by the learning rate, so the margin is base + sum of
// leaf values along each tree's routing path.
struct GbdtModel {
    double base_margin = 0.0;
    std::vector<Tree> trees;

    double predict_margin(const std::vector<double>& x) const {
        double margin = base_margin;
        for (const Tree& t : trees) margin += t.predict(x);
        return margin;
    }

    double predict_proba(const std::vector<double>& x) const {
        return 1.0 / (1.0 + std::exp(-predict_margin(x)));
    }
};

struct GbdtFitResult {
    GbdtModel model;
    std::vector<double> train_log_loss;  // one entry per boosting round
};

inline GbdtFitResult fit_gbdt(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y,
                              const GbdtParams& params) {
    const std::size_t n = x.size();
    GbdtFitResult result;
    result.model.base_margin = params.base_margin;
    result.model.trees.reserve(static_cast<std::size_t>(params.n_rounds));
    result.train_log_loss.reserve(static_cast<std::size_t>(params.n_rounds));

    detail::RegTreeParams tp;
    tp.max_depth = params.max_depth;
    tp.lambda = params.lambda;
    tp.min_child_weight = params.min_child_weight;
    tp.learning_rate = params.learning_rate;

    std::vector<double> margin(n, params.base_margin);
    std::vector<double> grad(n), hess(n);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);

    for (int round = 0; round < params.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = 1.0 / (1.0 + std::exp(-margin[i]));
            grad[i] = p - static_cast<double>(y[i]);
            hess[i] = std::max(p * (1.0 - p), 1e-16);
        }
        detail::GradientTreeBuilder builder(x, grad, hess, tp);
        Tree tree = builder.build(all);
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += tree.predict(x[i]);
            const double p = 1.0 / (1.0 + std::exp(-margin[i]));
            const double eps = 1e-15;
            loss -= y[i] == 1 ? std::log(std::max(p, eps))
                              : std::log(std::max(1.0 - p, eps));
        }
        result.train_log_loss.push_back(loss / static_cast<double>(n));
        result.model.trees.push_back(std::move(tree));
    }
    return result;
}

} // namespace lingdetect
