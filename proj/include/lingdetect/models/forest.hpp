#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lingdetect/detail/rng.hpp"
#include "lingdetect/models/tree.hpp"

namespace lingdetect {

struct ForestParams {
    int n_trees = 300;
    int max_depth = 0;  // 0 = unlimited
    std::uint64_t seed = 0;
};

// Bagged ensemble of gini CART trees, sqrt(n_features) candidates per
// split. Probability = mean positive-class leaf fraction over trees.
struct ForestModel {
    std::vector<Tree> trees;

    double predict_proba(const std::vector<double>& x) const {
        double sum = 0.0;
        for (const Tree& t : trees) sum += t.predict(x);
        return sum / static_cast<double>(trees.size());
    }
};

inline ForestModel fit_forest(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y,
                              const ForestParams& params) {
    const std::size_t n = x.size();
    const std::size_t d = x[0].size();
    detail::ClassTreeParams tp;
    tp.max_depth = params.max_depth;
    tp.features_per_split = static_cast<std::size_t>(
        std::max(1.0, std::floor(std::sqrt(static_cast<double>(d)))));

    detail::Rng root(params.seed);
    ForestModel model;
    model.trees.reserve(static_cast<std::size_t>(params.n_trees));
    for (int t = 0; t < params.n_trees; ++t) {
        detail::Rng rng = root.derive(static_cast<std::uint64_t>(t));
        std::vector<std::size_t> sample(n);
        for (std::size_t i = 0; i < n; ++i)
            sample[i] = static_cast<std::size_t>(rng.next_below(n));
        detail::ClassificationTreeBuilder builder(x, y, tp, rng);
        model.trees.push_back(builder.build(std::move(sample)));
    }
    return model;
}

} // namespace lingdetect
