#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lingdetect/detail/rng.hpp"

namespace lingdetect {

// Binary decision tree node. Internal nodes route x[feature] <= threshold
// to the left child. The threshold is always an observed training value
// (the largest value routed left), never a midpoint: strictly monotone
// per-feature transforms then preserve every comparison, which makes tree
// predictions transform-invariant for arbitrary probes, not only for
// training rows. cover is the number of training rows that reached the
// node; tree attribution depends on it, so it is serialized with the model.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf payload: class fraction or margin term
    double cover = 0.0;
    double gain = 0.0;  // split quality, feeds gain-based importance
    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double predict(const std::vector<double>& x) const {
        int cur = 0;
        while (!nodes[static_cast<std::size_t>(cur)].is_leaf()) {
            const TreeNode& nd = nodes[static_cast<std::size_t>(cur)];
            cur = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold
                      ? nd.left
                      : nd.right;
        }
        return nodes[static_cast<std::size_t>(cur)].value;
    }
};

namespace detail {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = -std::numeric_limits<double>::infinity();
    // candidate comparison with deterministic tie-breaks: higher score,
    // then lower feature index, then lower threshold
    bool better_than(const SplitChoice& o) const {
        if (!found) return false;
        if (!o.found) return true;
        if (score != o.score) return score > o.score;
        if (feature != o.feature) return feature < o.feature;
        return threshold < o.threshold;
    }
};

struct ClassTreeParams {
    int max_depth = 0;                 // 0 = unlimited
    std::size_t features_per_split = 0;  // 0 = all features
    std::size_t min_samples_split = 2;
};

// Gini-gain CART builder over a row-index subset, used by the forest.
class ClassificationTreeBuilder {
public:
    ClassificationTreeBuilder(const std::vector<std::vector<double>>& x,
                              const std::vector<int>& y,
                              const ClassTreeParams& params, Rng& rng)
        : x_(x), y_(y), params_(params), rng_(rng) {}

    Tree build(std::vector<std::size_t> idx) {
        Tree tree;
        grow(tree, std::move(idx), 0);
        return tree;
    }

private:
    int grow(Tree& tree, std::vector<std::size_t> idx, int depth) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        const std::size_t n = idx.size();
        std::size_t pos = 0;
        for (auto i : idx) pos += static_cast<std::size_t>(y_[i] == 1);
        tree.nodes.back().cover = static_cast<double>(n);
        tree.nodes.back().value =
            static_cast<double>(pos) / static_cast<double>(n);

        const bool pure = pos == 0 || pos == n;
        const bool depth_capped =
            params_.max_depth > 0 && depth >= params_.max_depth;
        if (pure || depth_capped || n < params_.min_samples_split)
            return node_id;

        const SplitChoice split = best_split(idx, pos);
        if (!split.found) return node_id;

        std::vector<std::size_t> left, right;
        left.reserve(n);
        right.reserve(n);
        for (auto i : idx) {
            if (x_[i][static_cast<std::size_t>(split.feature)] <= split.threshold)
                left.push_back(i);
            else
                right.push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();
        const int l = grow(tree, std::move(left), depth + 1);
        const int r = grow(tree, std::move(right), depth + 1);
        TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
        nd.feature = split.feature;
        nd.threshold = split.threshold;
        nd.left = l;
        nd.right = r;
        // count-weighted gini decrease; split.score is minus the weighted
        // child impurity
        const double frac = tree.nodes[static_cast<std::size_t>(node_id)].value;
        const double gini_parent = 2.0 * frac * (1.0 - frac);
        nd.gain = static_cast<double>(n) * (gini_parent + split.score);
        return node_id;
    }

    SplitChoice best_split(const std::vector<std::size_t>& idx, std::size_t pos) {
        const std::size_t n_features = x_[0].size();
        std::vector<std::size_t> candidates(n_features);
        std::iota(candidates.begin(), candidates.end(), 0);
        if (params_.features_per_split > 0 &&
            params_.features_per_split < n_features) {
            // deterministic draw from the tree's own rng stream
            rng_.shuffle(candidates);
            candidates.resize(params_.features_per_split);
            std::sort(candidates.begin(), candidates.end());
        }

        const double n = static_cast<double>(idx.size());
        const double total_pos = static_cast<double>(pos);
        SplitChoice best;
        std::vector<std::pair<double, int>> vals;
        vals.reserve(idx.size());
        for (std::size_t f : candidates) {
            vals.clear();
            for (auto i : idx) vals.emplace_back(x_[i][f], y_[i]);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double left_pos = 0.0;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                left_pos += static_cast<double>(vals[i].second == 1);
                if (vals[i].first == vals[i + 1].first) continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = n - nl;
                const double rp = total_pos - left_pos;
                const double gini_l =
                    1.0 - (left_pos / nl) * (left_pos / nl) -
                    ((nl - left_pos) / nl) * ((nl - left_pos) / nl);
                const double gini_r = 1.0 - (rp / nr) * (rp / nr) -
                                      ((nr - rp) / nr) * ((nr - rp) / nr);
                const double weighted = (nl * gini_l + nr * gini_r) / n;
                SplitChoice cand;
                cand.found = true;
                cand.feature = static_cast<int>(f);
                cand.threshold = vals[i].first;
                cand.score = -weighted;  // maximize score = minimize impurity
                if (cand.better_than(best)) best = cand;
            }
        }
        return best;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    ClassTreeParams params_;
    Rng& rng_;
};

struct RegTreeParams {
    int max_depth = 6;
    double lambda = 1.0;
    double min_child_weight = 1.0;
    double learning_rate = 0.1;
};

// Second-order regression tree on gradient/hessian sums:
// gain = 1/2 [GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)], leaf = -G/(H+l),
// stored pre-scaled by the learning rate.
class GradientTreeBuilder {
public:
    GradientTreeBuilder(const std::vector<std::vector<double>>& x,
                        const std::vector<double>& grad,
                        const std::vector<double>& hess,
                        const RegTreeParams& params)
        : x_(x), g_(grad), h_(hess), params_(params) {}

    Tree build(std::vector<std::size_t> idx) {
        Tree tree;
        grow(tree, std::move(idx), 0);
        return tree;
    }

private:
    int grow(Tree& tree, std::vector<std::size_t> idx, int depth) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        double gsum = 0.0, hsum = 0.0;
        for (auto i : idx) {
            gsum += g_[i];
            hsum += h_[i];
        }
        tree.nodes.back().cover = static_cast<double>(idx.size());
        tree.nodes.back().value =
            params_.learning_rate * (-gsum / (hsum + params_.lambda));

        if (depth >= params_.max_depth || idx.size() < 2) return node_id;
        const SplitChoice split = best_split(idx, gsum, hsum);
        if (!split.found) return node_id;

        std::vector<std::size_t> left, right;
        left.reserve(idx.size());
        right.reserve(idx.size());
        for (auto i : idx) {
            if (x_[i][static_cast<std::size_t>(split.feature)] <= split.threshold)
                left.push_back(i);
            else
                right.push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();
        const int l = grow(tree, std::move(left), depth + 1);
        const int r = grow(tree, std::move(right), depth + 1);
        TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
        nd.feature = split.feature;
        nd.threshold = split.threshold;
        nd.left = l;
        nd.right = r;
        nd.gain = split.score;
        return node_id;
    }

    SplitChoice best_split(const std::vector<std::size_t>& idx, double gsum,
                           double hsum) {
        const std::size_t n_features = x_[0].size();
        const double parent =
            gsum * gsum / (hsum + params_.lambda);
        SplitChoice best;
        std::vector<std::pair<double, std::size_t>> vals;
        vals.reserve(idx.size());
        for (std::size_t f = 0; f < n_features; ++f) {
            vals.clear();
            for (auto i : idx) vals.emplace_back(x_[i][f], i);
            std::sort(vals.begin(), vals.end());
            double gl = 0.0, hl = 0.0;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                gl += g_[vals[i].second];
                hl += h_[vals[i].second];
                if (vals[i].first == vals[i + 1].first) continue;
                const double gr = gsum - gl;
                const double hr = hsum - hl;
                if (hl < params_.min_child_weight || hr < params_.min_child_weight)
                    continue;
                const double gain =
                    0.5 * (gl * gl / (hl + params_.lambda) +
                           gr * gr / (hr + params_.lambda) - parent);
                if (gain <= 1e-12) continue;
                SplitChoice cand;
                cand.found = true;
                cand.feature = static_cast<int>(f);
                cand.threshold = vals[i].first;
                cand.score = gain;
                if (cand.better_than(best)) best = cand;
            }
        }
        return best;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<double>& g_;
    const std::vector<double>& h_;
    RegTreeParams params_;
};

} // namespace detail
} // namespace lingdetect
