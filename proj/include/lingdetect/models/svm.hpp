#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <list>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lingdetect/detail/rng.hpp"

namespace lingdetect {

struct SvmParams {
    double c = 1.0;
    double gamma = 0.0;  // <= 0 requests 1 / (n_features * variance(X))
    double tolerance = 1e-3;
    int max_sweeps = 1000;  // full passes over the data
    std::uint64_t seed = 0;  // calibration fold assignment only
};

struct SvmModel {
    std::vector<std::vector<double>> support_x;
    std::vector<double> support_coef;  // alpha_i * y_i
    double bias = 0.0;
    double gamma = 0.0;
    // Platt sigmoid p = 1 / (1 + exp(a * margin + b))
    double platt_a = -1.0;
    double platt_b = 0.0;

    double decision_margin(const std::vector<double>& x) const {
        double f = bias;
        for (std::size_t i = 0; i < support_x.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double diff = support_x[i][j] - x[j];
                d2 += diff * diff;
            }
            f += support_coef[i] * std::exp(-gamma * d2);
        }
        return f;
    }

    double predict_proba(const std::vector<double>& x) const {
        const double f = decision_margin(x);
        const double z = platt_a * f + platt_b;
        // stable logistic of -z
        if (z >= 0.0) return std::exp(-z) / (1.0 + std::exp(-z));
        return 1.0 / (1.0 + std::exp(z));
    }
};

namespace detail {

// RBF kernel rows with an LRU budget so large training sets do not
// materialize the full Gram matrix.
class KernelCache {
public:
    KernelCache(const std::vector<std::vector<double>>& x, double gamma,
                std::size_t budget_bytes = 268435456)
        : x_(x), gamma_(gamma) {
        const std::size_t n = x.size();
        norms_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (double v : x[i]) s += v * v;
            norms_[i] = s;
        }
        capacity_ = std::max<std::size_t>(4, budget_bytes / (sizeof(double) * n));
    }

    const std::vector<double>& row(std::size_t i) {
        auto it = map_.find(i);
        if (it != map_.end()) {
            order_.splice(order_.begin(), order_, it->second.second);
            return it->second.first;
        }
        if (map_.size() >= capacity_) {
            const std::size_t victim = order_.back();
            order_.pop_back();
            map_.erase(victim);
        }
        std::vector<double> values(x_.size());
        for (std::size_t j = 0; j < x_.size(); ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < x_[i].size(); ++k)
                dot += x_[i][k] * x_[j][k];
            values[j] = std::exp(-gamma_ * (norms_[i] + norms_[j] - 2.0 * dot));
        }
        order_.push_front(i);
        auto [pos, inserted] =
            map_.emplace(i, std::make_pair(std::move(values), order_.begin()));
        (void)inserted;
        return pos->second.first;
    }

private:
    const std::vector<std::vector<double>>& x_;
    double gamma_;
    std::vector<double> norms_;
    std::size_t capacity_;
    std::unordered_map<std::size_t,
                       std::pair<std::vector<double>, std::list<std::size_t>::iterator>>
        map_;
    std::list<std::size_t> order_;
};

// Sequential minimal optimization, deterministic variant: the fallback
// scans start at index 0 instead of a random position, so identical
// inputs always produce identical multipliers.
class SmoSolver {
public:
    SmoSolver(const std::vector<std::vector<double>>& x,
              const std::vector<double>& y, double c, double gamma,
              double tolerance, int max_sweeps)
        : x_(x), y_(y), c_(c), tol_(tolerance), max_sweeps_(max_sweeps),
          cache_(x, gamma) {
        const std::size_t n = x.size();
        alpha_.assign(n, 0.0);
        errors_.resize(n);
        for (std::size_t i = 0; i < n; ++i) errors_[i] = -y_[i];
    }

    void solve() {
        bool examine_all = true;
        int changed = 0;
        int sweeps = 0;
        while ((changed > 0 || examine_all) && sweeps < max_sweeps_) {
            ++sweeps;
            changed = 0;
            for (std::size_t i = 0; i < alpha_.size(); ++i) {
                if (!examine_all && !is_free(i)) continue;
                changed += examine(i);
            }
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
        }
    }

    const std::vector<double>& alphas() const { return alpha_; }
    double bias() const { return bias_; }

private:
    bool is_free(std::size_t i) const {
        return alpha_[i] > 0.0 && alpha_[i] < c_;
    }

    int examine(std::size_t i2) {
        const double y2 = y_[i2];
        const double a2 = alpha_[i2];
        const double e2 = errors_[i2];
        const double r2 = e2 * y2;
        const bool violates =
            (r2 < -tol_ && a2 < c_) || (r2 > tol_ && a2 > 0.0);
        if (!violates) return 0;

        // second choice: maximize |E1 - E2| over free multipliers
        std::size_t best = i2;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < alpha_.size(); ++i) {
            if (!is_free(i)) continue;
            const double gap = std::fabs(errors_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best != i2 && take_step(best, i2)) return 1;
        for (std::size_t i = 0; i < alpha_.size(); ++i)
            if (is_free(i) && i != i2 && take_step(i, i2)) return 1;
        for (std::size_t i = 0; i < alpha_.size(); ++i)
            if (!is_free(i) && i != i2 && take_step(i, i2)) return 1;
        return 0;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double y1 = y_[i1], y2 = y_[i2];
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double e1 = errors_[i1], e2 = errors_[i2];
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c_, c_ + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c_);
            hi = std::min(c_, a1 + a2);
        }
        if (lo >= hi) return false;

        const std::vector<double>& k1 = cache_.row(i1);
        const double k11 = k1[i1], k12 = k1[i2];
        const double k22 = cache_.row(i2)[i2];
        const double eta = k11 + k22 - 2.0 * k12;
        if (eta <= 0.0) return false;  // duplicate points under RBF

        double a2new = a2 + y2 * (e1 - e2) / eta;
        a2new = std::clamp(a2new, lo, hi);
        if (std::fabs(a2new - a2) < 1e-12 * (a2new + a2 + 1e-12)) return false;
        double a1new = a1 + s * (a2 - a2new);
        a1new = std::clamp(a1new, 0.0, c_);

        const double d1 = y1 * (a1new - a1);
        const double d2 = y2 * (a2new - a2);
        const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
        const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
        double bnew;
        if (a1new > 0.0 && a1new < c_)
            bnew = b1;
        else if (a2new > 0.0 && a2new < c_)
            bnew = b2;
        else
            bnew = 0.5 * (b1 + b2);
        const double db = bnew - bias_;

        const std::vector<double>& row1 = cache_.row(i1);
        const std::vector<double>& row2 = cache_.row(i2);
        for (std::size_t i = 0; i < errors_.size(); ++i)
            errors_[i] += d1 * row1[i] + d2 * row2[i] + db;

        alpha_[i1] = a1new;
        alpha_[i2] = a2new;
        bias_ = bnew;
        return true;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<double>& y_;
    double c_;
    double tol_;
    int max_sweeps_;
    KernelCache cache_;
    std::vector<double> alpha_;
    std::vector<double> errors_;
    double bias_ = 0.0;
};

inline double auto_gamma(const std::vector<std::vector<double>>& x) {
    const std::size_t d = x[0].size();
    double sum = 0.0, sq = 0.0, count = 0.0;
    for (const auto& row : x)
        for (double v : row) {
            sum += v;
            sq += v * v;
            count += 1.0;
        }
    const double mean = sum / count;
    const double var = sq / count - mean * mean;
    if (var <= 0.0) return 1.0 / static_cast<double>(d);
    return 1.0 / (static_cast<double>(d) * var);
}

// Platt sigmoid fit (Newton with backtracking) on decision margins.
inline void fit_platt_sigmoid(const std::vector<double>& margins,
                              const std::vector<int>& labels, double& out_a,
                              double& out_b) {
    const std::size_t n = margins.size();
    double prior1 = 0.0, prior0 = 0.0;
    for (int y : labels) (y == 1 ? prior1 : prior0) += 1.0;
    const double hi = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo = 1.0 / (prior0 + 2.0);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = labels[i] == 1 ? hi : lo;

    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    const auto objective = [&](double pa, double pb) {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = pa * margins[i] + pb;
            if (f >= 0.0)
                obj += target[i] * f + std::log(1.0 + std::exp(-f));
            else
                obj += (target[i] - 1.0) * f + std::log(1.0 + std::exp(f));
        }
        return obj;
    };

    constexpr double kSigma = 1e-12;
    double fval = objective(a, b);
    for (int iter = 0; iter < 100; ++iter) {
        double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g0 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = a * margins[i] + b;
            double p, q;
            if (f >= 0.0) {
                p = std::exp(-f) / (1.0 + std::exp(-f));
                q = 1.0 / (1.0 + std::exp(-f));
            } else {
                p = 1.0 / (1.0 + std::exp(f));
                q = std::exp(f) / (1.0 + std::exp(f));
            }
            const double d2 = p * q;
            h11 += margins[i] * margins[i] * d2;
            h22 += d2;
            h21 += margins[i] * d2;
            const double d1 = target[i] - p;
            g1 += margins[i] * d1;
            g0 += d1;
        }
        if (std::fabs(g1) < 1e-5 && std::fabs(g0) < 1e-5) break;
        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g0) / det;
        const double db = -(-h21 * g1 + h11 * g0) / det;
        const double gd = g1 * da + g0 * db;
        double step = 1.0;
        while (step >= 1e-10) {
            const double na = a + step * da;
            const double nb = b + step * db;
            const double nf = objective(na, nb);
            if (nf < fval + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fval = nf;
                break;
            }
            step /= 2.0;
        }
        if (step < 1e-10) break;
    }
    out_a = a;
    out_b = b;
}

} // namespace detail

// Fit the RBF SVM by SMO, then calibrate probabilities with a Platt
// sigmoid. Calibration margins come from 3-fold cross-validation over
// the training rows so the sigmoid never sees margins of points the
// SVM memorized; the final SVM is refit on all rows.
inline SvmModel fit_svm(const std::vector<std::vector<double>>& x,
                        const std::vector<int>& y, const SvmParams& params) {
    const std::size_t n = x.size();
    const double gamma = params.gamma > 0.0 ? params.gamma : detail::auto_gamma(x);

    std::vector<double> ypm(n);
    for (std::size_t i = 0; i < n; ++i) ypm[i] = y[i] == 1 ? 1.0 : -1.0;

    const auto solve_subset = [&](const std::vector<std::size_t>& rows) {
        std::vector<std::vector<double>> sx;
        std::vector<double> sy;
        sx.reserve(rows.size());
        sy.reserve(rows.size());
        for (auto i : rows) {
            sx.push_back(x[i]);
            sy.push_back(ypm[i]);
        }
        SvmModel sub;
        sub.gamma = gamma;
        detail::SmoSolver solver(sx, sy, params.c, gamma, params.tolerance,
                                 params.max_sweeps);
        solver.solve();
        sub.bias = solver.bias();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (solver.alphas()[i] <= 0.0) continue;
            sub.support_x.push_back(sx[i]);
            sub.support_coef.push_back(solver.alphas()[i] * sy[i]);
        }
        return sub;
    };

    // cross-validated margins for calibration
    std::size_t n_pos = 0;
    for (int v : y) n_pos += static_cast<std::size_t>(v == 1);
    const std::size_t n_neg = n - n_pos;
    std::vector<double> cal_margins;
    std::vector<int> cal_labels;

    if (n_pos >= 3 && n_neg >= 3) {
        constexpr int kFolds = 3;
        std::vector<int> fold_of(n, -1);
        detail::Rng rng(params.seed ^ 0x90b1cab5ULL);
        for (int cls = 0; cls <= 1; ++cls) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < n; ++i)
                if (y[i] == cls) members.push_back(i);
            rng.shuffle(members);
            for (std::size_t j = 0; j < members.size(); ++j)
                fold_of[members[j]] = static_cast<int>(j % kFolds);
        }
        for (int f = 0; f < kFolds; ++f) {
            std::vector<std::size_t> train_rows, test_rows;
            for (std::size_t i = 0; i < n; ++i)
                (fold_of[i] == f ? test_rows : train_rows).push_back(i);
            const SvmModel sub = solve_subset(train_rows);
            for (auto i : test_rows) {
                cal_margins.push_back(sub.decision_margin(x[i]));
                cal_labels.push_back(y[i]);
            }
        }
    }

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    SvmModel model = solve_subset(all);

    if (cal_margins.empty()) {
        // too few rows per class for held-out folds: calibrate on the
        // final model's own margins
        for (std::size_t i = 0; i < n; ++i) {
            cal_margins.push_back(model.decision_margin(x[i]));
            cal_labels.push_back(y[i]);
        }
    }
    detail::fit_platt_sigmoid(cal_margins, cal_labels, model.platt_a,
                              model.platt_b);
    return model;
}

} // namespace lingdetect
