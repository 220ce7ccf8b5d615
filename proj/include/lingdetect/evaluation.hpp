#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "lingdetect/corpus.hpp"
#include "lingdetect/detail/math.hpp"
#include "lingdetect/features.hpp"
#include "lingdetect/models/models.hpp"
#include "lingdetect/stats.hpp"

namespace lingdetect {

// Positive class is ai = 1 throughout: a false positive is a human
// document classified as AI.
struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::size_t total() const { return tp + fp + fn + tn; }
};

struct MetricSuite {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double fpr = 0.0;
    double fnr = 0.0;
    // NaN when the evaluation had no score ranking to compute it from
    double roc_auc = std::numeric_limits<double>::quiet_NaN();
    // set when any ratio had a zero denominator and was reported as 0
    bool degenerate = false;

    bool has_roc_auc() const { return !std::isnan(roc_auc); }
};

inline ConfusionCounts confusion(const std::vector<int>& labels,
                                 const std::vector<int>& predictions) {
    if (labels.size() != predictions.size())
        throw std::invalid_argument("labels and predictions length mismatch");
    if (labels.empty())
        throw std::invalid_argument("confusion needs at least one row");
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i], p = predictions[i];
        if ((y != 0 && y != 1) || (p != 0 && p != 1))
            throw std::invalid_argument("labels and predictions must be 0 or 1");
        if (y == 1)
            (p == 1 ? c.tp : c.fn) += 1;
        else
            (p == 1 ? c.fp : c.tn) += 1;
    }
    return c;
}

// Zero-denominator ratios report 0 and set the degeneracy flag instead
// of throwing: cross-generator sets have no negatives by design, which
// makes FPR undefined there.
inline MetricSuite metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw std::invalid_argument("empty confusion counts");
    MetricSuite m;
    const auto ratio = [&m](double num, double den) {
        if (den == 0.0) {
            m.degenerate = true;
            return 0.0;
        }
        return num / den;
    };
    const double tp = static_cast<double>(c.tp);
    const double fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn);
    const double tn = static_cast<double>(c.tn);
    m.accuracy = (tp + tn) / static_cast<double>(c.total());
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    m.fpr = ratio(fp, fp + tn);
    m.fnr = ratio(fn, fn + tp);
    return m;
}

// Mann-Whitney formulation via average ranks: the fraction of
// (positive, negative) pairs ranked correctly, ties counted half.
inline double roc_auc(const std::vector<int>& labels,
                      const std::vector<double>& scores) {
    if (labels.size() != scores.size())
        throw std::invalid_argument("labels and scores length mismatch");
    const std::size_t n = labels.size();
    std::size_t n_pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1)
            throw std::invalid_argument("labels must be 0 or 1");
        n_pos += static_cast<std::size_t>(y == 1);
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("roc_auc requires both classes");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        // average 1-based rank across the tie group
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k)
            if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

struct CvReport {
    std::vector<MetricSuite> folds;
    MetricSuite mean;
    MetricSuite stdev;  // population std across folds
    int k = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void aggregate_cv(CvReport& report) {
    const auto collect = [&report](double MetricSuite::* field) {
        std::vector<double> xs;
        xs.reserve(report.folds.size());
        for (const MetricSuite& f : report.folds) xs.push_back(f.*field);
        return xs;
    };
    const auto set_both = [&report, &collect](double MetricSuite::* field) {
        const std::vector<double> xs = collect(field);
        report.mean.*field = mean_of(xs);
        report.stdev.*field = pop_std(xs);
    };
    set_both(&MetricSuite::accuracy);
    set_both(&MetricSuite::precision);
    set_both(&MetricSuite::recall);
    set_both(&MetricSuite::f1);
    set_both(&MetricSuite::fpr);
    set_both(&MetricSuite::fnr);
    set_both(&MetricSuite::roc_auc);
    for (const MetricSuite& f : report.folds)
        report.mean.degenerate = report.mean.degenerate || f.degenerate;
}

} // namespace detail

// Stratified k-fold cross-validation. Each fold's model is trained on
// the complement (the scaler refits there, so fold rows never leak into
// scaling) and scored on the held-out rows.
inline CvReport cross_validate(const FeatureMatrix& matrix,
                               const ModelSpec& spec, int k = 10,
                               std::uint64_t seed = 0,
                               const std::vector<std::size_t>& mask = {}) {
    const std::vector<FoldPartition> parts =
        stratified_split(matrix.size(), matrix.labels, k, seed);
    CvReport report;
    report.k = k;
    report.seed = seed;
    for (const FoldPartition& part : parts) {
        FeatureMatrix train_m;
        train_m.lexicon_version = matrix.lexicon_version;
        for (auto i : part.train) {
            train_m.ids.push_back(matrix.ids.empty() ? "" : matrix.ids[i]);
            train_m.labels.push_back(matrix.labels[i]);
            train_m.rows.push_back(matrix.rows[i]);
        }
        const ModelArtifact model = train(train_m, spec, mask);
        std::vector<int> fold_labels, fold_preds;
        std::vector<double> fold_scores;
        for (auto i : part.test) {
            const double p = predict_proba(model, matrix.rows[i]);
            fold_labels.push_back(matrix.labels[i]);
            fold_preds.push_back(classify(p));
            fold_scores.push_back(p);
        }
        MetricSuite m = metrics(confusion(fold_labels, fold_preds));
        m.roc_auc = roc_auc(fold_labels, fold_scores);
        report.folds.push_back(m);
    }
    detail::aggregate_cv(report);
    return report;
}

// Train on one corpus and evaluate on a disjoint one. The scaler and
// any feature mask come from the training side only.
inline MetricSuite cross_domain_eval(const FeatureMatrix& train_matrix,
                                     const FeatureMatrix& test_matrix,
                                     const ModelSpec& spec,
                                     const std::vector<std::size_t>& mask = {}) {
    std::unordered_set<std::string> train_ids(train_matrix.ids.begin(),
                                              train_matrix.ids.end());
    for (const std::string& id : test_matrix.ids)
        if (train_ids.count(id))
            throw std::invalid_argument("id overlap between corpora: " + id);
    const ModelArtifact model = train(train_matrix, spec, mask);
    std::vector<int> labels, preds;
    std::vector<double> scores;
    for (std::size_t i = 0; i < test_matrix.size(); ++i) {
        const double p = predict_proba(model, test_matrix.rows[i]);
        labels.push_back(test_matrix.labels[i]);
        preds.push_back(classify(p));
        scores.push_back(p);
    }
    MetricSuite m = metrics(confusion(labels, preds));
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += static_cast<std::size_t>(y == 1);
    if (n_pos > 0 && n_pos < labels.size()) m.roc_auc = roc_auc(labels, scores);
    return m;
}

// False negative rate on an all-AI corpus from unseen generators.
// Predictor maps a raw feature row to a probability.
template <typename Predictor>
    requires std::is_invocable_r_v<double, Predictor, const std::vector<double>&>
inline double cross_generator_fnr(const FeatureMatrix& positives,
                                  Predictor&& predict) {
    if (positives.size() == 0)
        throw std::invalid_argument("cross-generator evaluation needs rows");
    for (int y : positives.labels)
        if (y != 1)
            throw std::invalid_argument(
                "cross-generator corpus must contain only ai-labelled documents");
    std::size_t missed = 0;
    for (const auto& row : positives.rows)
        missed += static_cast<std::size_t>(classify(predict(row)) == 0);
    return static_cast<double>(missed) / static_cast<double>(positives.size());
}

inline double cross_generator_fnr(const FeatureMatrix& positives,
                                  const ModelArtifact& model) {
    return cross_generator_fnr(positives, [&model](const std::vector<double>& x) {
        return predict_proba(model, x);
    });
}

// ---- error-category descriptive statistics --------------------------

struct CategoryFeatureStats {
    double mean = 0.0;
    double median = 0.0;
};

struct CategoryStats {
    std::size_t count = 0;
    std::map<std::string, CategoryFeatureStats> features;  // empty if count 0
};

struct ErrorCategoryStats {
    std::vector<std::string> feature_names;
    CategoryStats tp, fp, fn, tn;
};

// Mean and median of the requested raw features per confusion category.
// Empty categories get count 0 and no statistics (serialized as null).
inline ErrorCategoryStats error_category_stats(
    const std::vector<int>& labels, const std::vector<int>& predictions,
    const FeatureMatrix& matrix,
    std::vector<std::string> features_of_interest = {"word_count",
                                                     "paragraph_count",
                                                     "gzip_ratio"}) {
    if (labels.size() != predictions.size() || labels.size() != matrix.size())
        throw std::invalid_argument("rows, labels and predictions must align");
    if (matrix.scaled)
        throw std::invalid_argument(
            "error-category statistics need raw feature values");
    std::vector<std::size_t> columns;
    columns.reserve(features_of_interest.size());
    for (const std::string& name : features_of_interest)
        columns.push_back(feature_index(name));

    ErrorCategoryStats out;
    out.feature_names = features_of_interest;
    const auto fill = [&](CategoryStats& cat, int want_label, int want_pred) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == want_label && predictions[i] == want_pred)
                rows.push_back(i);
        cat.count = rows.size();
        if (rows.empty()) return;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::vector<double> xs;
            xs.reserve(rows.size());
            for (auto i : rows) xs.push_back(matrix.rows[i][columns[c]]);
            CategoryFeatureStats s;
            s.mean = detail::mean_of(xs);
            s.median = detail::median_of(xs);
            cat.features[features_of_interest[c]] = s;
        }
    };
    fill(out.tp, 1, 1);
    fill(out.fp, 0, 1);
    fill(out.fn, 1, 0);
    fill(out.tn, 0, 0);
    return out;
}

// ---- JSON reports ----------------------------------------------------

inline nlohmann::json metrics_to_json(const MetricSuite& m) {
    nlohmann::json j;
    j["accuracy"] = m.accuracy;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["fpr"] = m.fpr;
    j["fnr"] = m.fnr;
    if (m.has_roc_auc())
        j["roc_auc"] = m.roc_auc;
    else
        j["roc_auc"] = nullptr;
    j["degenerate"] = m.degenerate;
    return j;
}

inline nlohmann::json cv_report_to_json(const CvReport& r) {
    nlohmann::json j;
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["folds"] = nlohmann::json::array();
    for (const MetricSuite& f : r.folds) j["folds"].push_back(metrics_to_json(f));
    j["mean"] = metrics_to_json(r.mean);
    j["stdev"] = metrics_to_json(r.stdev);
    return j;
}

inline nlohmann::json error_stats_to_json(const ErrorCategoryStats& s) {
    nlohmann::json j;
    j["features"] = s.feature_names;
    const auto cat = [&s](const CategoryStats& c) {
        nlohmann::json out;
        out["count"] = c.count;
        for (const std::string& name : s.feature_names) {
            auto it = c.features.find(name);
            if (it == c.features.end()) {
                out[name]["mean"] = nullptr;
                out[name]["median"] = nullptr;
            } else {
                out[name]["mean"] = it->second.mean;
                out[name]["median"] = it->second.median;
            }
        }
        return out;
    };
    j["TP"] = cat(s.tp);
    j["FP"] = cat(s.fp);
    j["FN"] = cat(s.fn);
    j["TN"] = cat(s.tn);
    return j;
}

} // namespace lingdetect
