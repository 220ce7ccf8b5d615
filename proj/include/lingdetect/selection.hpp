#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingdetect/evaluation.hpp"
#include "lingdetect/features.hpp"
#include "lingdetect/models/models.hpp"
#include "lingdetect/version.hpp"

namespace lingdetect {

// Importance of each masked feature, in mask order. Gain-based for the
// tree families, absolute weight for logistic regression. The SVM has
// no comparable per-feature measure and is rejected.
inline std::vector<double> feature_importance(const ModelArtifact& model) {
    std::vector<double> imp(model.feature_mask.size(), 0.0);
    const auto add_trees = [&imp](const std::vector<Tree>& trees) {
        for (const Tree& t : trees)
            for (const TreeNode& nd : t.nodes)
                if (!nd.is_leaf()) imp[static_cast<std::size_t>(nd.feature)] += nd.gain;
    };
    switch (model.spec.family) {
        case ModelFamily::LogReg:
            for (std::size_t j = 0; j < imp.size(); ++j)
                imp[j] = std::fabs(model.logreg.weights[j]);
            break;
        case ModelFamily::RandomForest:
            add_trees(model.forest.trees);
            break;
        case ModelFamily::Gbdt:
            add_trees(model.gbdt.trees);
            break;
        case ModelFamily::Svm:
            throw std::invalid_argument(
                "ineligible estimator family: svm exposes no feature importance");
    }
    return imp;
}

struct SelectionResult {
    std::vector<std::string> elimination_order;   // one name per round
    std::vector<std::size_t> elimination_indices; // same order, input indices
    std::vector<std::size_t> subset_sizes;        // descending, width..1
    std::vector<double> mean_f1;                  // parallel to subset_sizes
    std::vector<std::size_t> optimal_mask;        // input-layout indices
    std::size_t optimal_size = 0;
    int folds = 5;
    std::uint64_t seed = 0;
    std::string estimator;
};

namespace detail {

inline std::string selection_feature_name(std::size_t index, std::size_t width) {
    if (width == kFeatureCount) return std::string(feature_names()[index]);
    return "feature_" + std::to_string(index);
}

} // namespace detail

// Recursive feature elimination with cross-validation: score the current
// subset by stratified k-fold mean F1, refit on all rows, drop the single
// least-important feature (importance ties break toward the earlier
// feature in canonical order), repeat down to one feature. The optimal
// size is the F1 argmax, smaller size on ties.
inline SelectionResult rfecv(const FeatureMatrix& matrix, const ModelSpec& spec,
                             int folds = 5, std::uint64_t seed = 0) {
    if (spec.family == ModelFamily::Svm)
        throw std::invalid_argument(
            "ineligible estimator family: svm exposes no feature importance");

    SelectionResult result;
    result.folds = folds;
    result.seed = seed;
    result.estimator = family_name(spec.family);

    std::vector<std::size_t> mask = full_feature_mask(matrix.width());
    std::vector<std::vector<std::size_t>> masks_by_round;

    while (true) {
        const CvReport cv = cross_validate(matrix, spec, folds, seed, mask);
        result.subset_sizes.push_back(mask.size());
        result.mean_f1.push_back(cv.mean.f1);
        masks_by_round.push_back(mask);
        if (mask.size() == 1) {
            result.elimination_indices.push_back(mask[0]);
            result.elimination_order.push_back(
                detail::selection_feature_name(mask[0], matrix.width()));
            break;
        }
        const ModelArtifact fitted = train(matrix, spec, mask);
        const std::vector<double> imp = feature_importance(fitted);
        std::size_t drop = 0;
        for (std::size_t j = 1; j < imp.size(); ++j)
            if (imp[j] < imp[drop]) drop = j;  // ties keep the earlier index
        result.elimination_indices.push_back(mask[drop]);
        result.elimination_order.push_back(
            detail::selection_feature_name(mask[drop], matrix.width()));
        mask.erase(mask.begin() + static_cast<std::ptrdiff_t>(drop));
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < result.subset_sizes.size(); ++r) {
        const bool better = result.mean_f1[r] > result.mean_f1[best] ||
                            (result.mean_f1[r] == result.mean_f1[best] &&
                             result.subset_sizes[r] < result.subset_sizes[best]);
        if (better) best = r;
    }
    result.optimal_size = result.subset_sizes[best];
    result.optimal_mask = masks_by_round[best];
    return result;
}

inline constexpr const char* kSelectionMagic = "lingdetect.selection";

inline nlohmann::json selection_to_json(const SelectionResult& r) {
    nlohmann::json j;
    j["magic"] = kSelectionMagic;
    j["format_version"] = kModelFormatVersion;
    j["estimator"] = r.estimator;
    j["folds"] = r.folds;
    j["seed"] = r.seed;
    j["elimination_order"] = r.elimination_order;
    j["elimination_indices"] = r.elimination_indices;
    j["subset_sizes"] = r.subset_sizes;
    j["mean_f1"] = r.mean_f1;
    j["optimal_size"] = r.optimal_size;
    j["optimal_mask"] = r.optimal_mask;
    return j;
}

inline SelectionResult selection_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("magic") ||
        j.at("magic").get<std::string>() != kSelectionMagic)
        throw std::runtime_error("not a selection result file");
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw std::runtime_error("unsupported selection format version " +
                                 std::to_string(version));
    SelectionResult r;
    r.estimator = j.at("estimator").get<std::string>();
    r.folds = j.at("folds").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.elimination_order =
        j.at("elimination_order").get<std::vector<std::string>>();
    r.elimination_indices =
        j.at("elimination_indices").get<std::vector<std::size_t>>();
    r.subset_sizes = j.at("subset_sizes").get<std::vector<std::size_t>>();
    r.mean_f1 = j.at("mean_f1").get<std::vector<double>>();
    r.optimal_size = j.at("optimal_size").get<std::size_t>();
    r.optimal_mask = j.at("optimal_mask").get<std::vector<std::size_t>>();
    return r;
}

} // namespace lingdetect
