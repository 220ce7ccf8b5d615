#pragma once

#include <cmath>
#include <cstddef>
#include <ctime>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingdetect/detail/text.hpp"
#include "lingdetect/features.hpp"
#include "lingdetect/version.hpp"
#include "lingdetect/models/forest.hpp"
#include "lingdetect/models/gbdt.hpp"
#include "lingdetect/models/logreg.hpp"
#include "lingdetect/models/svm.hpp"

namespace lingdetect {

enum class ModelFamily { LogReg, Svm, RandomForest, Gbdt };

inline const char* family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::LogReg: return "logreg";
        case ModelFamily::Svm: return "svm";
        case ModelFamily::RandomForest: return "random_forest";
        case ModelFamily::Gbdt: return "gbdt";
    }
    throw std::logic_error("unreachable model family");
}

inline ModelFamily family_from_name(const std::string& name) {
    if (name == "logreg") return ModelFamily::LogReg;
    if (name == "svm") return ModelFamily::Svm;
    if (name == "random_forest") return ModelFamily::RandomForest;
    if (name == "gbdt") return ModelFamily::Gbdt;
    throw std::invalid_argument("unknown model family: " + name);
}

struct ModelSpec {
    ModelFamily family = ModelFamily::LogReg;
    std::uint64_t seed = 0;
    LogRegParams logreg;
    SvmParams svm;
    ForestParams forest;
    GbdtParams gbdt;
};

struct ModelMetadata {
    std::string dataset_name;
    std::size_t row_count = 0;
    std::string timestamp;
    std::string lexicon_version;
};

// A trained classifier plus everything prediction needs: the scaler
// fitted on the training rows and the mask of input columns it reads.
struct ModelArtifact {
    ModelSpec spec;
    ScalerParams scaler;                   // one entry per masked column
    std::vector<std::size_t> feature_mask; // indices into the input layout
    std::size_t input_width = 0;
    ModelMetadata metadata;

    LogRegModel logreg;
    SvmModel svm;
    ForestModel forest;
    GbdtModel gbdt;
    std::vector<double> training_log_loss;  // GBDT only, one per round

    std::vector<double> masked_scaled(const std::vector<double>& x) const {
        if (x.size() != input_width)
            throw std::invalid_argument("feature vector width mismatch");
        std::vector<double> sub(feature_mask.size());
        for (std::size_t j = 0; j < feature_mask.size(); ++j) {
            const double v = x[feature_mask[j]];
            if (!std::isfinite(v))
                throw std::invalid_argument("non-finite feature value");
            sub[j] = v;
        }
        return transform_row(sub, scaler);
    }
};

namespace detail {

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace detail

inline std::vector<std::size_t> full_feature_mask(std::size_t width) {
    std::vector<std::size_t> mask(width);
    for (std::size_t i = 0; i < width; ++i) mask[i] = i;
    return mask;
}

inline ModelArtifact train(const FeatureMatrix& matrix, const ModelSpec& spec,
                           std::vector<std::size_t> mask = {}) {
    if (matrix.scaled)
        throw std::invalid_argument(
            "training expects an unscaled matrix; the scaler is fitted internally");
    if (matrix.labels.size() != matrix.size())
        throw std::invalid_argument("matrix rows and labels disagree");
    if (mask.empty()) mask = full_feature_mask(matrix.width());
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (mask[j] >= matrix.width())
            throw std::invalid_argument("feature mask index out of range");
        if (j > 0 && mask[j] <= mask[j - 1])
            throw std::invalid_argument("feature mask must be strictly increasing");
    }

    std::size_t n_pos = 0, n_neg = 0;
    for (int y : matrix.labels) (y == 1 ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("degenerate labels");
    if (n_pos < 2 || n_neg < 2)
        throw std::invalid_argument("each class needs at least 2 rows");

    FeatureMatrix masked;
    masked.ids = matrix.ids;
    masked.labels = matrix.labels;
    masked.lexicon_version = matrix.lexicon_version;
    masked.rows.reserve(matrix.size());
    for (const auto& row : matrix.rows) {
        std::vector<double> sub(mask.size());
        for (std::size_t j = 0; j < mask.size(); ++j) {
            sub[j] = row[mask[j]];
            if (!std::isfinite(sub[j]))
                throw std::invalid_argument("non-finite feature value");
        }
        masked.rows.push_back(std::move(sub));
    }

    ModelArtifact artifact;
    artifact.spec = spec;
    artifact.feature_mask = std::move(mask);
    artifact.input_width = matrix.width();
    artifact.scaler = fit_scaler(masked);
    artifact.metadata.row_count = matrix.size();
    artifact.metadata.lexicon_version = matrix.lexicon_version;
    artifact.metadata.timestamp = detail::utc_timestamp();

    const FeatureMatrix scaled = transform(masked, artifact.scaler);
    const std::vector<std::vector<double>>& x = scaled.rows;
    const std::vector<int>& y = scaled.labels;

    switch (spec.family) {
        case ModelFamily::LogReg:
            artifact.logreg = fit_logreg(x, y, spec.logreg);
            break;
        case ModelFamily::Svm: {
            SvmParams p = spec.svm;
            p.seed = spec.seed;
            artifact.svm = fit_svm(x, y, p);
            break;
        }
        case ModelFamily::RandomForest: {
            ForestParams p = spec.forest;
            p.seed = spec.seed;
            artifact.forest = fit_forest(x, y, p);
            break;
        }
        case ModelFamily::Gbdt: {
            GbdtFitResult r = fit_gbdt(x, y, spec.gbdt);
            artifact.gbdt = std::move(r.model);
            artifact.training_log_loss = std::move(r.train_log_loss);
            break;
        }
    }
    return artifact;
}

inline double predict_proba(const ModelArtifact& model,
                            const std::vector<double>& x) {
    const std::vector<double> z = model.masked_scaled(x);
    switch (model.spec.family) {
        case ModelFamily::LogReg: return model.logreg.predict_proba(z);
        case ModelFamily::Svm: return model.svm.predict_proba(z);
        case ModelFamily::RandomForest: return model.forest.predict_proba(z);
        case ModelFamily::Gbdt: return model.gbdt.predict_proba(z);
    }
    throw std::logic_error("unreachable model family");
}

inline int classify(double p, double threshold = 0.5) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability outside [0,1]");
    return p >= threshold ? 1 : 0;
}

// ---- serialization -------------------------------------------------

inline constexpr const char* kModelMagic = "lingdetect.model";

namespace detail {

inline nlohmann::json tree_to_json(const Tree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& nd : tree.nodes)
        nodes.push_back({nd.feature, nd.threshold, nd.left, nd.right, nd.value,
                         nd.cover, nd.gain});
    return nodes;
}

inline Tree tree_from_json(const nlohmann::json& nodes) {
    Tree tree;
    tree.nodes.reserve(nodes.size());
    for (const auto& nd : nodes) {
        TreeNode t;
        t.feature = nd.at(0).get<int>();
        t.threshold = nd.at(1).get<double>();
        t.left = nd.at(2).get<int>();
        t.right = nd.at(3).get<int>();
        t.value = nd.at(4).get<double>();
        t.cover = nd.at(5).get<double>();
        t.gain = nd.at(6).get<double>();
        tree.nodes.push_back(t);
    }
    return tree;
}

} // namespace detail

inline nlohmann::json model_to_json(const ModelArtifact& m) {
    nlohmann::json j;
    j["magic"] = kModelMagic;
    j["format_version"] = kModelFormatVersion;
    j["spec"]["family"] = family_name(m.spec.family);
    j["spec"]["seed"] = m.spec.seed;
    nlohmann::json& h = j["spec"]["hyperparameters"];
    switch (m.spec.family) {
        case ModelFamily::LogReg:
            h["l2_strength"] = m.spec.logreg.l2_strength;
            h["max_iterations"] = m.spec.logreg.max_iterations;
            h["tolerance"] = m.spec.logreg.tolerance;
            break;
        case ModelFamily::Svm:
            h["c"] = m.spec.svm.c;
            h["gamma"] = m.spec.svm.gamma;
            h["tolerance"] = m.spec.svm.tolerance;
            h["max_sweeps"] = m.spec.svm.max_sweeps;
            break;
        case ModelFamily::RandomForest:
            h["n_trees"] = m.spec.forest.n_trees;
            h["max_depth"] = m.spec.forest.max_depth;
            break;
        case ModelFamily::Gbdt:
            h["n_rounds"] = m.spec.gbdt.n_rounds;
            h["max_depth"] = m.spec.gbdt.max_depth;
            h["learning_rate"] = m.spec.gbdt.learning_rate;
            h["lambda"] = m.spec.gbdt.lambda;
            h["min_child_weight"] = m.spec.gbdt.min_child_weight;
            h["base_margin"] = m.spec.gbdt.base_margin;
            break;
    }
    j["scaler"]["mean"] = m.scaler.mean;
    j["scaler"]["stdev"] = m.scaler.stdev;
    j["feature_mask"] = m.feature_mask;
    j["input_width"] = m.input_width;
    j["metadata"]["dataset_name"] = m.metadata.dataset_name;
    j["metadata"]["row_count"] = m.metadata.row_count;
    j["metadata"]["timestamp"] = m.metadata.timestamp;
    j["metadata"]["lexicon_version"] = m.metadata.lexicon_version;

    nlohmann::json& p = j["params"];
    switch (m.spec.family) {
        case ModelFamily::LogReg:
            p["weights"] = m.logreg.weights;
            p["bias"] = m.logreg.bias;
            p["iterations"] = m.logreg.iterations;
            p["converged"] = m.logreg.converged;
            break;
        case ModelFamily::Svm:
            p["support_x"] = m.svm.support_x;
            p["support_coef"] = m.svm.support_coef;
            p["bias"] = m.svm.bias;
            p["gamma"] = m.svm.gamma;
            p["platt_a"] = m.svm.platt_a;
            p["platt_b"] = m.svm.platt_b;
            break;
        case ModelFamily::RandomForest: {
            nlohmann::json trees = nlohmann::json::array();
            for (const Tree& t : m.forest.trees)
                trees.push_back(detail::tree_to_json(t));
            p["trees"] = std::move(trees);
            break;
        }
        case ModelFamily::Gbdt: {
            nlohmann::json trees = nlohmann::json::array();
            for (const Tree& t : m.gbdt.trees)
                trees.push_back(detail::tree_to_json(t));
            p["trees"] = std::move(trees);
            p["base_margin"] = m.gbdt.base_margin;
            p["training_log_loss"] = m.training_log_loss;
            break;
        }
    }
    return j;
}

inline ModelArtifact model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("magic") ||
        j.at("magic").get<std::string>() != kModelMagic)
        throw std::runtime_error("not a model file");
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw std::runtime_error("unsupported model format version " +
                                 std::to_string(version));

    ModelArtifact m;
    m.spec.family = family_from_name(j.at("spec").at("family").get<std::string>());
    m.spec.seed = j.at("spec").at("seed").get<std::uint64_t>();
    const nlohmann::json& h = j.at("spec").at("hyperparameters");
    switch (m.spec.family) {
        case ModelFamily::LogReg:
            m.spec.logreg.l2_strength = h.at("l2_strength").get<double>();
            m.spec.logreg.max_iterations = h.at("max_iterations").get<int>();
            m.spec.logreg.tolerance = h.at("tolerance").get<double>();
            break;
        case ModelFamily::Svm:
            m.spec.svm.c = h.at("c").get<double>();
            m.spec.svm.gamma = h.at("gamma").get<double>();
            m.spec.svm.tolerance = h.at("tolerance").get<double>();
            m.spec.svm.max_sweeps = h.at("max_sweeps").get<int>();
            break;
        case ModelFamily::RandomForest:
            m.spec.forest.n_trees = h.at("n_trees").get<int>();
            m.spec.forest.max_depth = h.at("max_depth").get<int>();
            break;
        case ModelFamily::Gbdt:
            m.spec.gbdt.n_rounds = h.at("n_rounds").get<int>();
            m.spec.gbdt.max_depth = h.at("max_depth").get<int>();
            m.spec.gbdt.learning_rate = h.at("learning_rate").get<double>();
            m.spec.gbdt.lambda = h.at("lambda").get<double>();
            m.spec.gbdt.min_child_weight = h.at("min_child_weight").get<double>();
            m.spec.gbdt.base_margin = h.at("base_margin").get<double>();
            break;
    }
    m.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
    m.scaler.stdev = j.at("scaler").at("stdev").get<std::vector<double>>();
    m.feature_mask = j.at("feature_mask").get<std::vector<std::size_t>>();
    m.input_width = j.at("input_width").get<std::size_t>();
    m.metadata.dataset_name = j.at("metadata").at("dataset_name").get<std::string>();
    m.metadata.row_count = j.at("metadata").at("row_count").get<std::size_t>();
    m.metadata.timestamp = j.at("metadata").at("timestamp").get<std::string>();
    m.metadata.lexicon_version =
        j.at("metadata").at("lexicon_version").get<std::string>();

    const nlohmann::json& p = j.at("params");
    switch (m.spec.family) {
        case ModelFamily::LogReg:
            m.logreg.weights = p.at("weights").get<std::vector<double>>();
            m.logreg.bias = p.at("bias").get<double>();
            m.logreg.iterations = p.at("iterations").get<int>();
            m.logreg.converged = p.at("converged").get<bool>();
            break;
        case ModelFamily::Svm:
            m.svm.support_x =
                p.at("support_x").get<std::vector<std::vector<double>>>();
            m.svm.support_coef = p.at("support_coef").get<std::vector<double>>();
            m.svm.bias = p.at("bias").get<double>();
            m.svm.gamma = p.at("gamma").get<double>();
            m.svm.platt_a = p.at("platt_a").get<double>();
            m.svm.platt_b = p.at("platt_b").get<double>();
            break;
        case ModelFamily::RandomForest:
            for (const auto& t : p.at("trees"))
                m.forest.trees.push_back(detail::tree_from_json(t));
            break;
        case ModelFamily::Gbdt:
            for (const auto& t : p.at("trees"))
                m.gbdt.trees.push_back(detail::tree_from_json(t));
            m.gbdt.base_margin = p.at("base_margin").get<double>();
            m.training_log_loss =
                p.at("training_log_loss").get<std::vector<double>>();
            break;
    }
    return m;
}

inline void save_model(const ModelArtifact& m, const std::string& path) {
    detail::write_file(path, model_to_json(m).dump());
}

inline ModelArtifact load_model(const std::string& path) {
    nlohmann::json j =
        nlohmann::json::parse(detail::read_file(path), nullptr, false);
    if (j.is_discarded())
        throw std::runtime_error("not a model file: " + path);
    return model_from_json(j);
}

} // namespace lingdetect
