#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "lingdetect/detail/rng.hpp"
#include "lingdetect/detail/text.hpp"
#include "lingdetect/features.hpp"
#include "lingdetect/models/models.hpp"

namespace lingdetect {

enum class ShapMethod { LinearExact, TreePath, Sampling };

inline const char* shap_method_name(ShapMethod m) {
    switch (m) {
        case ShapMethod::LinearExact: return "linear_exact";
        case ShapMethod::TreePath: return "tree_path";
        case ShapMethod::Sampling: return "sampling";
    }
    throw std::logic_error("unreachable shap method");
}

// Attribution of one prediction. phi is aligned to the model's feature
// mask; features outside the mask cannot influence the model and are
// omitted. The explained quantity is the model's raw output: the
// pre-sigmoid margin for logreg/svm/gbdt, the leaf class fraction for
// the forest. Efficiency: base_value + sum(phi) = prediction.
struct ShapExplanation {
    std::string id;
    ShapMethod method = ShapMethod::LinearExact;
    double base_value = 0.0;
    double prediction = 0.0;
    std::vector<std::size_t> feature_indices;  // input-layout indices
    std::vector<double> values;                // raw x at those indices
    std::vector<double> phi;
    std::size_t input_width = 0;
    // sampling metadata (n_samples == 0 for exact methods)
    std::size_t n_samples = 0;
    std::uint64_t sample_seed = 0;
    std::vector<double> std_error;
};

namespace detail {

inline double raw_output(const ModelArtifact& model,
                         const std::vector<double>& scaled) {
    switch (model.spec.family) {
        case ModelFamily::LogReg: return model.logreg.decision_margin(scaled);
        case ModelFamily::Svm: return model.svm.decision_margin(scaled);
        case ModelFamily::RandomForest: return model.forest.predict_proba(scaled);
        case ModelFamily::Gbdt: return model.gbdt.predict_margin(scaled);
    }
    throw std::logic_error("unreachable model family");
}

inline void fill_instance(ShapExplanation& e, const ModelArtifact& model,
                          const std::vector<double>& x) {
    e.feature_indices = model.feature_mask;
    e.input_width = model.input_width;
    e.values.resize(model.feature_mask.size());
    for (std::size_t j = 0; j < model.feature_mask.size(); ++j)
        e.values[j] = x[model.feature_mask[j]];
}

} // namespace detail

// Exact Shapley values for the linear margin: with independent features
// the attribution of feature i is w_i (x_i - E[background_i]) in scaled
// space; the base value is the margin of the background mean.
inline ShapExplanation shap_linear(const ModelArtifact& model,
                                   const std::vector<double>& x,
                                   const FeatureMatrix& background) {
    if (model.spec.family != ModelFamily::LogReg)
        throw std::invalid_argument(
            "linear attribution needs a logreg model; use tree or sampling");
    if (background.size() == 0)
        throw std::invalid_argument("background matrix is empty");
    if (background.scaled)
        throw std::invalid_argument("background matrix must be unscaled");

    const std::size_t d = model.feature_mask.size();
    std::vector<double> bg_mean(d, 0.0);
    for (const auto& row : background.rows) {
        const std::vector<double> z = model.masked_scaled(row);
        for (std::size_t j = 0; j < d; ++j) bg_mean[j] += z[j];
    }
    for (double& v : bg_mean) v /= static_cast<double>(background.size());

    const std::vector<double> z = model.masked_scaled(x);
    ShapExplanation e;
    e.method = ShapMethod::LinearExact;
    detail::fill_instance(e, model, x);
    e.phi.resize(d);
    for (std::size_t j = 0; j < d; ++j)
        e.phi[j] = model.logreg.weights[j] * (z[j] - bg_mean[j]);
    e.base_value = model.logreg.decision_margin(bg_mean);
    e.prediction = model.logreg.decision_margin(z);
    return e;
}

// ---- path-dependent tree attribution ---------------------------------

namespace detail {

struct PathElement {
    int feature = -1;
    double zero_fraction = 0.0;
    double one_fraction = 0.0;
    double pweight = 0.0;
};

inline void extend_path(std::vector<PathElement>& path, double pz, double po,
                        int pi) {
    const std::size_t l = path.size();
    path.push_back({pi, pz, po, l == 0 ? 1.0 : 0.0});
    for (std::size_t i = l; i-- > 0;) {
        path[i + 1].pweight += po * path[i].pweight * static_cast<double>(i + 1) /
                               static_cast<double>(l + 1);
        path[i].pweight = pz * path[i].pweight * static_cast<double>(l - i) /
                          static_cast<double>(l + 1);
    }
}

inline void unwind_path(std::vector<PathElement>& path, std::size_t index) {
    const std::size_t ud = path.size() - 1;
    const double one = path[index].one_fraction;
    const double zero = path[index].zero_fraction;
    double next_one = path[ud].pweight;
    for (std::size_t i = ud; i-- > 0;) {
        if (one != 0.0) {
            const double tmp = path[i].pweight;
            path[i].pweight = next_one * static_cast<double>(ud + 1) /
                              (static_cast<double>(i + 1) * one);
            next_one = tmp - path[i].pweight * zero *
                             static_cast<double>(ud - i) /
                             static_cast<double>(ud + 1);
        } else {
            path[i].pweight = path[i].pweight * static_cast<double>(ud + 1) /
                              (zero * static_cast<double>(ud - i));
        }
    }
    for (std::size_t i = index; i < ud; ++i) {
        path[i].feature = path[i + 1].feature;
        path[i].zero_fraction = path[i + 1].zero_fraction;
        path[i].one_fraction = path[i + 1].one_fraction;
    }
    path.pop_back();
}

inline double unwound_path_sum(const std::vector<PathElement>& path,
                               std::size_t index) {
    const std::size_t ud = path.size() - 1;
    const double one = path[index].one_fraction;
    const double zero = path[index].zero_fraction;
    double total = 0.0;
    if (one != 0.0) {
        double next_one = path[ud].pweight;
        for (std::size_t i = ud; i-- > 0;) {
            const double tmp = next_one / (static_cast<double>(i + 1) * one);
            total += tmp;
            next_one = path[i].pweight -
                       tmp * zero * static_cast<double>(ud - i);
        }
    } else {
        for (std::size_t i = ud; i-- > 0;)
            total += path[i].pweight / (zero * static_cast<double>(ud - i));
    }
    return total * static_cast<double>(ud + 1);
}

// Lundberg-style recursion over one tree. Expected values of subtrees
// come from the training cover stored in the nodes, so no background set
// is needed. phi is indexed by the tree's (masked) feature indices.
inline void tree_shap_recurse(const Tree& tree, const std::vector<double>& x,
                              std::vector<double>& phi, int node_id,
                              std::vector<PathElement> path, double pz,
                              double po, int pi) {
    extend_path(path, pz, po, pi);
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    if (node.is_leaf()) {
        for (std::size_t i = 1; i < path.size(); ++i) {
            const double w = unwound_path_sum(path, i);
            phi[static_cast<std::size_t>(path[i].feature)] +=
                w * (path[i].one_fraction - path[i].zero_fraction) * node.value;
        }
        return;
    }
    const std::size_t f = static_cast<std::size_t>(node.feature);
    const int hot = x[f] <= node.threshold ? node.left : node.right;
    const int cold = hot == node.left ? node.right : node.left;
    double iz = 1.0, io = 1.0;
    std::size_t k = 0;
    while (k < path.size() && path[k].feature != node.feature) ++k;
    if (k < path.size()) {
        iz = path[k].zero_fraction;
        io = path[k].one_fraction;
        unwind_path(path, k);
    }
    const double rj = node.cover;
    const double rh = tree.nodes[static_cast<std::size_t>(hot)].cover;
    const double rc = tree.nodes[static_cast<std::size_t>(cold)].cover;
    tree_shap_recurse(tree, x, phi, hot, path, iz * rh / rj, io, node.feature);
    tree_shap_recurse(tree, x, phi, cold, path, iz * rc / rj, 0.0, node.feature);
}

inline double tree_expected_value(const Tree& tree, int node_id = 0) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    if (node.is_leaf()) return node.value;
    const double rl = tree.nodes[static_cast<std::size_t>(node.left)].cover;
    const double rr = tree.nodes[static_cast<std::size_t>(node.right)].cover;
    return (rl * tree_expected_value(tree, node.left) +
            rr * tree_expected_value(tree, node.right)) /
           node.cover;
}

// phi and expected value for one tree on scaled input of width d.
inline void tree_shap_single(const Tree& tree, const std::vector<double>& z,
                             std::vector<double>& phi_out, double& expected) {
    tree_shap_recurse(tree, z, phi_out, 0, {}, 1.0, 1.0, -1);
    expected += tree_expected_value(tree);
}

} // namespace detail

// Path-dependent attribution over all trees: per tree the phi vector
// sums to (routed leaf value - cover-weighted expected value); forests
// average across trees, boosted ensembles add.
inline ShapExplanation shap_tree(const ModelArtifact& model,
                                 const std::vector<double>& x) {
    const bool forest = model.spec.family == ModelFamily::RandomForest;
    const bool gbdt = model.spec.family == ModelFamily::Gbdt;
    if (!forest && !gbdt)
        throw std::invalid_argument(
            "tree attribution needs a forest or gbdt model");

    const std::vector<double> z = model.masked_scaled(x);
    const std::size_t d = model.feature_mask.size();
    std::vector<double> phi(d, 0.0);
    double expected = 0.0;
    const std::vector<Tree>& trees = forest ? model.forest.trees : model.gbdt.trees;
    for (const Tree& t : trees) detail::tree_shap_single(t, z, phi, expected);

    ShapExplanation e;
    e.method = ShapMethod::TreePath;
    detail::fill_instance(e, model, x);
    if (forest) {
        const double n = static_cast<double>(trees.size());
        for (double& p : phi) p /= n;
        e.base_value = expected / n;
        e.prediction = model.forest.predict_proba(z);
    } else {
        e.base_value = model.gbdt.base_margin + expected;
        e.prediction = model.gbdt.predict_margin(z);
    }
    e.phi = std::move(phi);
    return e;
}

// Model-agnostic permutation sampling with background imputation: walk a
// random permutation from a background row toward x, crediting each
// feature with the output change when its value flips to x's. Each
// permutation telescopes to f(x) - f(b), so efficiency holds exactly
// against the mean background output. The callable form explains any
// function of a raw feature row over the given mask.
template <typename F>
    requires std::is_invocable_r_v<double, F, const std::vector<double>&>
inline ShapExplanation shap_sampling_fn(F&& output, const std::vector<double>& x,
                                        const std::vector<std::size_t>& mask,
                                        std::size_t input_width,
                                        const FeatureMatrix& background,
                                        std::size_t n_samples,
                                        std::uint64_t seed) {
    if (background.size() == 0)
        throw std::invalid_argument("background matrix is empty");
    if (background.scaled)
        throw std::invalid_argument("background matrix must be unscaled");
    if (n_samples < 100)
        throw std::invalid_argument("sampling needs at least 100 samples");

    const std::size_t d = mask.size();
    detail::Rng rng(seed);
    std::vector<double> mean(d, 0.0), m2(d, 0.0);
    std::vector<std::size_t> counts(d, 0);
    double base_sum = 0.0;

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);

    for (std::size_t s = 0; s < n_samples; ++s) {
        const std::size_t b =
            static_cast<std::size_t>(rng.next_below(background.size()));
        rng.shuffle(perm);
        // features outside the mask cannot change the output; pin them to
        // x up front so the walk only flips masked features
        std::vector<double> zraw = x;
        for (std::size_t j = 0; j < d; ++j)
            zraw[mask[j]] = background.rows[b][mask[j]];
        double prev = output(zraw);
        base_sum += prev;
        for (std::size_t pos = 0; pos < d; ++pos) {
            const std::size_t j = perm[pos];
            zraw[mask[j]] = x[mask[j]];
            const double cur = output(zraw);
            const double delta = cur - prev;
            prev = cur;
            counts[j] += 1;
            const double diff = delta - mean[j];
            mean[j] += diff / static_cast<double>(counts[j]);
            m2[j] += diff * (delta - mean[j]);
        }
    }

    ShapExplanation e;
    e.method = ShapMethod::Sampling;
    e.feature_indices = mask;
    e.input_width = input_width;
    e.values.resize(d);
    for (std::size_t j = 0; j < d; ++j) e.values[j] = x[mask[j]];
    e.phi = mean;
    e.n_samples = n_samples;
    e.sample_seed = seed;
    e.std_error.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double n = static_cast<double>(counts[j]);
        const double var = n > 1 ? m2[j] / (n - 1.0) : 0.0;
        e.std_error[j] = std::sqrt(var / n);
    }
    e.base_value = base_sum / static_cast<double>(n_samples);
    e.prediction = output(x);
    return e;
}

inline ShapExplanation shap_sampling(const ModelArtifact& model,
                                     const std::vector<double>& x,
                                     const FeatureMatrix& background,
                                     std::size_t n_samples, std::uint64_t seed) {
    return shap_sampling_fn(
        [&model](const std::vector<double>& raw) {
            return detail::raw_output(model, model.masked_scaled(raw));
        },
        x, model.feature_mask, model.input_width, background, n_samples, seed);
}

// Deterministic background set: a seeded subsample of at most max_rows
// rows, kept in corpus order.
inline FeatureMatrix background_subsample(const FeatureMatrix& matrix,
                                          std::size_t max_rows = 100,
                                          std::uint64_t seed = 0) {
    if (matrix.size() == 0)
        throw std::invalid_argument("background matrix is empty");
    std::vector<std::size_t> idx(matrix.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (matrix.size() > max_rows) {
        detail::Rng rng(seed);
        rng.shuffle(idx);
        idx.resize(max_rows);
        std::sort(idx.begin(), idx.end());
    }
    FeatureMatrix out;
    out.scaled = matrix.scaled;
    out.lexicon_version = matrix.lexicon_version;
    for (std::size_t i : idx) {
        if (i < matrix.ids.size()) out.ids.push_back(matrix.ids[i]);
        if (i < matrix.labels.size()) out.labels.push_back(matrix.labels[i]);
        out.rows.push_back(matrix.rows[i]);
    }
    return out;
}

// Content hash of a background set, recorded in run manifests so an
// explanation can be traced to the exact rows it marginalized over.
inline std::string background_hash(const FeatureMatrix& matrix) {
    std::string buf;
    for (const std::string& id : matrix.ids) {
        buf += id;
        buf += '\n';
    }
    for (const auto& row : matrix.rows)
        buf.append(reinterpret_cast<const char*>(row.data()),
                   row.size() * sizeof(double));
    return detail::hex64(detail::fnv1a64(buf));
}

// Per-instance sampler seed: mixing the document id into the run seed
// keeps every document's estimate reproducible in isolation while
// decorrelating draws across documents.
inline std::uint64_t instance_seed(std::uint64_t global_seed,
                                   const std::string& id) {
    return global_seed ^ detail::fnv1a64(id);
}

// ---- aggregation ------------------------------------------------------

struct GlobalImportance {
    std::vector<std::size_t> feature_indices;  // input-layout indices
    std::vector<double> mean_abs_phi;          // aligned to feature_indices
    std::vector<std::size_t> ranking;  // positions sorted by mean |phi| desc
    std::size_t input_width = 0;
};

inline GlobalImportance global_importance(
    const std::vector<ShapExplanation>& explanations) {
    if (explanations.empty())
        throw std::invalid_argument("global importance needs explanations");
    const ShapExplanation& first = explanations[0];
    GlobalImportance g;
    g.feature_indices = first.feature_indices;
    g.input_width = first.input_width;
    g.mean_abs_phi.assign(first.phi.size(), 0.0);
    for (const ShapExplanation& e : explanations) {
        if (e.feature_indices != first.feature_indices)
            throw std::invalid_argument("explanation layout mismatch");
        for (std::size_t j = 0; j < e.phi.size(); ++j)
            g.mean_abs_phi[j] += std::fabs(e.phi[j]);
    }
    for (double& v : g.mean_abs_phi)
        v /= static_cast<double>(explanations.size());
    g.ranking.resize(g.mean_abs_phi.size());
    std::iota(g.ranking.begin(), g.ranking.end(), 0);
    std::stable_sort(g.ranking.begin(), g.ranking.end(),
                     [&g](std::size_t a, std::size_t b) {
                         if (g.mean_abs_phi[a] != g.mean_abs_phi[b])
                             return g.mean_abs_phi[a] > g.mean_abs_phi[b];
                         return a < b;  // ties in canonical order
                     });
    return g;
}

struct DeltaShapReport {
    std::vector<std::size_t> feature_indices;
    std::vector<double> delta;         // mean phi over FP minus mean over FN
    std::vector<std::size_t> ranking;  // positions sorted by |delta| desc
    std::size_t fp_count = 0;
    std::size_t fn_count = 0;
    std::size_t input_width = 0;
};

// Signed per-feature difference of mean attribution between the false
// positive and false negative sets.
inline DeltaShapReport delta_shap(const std::vector<ShapExplanation>& fp,
                                  const std::vector<ShapExplanation>& fn) {
    if (fp.empty() || fn.empty())
        throw std::invalid_argument(
            "delta shap needs non-empty FP and FN explanation sets");
    const auto mean_phi = [](const std::vector<ShapExplanation>& set) {
        std::vector<double> m(set[0].phi.size(), 0.0);
        for (const ShapExplanation& e : set) {
            if (e.feature_indices != set[0].feature_indices)
                throw std::invalid_argument("explanation layout mismatch");
            for (std::size_t j = 0; j < e.phi.size(); ++j) m[j] += e.phi[j];
        }
        for (double& v : m) v /= static_cast<double>(set.size());
        return m;
    };
    if (fp[0].feature_indices != fn[0].feature_indices)
        throw std::invalid_argument("explanation layout mismatch");
    const std::vector<double> mfp = mean_phi(fp);
    const std::vector<double> mfn = mean_phi(fn);
    DeltaShapReport r;
    r.feature_indices = fp[0].feature_indices;
    r.input_width = fp[0].input_width;
    r.fp_count = fp.size();
    r.fn_count = fn.size();
    r.delta.resize(mfp.size());
    for (std::size_t j = 0; j < mfp.size(); ++j) r.delta[j] = mfp[j] - mfn[j];
    r.ranking.resize(r.delta.size());
    std::iota(r.ranking.begin(), r.ranking.end(), 0);
    std::stable_sort(r.ranking.begin(), r.ranking.end(),
                     [&r](std::size_t a, std::size_t b) {
                         const double da = std::fabs(r.delta[a]);
                         const double db = std::fabs(r.delta[b]);
                         if (da != db) return da > db;
                         return a < b;
                     });
    return r;
}

// ---- reports ----------------------------------------------------------

namespace detail {

inline std::string explain_feature_name(std::size_t index, std::size_t width) {
    if (width == kFeatureCount) return std::string(feature_names()[index]);
    return "feature_" + std::to_string(index);
}

} // namespace detail

inline nlohmann::json explanation_to_json(const ShapExplanation& e) {
    nlohmann::json j;
    j["id"] = e.id;
    j["method"] = shap_method_name(e.method);
    j["base_value"] = e.base_value;
    j["prediction"] = e.prediction;
    j["phi"] = nlohmann::json::array();
    for (std::size_t k = 0; k < e.phi.size(); ++k) {
        nlohmann::json item;
        item["feature"] =
            detail::explain_feature_name(e.feature_indices[k], e.input_width);
        item["value"] = e.values[k];
        item["attribution"] = e.phi[k];
        j["phi"].push_back(std::move(item));
    }
    if (e.method == ShapMethod::Sampling) {
        j["sampling"]["n"] = e.n_samples;
        j["sampling"]["seed"] = e.sample_seed;
        j["sampling"]["stderr"] = e.std_error;
    }
    return j;
}

// Waterfall-style text: features ordered by |phi| descending with the
// running cumulative output.
inline std::string render_waterfall(const ShapExplanation& e) {
    std::vector<std::size_t> order(e.phi.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&e](std::size_t a, std::size_t b) {
                         const double da = std::fabs(e.phi[a]);
                         const double db = std::fabs(e.phi[b]);
                         if (da != db) return da > db;
                         return a < b;
                     });
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s %14s %14s %14s\n", "feature",
                  "value", "phi", "cumulative");
    out += line;
    std::snprintf(line, sizeof(line), "%-28s %14s %14.6f %14.6f\n",
                  "(base value)", "", 0.0, e.base_value);
    out += line;
    double cum = e.base_value;
    for (std::size_t k : order) {
        cum += e.phi[k];
        std::snprintf(
            line, sizeof(line), "%-28s %14.6f %14.6f %14.6f\n",
            detail::explain_feature_name(e.feature_indices[k], e.input_width)
                .c_str(),
            e.values[k], e.phi[k], cum);
        out += line;
    }
    std::snprintf(line, sizeof(line), "%-28s %14s %14s %14.6f\n",
                  "(prediction)", "", "", e.prediction);
    out += line;
    return out;
}

inline nlohmann::json global_importance_to_json(const GlobalImportance& g) {
    nlohmann::json j;
    j["ranking"] = nlohmann::json::array();
    for (std::size_t pos : g.ranking) {
        nlohmann::json item;
        item["feature"] = detail::explain_feature_name(g.feature_indices[pos],
                                                       g.input_width);
        item["mean_abs_phi"] = g.mean_abs_phi[pos];
        j["ranking"].push_back(std::move(item));
    }
    return j;
}

inline nlohmann::json delta_shap_to_json(const DeltaShapReport& r) {
    nlohmann::json j;
    j["fp_count"] = r.fp_count;
    j["fn_count"] = r.fn_count;
    j["deltas"] = nlohmann::json::array();
    for (std::size_t pos : r.ranking) {
        nlohmann::json item;
        item["feature"] = detail::explain_feature_name(r.feature_indices[pos],
                                                       r.input_width);
        item["delta"] = r.delta[pos];
        j["deltas"].push_back(std::move(item));
    }
    return j;
}

} // namespace lingdetect
