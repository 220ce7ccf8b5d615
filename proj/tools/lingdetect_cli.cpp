// Command-line pipeline: synthesize or ingest corpora, extract features,
// select features, train and evaluate models, build ensembles, explain
// predictions, and analyse errors. Commands compose through files only
// and are deterministic given (config, inputs, seeds); the run manifests
// are the single place a wall clock appears.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lingdetect/corpus.hpp"
#include "lingdetect/ensemble.hpp"
#include "lingdetect/evaluation.hpp"
#include "lingdetect/explain.hpp"
#include "lingdetect/matrix_io.hpp"
#include "lingdetect/models/models.hpp"
#include "lingdetect/pipeline.hpp"
#include "lingdetect/selection.hpp"
#include "lingdetect/synthetic.hpp"
#include "lingdetect/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIngestion = 3;
constexpr int kExitMissingArtifact = 4;
constexpr int kExitProtocol = 5;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitConfig, "cannot read " + path.string()};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitConfig, "cannot write " + path.string()};
    out << text;
    if (!out) throw CliError{kExitConfig, "write failed: " + path.string()};
}

void write_json_file(const fs::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

struct RunConfig {
    fs::path path;
    json raw;
    fs::path output_dir;
    std::uint64_t seed = 0;
    std::string config_hash;
};

const json& require_section(const json& j, const std::string& key,
                            const std::string& context) {
    if (!j.contains(key))
        throw CliError{kExitConfig, "config is missing '" + key + "' " + context};
    return j.at(key);
}

RunConfig load_config(const std::string& path) {
    if (!fs::exists(path))
        throw CliError{kExitConfig, "config file not found: " + path};
    RunConfig cfg;
    cfg.path = path;
    const std::string bytes = read_file(path);
    cfg.config_hash = lingdetect::detail::hex64(lingdetect::detail::fnv1a64(bytes));
    cfg.raw = json::parse(bytes, nullptr, false);
    if (cfg.raw.is_discarded())
        throw CliError{kExitConfig, "config is not valid JSON: " + path};
    if (!cfg.raw.contains("seed") || !cfg.raw.at("seed").is_number())
        throw CliError{kExitConfig,
                       "config must set an explicit numeric 'seed'"};
    cfg.seed = cfg.raw.at("seed").get<std::uint64_t>();
    cfg.output_dir =
        require_section(cfg.raw, "output_dir", "(directory for reports)")
            .get<std::string>();
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw CliError{kExitConfig,
                       "cannot create output_dir: " + cfg.output_dir.string()};
    return cfg;
}

// Resolve a config path entry relative to the config file's directory so
// configs are relocatable.
fs::path resolve_path(const RunConfig& cfg, const std::string& value) {
    fs::path p(value);
    if (p.is_absolute()) return p;
    return cfg.path.parent_path() / p;
}

fs::path config_path_or(const RunConfig& cfg, const json& section,
                        const std::string& key, const fs::path& fallback) {
    if (section.contains(key))
        return resolve_path(cfg, section.at(key).get<std::string>());
    return fallback;
}

void require_artifact(const fs::path& path, const std::string& what) {
    if (!fs::exists(path))
        throw CliError{kExitMissingArtifact,
                       "missing " + what + ": " + path.string()};
}

json versions_json(const std::string& lexicon_version) {
    return {{"artifact", lingdetect::kArtifactVersion},
            {"model_format", lingdetect::kModelFormatVersion},
            {"lexicon", lexicon_version},
            {"grammar_ruleset", lingdetect::kGrammarRulesetVersion},
            {"compressor", lingdetect::kCompressorId}};
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs,
                    const std::string& lexicon_version,
                    json extra = json::object()) {
    json m;
    m["command"] = command;
    m["config_path"] = cfg.path.string();
    m["config_hash"] = cfg.config_hash;
    m["seed"] = cfg.seed;
    m["versions"] = versions_json(lexicon_version);
    m["inputs"] = json::array();
    for (const fs::path& p : inputs) m["inputs"].push_back(p.string());
    m["outputs"] = json::array();
    for (const fs::path& p : outputs) m["outputs"].push_back(p.string());
    m["timestamp"] = lingdetect::detail::utc_timestamp();
    for (auto& [k, v] : extra.items()) m[k] = v;
    std::string name = command;
    for (char& c : name)
        if (c == '-') c = '_';
    write_json_file(cfg.output_dir / (name + "_manifest.json"), m);
}

lingdetect::SchemaMap schema_from_json(const json& j) {
    lingdetect::SchemaMap s;
    if (j.contains("text_field")) s.text_field = j.at("text_field");
    if (j.contains("label_field")) s.label_field = j.at("label_field");
    if (j.contains("id_field")) s.id_field = j.at("id_field");
    if (j.contains("domain_field")) s.domain_field = j.at("domain_field");
    if (j.contains("generator_field")) s.generator_field = j.at("generator_field");
    if (j.contains("max_malformed_fraction"))
        s.max_malformed_fraction = j.at("max_malformed_fraction");
    return s;
}

const lingdetect::LexiconSet& lexicons_for(const RunConfig& cfg) {
    static lingdetect::LexiconSet custom;
    static bool loaded = false;
    if (cfg.raw.contains("lexicon_dir")) {
        if (!loaded) {
            const fs::path dir =
                resolve_path(cfg, cfg.raw.at("lexicon_dir").get<std::string>());
            if (!fs::exists(dir))
                throw CliError{kExitConfig,
                               "lexicon_dir not found: " + dir.string()};
            const std::string version =
                cfg.raw.value("lexicon_version", std::string("custom"));
            custom = lingdetect::LexiconSet::load_dir(dir.string(), version);
            loaded = true;
        }
        return custom;
    }
    const lingdetect::LexiconSet& builtin = lingdetect::LexiconSet::builtin();
    if (cfg.raw.contains("lexicon_version") &&
        cfg.raw.at("lexicon_version").get<std::string>() != builtin.version)
        throw CliError{kExitConfig,
                       "config pins lexicon_version '" +
                           cfg.raw.at("lexicon_version").get<std::string>() +
                           "' but the built-in lexicons are '" +
                           builtin.version + "'"};
    return builtin;
}

lingdetect::ModelSpec spec_from_config(const RunConfig& cfg) {
    const json& mj = require_section(cfg.raw, "model", "(model settings)");
    const std::string family =
        require_section(mj, "family", "under 'model'").get<std::string>();
    lingdetect::ModelSpec spec;
    try {
        spec.family = lingdetect::family_from_name(family);
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }
    spec.seed = cfg.seed;
    if (mj.contains("hyperparameters")) {
        const json& h = mj.at("hyperparameters");
        const auto opt_d = [&h](const char* k, double& out) {
            if (h.contains(k)) out = h.at(k).get<double>();
        };
        const auto opt_i = [&h](const char* k, int& out) {
            if (h.contains(k)) out = h.at(k).get<int>();
        };
        switch (spec.family) {
            case lingdetect::ModelFamily::LogReg:
                opt_d("l2_strength", spec.logreg.l2_strength);
                opt_i("max_iterations", spec.logreg.max_iterations);
                opt_d("tolerance", spec.logreg.tolerance);
                break;
            case lingdetect::ModelFamily::Svm:
                opt_d("c", spec.svm.c);
                opt_d("gamma", spec.svm.gamma);
                opt_d("tolerance", spec.svm.tolerance);
                opt_i("max_sweeps", spec.svm.max_sweeps);
                break;
            case lingdetect::ModelFamily::RandomForest:
                opt_i("n_trees", spec.forest.n_trees);
                opt_i("max_depth", spec.forest.max_depth);
                break;
            case lingdetect::ModelFamily::Gbdt:
                opt_i("n_rounds", spec.gbdt.n_rounds);
                opt_i("max_depth", spec.gbdt.max_depth);
                opt_d("learning_rate", spec.gbdt.learning_rate);
                opt_d("lambda", spec.gbdt.lambda);
                opt_d("min_child_weight", spec.gbdt.min_child_weight);
                opt_d("base_margin", spec.gbdt.base_margin);
                break;
        }
    }
    return spec;
}

fs::path matrix_path(const RunConfig& cfg) {
    if (cfg.raw.contains("matrix"))
        return resolve_path(cfg, cfg.raw.at("matrix").get<std::string>());
    return cfg.output_dir / "matrix.csv";
}

fs::path model_path(const RunConfig& cfg) {
    if (cfg.raw.contains("model") && cfg.raw.at("model").contains("path"))
        return resolve_path(cfg,
                            cfg.raw.at("model").at("path").get<std::string>());
    return cfg.output_dir / "model.json";
}

lingdetect::FeatureMatrix load_matrix_artifact(const fs::path& path) {
    require_artifact(path, "feature matrix");
    try {
        return lingdetect::load_matrix(path.string());
    } catch (const std::exception& e) {
        throw CliError{kExitProtocol, e.what()};
    }
}

lingdetect::ModelArtifact load_model_artifact(const fs::path& path) {
    require_artifact(path, "model artifact");
    try {
        return lingdetect::load_model(path.string());
    } catch (const std::exception& e) {
        throw CliError{kExitProtocol, e.what()};
    }
}

// ---- commands ---------------------------------------------------------

int cmd_synth(const std::string& out_path, std::size_t docs, std::uint64_t seed,
              std::size_t min_words) {
    lingdetect::SyntheticTextParams params;
    params.n_docs = docs;
    params.seed = seed;
    params.min_words = min_words;
    const auto corpus = lingdetect::synthetic_text_corpus(params);
    lingdetect::save_jsonl(corpus, out_path);
    std::cout << "wrote " << corpus.size() << " documents to " << out_path
              << "\n";
    return kExitOk;
}

int cmd_extract(const RunConfig& cfg, unsigned jobs) {
    const json& dj = require_section(cfg.raw, "dataset", "(corpus to ingest)");
    const fs::path corpus_path = resolve_path(
        cfg, require_section(dj, "path", "under 'dataset'").get<std::string>());
    if (!fs::exists(corpus_path))
        throw CliError{kExitConfig,
                       "dataset path not found: " + corpus_path.string()};
    lingdetect::SchemaMap schema;
    if (dj.contains("schema")) schema = schema_from_json(dj.at("schema"));

    lingdetect::SkipReport skips;
    lingdetect::DatasetSplit split;
    try {
        split = lingdetect::load_jsonl(corpus_path.string(), schema, &skips);
    } catch (const std::exception& e) {
        throw CliError{kExitIngestion, e.what()};
    }

    const lingdetect::LexiconSet& lex = lexicons_for(cfg);
    const lingdetect::FeatureMatrix matrix =
        lingdetect::extract_matrix(split.documents, lex, jobs);

    const fs::path out_matrix = matrix_path(cfg);
    lingdetect::save_matrix(matrix, out_matrix.string());
    const fs::path out_skips = cfg.output_dir / "extract_skips.json";
    write_json_file(out_skips, skips.to_json());
    write_manifest(cfg, "extract", {corpus_path}, {out_matrix, out_skips},
                   lex.version,
                   {{"documents", matrix.size()}, {"jobs", jobs}});
    std::cout << "extracted " << matrix.size() << " rows ("
              << skips.skipped() << " skipped) -> " << out_matrix << "\n";
    return kExitOk;
}

int cmd_train(const RunConfig& cfg) {
    const fs::path mpath = matrix_path(cfg);
    const lingdetect::FeatureMatrix matrix = load_matrix_artifact(mpath);
    lingdetect::ModelSpec spec = spec_from_config(cfg);

    std::vector<std::size_t> mask;
    std::vector<fs::path> inputs = {mpath};
    const json& mj = cfg.raw.at("model");
    if (mj.contains("feature_mask")) {
        mask = mj.at("feature_mask").get<std::vector<std::size_t>>();
    } else if (mj.contains("selection_path")) {
        const fs::path spath =
            resolve_path(cfg, mj.at("selection_path").get<std::string>());
        require_artifact(spath, "selection artifact");
        try {
            const json sj = json::parse(read_file(spath));
            mask = lingdetect::selection_from_json(sj).optimal_mask;
        } catch (const CliError&) {
            throw;
        } catch (const std::exception& e) {
            throw CliError{kExitProtocol, e.what()};
        }
        inputs.push_back(spath);
    }

    lingdetect::ModelArtifact artifact;
    try {
        artifact = lingdetect::train(matrix, spec, mask);
    } catch (const std::exception& e) {
        throw CliError{kExitProtocol, e.what()};
    }
    artifact.metadata.dataset_name = mpath.stem().string();
    // keep retrains byte-identical: the manifest carries the wall clock
    artifact.metadata.timestamp = "";

    const fs::path out_model = model_path(cfg);
    lingdetect::save_model(artifact, out_model.string());
    write_manifest(cfg, "train", inputs, {out_model}, matrix.lexicon_version,
                   {{"family", lingdetect::family_name(spec.family)},
                    {"rows", matrix.size()},
                    {"masked_width", artifact.feature_mask.size()}});
    std::cout << "trained " << lingdetect::family_name(spec.family) << " on "
              << matrix.size() << " rows -> " << out_model << "\n";
    return kExitOk;
}

int cmd_select(const RunConfig& cfg) {
    const fs::path mpath = matrix_path(cfg);
    const lingdetect::FeatureMatrix matrix = load_matrix_artifact(mpath);
    const json sj = cfg.raw.value("selection", json::object());

    lingdetect::ModelSpec spec;
    spec.seed = cfg.seed;
    const std::string estimator = sj.value("estimator", std::string("logreg"));
    try {
        spec.family = lingdetect::family_from_name(estimator);
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }
    if (sj.contains("hyperparameters")) {
        // reuse the model hyperparameter parser by substituting the section
        RunConfig sub = cfg;
        sub.raw["model"] = {{"family", estimator},
                            {"hyperparameters", sj.at("hyperparameters")}};
        spec = spec_from_config(sub);
    }
    const std::size_t folds = sj.value("folds", std::size_t{5});

    lingdetect::SelectionResult result;
    try {
        result = lingdetect::rfecv(matrix, spec, folds, cfg.seed);
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }

    const fs::path out =
        config_path_or(cfg, sj, "path", cfg.output_dir / "selection.json");
    write_text_file(out, lingdetect::selection_to_json(result).dump(2) + "\n");
    write_manifest(cfg, "select", {mpath}, {out}, matrix.lexicon_version,
                   {{"estimator", estimator},
                    {"folds", folds},
                    {"optimal_size", result.optimal_size}});
    std::cout << "selected " << result.optimal_size << " of " << matrix.width()
              << " features -> " << out << "\n";
    return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
    const fs::path mpath = matrix_path(cfg);
    const lingdetect::FeatureMatrix matrix = load_matrix_artifact(mpath);
    const lingdetect::ModelSpec spec = spec_from_config(cfg);
    const json ej = cfg.raw.value("evaluation", json::object());
    const std::size_t folds = ej.value("folds", std::size_t{10});

    lingdetect::CvReport report;
    try {
        report = lingdetect::cross_validate(matrix, spec, folds, cfg.seed);
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }

    const fs::path out = cfg.output_dir / "evaluation.json";
    write_json_file(out, lingdetect::cv_report_to_json(report));
    write_manifest(cfg, "evaluate", {mpath}, {out}, matrix.lexicon_version,
                   {{"family", lingdetect::family_name(spec.family)},
                    {"folds", folds},
                    {"mean_f1", report.mean.f1}});
    std::cout << "cv mean f1=" << report.mean.f1 << " -> " << out << "\n";
    return kExitOk;
}

int cmd_cross_eval(const RunConfig& cfg) {
    const fs::path train_path = matrix_path(cfg);
    if (!cfg.raw.contains("cross_matrix"))
        throw CliError{kExitConfig,
                       "config is missing 'cross_matrix' (held-out matrix)"};
    const fs::path test_path =
        resolve_path(cfg, cfg.raw.at("cross_matrix").get<std::string>());
    const lingdetect::FeatureMatrix train_m = load_matrix_artifact(train_path);
    const lingdetect::FeatureMatrix test_m = load_matrix_artifact(test_path);
    const lingdetect::ModelSpec spec = spec_from_config(cfg);

    lingdetect::MetricSuite metrics;
    try {
        metrics = lingdetect::cross_domain_eval(train_m, test_m, spec);
    } catch (const std::exception& e) {
        const std::string what = e.what();
        if (what.find("id overlap") != std::string::npos)
            throw CliError{kExitProtocol, what};
        throw CliError{kExitConfig, what};
    }

    const fs::path out = cfg.output_dir / "cross_eval.json";
    json j = lingdetect::metrics_to_json(metrics);
    j["train_rows"] = train_m.size();
    j["test_rows"] = test_m.size();
    write_json_file(out, j);
    write_manifest(cfg, "cross-eval", {train_path, test_path}, {out},
                   train_m.lexicon_version,
                   {{"family", lingdetect::family_name(spec.family)},
                    {"f1", metrics.f1}});
    std::cout << "cross-domain f1=" << metrics.f1 << " -> " << out << "\n";
    return kExitOk;
}

int cmd_cross_gen(const RunConfig& cfg) {
    const fs::path model_file = model_path(cfg);
    const lingdetect::ModelArtifact model = load_model_artifact(model_file);
    if (!cfg.raw.contains("cross_matrix"))
        throw CliError{kExitConfig,
                       "config is missing 'cross_matrix' (ai-only matrix)"};
    const fs::path test_path =
        resolve_path(cfg, cfg.raw.at("cross_matrix").get<std::string>());
    const lingdetect::FeatureMatrix positives = load_matrix_artifact(test_path);

    double fnr = 0.0;
    try {
        fnr = lingdetect::cross_generator_fnr(positives, model);
    } catch (const std::exception& e) {
        throw CliError{kExitProtocol, e.what()};
    }

    const fs::path out = cfg.output_dir / "cross_gen.json";
    write_json_file(out, {{"fnr", fnr}, {"documents", positives.size()}});
    write_manifest(cfg, "cross-gen", {model_file, test_path}, {out},
                   positives.lexicon_version, {{"fnr", fnr}});
    std::cout << "held-out generator fnr=" << fnr << " -> " << out << "\n";
    return kExitOk;
}

lingdetect::ShapExplanation explain_one(const lingdetect::ModelArtifact& model,
                                        const std::vector<double>& row,
                                        const lingdetect::FeatureMatrix& background,
                                        const std::string& method,
                                        std::size_t n_samples,
                                        std::uint64_t seed) {
    using lingdetect::ModelFamily;
    std::string chosen = method;
    if (chosen == "auto") {
        switch (model.spec.family) {
            case ModelFamily::LogReg: chosen = "linear"; break;
            case ModelFamily::RandomForest:
            case ModelFamily::Gbdt: chosen = "tree"; break;
            case ModelFamily::Svm: chosen = "sampling"; break;
        }
    }
    if (chosen == "linear") return lingdetect::shap_linear(model, row, background);
    if (chosen == "tree") return lingdetect::shap_tree(model, row);
    if (chosen == "sampling")
        return lingdetect::shap_sampling(model, row, background, n_samples, seed);
    throw CliError{kExitConfig, "unknown explain method: " + chosen};
}

int cmd_explain(const RunConfig& cfg) {
    const fs::path model_file = model_path(cfg);
    const lingdetect::ModelArtifact model = load_model_artifact(model_file);
    const fs::path mpath = matrix_path(cfg);
    const lingdetect::FeatureMatrix matrix = load_matrix_artifact(mpath);

    const json ej = cfg.raw.value("explain", json::object());
    const std::string method = ej.value("method", std::string("auto"));
    const std::size_t n_samples = ej.value("n_samples", std::size_t{1024});
    const std::size_t max_docs = ej.value("max_docs", std::size_t{50});
    const std::size_t bg_rows = ej.value("background_rows", std::size_t{100});

    const lingdetect::FeatureMatrix background =
        lingdetect::background_subsample(matrix, bg_rows, cfg.seed);
    const std::size_t n_explained = std::min(max_docs, matrix.size());

    std::vector<lingdetect::ShapExplanation> explanations;
    std::vector<lingdetect::ShapExplanation> fp_set, fn_set;
    std::ostringstream lines;
    try {
        for (std::size_t i = 0; i < n_explained; ++i) {
            const std::uint64_t doc_seed =
                lingdetect::instance_seed(cfg.seed, matrix.ids[i]);
            lingdetect::ShapExplanation e = explain_one(
                model, matrix.rows[i], background, method, n_samples, doc_seed);
            e.id = matrix.ids[i];
            const double p = lingdetect::predict_proba(model, matrix.rows[i]);
            const int pred = lingdetect::classify(p);
            json record = lingdetect::explanation_to_json(e);
            record["probability"] = p;
            record["label"] = matrix.labels[i];
            record["predicted"] = pred;
            lines << record.dump() << "\n";
            if (matrix.labels[i] == 0 && pred == 1) fp_set.push_back(e);
            if (matrix.labels[i] == 1 && pred == 0) fn_set.push_back(e);
            explanations.push_back(std::move(e));
        }
    } catch (const CliError&) {
        throw;
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }

    const fs::path out_expl = cfg.output_dir / "explanations.jsonl";
    write_text_file(out_expl, lines.str());
    const fs::path out_imp = cfg.output_dir / "global_importance.json";
    write_json_file(out_imp, lingdetect::global_importance_to_json(
                                 lingdetect::global_importance(explanations)));
    const fs::path out_water = cfg.output_dir / "waterfall.txt";
    write_text_file(out_water, lingdetect::render_waterfall(explanations[0]));

    std::vector<fs::path> outputs = {out_expl, out_imp, out_water};
    json extra = {{"method", method},
                  {"documents", n_explained},
                  {"background_rows", background.size()},
                  {"background_hash", lingdetect::background_hash(background)},
                  {"fp_count", fp_set.size()},
                  {"fn_count", fn_set.size()}};
    if (!fp_set.empty() && !fn_set.empty()) {
        const fs::path out_delta = cfg.output_dir / "delta_shap.json";
        write_json_file(out_delta, lingdetect::delta_shap_to_json(
                                       lingdetect::delta_shap(fp_set, fn_set)));
        outputs.push_back(out_delta);
    }
    write_manifest(cfg, "explain", {model_file, mpath}, outputs,
                   matrix.lexicon_version, extra);
    std::cout << "explained " << n_explained << " documents -> " << out_expl
              << "\n";
    return kExitOk;
}

int cmd_error_analysis(const RunConfig& cfg) {
    const fs::path model_file = model_path(cfg);
    const lingdetect::ModelArtifact model = load_model_artifact(model_file);
    const fs::path mpath = matrix_path(cfg);
    const lingdetect::FeatureMatrix matrix = load_matrix_artifact(mpath);

    const json ej = cfg.raw.value("error_analysis", json::object());
    const double threshold = ej.value("threshold", 0.5);
    std::vector<std::string> features = {"word_count", "paragraph_count",
                                         "gzip_ratio"};
    if (ej.contains("features"))
        features = ej.at("features").get<std::vector<std::string>>();

    std::vector<int> preds(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i)
        preds[i] = lingdetect::classify(
            lingdetect::predict_proba(model, matrix.rows[i]), threshold);

    lingdetect::ErrorCategoryStats stats;
    try {
        stats = lingdetect::error_category_stats(matrix.labels, preds, matrix,
                                                 features);
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }

    const fs::path out = cfg.output_dir / "error_analysis.json";
    write_json_file(out, lingdetect::error_stats_to_json(stats));
    write_manifest(cfg, "error-analysis", {model_file, mpath}, {out},
                   matrix.lexicon_version, {{"threshold", threshold}});
    std::cout << "error categories tp=" << stats.tp.count
              << " fp=" << stats.fp.count << " fn=" << stats.fn.count
              << " tn=" << stats.tn.count << " -> " << out << "\n";
    return kExitOk;
}

int cmd_ensemble(const RunConfig& cfg) {
    const json& ej = require_section(cfg.raw, "ensemble", "(member list)");
    const auto member_values =
        require_section(ej, "members", "under 'ensemble'")
            .get<std::vector<std::string>>();
    std::vector<std::string> members;
    std::vector<fs::path> inputs;
    for (const std::string& m : member_values) {
        const fs::path p = resolve_path(cfg, m);
        require_artifact(p, "ensemble member");
        members.push_back(p.string());
        inputs.push_back(p);
    }
    const double threshold = ej.value("threshold", 0.5);
    const fs::path out =
        config_path_or(cfg, ej, "path", cfg.output_dir / "ensemble.json");
    try {
        lingdetect::save_ensemble_container(members, out.string(), threshold);
    } catch (const std::exception& e) {
        throw CliError{kExitProtocol, e.what()};
    }
    write_manifest(cfg, "ensemble", inputs, {out}, "",
                   {{"members", members.size()}, {"threshold", threshold}});
    std::cout << "ensemble container -> " << out << "\n";
    return kExitOk;
}

int cmd_predict(const std::string& artifact_path, std::string text,
                const std::string& input_file, bool explain,
                const std::string& background_path, std::size_t n_samples,
                std::uint64_t seed, const std::string& out_path) {
    require_artifact(artifact_path, "model artifact");
    json parsed = json::parse(read_file(artifact_path), nullptr, false);
    if (parsed.is_discarded())
        throw CliError{kExitProtocol,
                       "artifact is not valid JSON: " + artifact_path};

    if (!input_file.empty()) {
        if (!fs::exists(input_file))
            throw CliError{kExitIngestion, "input file not found: " + input_file};
        text = read_file(input_file);
    }
    if (lingdetect::detail::trim(text).empty())
        throw CliError{kExitIngestion, "empty document"};

    const lingdetect::LexiconSet& lex = lingdetect::LexiconSet::builtin();
    lingdetect::FeatureVector fv = lingdetect::extract(text, lex);
    const std::vector<double> row(fv.values.begin(), fv.values.end());

    lingdetect::FeatureMatrix background;
    if (!background_path.empty()) {
        require_artifact(background_path, "background matrix");
        background = lingdetect::load_matrix(background_path);
    }

    json verdict;
    const bool is_ensemble =
        parsed.contains("magic") && parsed.at("magic") == lingdetect::kEnsembleMagic;
    try {
        if (is_ensemble) {
            const lingdetect::EnsembleArtifact ens =
                lingdetect::load_ensemble(artifact_path);
            const lingdetect::EnsembleDecision d =
                lingdetect::ensemble_classify(ens, row);
            verdict["label"] = d.label;
            verdict["probability"] = d.p_final;
            verdict["members"] = json::object();
            for (std::size_t i = 0; i < 4; ++i)
                verdict["members"][lingdetect::family_name(
                    static_cast<lingdetect::ModelFamily>(i))] = d.breakdown[i];
            if (explain) {
                if (background.size() == 0)
                    throw CliError{kExitConfig,
                                   "--explain on an ensemble needs --background"};
                lingdetect::ShapExplanation e = lingdetect::shap_sampling_fn(
                    [&ens](const std::vector<double>& raw) {
                        return lingdetect::ensemble_predict_proba(ens, raw);
                    },
                    row, lingdetect::full_feature_mask(ens.members[0].input_width),
                    ens.members[0].input_width, background, n_samples, seed);
                e.id = "stdin";
                verdict["explanation"] = lingdetect::explanation_to_json(e);
            }
        } else {
            const lingdetect::ModelArtifact model =
                lingdetect::load_model(artifact_path);
            const double p = lingdetect::predict_proba(model, row);
            verdict["label"] = lingdetect::classify(p);
            verdict["probability"] = p;
            if (explain) {
                const bool needs_bg =
                    model.spec.family == lingdetect::ModelFamily::LogReg ||
                    model.spec.family == lingdetect::ModelFamily::Svm;
                if (needs_bg && background.size() == 0)
                    throw CliError{kExitConfig,
                                   "--explain for this model family needs "
                                   "--background"};
                lingdetect::ShapExplanation e = explain_one(
                    model, row, background, "auto", n_samples, seed);
                e.id = "stdin";
                verdict["explanation"] = lingdetect::explanation_to_json(e);
            }
        }
    } catch (const CliError&) {
        throw;
    } catch (const std::exception& e) {
        throw CliError{kExitProtocol, e.what()};
    }

    const std::string rendered = verdict.dump(2) + "\n";
    if (out_path.empty())
        std::cout << rendered;
    else
        write_text_file(out_path, rendered);
    return kExitOk;
}

std::string version_banner() {
    std::ostringstream ss;
    ss << "lingdetect " << lingdetect::kArtifactVersion << "\n"
       << "model-format " << lingdetect::kModelFormatVersion << "\n"
       << "lexicon " << lingdetect::LexiconSet::builtin().version << "\n"
       << "grammar-ruleset " << lingdetect::kGrammarRulesetVersion << "\n"
       << "compressor " << lingdetect::kCompressorId << "\n";
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interpretable detector for machine-generated text"};
    app.set_version_flag("--version", version_banner());
    app.require_subcommand(1);

    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for feature extraction")
        ->capture_default_str();

    std::string config_file;
    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "run configuration (JSON)")
            ->required();
    };

    auto* synth = app.add_subcommand("synth", "write a synthetic corpus");
    std::string synth_out = "corpus.jsonl";
    std::size_t synth_docs = 200, synth_words = 120;
    std::uint64_t synth_seed = 0;
    synth->add_option("--out", synth_out, "output JSONL path")
        ->capture_default_str();
    synth->add_option("--docs", synth_docs, "document count")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "generator seed")
        ->capture_default_str();
    synth->add_option("--min-words", synth_words, "approx words per document")
        ->capture_default_str();

    auto* extract = app.add_subcommand("extract", "corpus -> feature matrix");
    add_config(extract);
    auto* train = app.add_subcommand("train", "matrix -> model artifact");
    add_config(train);
    auto* select = app.add_subcommand("select", "recursive feature elimination");
    add_config(select);
    auto* evaluate = app.add_subcommand("evaluate", "stratified cross-validation");
    add_config(evaluate);
    auto* cross_eval =
        app.add_subcommand("cross-eval", "train on one matrix, test on another");
    add_config(cross_eval);
    auto* cross_gen = app.add_subcommand(
        "cross-gen", "false-negative rate on held-out generator text");
    add_config(cross_gen);
    auto* explain = app.add_subcommand("explain", "per-document attributions");
    add_config(explain);
    auto* error_analysis =
        app.add_subcommand("error-analysis", "descriptive stats by error category");
    add_config(error_analysis);
    auto* ensemble =
        app.add_subcommand("ensemble", "bundle member models into a container");
    add_config(ensemble);

    auto* predict = app.add_subcommand("predict", "classify one document");
    std::string pr_model, pr_text, pr_input, pr_background, pr_out;
    bool pr_explain = false;
    std::size_t pr_samples = 1024;
    std::uint64_t pr_seed = 0;
    predict->add_option("--model", pr_model, "model or ensemble file")->required();
    predict->add_option("--text", pr_text, "document text");
    predict->add_option("--input", pr_input, "file containing the document");
    predict->add_flag("--explain", pr_explain, "attach an explanation");
    predict->add_option("--background", pr_background,
                        "feature matrix for background marginalization");
    predict->add_option("--n-samples", pr_samples, "sampling budget")
        ->capture_default_str();
    predict->add_option("--seed", pr_seed, "sampler seed")->capture_default_str();
    predict->add_option("--out", pr_out, "write verdict here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return cmd_synth(synth_out, synth_docs, synth_seed, synth_words);
        if (predict->parsed())
            return cmd_predict(pr_model, pr_text, pr_input, pr_explain,
                               pr_background, pr_samples, pr_seed, pr_out);
        const RunConfig cfg = load_config(config_file);
        if (extract->parsed()) return cmd_extract(cfg, jobs);
        if (train->parsed()) return cmd_train(cfg);
        if (select->parsed()) return cmd_select(cfg);
        if (evaluate->parsed()) return cmd_evaluate(cfg);
        if (cross_eval->parsed()) return cmd_cross_eval(cfg);
        if (cross_gen->parsed()) return cmd_cross_gen(cfg);
        if (explain->parsed()) return cmd_explain(cfg);
        if (error_analysis->parsed()) return cmd_error_analysis(cfg);
        if (ensemble->parsed()) return cmd_ensemble(cfg);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
