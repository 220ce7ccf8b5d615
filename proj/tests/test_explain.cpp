#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "lingdetect/explain.hpp"
#include "lingdetect/models/forest.hpp"
#include "lingdetect/models/gbdt.hpp"
#include "lingdetect/models/models.hpp"

using namespace lingdetect;
using Catch::Matchers::ContainsSubstring;

namespace {

ScalerParams identity_scaler(std::size_t d) {
    ScalerParams s;
    s.mean.assign(d, 0.0);
    s.stdev.assign(d, 1.0);
    return s;
}

ModelArtifact linear_artifact(std::vector<double> w, double b) {
    ModelArtifact m;
    m.spec.family = ModelFamily::LogReg;
    m.logreg.weights = std::move(w);
    m.logreg.bias = b;
    m.input_width = m.logreg.weights.size();
    m.feature_mask = full_feature_mask(m.input_width);
    m.scaler = identity_scaler(m.input_width);
    return m;
}

FeatureMatrix matrix_of(std::vector<std::vector<double>> rows) {
    FeatureMatrix m;
    m.rows = std::move(rows);
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        m.ids.push_back("r" + std::to_string(i));
        m.labels.push_back(static_cast<int>(i % 2));
    }
    return m;
}

ModelArtifact forest_artifact(std::vector<Tree> trees, std::size_t d) {
    ModelArtifact m;
    m.spec.family = ModelFamily::RandomForest;
    m.forest.trees = std::move(trees);
    m.input_width = d;
    m.feature_mask = full_feature_mask(d);
    m.scaler = identity_scaler(d);
    return m;
}

// Conditional expectation for the coalition oracle: features in S follow x,
// the rest marginalize over the training cover stored on each node.
double cond_exp(const Tree& t, int node, const std::vector<double>& x, unsigned S) {
    const TreeNode& n = t.nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) return n.value;
    const std::size_t f = static_cast<std::size_t>(n.feature);
    if (S >> f & 1u)
        return cond_exp(t, x[f] <= n.threshold ? n.left : n.right, x, S);
    const double rl = t.nodes[static_cast<std::size_t>(n.left)].cover;
    const double rr = t.nodes[static_cast<std::size_t>(n.right)].cover;
    return (rl * cond_exp(t, n.left, x, S) + rr * cond_exp(t, n.right, x, S)) /
           n.cover;
}

// Exact Shapley values over all 2^d coalitions. Exponential; d stays small.
std::vector<double> brute_tree_shap(const Tree& t, const std::vector<double>& x,
                                    std::size_t d) {
    std::vector<double> fact(d + 1, 1.0);
    for (std::size_t i = 1; i <= d; ++i)
        fact[i] = fact[i - 1] * static_cast<double>(i);
    std::vector<double> phi(d, 0.0);
    for (unsigned S = 0; S < (1u << d); ++S) {
        unsigned sz = 0;
        for (std::size_t i = 0; i < d; ++i) sz += S >> i & 1u;
        for (std::size_t i = 0; i < d; ++i) {
            if (S >> i & 1u) continue;
            const double w = fact[sz] * fact[d - sz - 1] / fact[d];
            phi[i] += w * (cond_exp(t, 0, x, S | (1u << i)) - cond_exp(t, 0, x, S));
        }
    }
    return phi;
}

} // namespace

TEST_CASE("linear attribution closed form", "[explain]") {
    ModelArtifact m = linear_artifact({2.0, 0.0}, 0.0);
    const FeatureMatrix bg = matrix_of({{0.0, 0.0}});
    const ShapExplanation e = shap_linear(m, {1.0, 5.0}, bg);
    CHECK(e.method == ShapMethod::LinearExact);
    CHECK(e.phi[0] == 2.0);
    CHECK(e.phi[1] == 0.0);
    CHECK(e.base_value == 0.0);
    CHECK(e.prediction == 2.0);
    CHECK(e.values[0] == 1.0);
    CHECK(e.values[1] == 5.0);

    SECTION("probe at the background mean has zero attribution") {
        const FeatureMatrix bg2 = matrix_of({{1.0, 2.0}, {3.0, 4.0}});
        const ShapExplanation e2 = shap_linear(m, {2.0, 3.0}, bg2);
        CHECK(e2.phi[0] == Catch::Approx(0.0).margin(1e-15));
        CHECK(e2.phi[1] == Catch::Approx(0.0).margin(1e-15));
        CHECK(e2.base_value == Catch::Approx(e2.prediction).margin(1e-15));
    }
    SECTION("efficiency on an arbitrary probe") {
        const FeatureMatrix bg2 = matrix_of({{1.0, 2.0}, {3.0, 4.0}});
        const ShapExplanation e3 = shap_linear(m, {-0.7, 9.9}, bg2);
        CHECK(e3.base_value + e3.phi[0] + e3.phi[1] ==
              Catch::Approx(e3.prediction).margin(1e-12));
    }
    SECTION("validation") {
        ModelArtifact tree_model = forest_artifact({}, 2);
        CHECK_THROWS_WITH(shap_linear(tree_model, {0.0, 0.0}, bg),
                          ContainsSubstring("logreg"));
        CHECK_THROWS_WITH(shap_linear(m, {0.0, 0.0}, FeatureMatrix{}),
                          ContainsSubstring("empty"));
        FeatureMatrix scaledbg = matrix_of({{0.0, 0.0}});
        scaledbg.scaled = true;
        CHECK_THROWS_WITH(shap_linear(m, {0.0, 0.0}, scaledbg),
                          ContainsSubstring("unscaled"));
    }
}

TEST_CASE("tree attribution puts all stump mass on the split feature", "[explain]") {
    Tree stump;
    stump.nodes.push_back({1, 0.5, 1, 2, 0.0, 10.0, 1.0});
    stump.nodes.push_back({-1, 0.0, -1, -1, 0.2, 4.0, 0.0});
    stump.nodes.push_back({-1, 0.0, -1, -1, 0.9, 6.0, 0.0});
    ModelArtifact m = forest_artifact({stump}, 3);
    const ShapExplanation e = shap_tree(m, {7.0, 0.1, -3.0});
    const double expected = (4.0 * 0.2 + 6.0 * 0.9) / 10.0;
    CHECK(e.method == ShapMethod::TreePath);
    CHECK(e.base_value == Catch::Approx(expected).margin(1e-12));
    CHECK(e.phi[0] == 0.0);
    CHECK(e.phi[2] == 0.0);
    CHECK(e.phi[1] == Catch::Approx(0.2 - expected).margin(1e-12));
    CHECK(e.prediction == Catch::Approx(0.2).margin(1e-12));

    const std::vector<double> brute = brute_tree_shap(stump, {7.0, 0.1, -3.0}, 3);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(e.phi[j] == Catch::Approx(brute[j]).margin(1e-12));
}

TEST_CASE("tree attribution handles repeated features on a path", "[explain]") {
    Tree t;
    t.nodes.push_back({0, 5.0, 1, 2, 0.0, 12.0, 1.0});
    t.nodes.push_back({0, 2.0, 3, 4, 0.0, 8.0, 1.0});
    t.nodes.push_back({-1, 0.0, -1, -1, 3.0, 4.0, 0.0});
    t.nodes.push_back({-1, 0.0, -1, -1, -1.0, 5.0, 0.0});
    t.nodes.push_back({-1, 0.0, -1, -1, 1.0, 3.0, 0.0});
    ModelArtifact m = forest_artifact({t}, 2);
    for (double probe : {-4.0, 0.0, 2.0, 3.5, 5.0, 8.0}) {
        INFO("probe " << probe);
        const std::vector<double> x = {probe, 1.0};
        const ShapExplanation e = shap_tree(m, x);
        const std::vector<double> brute = brute_tree_shap(t, x, 2);
        CHECK(e.phi[0] == Catch::Approx(brute[0]).margin(1e-12));
        CHECK(e.phi[1] == Catch::Approx(brute[1]).margin(1e-12));
        CHECK(e.base_value + e.phi[0] + e.phi[1] ==
              Catch::Approx(e.prediction).margin(1e-12));
    }
}

TEST_CASE("tree attribution matches the coalition oracle on trained trees",
          "[explain]") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        INFO("seed " << seed);
        detail::Rng rng(seed);
        const std::size_t n = 40, d = 5;
        std::vector<std::vector<double>> xs(n, std::vector<double>(d));
        std::vector<int> ys(n);
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) {
            idx[i] = i;
            ys[i] = static_cast<int>(i % 2);
            for (std::size_t j = 0; j < d; ++j)
                xs[i][j] = rng.next_gaussian() + (j == 0 ? 1.5 * ys[i] : 0.0);
        }
        detail::ClassTreeParams params;
        params.max_depth = 3;
        detail::Rng tree_rng(seed * 7);
        detail::ClassificationTreeBuilder builder(xs, ys, params, tree_rng);
        const Tree t = builder.build(idx);
        ModelArtifact m = forest_artifact({t}, d);
        for (int p = 0; p < 6; ++p) {
            std::vector<double> x(d);
            for (std::size_t j = 0; j < d; ++j) x[j] = rng.next_gaussian() * 2.0;
            const ShapExplanation e = shap_tree(m, x);
            const std::vector<double> brute = brute_tree_shap(t, x, d);
            for (std::size_t j = 0; j < d; ++j)
                CHECK(e.phi[j] == Catch::Approx(brute[j]).margin(1e-9));
            double sum = e.base_value;
            for (double v : e.phi) sum += v;
            CHECK(sum == Catch::Approx(e.prediction).margin(1e-9));
        }
    }
}

TEST_CASE("boosted trees explain the raw margin additively", "[explain]") {
    detail::Rng rng(99);
    const std::size_t n = 60, d = 4;
    FeatureMatrix fm;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(d);
        const int y = static_cast<int>(i % 2);
        for (std::size_t j = 0; j < d; ++j)
            row[j] = rng.next_gaussian() + (j < 2 ? 1.2 * y : 0.0);
        fm.rows.push_back(row);
        fm.labels.push_back(y);
        fm.ids.push_back("g" + std::to_string(i));
    }
    ModelSpec spec;
    spec.family = ModelFamily::Gbdt;
    spec.gbdt.n_rounds = 12;
    spec.gbdt.max_depth = 3;
    const ModelArtifact m = train(fm, spec);

    for (int p = 0; p < 4; ++p) {
        std::vector<double> x(d);
        for (std::size_t j = 0; j < d; ++j) x[j] = rng.next_gaussian();
        const ShapExplanation e = shap_tree(m, x);
        const std::vector<double> z = m.masked_scaled(x);

        std::vector<double> acc(d, 0.0);
        for (const Tree& t : m.gbdt.trees) {
            const std::vector<double> b1 = brute_tree_shap(t, z, d);
            for (std::size_t j = 0; j < d; ++j) acc[j] += b1[j];
        }
        for (std::size_t j = 0; j < d; ++j)
            CHECK(e.phi[j] == Catch::Approx(acc[j]).margin(1e-9));

        double sum = e.base_value;
        for (double v : e.phi) sum += v;
        CHECK(sum == Catch::Approx(e.prediction).margin(1e-9));
        CHECK(e.prediction ==
              Catch::Approx(m.gbdt.predict_margin(z)).margin(1e-12));
    }
    ModelArtifact lin = linear_artifact({1.0}, 0.0);
    CHECK_THROWS_WITH(shap_tree(lin, {0.0}), ContainsSubstring("forest or gbdt"));
}

TEST_CASE("symmetric features get equal attribution", "[explain]") {
    Tree a;
    a.nodes.push_back({1, 0.0, 1, 2, 0.0, 10.0, 1.0});
    a.nodes.push_back({-1, 0.0, -1, -1, -1.0, 5.0, 0.0});
    a.nodes.push_back({-1, 0.0, -1, -1, 1.0, 5.0, 0.0});
    Tree b = a;
    b.nodes[0].feature = 2;
    ModelArtifact m = forest_artifact({a, b}, 4);
    const ShapExplanation e = shap_tree(m, {0.3, -1.0, -1.0, 0.9});
    CHECK(e.phi[1] == e.phi[2]);
    CHECK(e.phi[0] == 0.0);
    CHECK(e.phi[3] == 0.0);
}

TEST_CASE("permutation sampling estimates", "[explain]") {
    ModelArtifact m = linear_artifact({1.5, -2.0, 0.0}, 0.5);
    detail::Rng rng(321);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 50; ++i)
        rows.push_back({rng.next_gaussian(), rng.next_gaussian() * 2.0,
                        rng.next_gaussian()});
    const FeatureMatrix bg = matrix_of(rows);
    const std::vector<double> x = {1.1, -0.4, 2.2};

    const ShapExplanation lin = shap_linear(m, x, bg);
    const ShapExplanation s1 = shap_sampling(m, x, bg, 2048, 17);

    SECTION("deterministic per seed") {
        const ShapExplanation s2 = shap_sampling(m, x, bg, 2048, 17);
        CHECK(s1.phi == s2.phi);
        CHECK(s1.std_error == s2.std_error);
        const ShapExplanation s3 = shap_sampling(m, x, bg, 2048, 18);
        CHECK(s3.phi != s1.phi);
    }
    SECTION("within three standard errors of the exact values") {
        for (std::size_t j = 0; j < 3; ++j) {
            INFO("feature " << j);
            CHECK(s1.phi[j] ==
                  Catch::Approx(lin.phi[j]).margin(3.0 * s1.std_error[j] + 1e-12));
        }
    }
    SECTION("dummy feature gets exactly zero") {
        CHECK(s1.phi[2] == Catch::Approx(0.0).margin(1e-12));
        CHECK(s1.std_error[2] == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("telescoping sum is exactly efficient") {
        double sum = s1.base_value;
        for (double v : s1.phi) sum += v;
        CHECK(sum == Catch::Approx(s1.prediction).margin(1e-9));
    }
    SECTION("metadata") {
        CHECK(s1.method == ShapMethod::Sampling);
        CHECK(s1.n_samples == 2048);
        CHECK(s1.sample_seed == 17);
    }
    SECTION("standard error shrinks with more samples") {
        double se400 = 0.0, se800 = 0.0;
        for (std::uint64_t sd = 0; sd < 10; ++sd) {
            se400 += shap_sampling(m, x, bg, 400, sd).std_error[0];
            se800 += shap_sampling(m, x, bg, 800, sd).std_error[0];
        }
        CHECK(se800 < se400);
    }
    SECTION("validation") {
        CHECK_THROWS_WITH(shap_sampling(m, x, bg, 99, 0),
                          ContainsSubstring("at least 100"));
        CHECK_THROWS_WITH(shap_sampling(m, x, FeatureMatrix{}, 200, 0),
                          ContainsSubstring("empty"));
    }
}

TEST_CASE("sampling explains tree models in their output space", "[explain]") {
    ModelSpec fs;
    fs.family = ModelFamily::RandomForest;
    fs.forest.n_trees = 20;
    FeatureMatrix train_m;
    detail::Rng r2(5);
    for (int i = 0; i < 40; ++i) {
        const int y = i % 2;
        train_m.rows.push_back({r2.next_gaussian() + 2.0 * y, r2.next_gaussian(),
                                r2.next_gaussian()});
        train_m.labels.push_back(y);
        train_m.ids.push_back("t" + std::to_string(i));
    }
    const ModelArtifact fmodel = train(train_m, fs);
    detail::Rng rng(321);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 50; ++i)
        rows.push_back({rng.next_gaussian(), rng.next_gaussian() * 2.0,
                        rng.next_gaussian()});
    const FeatureMatrix bg = matrix_of(rows);
    const std::vector<double> x = {1.1, -0.4, 2.2};

    const ShapExplanation fe = shap_sampling(fmodel, x, bg, 256, 3);
    double fsum = fe.base_value;
    for (double v : fe.phi) fsum += v;
    CHECK(fsum == Catch::Approx(fe.prediction).margin(1e-9));
    CHECK(fe.prediction ==
          Catch::Approx(fmodel.forest.predict_proba(fmodel.masked_scaled(x)))
              .margin(1e-12));

    SECTION("depth-1 tree with training background: both methods agree") {
        // The cover expectation of a stump equals the empirical expectation
        // over the training rows, so path-dependent and marginal Shapley
        // estimate the same quantity.
        detail::ClassTreeParams stump_params;
        stump_params.max_depth = 1;
        std::vector<int> ys_all = train_m.labels;
        std::vector<std::size_t> all_idx(train_m.size());
        std::iota(all_idx.begin(), all_idx.end(), 0);
        detail::Rng stump_rng(1);
        detail::ClassificationTreeBuilder sb(train_m.rows, ys_all, stump_params,
                                             stump_rng);
        ModelArtifact stump_model = forest_artifact({sb.build(all_idx)}, 3);
        const ShapExplanation fp = shap_tree(stump_model, x);
        const ShapExplanation fsamp =
            shap_sampling(stump_model, x, train_m, 4096, 11);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(fsamp.phi[j] ==
                  Catch::Approx(fp.phi[j]).margin(4.0 * fsamp.std_error[j] + 1e-9));
    }
}

TEST_CASE("global importance aggregation", "[explain]") {
    ShapExplanation a;
    a.feature_indices = {0, 1};
    a.input_width = 2;
    a.phi = {1.0, -3.0};
    a.values = {0, 0};
    ShapExplanation b = a;
    b.phi = {-1.0, 1.0};

    const GlobalImportance g = global_importance({a, b});
    CHECK(g.mean_abs_phi[0] == Catch::Approx(1.0).margin(1e-15));
    CHECK(g.mean_abs_phi[1] == Catch::Approx(2.0).margin(1e-15));
    CHECK(g.ranking[0] == 1);
    CHECK(g.ranking[1] == 0);

    SECTION("ties keep canonical order") {
        ShapExplanation tie = a;
        tie.phi = {2.0, 2.0};
        const GlobalImportance gt = global_importance({tie});
        CHECK(gt.ranking[0] == 0);
        CHECK(gt.ranking[1] == 1);
    }
    SECTION("validation") {
        ShapExplanation other = a;
        other.feature_indices = {0, 2};
        CHECK_THROWS_WITH(global_importance({a, other}),
                          ContainsSubstring("layout mismatch"));
        CHECK_THROWS_WITH(global_importance({}),
                          ContainsSubstring("needs explanations"));
    }
}

TEST_CASE("attribution deltas between error categories", "[explain]") {
    ShapExplanation fp1, fp2, fn1;
    fp1.feature_indices = fp2.feature_indices = fn1.feature_indices = {0, 1};
    fp1.input_width = fp2.input_width = fn1.input_width = 2;
    fp1.phi = {1.0, 0.2};
    fp2.phi = {1.0, -0.2};
    fn1.phi = {0.5, 0.4};

    const DeltaShapReport r = delta_shap({fp1, fp2}, {fn1});
    CHECK(r.delta[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(r.delta[1] == Catch::Approx(-0.4).margin(1e-15));
    CHECK(r.ranking[0] == 0);
    CHECK(r.ranking[1] == 1);
    CHECK(r.fp_count == 2);
    CHECK(r.fn_count == 1);
    CHECK_THROWS_WITH(delta_shap({}, {fn1}), ContainsSubstring("non-empty"));
    CHECK_THROWS_WITH(delta_shap({fp1}, {}), ContainsSubstring("non-empty"));
}

TEST_CASE("explanation serialization and rendering", "[explain]") {
    ModelArtifact m = linear_artifact({2.0, -1.0}, 0.25);
    const FeatureMatrix bg = matrix_of({{0.5, 0.5}, {1.5, -0.5}});
    ShapExplanation e = shap_linear(m, {1.0, 3.0}, bg);
    e.id = "doc-1";

    const nlohmann::json j = explanation_to_json(e);
    CHECK(j["id"] == "doc-1");
    CHECK(j["method"] == "linear_exact");
    CHECK(j["phi"].size() == 2);
    CHECK(j["phi"][0]["feature"] == "feature_0");
    CHECK(j["phi"][0].contains("value"));
    CHECK(j["phi"][0].contains("attribution"));
    CHECK_FALSE(j.contains("sampling"));

    ShapExplanation s = shap_sampling(m, {1.0, 3.0}, bg, 128, 7);
    s.id = "doc-2";
    const nlohmann::json js = explanation_to_json(s);
    CHECK(js["method"] == "sampling");
    CHECK(js["sampling"]["n"] == 128);
    CHECK(js["sampling"]["seed"] == 7);
    CHECK(js["sampling"]["stderr"].size() == 2);

    const std::string w = render_waterfall(e);
    CHECK_THAT(w, ContainsSubstring("feature"));
    CHECK_THAT(w, ContainsSubstring("cumulative"));
    CHECK_THAT(w, ContainsSubstring("(base value)"));
    CHECK_THAT(w, ContainsSubstring("(prediction)"));

    const GlobalImportance g = global_importance({e});
    const nlohmann::json gj = global_importance_to_json(g);
    CHECK(gj["ranking"].size() == 2);

    ShapExplanation e2 = e;
    e2.phi = {0.0, 5.0};
    const DeltaShapReport dr = delta_shap({e}, {e2});
    const nlohmann::json dj = delta_shap_to_json(dr);
    CHECK(dj["deltas"].size() == 2);
    CHECK(dj["fp_count"] == 1);
    CHECK(dj["fn_count"] == 1);
}

TEST_CASE("background subsampling and seeds", "[explain]") {
    detail::Rng rng(1);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 250; ++i) rows.push_back({rng.next_gaussian(), 1.0});
    const FeatureMatrix big = matrix_of(rows);

    const FeatureMatrix sub = background_subsample(big, 100, 42);
    REQUIRE(sub.size() == 100);
    const FeatureMatrix sub2 = background_subsample(big, 100, 42);
    CHECK(sub.ids == sub2.ids);
    const FeatureMatrix sub3 = background_subsample(big, 100, 43);
    CHECK(sub.ids != sub3.ids);

    // subsample preserves corpus order
    for (std::size_t i = 1; i < sub.ids.size(); ++i)
        CHECK(std::stoi(sub.ids[i - 1].substr(1)) < std::stoi(sub.ids[i].substr(1)));

    const FeatureMatrix small = background_subsample(big, 500, 0);
    CHECK(small.size() == 250);

    CHECK(background_hash(sub) == background_hash(sub2));
    CHECK(background_hash(sub) != background_hash(sub3));
    CHECK(instance_seed(9, "a") != instance_seed(9, "b"));
    CHECK(instance_seed(9, "a") == instance_seed(9, "a"));
}
