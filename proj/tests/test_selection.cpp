#include <algorithm>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "lingdetect/detail/rng.hpp"
#include "lingdetect/selection.hpp"

using namespace lingdetect;
using Catch::Matchers::ContainsSubstring;

namespace {

// Columns 0..2 carry a 3-sigma class shift, columns 3..7 are noise.
FeatureMatrix planted(std::size_t n, std::uint64_t seed) {
    detail::Rng rng(seed);
    FeatureMatrix m;
    m.lexicon_version = "v1";
    for (std::size_t i = 0; i < n; ++i) {
        const int y = i % 2 == 0 ? 0 : 1;
        std::vector<double> row(8);
        for (std::size_t j = 0; j < 8; ++j) row[j] = rng.next_gaussian();
        for (std::size_t j = 0; j < 3; ++j) row[j] += y == 1 ? 3.0 : 0.0;
        m.rows.push_back(row);
        m.labels.push_back(y);
        m.ids.push_back("doc" + std::to_string(i));
    }
    return m;
}

} // namespace

TEST_CASE("feature importance by family", "[selection]") {
    const FeatureMatrix m = planted(120, 2);

    ModelSpec lr;
    lr.family = ModelFamily::LogReg;
    const std::vector<double> wlr = feature_importance(train(m, lr));
    REQUIRE(wlr.size() == 8);
    for (double w : wlr) CHECK(w >= 0.0);
    // informative columns outrank every noise column
    const double weakest_signal = std::min({wlr[0], wlr[1], wlr[2]});
    for (std::size_t j = 3; j < 8; ++j) CHECK(weakest_signal > wlr[j]);

    ModelSpec gb;
    gb.family = ModelFamily::Gbdt;
    gb.gbdt.n_rounds = 40;
    const std::vector<double> wgb = feature_importance(train(m, gb));
    REQUIRE(wgb.size() == 8);
    CHECK(*std::max_element(wgb.begin(), wgb.end()) > 0.0);

    ModelSpec svm;
    svm.family = ModelFamily::Svm;
    CHECK_THROWS_WITH(feature_importance(train(m, svm)),
                      ContainsSubstring("ineligible"));
}

TEST_CASE("recursive elimination recovers planted features", "[selection]") {
    ModelSpec spec;
    spec.family = ModelFamily::Gbdt;
    spec.gbdt.n_rounds = 40;
    const FeatureMatrix pm = planted(160, 21);
    const SelectionResult r = rfecv(pm, spec, 5, 3);

    // one elimination per round down to a single feature
    REQUIRE(r.elimination_order.size() == 8);
    REQUIRE(r.elimination_indices.size() == 8);
    REQUIRE(r.subset_sizes.size() == 8);
    CHECK(r.subset_sizes.front() == 8);
    CHECK(r.subset_sizes.back() == 1);
    for (std::size_t k = 1; k < r.subset_sizes.size(); ++k)
        CHECK(r.subset_sizes[k] == r.subset_sizes[k - 1] - 1);

    SECTION("elimination order is a permutation of the input columns") {
        std::vector<bool> seen(8, false);
        for (std::size_t i : r.elimination_indices) {
            REQUIRE(i < 8);
            CHECK_FALSE(seen[i]);
            seen[i] = true;
        }
    }
    SECTION("optimal subset scores the global best f1") {
        REQUIRE(r.mean_f1.size() == r.subset_sizes.size());
        const double best = *std::max_element(r.mean_f1.begin(), r.mean_f1.end());
        bool found = false;
        for (std::size_t k = 0; k < r.subset_sizes.size(); ++k)
            if (r.subset_sizes[k] == r.optimal_size) {
                CHECK(r.mean_f1[k] == best);
                found = true;
            }
        CHECK(found);
        CHECK(r.optimal_mask.size() == r.optimal_size);
        CHECK(std::is_sorted(r.optimal_mask.begin(), r.optimal_mask.end()));
    }
    SECTION("generic column names outside the canonical layout") {
        CHECK(r.elimination_order[0].rfind("feature_", 0) == 0);
        CHECK(r.estimator == "gbdt");
    }
    SECTION("deterministic in spec and seed") {
        const SelectionResult r2 = rfecv(pm, spec, 5, 3);
        CHECK(r2.elimination_order == r.elimination_order);
        CHECK(r2.optimal_mask == r.optimal_mask);
    }
    SECTION("json round trip") {
        const nlohmann::json j = selection_to_json(r);
        CHECK(j["magic"] == "lingdetect.selection");
        const SelectionResult r3 = selection_from_json(j);
        CHECK(r3.optimal_mask == r.optimal_mask);
        CHECK(r3.elimination_order == r.elimination_order);
        CHECK(r3.mean_f1 == r.mean_f1);
        CHECK(r3.estimator == r.estimator);

        nlohmann::json bad = j;
        bad["magic"] = "nope";
        CHECK_THROWS_WITH(selection_from_json(bad),
                          ContainsSubstring("not a selection result file"));
        nlohmann::json alien = j;
        alien["format_version"] = 42;
        CHECK_THROWS_WITH(selection_from_json(alien),
                          ContainsSubstring("version"));
    }
    SECTION("svm is refused") {
        ModelSpec bad;
        bad.family = ModelFamily::Svm;
        CHECK_THROWS_WITH(rfecv(pm, bad), ContainsSubstring("ineligible"));
    }
}
