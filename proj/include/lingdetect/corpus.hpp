#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "lingdetect/detail/rng.hpp"
#include "lingdetect/detail/text.hpp"
#include "lingdetect/features.hpp"
#include "lingdetect/lexicons.hpp"

namespace lingdetect {

inline constexpr int kLabelUnknown = -1;

struct Document {
    std::string id;
    std::string text;
    int label = kLabelUnknown;  // 0 = human, 1 = ai
    std::string domain;         // optional, e.g. "essays"
    std::string generator;      // optional, e.g. "gpt-4o"
};

struct DatasetSplit {
    std::string name;
    std::vector<Document> documents;
    std::size_t n_human = 0;
    std::size_t n_ai = 0;
};

// Maps heterogeneous dataset field names onto the canonical document model.
struct SchemaMap {
    std::string text_field = "text";
    std::string label_field = "label";
    std::string id_field = "id";
    std::string domain_field = "domain";
    std::string generator_field = "generator";
    double max_malformed_fraction = 0.10;
};

struct SkipReport {
    std::size_t total_lines = 0;
    std::size_t loaded = 0;
    std::size_t skipped_parse = 0;       // invalid JSON
    std::size_t skipped_no_text = 0;     // text field missing or empty
    std::size_t skipped_bad_label = 0;   // unrecognised label encoding

    std::size_t skipped() const {
        return skipped_parse + skipped_no_text + skipped_bad_label;
    }
    nlohmann::json to_json() const {
        return {{"total_lines", total_lines},
                {"loaded", loaded},
                {"skipped_parse", skipped_parse},
                {"skipped_no_text", skipped_no_text},
                {"skipped_bad_label", skipped_bad_label}};
    }
};

namespace detail {

// {0,1}, {"human","ai","machine"}, booleans; anything else is a skip.
inline std::optional<int> normalize_label(const nlohmann::json& v) {
    if (v.is_boolean()) return v.get<bool>() ? 1 : 0;
    if (v.is_number_integer()) {
        const auto i = v.get<long long>();
        if (i == 0 || i == 1) return static_cast<int>(i);
        return std::nullopt;
    }
    if (v.is_string()) {
        const std::string s = to_lower(trim(v.get<std::string>()));
        if (s == "0" || s == "human") return 0;
        if (s == "1" || s == "ai" || s == "machine") return 1;
    }
    return std::nullopt;
}

} // namespace detail

// One JSON object per line. Malformed lines are counted in the report;
// more than max_malformed_fraction of them aborts the load.
inline DatasetSplit load_jsonl(const std::string& path, const SchemaMap& schema,
                               SkipReport* report_out = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    const std::string stem = std::filesystem::path(path).stem().string();

    DatasetSplit split;
    split.name = stem;
    SkipReport report;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        ++report.total_lines;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            ++report.skipped_parse;
            continue;
        }
        if (!obj.contains(schema.text_field) ||
            !obj[schema.text_field].is_string()) {
            ++report.skipped_no_text;
            continue;
        }
        Document doc;
        doc.text = obj[schema.text_field].get<std::string>();
        if (detail::trim(doc.text).empty()) {
            ++report.skipped_no_text;
            continue;
        }
        if (obj.contains(schema.label_field)) {
            const auto label = detail::normalize_label(obj[schema.label_field]);
            if (!label) {
                ++report.skipped_bad_label;
                continue;
            }
            doc.label = *label;
        }
        if (obj.contains(schema.id_field) && obj[schema.id_field].is_string())
            doc.id = obj[schema.id_field].get<std::string>();
        if (doc.id.empty() || seen_ids.count(doc.id))
            doc.id = stem + ":" + std::to_string(line_no);
        seen_ids.insert(doc.id);
        if (obj.contains(schema.domain_field) &&
            obj[schema.domain_field].is_string())
            doc.domain = obj[schema.domain_field].get<std::string>();
        if (obj.contains(schema.generator_field) &&
            obj[schema.generator_field].is_string())
            doc.generator = obj[schema.generator_field].get<std::string>();
        if (doc.label == 0) ++split.n_human;
        if (doc.label == 1) ++split.n_ai;
        split.documents.push_back(std::move(doc));
        ++report.loaded;
    }
    if (report.total_lines == 0)
        throw std::runtime_error("corpus file has no data lines: " + path);
    if (report.loaded == 0)
        throw std::runtime_error("no usable documents in " + path +
                                 " (text field '" + schema.text_field +
                                 "' missing on every line?)");
    const double bad_fraction = static_cast<double>(report.skipped()) /
                                static_cast<double>(report.total_lines);
    if (bad_fraction > schema.max_malformed_fraction)
        throw std::runtime_error(
            "too many malformed lines in " + path + ": " +
            std::to_string(report.skipped()) + "/" +
            std::to_string(report.total_lines) + " skipped (threshold " +
            std::to_string(schema.max_malformed_fraction) + ")");
    if (report_out) *report_out = report;
    return split;
}

// Canonical-field JSONL writer; load_jsonl with a default schema reads it
// back unchanged.
inline void save_jsonl(const std::vector<Document>& docs,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write corpus file: " + path);
    for (const Document& doc : docs) {
        nlohmann::json obj;
        obj["id"] = doc.id;
        obj["text"] = doc.text;
        obj["label"] = doc.label;
        if (!doc.domain.empty()) obj["domain"] = doc.domain;
        if (!doc.generator.empty()) obj["generator"] = doc.generator;
        out << obj.dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// k disjoint (train, test) partitions with per-fold class proportions
// within 1 document of the global proportion. Deterministic in the seed.
struct FoldPartition {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

inline std::vector<FoldPartition> stratified_split(std::size_t n_docs,
                                                   const std::vector<int>& labels,
                                                   std::size_t k,
                                                   std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold count must be >= 2");
    if (labels.size() != n_docs)
        throw std::invalid_argument("label count does not match document count");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n_docs; ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw std::invalid_argument("stratified split needs 0/1 labels");
        by_class[labels[i]].push_back(i);
    }
    for (int c = 0; c < 2; ++c)
        if (!by_class[c].empty() && by_class[c].size() < k)
            throw std::invalid_argument(
                "class " + std::to_string(c) + " has fewer members (" +
                std::to_string(by_class[c].size()) + ") than folds (" +
                std::to_string(k) + ")");

    detail::Rng rng(seed);
    std::vector<std::vector<std::size_t>> test_folds(k);
    for (int c = 0; c < 2; ++c) {
        auto idx = by_class[c];
        rng.shuffle(idx);
        // round-robin keeps per-fold class counts within 1 of each other
        for (std::size_t i = 0; i < idx.size(); ++i)
            test_folds[i % k].push_back(idx[i]);
    }
    std::vector<FoldPartition> folds(k);
    for (std::size_t f = 0; f < k; ++f) {
        auto& test = test_folds[f];
        std::sort(test.begin(), test.end());
        folds[f].test = test;
        const std::unordered_set<std::size_t> in_test(test.begin(), test.end());
        for (std::size_t i = 0; i < n_docs; ++i)
            if (!in_test.count(i)) folds[f].train.push_back(i);
    }
    return folds;
}

inline std::vector<FoldPartition> stratified_split(const DatasetSplit& split,
                                                   std::size_t k,
                                                   std::uint64_t seed) {
    std::vector<int> labels;
    labels.reserve(split.documents.size());
    for (const auto& d : split.documents) labels.push_back(d.label);
    return stratified_split(split.documents.size(), labels, k, seed);
}

inline FeatureVector extract(const Document& doc, const LexiconSet& lex) {
    return extract(std::string_view(doc.text), lex);
}

} // namespace lingdetect
