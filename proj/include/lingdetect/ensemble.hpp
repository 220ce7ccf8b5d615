#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingdetect/detail/text.hpp"
#include "lingdetect/models/models.hpp"

namespace lingdetect {

// Equal-weight soft-voting ensemble over the four classifier families.
// Members keep their own scaler and feature mask; only probabilities are
// combined. Member order is fixed to the family enum order.
struct EnsembleArtifact {
    std::array<ModelArtifact, 4> members;  // logreg, svm, random_forest, gbdt
    double threshold = 0.5;
};

inline EnsembleArtifact make_ensemble(std::vector<ModelArtifact> models,
                                      double threshold = 0.5) {
    if (models.size() != 4)
        throw std::invalid_argument("ensemble needs exactly 4 members");
    EnsembleArtifact e;
    e.threshold = threshold;
    std::array<bool, 4> seen{};
    for (ModelArtifact& m : models) {
        const auto slot = static_cast<std::size_t>(m.spec.family);
        if (seen[slot])
            throw std::invalid_argument(
                std::string("ensemble has duplicate family: ") +
                family_name(m.spec.family));
        seen[slot] = true;
        e.members[slot] = std::move(m);
    }
    for (std::size_t i = 1; i < 4; ++i)
        if (e.members[i].input_width != e.members[0].input_width)
            throw std::invalid_argument(
                "ensemble members trained on different feature layouts");
    return e;
}

// Arithmetic mean of the four member probabilities (equal weights).
// Summed in sorted order and pairwise so that permutations of the input
// give bit-identical results and (p,p,p,p) returns exactly p; clamped
// to [min, max] so the bounding invariant holds without epsilon.
inline double ensemble_proba(const std::vector<double>& member_probs) {
    if (member_probs.size() != 4)
        throw std::invalid_argument("ensemble expects exactly 4 probabilities");
    for (double p : member_probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("member probability outside [0,1]");
    std::array<double, 4> s{member_probs[0], member_probs[1], member_probs[2],
                            member_probs[3]};
    std::sort(s.begin(), s.end());
    const double mean = ((s[0] + s[1]) + (s[2] + s[3])) / 4.0;
    return std::clamp(mean, s[0], s[3]);
}

struct EnsembleDecision {
    int label = 0;
    double p_final = 0.0;
    std::array<double, 4> breakdown{};  // member order: logreg, svm, rf, gbdt
};

// Soft voting (default): average probabilities, then threshold. Hard
// majority voting is available behind the flag for comparison; a 2-2
// tie falls back to the averaged-probability rule.
inline EnsembleDecision ensemble_classify(const EnsembleArtifact& e,
                                          const std::vector<double>& x,
                                          bool majority_vote = false) {
    EnsembleDecision d;
    for (std::size_t i = 0; i < 4; ++i)
        d.breakdown[i] = predict_proba(e.members[i], x);
    d.p_final = ensemble_proba(
        {d.breakdown[0], d.breakdown[1], d.breakdown[2], d.breakdown[3]});
    if (majority_vote) {
        int votes = 0;
        for (double p : d.breakdown) votes += classify(p, e.threshold);
        if (votes > 2)
            d.label = 1;
        else if (votes < 2)
            d.label = 0;
        else
            d.label = classify(d.p_final, e.threshold);
    } else {
        d.label = classify(d.p_final, e.threshold);
    }
    return d;
}

inline double ensemble_predict_proba(const EnsembleArtifact& e,
                                     const std::vector<double>& x) {
    return ensemble_classify(e, x).p_final;
}

// ---- container file --------------------------------------------------
// The ensemble file does not embed its members; it references the four
// member model files by path and content hash so a swapped file is
// detected at load time.

inline constexpr const char* kEnsembleMagic = "lingdetect.ensemble";

inline nlohmann::json ensemble_container_json(
    const std::vector<std::string>& member_paths, double threshold = 0.5) {
    if (member_paths.size() != 4)
        throw std::invalid_argument("ensemble needs exactly 4 member files");
    nlohmann::json j;
    j["magic"] = kEnsembleMagic;
    j["format_version"] = kModelFormatVersion;
    j["threshold"] = threshold;
    j["members"] = nlohmann::json::array();
    std::array<bool, 4> seen{};
    for (const std::string& path : member_paths) {
        const std::string bytes = detail::read_file(path);
        const ModelArtifact m = model_from_json(
            nlohmann::json::parse(bytes));  // validates magic and version
        const auto slot = static_cast<std::size_t>(m.spec.family);
        if (seen[slot])
            throw std::invalid_argument(
                std::string("ensemble has duplicate family: ") +
                family_name(m.spec.family));
        seen[slot] = true;
        nlohmann::json member;
        member["family"] = family_name(m.spec.family);
        member["path"] = path;
        member["content_hash"] = detail::hex64(detail::fnv1a64(bytes));
        j["members"].push_back(std::move(member));
    }
    return j;
}

inline void save_ensemble_container(const std::vector<std::string>& member_paths,
                                    const std::string& out_path,
                                    double threshold = 0.5) {
    detail::write_file(out_path,
                       ensemble_container_json(member_paths, threshold).dump());
}

inline EnsembleArtifact load_ensemble(const std::string& container_path) {
    nlohmann::json j = nlohmann::json::parse(
        detail::read_file(container_path), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("magic") ||
        j.at("magic").get<std::string>() != kEnsembleMagic)
        throw std::runtime_error("not an ensemble file: " + container_path);
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw std::runtime_error("unsupported ensemble format version " +
                                 std::to_string(version));
    const std::filesystem::path base =
        std::filesystem::path(container_path).parent_path();
    std::vector<ModelArtifact> members;
    for (const auto& member : j.at("members")) {
        std::filesystem::path path(member.at("path").get<std::string>());
        if (path.is_relative()) path = base / path;
        const std::string bytes = detail::read_file(path.string());
        const std::string expect = member.at("content_hash").get<std::string>();
        if (detail::hex64(detail::fnv1a64(bytes)) != expect)
            throw std::runtime_error("member file content hash mismatch: " +
                                     path.string());
        members.push_back(model_from_json(nlohmann::json::parse(bytes)));
    }
    return make_ensemble(std::move(members), j.at("threshold").get<double>());
}

} // namespace lingdetect
