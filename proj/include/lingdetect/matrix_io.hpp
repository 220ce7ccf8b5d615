#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "lingdetect/detail/text.hpp"
#include "lingdetect/features.hpp"

namespace lingdetect {
namespace detail {

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

// CSV schema: id,label,<38 canonical feature names>. A leading comment
// line records the scaled flag and lexicon version so round-trips are
// lossless.
inline void save_matrix(const FeatureMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    if (m.width() != kFeatureCount)
        throw std::invalid_argument("matrix does not have canonical width");
    out << "# scaled=" << (m.scaled ? 1 : 0)
        << " lexicon=" << (m.lexicon_version.empty() ? "v1" : m.lexicon_version)
        << "\n";
    out << "id,label";
    for (const auto& name : feature_names()) out << ',' << name;
    out << '\n';
    for (std::size_t r = 0; r < m.size(); ++r) {
        out << detail::csv_escape(m.ids[r]) << ',' << m.labels[r];
        for (double v : m.rows[r]) out << ',' << detail::format_value(v);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline FeatureMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    FeatureMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty matrix file: " + path);
    if (!line.empty() && line[0] == '#') {
        if (line.find("scaled=1") != std::string::npos) m.scaled = true;
        const auto pos = line.find("lexicon=");
        if (pos != std::string::npos)
            m.lexicon_version = detail::trim(line.substr(pos + 8));
        if (!std::getline(in, line))
            throw std::runtime_error("matrix file has no header: " + path);
    }

    const auto header = detail::csv_split(line);
    const auto& names = feature_names();
    if (header.size() < 2 || header[0] != "id" || header[1] != "label")
        throw std::runtime_error("matrix header must start with id,label");
    {
        std::unordered_set<std::string> present(header.begin() + 2, header.end());
        for (const auto& name : names)
            if (!present.count(name))
                throw std::runtime_error("missing feature: " + name);
    }
    if (header.size() != 2 + kFeatureCount)
        throw std::runtime_error("matrix has extra columns beyond the canonical set");
    for (std::size_t i = 0; i < kFeatureCount; ++i)
        if (header[2 + i] != names[i])
            throw std::runtime_error("column mismatch at position " +
                                     std::to_string(i) + ": expected '" +
                                     names[i] + "', got '" + header[2 + i] + "'");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::csv_split(line);
        if (fields.size() != 2 + kFeatureCount)
            throw std::runtime_error("row " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) +
                                     " fields, expected " +
                                     std::to_string(2 + kFeatureCount));
        m.ids.push_back(fields[0]);
        m.labels.push_back(std::atoi(fields[1].c_str()));
        std::vector<double> row(kFeatureCount);
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            char* end = nullptr;
            row[i] = std::strtod(fields[2 + i].c_str(), &end);
            if (end == fields[2 + i].c_str())
                throw std::runtime_error("row " + std::to_string(line_no) +
                                         ": bad value in column " + names[i]);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

} // namespace lingdetect
