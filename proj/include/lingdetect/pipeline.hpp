#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "lingdetect/corpus.hpp"
#include "lingdetect/features.hpp"
#include "lingdetect/lexicons.hpp"

namespace lingdetect {

// Feature extraction over a document set. Workers pull documents from a
// shared counter and write into preallocated slots, so the matrix is
// identical for every job count.
inline FeatureMatrix extract_matrix(const std::vector<Document>& docs,
                                    const LexiconSet& lex, unsigned jobs = 1) {
    FeatureMatrix m;
    m.lexicon_version = lex.version;
    const std::size_t n = docs.size();
    m.rows.resize(n);
    m.ids.resize(n);
    m.labels.resize(n);
    if (jobs == 0) jobs = 1;

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            FeatureVector fv = extract(docs[i], lex);
            m.rows[i].assign(fv.values.begin(), fv.values.end());
            m.ids[i] = docs[i].id;
            m.labels[i] = docs[i].label;
        }
    };
    if (jobs == 1 || n < 2) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    return m;
}

} // namespace lingdetect
