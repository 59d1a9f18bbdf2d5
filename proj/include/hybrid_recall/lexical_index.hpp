#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hybrid_recall/corpus.hpp"
#include "hybrid_recall/types.hpp"

namespace hybrid_recall {

struct LexicalConfig {
    bool index_attributes = false;  // default indexes the title only
    double k1 = 1.2;
    double b = 0.75;
};

/// Classic inverted index with Okapi BM25 scoring. Postings are sorted by
/// product ordinal; the whole structure is immutable after build.
class LexicalIndex {
public:
    struct Posting {
        std::uint32_t ordinal;
        std::uint32_t term_frequency;
        bool operator==(const Posting& other) const = default;
    };

    static LexicalIndex build(const Catalog& catalog, const LexicalConfig& config = {});

    /// Okapi BM25 with the nonnegative idf variant
    /// idf = ln(1 + (N - df + 0.5) / (df + 0.5)). Repeated query tokens
    /// contribute once per occurrence. Returns 0 when nothing overlaps.
    double bm25_score(std::span<const std::string> query_tokens, std::size_t ordinal) const;

    /// Top-k by descending score, ties broken by ascending product id.
    std::vector<ScoredId> retrieve(const std::string& query, std::size_t k) const;

    std::size_t document_count() const { return doc_lengths_.size(); }
    std::size_t vocabulary_size() const { return postings_.size(); }
    double average_document_length() const { return average_length_; }
    const LexicalConfig& config() const { return config_; }

    void save(const std::filesystem::path& path) const;
    static LexicalIndex load(const std::filesystem::path& path);

    bool operator==(const LexicalIndex& other) const = default;

private:
    double term_score(const Posting& posting, std::size_t df) const;

    LexicalConfig config_;
    std::vector<std::string> ids_;             // ordinal -> product id
    std::vector<std::uint32_t> doc_lengths_;   // tokens per document
    double average_length_ = 0.0;
    std::map<std::string, std::vector<Posting>> postings_;
};

}  // namespace hybrid_recall
