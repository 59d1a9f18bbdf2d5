#include "hybrid_recall/lexical_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "hybrid_recall/binio.hpp"
#include "hybrid_recall/text.hpp"

namespace hybrid_recall {

namespace {
constexpr char kMagic[4] = {'H', 'R', 'L', 'X'};
constexpr std::uint32_t kFormatVersion = 1;
}  // namespace

LexicalIndex LexicalIndex::build(const Catalog& catalog, const LexicalConfig& config) {
    if (catalog.empty()) throw std::invalid_argument("cannot build a lexical index on an empty catalog");

    LexicalIndex index;
    index.config_ = config;
    index.ids_.reserve(catalog.size());
    index.doc_lengths_.reserve(catalog.size());

    std::uint64_t total_length = 0;
    for (std::size_t ordinal = 0; ordinal < catalog.size(); ++ordinal) {
        const Product& product = catalog.at(ordinal);
        std::vector<std::string> tokens = tokenize(product.title);
        if (config.index_attributes) {
            for (const auto& [name, value] : product.attributes) {
                for (auto& token : tokenize(value)) tokens.push_back(std::move(token));
            }
        }

        std::map<std::string, std::uint32_t> frequencies;
        for (const std::string& token : tokens) ++frequencies[token];
        for (const auto& [term, tf] : frequencies) {
            index.postings_[term].push_back(
                {static_cast<std::uint32_t>(ordinal), tf});
        }

        index.ids_.push_back(product.id);
        index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
        total_length += tokens.size();
    }
    index.average_length_ =
        static_cast<double>(total_length) / static_cast<double>(catalog.size());
    return index;
}

double LexicalIndex::term_score(const Posting& posting, std::size_t df) const {
    const double n_docs = static_cast<double>(doc_lengths_.size());
    const double idf =
        std::log(1.0 + (n_docs - static_cast<double>(df) + 0.5) / (static_cast<double>(df) + 0.5));
    const double tf = static_cast<double>(posting.term_frequency);
    const double length_norm =
        1.0 - config_.b + config_.b * static_cast<double>(doc_lengths_[posting.ordinal]) /
                              average_length_;
    return idf * tf * (config_.k1 + 1.0) / (tf + config_.k1 * length_norm);
}

double LexicalIndex::bm25_score(std::span<const std::string> query_tokens,
                                std::size_t ordinal) const {
    if (ordinal >= doc_lengths_.size()) throw std::out_of_range("bm25_score: bad ordinal");
    double score = 0.0;
    for (const std::string& token : query_tokens) {
        auto it = postings_.find(token);
        if (it == postings_.end()) continue;
        const auto& list = it->second;
        auto posting = std::lower_bound(
            list.begin(), list.end(), static_cast<std::uint32_t>(ordinal),
            [](const Posting& p, std::uint32_t o) { return p.ordinal < o; });
        if (posting == list.end() || posting->ordinal != ordinal) continue;
        score += term_score(*posting, list.size());
    }
    return score;
}

std::vector<ScoredId> LexicalIndex::retrieve(const std::string& query, std::size_t k) const {
    if (k == 0) throw std::invalid_argument("retrieve: k must be >= 1");
    const std::vector<std::string> tokens = tokenize(query);

    std::unordered_map<std::uint32_t, double> accumulator;
    for (const std::string& token : tokens) {
        auto it = postings_.find(token);
        if (it == postings_.end()) continue;
        for (const Posting& posting : it->second) {
            accumulator[posting.ordinal] += term_score(posting, it->second.size());
        }
    }

    std::vector<ScoredId> results;
    results.reserve(accumulator.size());
    for (const auto& [ordinal, score] : accumulator) {
        results.push_back({ids_[ordinal], score});
    }
    std::sort(results.begin(), results.end(), [](const ScoredId& a, const ScoredId& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    if (results.size() > k) results.resize(k);
    return results;
}

void LexicalIndex::save(const std::filesystem::path& path) const {
    BinaryWriter out(path);
    out.magic(kMagic);
    out.u32(kFormatVersion);
    out.u8(config_.index_attributes ? 1 : 0);
    out.f64(config_.k1);
    out.f64(config_.b);
    out.f64(average_length_);
    out.u64(ids_.size());
    for (const std::string& id : ids_) out.str(id);
    out.u32_block(doc_lengths_);
    out.u64(postings_.size());
    for (const auto& [term, list] : postings_) {
        out.str(term);
        out.u64(list.size());
        for (const Posting& posting : list) {
            out.u32(posting.ordinal);
            out.u32(posting.term_frequency);
        }
    }
}

LexicalIndex LexicalIndex::load(const std::filesystem::path& path) {
    BinaryReader in(path);
    in.expect_magic(kMagic);
    if (in.u32() != kFormatVersion) {
        throw std::runtime_error("unsupported lexical index version in " + path.string());
    }
    LexicalIndex index;
    index.config_.index_attributes = in.u8() != 0;
    index.config_.k1 = in.f64();
    index.config_.b = in.f64();
    index.average_length_ = in.f64();
    const std::uint64_t n_docs = in.u64();
    index.ids_.reserve(n_docs);
    for (std::uint64_t i = 0; i < n_docs; ++i) index.ids_.push_back(in.str());
    index.doc_lengths_ = in.u32_block(n_docs);
    const std::uint64_t n_terms = in.u64();
    for (std::uint64_t i = 0; i < n_terms; ++i) {
        std::string term = in.str();
        const std::uint64_t n_postings = in.u64();
        std::vector<Posting> list;
        list.reserve(n_postings);
        for (std::uint64_t j = 0; j < n_postings; ++j) {
            Posting posting;
            posting.ordinal = in.u32();
            posting.term_frequency = in.u32();
            list.push_back(posting);
        }
        index.postings_.emplace(std::move(term), std::move(list));
    }
    return index;
}

}  // namespace hybrid_recall
