#pragma once

#include <cstdint>

#include "hybrid_recall/corpus.hpp"

namespace hybrid_recall {

/// Desk-scale stand-in for a production query/product log. Titles are
/// templated from (brand, color, adjective, category-noun) vocabularies.
/// A fraction of titles additionally carries a noun borrowed from another
/// category: those are the cross-category distractors that hard-negative
/// mining is supposed to push away.
struct SynthParams {
    std::uint64_t seed = 7;
    std::size_t n_products = 1000;
    std::size_t n_queries = 200;
    std::size_t n_categories = 20;
    double distractor_rate = 0.3;   // titles that borrow a foreign category noun
    double noise_rate = 0.1;        // queries that get one off-category impression row
    std::size_t head_queries = 3;   // very-high-traffic queries, ineligible for ANN
};

struct SynthCorpus {
    Catalog catalog;
    EngagementTable engagement;
    GoldenSet golden;
};

/// Pure function of its parameters: same params, same corpus, byte for byte
/// once serialized. Every query ends up with at least one ordered product
/// and a non-empty golden entry. Throws when n_categories > n_products.
SynthCorpus generate_synthetic_corpus(const SynthParams& params);

}  // namespace hybrid_recall
