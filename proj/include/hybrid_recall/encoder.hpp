#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hybrid_recall/linalg.hpp"
#include "hybrid_recall/types.hpp"
#include "hybrid_recall/vocab.hpp"

namespace hybrid_recall {

enum class Pooling { mean, max };
enum class Metric { cosine, inner_product };

const char* pooling_name(Pooling pooling);
const char* metric_name(Metric metric);
Pooling pooling_from_name(const std::string& name);
Metric metric_from_name(const std::string& name);

struct ModelConfig {
    std::size_t d_token = 64;
    std::size_t d_out = 32;
    Pooling pooling = Pooling::mean;
    Metric metric = Metric::cosine;
    std::size_t max_query_tokens = 16;
    std::size_t max_product_tokens = 48;
    std::size_t multi_m = 1;
    // Attributes concatenated after the title, each behind its prefix token.
    // Descriptions are deliberately not in this list.
    std::vector<std::string> attributes = {"product_type", "brand", "color", "gender"};
};

using Embedding = std::vector<double>;

/// Token ids that survived truncation; padding never enters the sequence, so
/// fixed-length and dynamic-length buffers encode identically by
/// construction.
using TokenIds = std::vector<std::int32_t>;

/// Intermediate activations kept for backpropagation and gradient checking.
struct EncodeTrace {
    TokenIds ids;
    std::vector<double> pooled;        // d_token
    std::vector<double> projected;     // d_out, pre-normalization
    Embedding embedding;               // d_out, unit norm under cosine
    double projected_norm = 1.0;
    std::vector<std::int32_t> argmax;  // max pooling: winning position per component
};

/// Siamese two-tower encoder: one shared token-embedding table, mean or max
/// pooling, linear projection, optional L2 normalization. Immutable during
/// serving; the trainer mutates a private copy.
class TwoTowerModel {
public:
    TwoTowerModel() = default;

    /// Fresh model with token embeddings uniform in [-0.05, 0.05] and the
    /// projection set to a truncated identity so an untrained model is still
    /// non-degenerate.
    static TwoTowerModel init(Vocabulary vocabulary, ModelConfig config, std::uint64_t seed);

    TokenIds tokenize_query(const std::string& query) const;

    /// Title tokens, then per present attribute its prefix token followed by
    /// the value tokens, truncated to the product length budget. Absent
    /// attributes are skipped; unregistered names throw.
    TokenIds compose_product_text(const Product& product) const;
    TokenIds compose_product_text(const Product& product,
                                  std::span<const std::string> attribute_names) const;

    Embedding encode(std::span<const std::int32_t> ids) const;
    EncodeTrace encode_traced(std::span<const std::int32_t> ids) const;

    /// Cosine or raw inner product per the configured metric.
    double score_pair(const Embedding& query, const Embedding& product) const;

    /// One embedding per leading token (projected and L2-normalized); short
    /// sequences reuse the last token to fill the m slots.
    std::vector<Embedding> multi_encode(std::span<const std::int32_t> ids, std::size_t m) const;
    /// max over the query-side embeddings of cosine to the product embedding.
    static double multi_score(std::span<const Embedding> query_embeddings,
                              const Embedding& product);

    void save(const std::filesystem::path& path) const;
    static TwoTowerModel load(const std::filesystem::path& path);

    const Vocabulary& vocabulary() const { return vocab_; }
    const ModelConfig& config() const { return config_; }
    double sigma() const;

    Matrix& token_embeddings() { return token_embeddings_; }
    const Matrix& token_embeddings() const { return token_embeddings_; }
    Matrix& projection() { return projection_; }
    const Matrix& projection() const { return projection_; }
    double& theta_sigma() { return theta_sigma_; }
    double theta_sigma() const { return theta_sigma_; }

private:
    Vocabulary vocab_;
    ModelConfig config_;
    Matrix token_embeddings_;  // vocab size x d_token
    Matrix projection_;        // d_token x d_out
    double theta_sigma_ = 0.0;
};

}  // namespace hybrid_recall
