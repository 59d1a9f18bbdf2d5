#include "hybrid_recall/encoder.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "hybrid_recall/rng.hpp"
#include "hybrid_recall/text.hpp"

namespace hybrid_recall {

using nlohmann::json;

namespace {

constexpr int kModelFormatVersion = 1;
constexpr const char* kModelFormatName = "hybrid-recall-model";
constexpr double kZeroNormEps = 1e-12;

}  // namespace

const char* pooling_name(Pooling pooling) {
    return pooling == Pooling::mean ? "mean" : "max";
}

const char* metric_name(Metric metric) {
    return metric == Metric::cosine ? "cosine" : "inner_product";
}

Pooling pooling_from_name(const std::string& name) {
    if (name == "mean") return Pooling::mean;
    if (name == "max") return Pooling::max;
    throw std::invalid_argument("unknown pooling: " + name);
}

Metric metric_from_name(const std::string& name) {
    if (name == "cosine") return Metric::cosine;
    if (name == "inner_product" || name == "inner") return Metric::inner_product;
    throw std::invalid_argument("unknown metric: " + name);
}

TwoTowerModel TwoTowerModel::init(Vocabulary vocabulary, ModelConfig config, std::uint64_t seed) {
    TwoTowerModel model;
    model.vocab_ = std::move(vocabulary);
    model.config_ = std::move(config);
    if (model.config_.d_out > model.config_.d_token) {
        throw std::invalid_argument("d_out must not exceed d_token");
    }

    Rng rng(seed);
    model.token_embeddings_ = Matrix(model.vocab_.size(), model.config_.d_token);
    for (double& value : model.token_embeddings_.data) value = rng.range(-0.05, 0.05);

    // Truncated identity: the projection starts as "keep the first d_out
    // components" and is refined by training.
    model.projection_ = Matrix(model.config_.d_token, model.config_.d_out);
    for (std::size_t i = 0; i < model.config_.d_out; ++i) model.projection_.at(i, i) = 1.0;

    model.theta_sigma_ = std::log(0.1);
    return model;
}

double TwoTowerModel::sigma() const { return std::exp(theta_sigma_); }

TokenIds TwoTowerModel::tokenize_query(const std::string& query) const {
    TokenIds ids;
    for (const std::string& token : tokenize(query)) {
        if (ids.size() >= config_.max_query_tokens) break;
        ids.push_back(vocab_.id_of(token));
    }
    return ids;
}

TokenIds TwoTowerModel::compose_product_text(const Product& product) const {
    return compose_product_text(product, config_.attributes);
}

TokenIds TwoTowerModel::compose_product_text(const Product& product,
                                             std::span<const std::string> attribute_names) const {
    TokenIds ids;
    auto push = [&](std::int32_t id) {
        if (ids.size() < config_.max_product_tokens) ids.push_back(id);
    };
    for (const std::string& token : tokenize(product.title)) push(vocab_.id_of(token));
    for (const std::string& name : attribute_names) {
        const std::int32_t prefix = vocab_.attribute_prefix(name);  // throws when unregistered
        std::string value;
        if (name == "product_type") {
            value = product.product_type;
        } else {
            auto it = product.attributes.find(name);
            if (it == product.attributes.end()) continue;  // absent attributes are skipped
            value = it->second;
        }
        if (value.empty()) continue;
        push(prefix);
        for (const std::string& token : tokenize(value)) push(vocab_.id_of(token));
    }
    return ids;
}

EncodeTrace TwoTowerModel::encode_traced(std::span<const std::int32_t> ids) const {
    if (ids.empty()) throw std::invalid_argument("cannot encode an empty token sequence");
    EncodeTrace trace;
    trace.ids.assign(ids.begin(), ids.end());

    const std::size_t d_token = config_.d_token;
    trace.pooled.assign(d_token, 0.0);
    if (config_.pooling == Pooling::mean) {
        for (const std::int32_t id : ids) {
            const double* row = token_embeddings_.row(static_cast<std::size_t>(id));
            for (std::size_t c = 0; c < d_token; ++c) trace.pooled[c] += row[c];
        }
        const double inv = 1.0 / static_cast<double>(ids.size());
        for (double& value : trace.pooled) value *= inv;
    } else {
        trace.argmax.assign(d_token, 0);
        const double* first = token_embeddings_.row(static_cast<std::size_t>(ids[0]));
        for (std::size_t c = 0; c < d_token; ++c) trace.pooled[c] = first[c];
        for (std::size_t t = 1; t < ids.size(); ++t) {
            const double* row = token_embeddings_.row(static_cast<std::size_t>(ids[t]));
            for (std::size_t c = 0; c < d_token; ++c) {
                if (row[c] > trace.pooled[c]) {
                    trace.pooled[c] = row[c];
                    trace.argmax[c] = static_cast<std::int32_t>(t);
                }
            }
        }
    }

    trace.projected.assign(config_.d_out, 0.0);
    for (std::size_t t = 0; t < d_token; ++t) {
        const double u = trace.pooled[t];
        if (u == 0.0) continue;
        const double* row = projection_.row(t);
        for (std::size_t o = 0; o < config_.d_out; ++o) trace.projected[o] += u * row[o];
    }

    if (config_.metric == Metric::cosine) {
        trace.projected_norm = norm(trace.projected);
        if (trace.projected_norm < kZeroNormEps) {
            throw std::runtime_error("zero-norm embedding under cosine metric");
        }
        trace.embedding.resize(config_.d_out);
        for (std::size_t o = 0; o < config_.d_out; ++o) {
            trace.embedding[o] = trace.projected[o] / trace.projected_norm;
        }
    } else {
        trace.projected_norm = 1.0;
        trace.embedding = trace.projected;
    }
    return trace;
}

Embedding TwoTowerModel::encode(std::span<const std::int32_t> ids) const {
    return encode_traced(ids).embedding;
}

double TwoTowerModel::score_pair(const Embedding& query, const Embedding& product) const {
    if (query.size() != product.size()) {
        throw std::invalid_argument("embedding dimension mismatch");
    }
    if (config_.metric == Metric::inner_product) return dot(query, product);
    const double nq = norm(query);
    const double np = norm(product);
    if (nq < kZeroNormEps || np < kZeroNormEps) {
        throw std::runtime_error("cosine of zero-norm vector");
    }
    return dot(query, product) / (nq * np);
}

std::vector<Embedding> TwoTowerModel::multi_encode(std::span<const std::int32_t> ids,
                                                   std::size_t m) const {
    if (m == 0) throw std::invalid_argument("multi_encode: m must be >= 1");
    if (ids.empty()) throw std::invalid_argument("cannot encode an empty token sequence");
    std::vector<Embedding> embeddings;
    embeddings.reserve(m);
    for (std::size_t d = 0; d < m; ++d) {
        // Short sequences reuse the last token's embedding.
        const std::int32_t id = ids[std::min(d, ids.size() - 1)];
        const double* row = token_embeddings_.row(static_cast<std::size_t>(id));
        Embedding projected(config_.d_out, 0.0);
        for (std::size_t t = 0; t < config_.d_token; ++t) {
            const double* w = projection_.row(t);
            for (std::size_t o = 0; o < config_.d_out; ++o) projected[o] += row[t] * w[o];
        }
        const double n = norm(projected);
        if (n < kZeroNormEps) throw std::runtime_error("zero-norm token embedding");
        for (double& value : projected) value /= n;
        embeddings.push_back(std::move(projected));
    }
    return embeddings;
}

double TwoTowerModel::multi_score(std::span<const Embedding> query_embeddings,
                                  const Embedding& product) {
    if (query_embeddings.empty()) throw std::invalid_argument("multi_score: no query embeddings");
    double best = -2.0;
    const double np = norm(product);
    if (np < kZeroNormEps) throw std::runtime_error("cosine of zero-norm vector");
    for (const Embedding& q : query_embeddings) {
        const double nq = norm(q);
        if (nq < kZeroNormEps) throw std::runtime_error("cosine of zero-norm vector");
        best = std::max(best, dot(q, product) / (nq * np));
    }
    return best;
}

void TwoTowerModel::save(const std::filesystem::path& path) const {
    json doc;
    doc["format"] = kModelFormatName;
    doc["version"] = kModelFormatVersion;
    doc["config"] = {{"d_token", config_.d_token},
                     {"d_out", config_.d_out},
                     {"pooling", pooling_name(config_.pooling)},
                     {"metric", metric_name(config_.metric)},
                     {"max_query_tokens", config_.max_query_tokens},
                     {"max_product_tokens", config_.max_product_tokens},
                     {"multi_m", config_.multi_m},
                     {"attributes", config_.attributes}};
    doc["theta_sigma"] = theta_sigma_;
    doc["vocabulary"] = {{"tokens", vocab_.tokens()},
                         {"attributes", vocab_.attribute_names()}};
    doc["token_embeddings"] = {{"rows", token_embeddings_.rows},
                               {"cols", token_embeddings_.cols},
                               {"data", token_embeddings_.data}};
    doc["projection"] = {{"rows", projection_.rows},
                         {"cols", projection_.cols},
                         {"data", projection_.data}};

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump() << '\n';
}

TwoTowerModel TwoTowerModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error("corrupted model file " + path.string() + ": " + e.what());
    }
    if (doc.value("format", "") != kModelFormatName ||
        doc.value("version", -1) != kModelFormatVersion) {
        throw std::runtime_error("unsupported model format in " + path.string());
    }

    TwoTowerModel model;
    const json& cfg = doc.at("config");
    model.config_.d_token = cfg.at("d_token").get<std::size_t>();
    model.config_.d_out = cfg.at("d_out").get<std::size_t>();
    model.config_.pooling = pooling_from_name(cfg.at("pooling").get<std::string>());
    model.config_.metric = metric_from_name(cfg.at("metric").get<std::string>());
    model.config_.max_query_tokens = cfg.at("max_query_tokens").get<std::size_t>();
    model.config_.max_product_tokens = cfg.at("max_product_tokens").get<std::size_t>();
    model.config_.multi_m = cfg.at("multi_m").get<std::size_t>();
    model.config_.attributes = cfg.at("attributes").get<std::vector<std::string>>();
    model.theta_sigma_ = doc.at("theta_sigma").get<double>();

    model.vocab_ = Vocabulary::from_tokens(
        doc.at("vocabulary").at("tokens").get<std::vector<std::string>>(),
        doc.at("vocabulary").at("attributes").get<std::vector<std::string>>());

    auto read_matrix = [&](const json& node) {
        Matrix m(node.at("rows").get<std::size_t>(), node.at("cols").get<std::size_t>());
        auto data = node.at("data").get<std::vector<double>>();
        if (data.size() != m.rows * m.cols) {
            throw std::runtime_error("corrupted model matrix in " + path.string());
        }
        m.data = std::move(data);
        return m;
    };
    model.token_embeddings_ = read_matrix(doc.at("token_embeddings"));
    model.projection_ = read_matrix(doc.at("projection"));
    if (model.token_embeddings_.rows != model.vocab_.size() ||
        model.token_embeddings_.cols != model.config_.d_token ||
        model.projection_.rows != model.config_.d_token ||
        model.projection_.cols != model.config_.d_out) {
        throw std::runtime_error("model matrices disagree with config in " + path.string());
    }
    return model;
}

}  // namespace hybrid_recall
