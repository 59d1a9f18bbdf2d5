#include "hybrid_recall/vocab.hpp"

#include <stdexcept>

#include "hybrid_recall/text.hpp"

namespace hybrid_recall {

std::int32_t Vocabulary::intern(const std::string& token) {
    auto it = ids_.find(token);
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::int32_t>(tokens_.size());
    ids_.emplace(token, id);
    tokens_.push_back(token);
    return id;
}

Vocabulary Vocabulary::build(const Catalog& catalog,
                             std::span<const std::string> attribute_names,
                             std::span<const std::string> extra_queries) {
    Vocabulary vocab;
    vocab.intern(kOov);
    for (const std::string& name : attribute_names) {
        const std::string prefix = "<attr:" + name + ">";
        vocab.attribute_prefix_ids_.emplace(name, vocab.intern(prefix));
        vocab.attribute_names_.push_back(name);
    }
    for (const Product& product : catalog.products()) {
        for (const std::string& token : tokenize(product.title)) vocab.intern(token);
        for (const std::string& name : attribute_names) {
            if (name == "product_type") {
                for (const std::string& token : tokenize(product.product_type)) vocab.intern(token);
                continue;
            }
            auto it = product.attributes.find(name);
            if (it == product.attributes.end()) continue;
            for (const std::string& token : tokenize(it->second)) vocab.intern(token);
        }
    }
    for (const std::string& query : extra_queries) {
        for (const std::string& token : tokenize(query)) vocab.intern(token);
    }
    return vocab;
}

std::int32_t Vocabulary::id_of(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? oov_id() : it->second;
}

bool Vocabulary::has_attribute(const std::string& name) const {
    return attribute_prefix_ids_.contains(name);
}

std::int32_t Vocabulary::attribute_prefix(const std::string& name) const {
    auto it = attribute_prefix_ids_.find(name);
    if (it == attribute_prefix_ids_.end()) {
        throw std::invalid_argument("attribute not registered in vocabulary: " + name);
    }
    return it->second;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens,
                                   std::vector<std::string> attribute_names) {
    Vocabulary vocab;
    vocab.tokens_ = std::move(tokens);
    for (std::size_t id = 0; id < vocab.tokens_.size(); ++id) {
        vocab.ids_.emplace(vocab.tokens_[id], static_cast<std::int32_t>(id));
    }
    vocab.attribute_names_ = std::move(attribute_names);
    for (const std::string& name : vocab.attribute_names_) {
        auto it = vocab.ids_.find("<attr:" + name + ">");
        if (it == vocab.ids_.end()) {
            throw std::runtime_error("vocabulary missing prefix token for attribute " + name);
        }
        vocab.attribute_prefix_ids_.emplace(name, it->second);
    }
    return vocab;
}

}  // namespace hybrid_recall
