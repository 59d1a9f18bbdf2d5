#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hybrid_recall/corpus.hpp"

namespace hybrid_recall {

/// Token -> dense id map with one reserved prefix token per registered
/// attribute name. Prefix tokens use the "<attr:name>" spelling, which the
/// tokenizer can never produce, so they cannot collide with text tokens.
/// Id 0 is the out-of-vocabulary slot.
class Vocabulary {
public:
    static constexpr const char* kOov = "<oov>";

    /// Builds the vocabulary from product text (title + registered attribute
    /// values) plus any extra query strings, scanning in a deterministic
    /// order.
    static Vocabulary build(const Catalog& catalog,
                            std::span<const std::string> attribute_names,
                            std::span<const std::string> extra_queries);

    std::size_t size() const { return tokens_.size(); }
    std::int32_t oov_id() const { return 0; }

    /// Id for a text token; OOV id when unknown.
    std::int32_t id_of(const std::string& token) const;
    const std::string& token_at(std::size_t id) const { return tokens_.at(id); }

    bool has_attribute(const std::string& name) const;
    /// Reserved prefix-token id for an attribute; throws when unregistered.
    std::int32_t attribute_prefix(const std::string& name) const;
    const std::vector<std::string>& attribute_names() const { return attribute_names_; }

    /// Serialization helpers for the model artifact.
    const std::vector<std::string>& tokens() const { return tokens_; }
    static Vocabulary from_tokens(std::vector<std::string> tokens,
                                  std::vector<std::string> attribute_names);

private:
    std::int32_t intern(const std::string& token);

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::int32_t> ids_;
    std::vector<std::string> attribute_names_;
    std::unordered_map<std::string, std::int32_t> attribute_prefix_ids_;
};

}  // namespace hybrid_recall
