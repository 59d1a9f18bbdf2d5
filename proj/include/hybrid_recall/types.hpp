#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hybrid_recall {

/// One catalog entry. `attributes` carries brand/color/gender and any other
/// name->value pairs; the product-type category is its own field because
/// nearly every stage keys on it.
struct Product {
    std::string id;
    std::string title;
    std::string product_type;
    std::map<std::string, std::string> attributes;
    std::string description;
};

struct Query {
    std::string text;
    std::string normalized;
    std::int64_t impression_count = 0;
};

/// Raw engagement log row. Counts are only checked for non-negativity;
/// orders <= clicks <= impressions is deliberately not enforced because
/// real logs violate it.
struct EngagementRecord {
    std::string query;
    std::string product_id;
    std::int64_t impressions = 0;
    std::int64_t clicks = 0;
    std::int64_t orders = 0;
};

struct GoldenEntry {
    std::string query;
    std::vector<std::string> relevant;  // product ids, unique
};

struct ScoredId {
    std::string id;
    double score = 0.0;
};

}  // namespace hybrid_recall
