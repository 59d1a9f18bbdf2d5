#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hybrid_recall/types.hpp"

namespace hybrid_recall {

struct IngestStats {
    std::size_t count = 0;
    std::size_t rejected = 0;
};

/// Immutable after ingestion; products keep catalog-file order so ordinals
/// are stable across rebuilds.
class Catalog {
public:
    bool add(Product product);  // false when the id is already present

    std::size_t size() const { return products_.size(); }
    bool empty() const { return products_.empty(); }
    const Product& at(std::size_t ordinal) const { return products_.at(ordinal); }
    const std::vector<Product>& products() const { return products_; }

    const Product* find(const std::string& id) const;
    std::optional<std::size_t> ordinal_of(const std::string& id) const;

private:
    std::vector<Product> products_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

/// Aggregated engagement keyed by (normalized query, product id).
/// Duplicate rows are summed on insert.
class EngagementTable {
public:
    void add(const EngagementRecord& record);

    const EngagementRecord* find(const std::string& query, const std::string& product_id) const;
    /// Row indices for one query, in first-seen order.
    std::vector<const EngagementRecord*> rows_for(const std::string& query) const;
    const std::vector<EngagementRecord>& rows() const { return rows_; }

    /// Queries in first-seen order (the deterministic iteration order for
    /// labeling and downstream artifacts).
    const std::vector<std::string>& queries() const { return query_order_; }

    /// Total impressions per query; feeds the head-query eligibility table.
    std::int64_t query_impressions(const std::string& query) const;
    /// Total orders per product across all queries.
    std::int64_t product_orders(const std::string& product_id) const;

private:
    std::vector<EngagementRecord> rows_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_query_;
    std::vector<std::string> query_order_;
    std::unordered_map<std::string, std::size_t> by_pair_;
    std::unordered_map<std::string, std::int64_t> orders_by_product_;
};

class GoldenSet {
public:
    void add(GoldenEntry entry);

    const std::vector<GoldenEntry>& entries() const { return entries_; }
    const GoldenEntry* find(const std::string& query) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<GoldenEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_query_;
};

/// JSON-lines catalog: {"id":..., "title":..., "product_type":...,
/// "attributes":{...}, "description":...}. Invalid or duplicate records are
/// counted, not fatal; an unreadable file throws.
std::pair<Catalog, IngestStats> ingest_catalog(const std::filesystem::path& path);

/// Tab-separated engagement with header query/product_id/impressions/clicks/orders.
/// Rows with negative counts are rejected.
std::pair<EngagementTable, IngestStats> ingest_engagement(const std::filesystem::path& path);

struct GoldenIngestStats {
    std::size_t entries = 0;
    std::size_t warnings = 0;  // unknown product ids dropped + entries dropped
};

/// JSON-lines golden set: {"query":..., "relevant":[ids]}. Unknown ids are
/// dropped with a warning count; entries left empty are dropped entirely.
std::pair<GoldenSet, GoldenIngestStats> ingest_golden(const std::filesystem::path& path,
                                                      const Catalog& catalog);

void write_catalog(const Catalog& catalog, const std::filesystem::path& path);
void write_engagement(const EngagementTable& table, const std::filesystem::path& path);
void write_golden(const GoldenSet& golden, const std::filesystem::path& path);

}  // namespace hybrid_recall
