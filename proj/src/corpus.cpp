#include "hybrid_recall/corpus.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hybrid_recall/text.hpp"

namespace hybrid_recall {

using nlohmann::json;

namespace {

std::string pair_key(const std::string& query, const std::string& product_id) {
    return query + '\x1f' + product_id;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

bool Catalog::add(Product product) {
    if (by_id_.contains(product.id)) return false;
    by_id_.emplace(product.id, products_.size());
    products_.push_back(std::move(product));
    return true;
}

const Product* Catalog::find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &products_[it->second];
}

std::optional<std::size_t> Catalog::ordinal_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

void EngagementTable::add(const EngagementRecord& record) {
    const std::string key = pair_key(record.query, record.product_id);
    auto it = by_pair_.find(key);
    if (it != by_pair_.end()) {
        EngagementRecord& row = rows_[it->second];
        row.impressions += record.impressions;
        row.clicks += record.clicks;
        row.orders += record.orders;
    } else {
        by_pair_.emplace(key, rows_.size());
        auto q = by_query_.find(record.query);
        if (q == by_query_.end()) {
            by_query_.emplace(record.query, std::vector<std::size_t>{rows_.size()});
            query_order_.push_back(record.query);
        } else {
            q->second.push_back(rows_.size());
        }
        rows_.push_back(record);
    }
    orders_by_product_[record.product_id] += record.orders;
}

const EngagementRecord* EngagementTable::find(const std::string& query,
                                              const std::string& product_id) const {
    auto it = by_pair_.find(pair_key(query, product_id));
    return it == by_pair_.end() ? nullptr : &rows_[it->second];
}

std::vector<const EngagementRecord*> EngagementTable::rows_for(const std::string& query) const {
    std::vector<const EngagementRecord*> out;
    auto it = by_query_.find(query);
    if (it == by_query_.end()) return out;
    out.reserve(it->second.size());
    for (std::size_t idx : it->second) out.push_back(&rows_[idx]);
    return out;
}

std::int64_t EngagementTable::query_impressions(const std::string& query) const {
    std::int64_t total = 0;
    auto it = by_query_.find(query);
    if (it == by_query_.end()) return 0;
    for (std::size_t idx : it->second) total += rows_[idx].impressions;
    return total;
}

std::int64_t EngagementTable::product_orders(const std::string& product_id) const {
    auto it = orders_by_product_.find(product_id);
    return it == orders_by_product_.end() ? 0 : it->second;
}

void GoldenSet::add(GoldenEntry entry) {
    auto it = by_query_.find(entry.query);
    if (it != by_query_.end()) {
        // Merge repeated queries, keeping ids unique.
        GoldenEntry& existing = entries_[it->second];
        for (auto& id : entry.relevant) {
            if (std::find(existing.relevant.begin(), existing.relevant.end(), id) ==
                existing.relevant.end()) {
                existing.relevant.push_back(std::move(id));
            }
        }
        return;
    }
    by_query_.emplace(entry.query, entries_.size());
    entries_.push_back(std::move(entry));
}

const GoldenEntry* GoldenSet::find(const std::string& query) const {
    auto it = by_query_.find(query);
    return it == by_query_.end() ? nullptr : &entries_[it->second];
}

std::pair<Catalog, IngestStats> ingest_catalog(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    Catalog catalog;
    IngestStats stats;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Product product;
        try {
            const json record = json::parse(line);
            product.id = record.at("id").get<std::string>();
            product.title = record.at("title").get<std::string>();
            product.product_type = record.at("product_type").get<std::string>();
            if (record.contains("attributes")) {
                for (const auto& [name, value] : record.at("attributes").items()) {
                    product.attributes[name] = value.get<std::string>();
                }
            }
            if (record.contains("description")) {
                product.description = record.at("description").get<std::string>();
            }
        } catch (const json::exception&) {
            ++stats.rejected;
            continue;
        }
        if (product.id.empty() || product.title.empty() || product.product_type.empty()) {
            ++stats.rejected;
            continue;
        }
        if (catalog.add(std::move(product))) {
            ++stats.count;
        } else {
            ++stats.rejected;
        }
    }
    return {std::move(catalog), stats};
}

std::pair<EngagementTable, IngestStats> ingest_engagement(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    EngagementTable table;
    IngestStats stats;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("query\t", 0) == 0) continue;  // header
        }
        std::istringstream row(line);
        EngagementRecord record;
        std::string impressions, clicks, orders;
        if (!std::getline(row, record.query, '\t') ||
            !std::getline(row, record.product_id, '\t') ||
            !std::getline(row, impressions, '\t') || !std::getline(row, clicks, '\t') ||
            !std::getline(row, orders, '\t')) {
            ++stats.rejected;
            continue;
        }
        try {
            record.impressions = std::stoll(impressions);
            record.clicks = std::stoll(clicks);
            record.orders = std::stoll(orders);
        } catch (const std::exception&) {
            ++stats.rejected;
            continue;
        }
        if (record.impressions < 0 || record.clicks < 0 || record.orders < 0) {
            ++stats.rejected;
            continue;
        }
        record.query = normalize_query(record.query);
        table.add(record);
        ++stats.count;
    }
    return {std::move(table), stats};
}

std::pair<GoldenSet, GoldenIngestStats> ingest_golden(const std::filesystem::path& path,
                                                      const Catalog& catalog) {
    std::ifstream in = open_or_throw(path);
    GoldenSet golden;
    GoldenIngestStats stats;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        GoldenEntry entry;
        std::vector<std::string> raw_ids;
        try {
            const json record = json::parse(line);
            entry.query = normalize_query(record.at("query").get<std::string>());
            raw_ids = record.at("relevant").get<std::vector<std::string>>();
        } catch (const json::exception&) {
            ++stats.warnings;
            continue;
        }
        for (auto& id : raw_ids) {
            if (catalog.find(id) != nullptr) {
                entry.relevant.push_back(std::move(id));
            } else {
                ++stats.warnings;
            }
        }
        if (entry.relevant.empty()) {
            ++stats.warnings;
            continue;
        }
        golden.add(std::move(entry));
        ++stats.entries;
    }
    return {std::move(golden), stats};
}

void write_catalog(const Catalog& catalog, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const Product& product : catalog.products()) {
        json record;
        record["id"] = product.id;
        record["title"] = product.title;
        record["product_type"] = product.product_type;
        record["attributes"] = json::object();
        for (const auto& [name, value] : product.attributes) record["attributes"][name] = value;
        if (!product.description.empty()) record["description"] = product.description;
        out << record.dump() << '\n';
    }
}

void write_engagement(const EngagementTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "query\tproduct_id\timpressions\tclicks\torders\n";
    for (const EngagementRecord& row : table.rows()) {
        out << row.query << '\t' << row.product_id << '\t' << row.impressions << '\t'
            << row.clicks << '\t' << row.orders << '\n';
    }
}

void write_golden(const GoldenSet& golden, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const GoldenEntry& entry : golden.entries()) {
        json record;
        record["query"] = entry.query;
        record["relevant"] = entry.relevant;
        out << record.dump() << '\n';
    }
}

}  // namespace hybrid_recall
