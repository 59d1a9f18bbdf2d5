#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hybrid_recall/corpus.hpp"

namespace hybrid_recall {

enum class Tier { purchase, click, impression, negative };

const char* tier_name(Tier tier);
Tier tier_from_name(const std::string& name);

/// One (query, product, score) training example. Scores live in fixed,
/// non-overlapping bands per tier: purchases [8,10], clicks [5,7],
/// impressions [2,4], negatives exactly 0.
struct LabeledExample {
    std::string query;
    std::string product_id;
    double score = 0.0;
    Tier tier = Tier::negative;
};

struct LabelerConfig {
    double alpha = 5.0;  // smoothing factor, must be > 0
};

/// (orders + alpha) / (impressions + alpha); always positive.
double smoothed_rate(std::int64_t orders, std::int64_t impressions, double alpha);

/// Affine map of rates onto [band_lo, band_hi]: the max rate lands exactly on
/// band_hi and the min on band_lo. When all rates are equal (including the
/// single-product case) everything gets band_hi, matching the rule that the
/// highest rate takes the top of the band.
std::vector<double> band_score(const std::vector<double>& rates, double band_hi, double band_lo);

/// Splits one query's engagement rows into purchase/click/impression tiers
/// and band-scores each tier independently. Rows with no signal at all
/// (0/0/0) are dropped.
std::vector<LabeledExample> label_query(const std::string& query,
                                        std::span<const EngagementRecord* const> rows,
                                        const LabelerConfig& config);

/// Labels every query in the table, in the table's query order.
std::vector<LabeledExample> label_all(const EngagementTable& table, const LabelerConfig& config);

void write_labeled(const std::vector<LabeledExample>& examples,
                   const std::filesystem::path& path);
std::vector<LabeledExample> read_labeled(const std::filesystem::path& path);

/// Labeled examples grouped per query, the shape the trainer and miner
/// consume. Lookup of (query, product) membership is O(1).
class LabeledData {
public:
    struct QueryExamples {
        std::string query;
        std::vector<LabeledExample> examples;
    };

    static LabeledData group(std::vector<LabeledExample> examples);

    const std::vector<QueryExamples>& queries() const { return queries_; }
    const QueryExamples* find(const std::string& query) const;
    /// True when the product has any labeled example (any tier) for the query.
    bool is_labeled(const std::string& query, const std::string& product_id) const;
    std::size_t size() const { return queries_.size(); }

private:
    std::vector<QueryExamples> queries_;
    std::unordered_map<std::string, std::size_t> by_query_;
    std::unordered_set<std::string> pairs_;
};

}  // namespace hybrid_recall
