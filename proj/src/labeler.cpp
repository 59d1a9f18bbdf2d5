#include "hybrid_recall/labeler.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace hybrid_recall {

using nlohmann::json;

const char* tier_name(Tier tier) {
    switch (tier) {
        case Tier::purchase: return "purchase";
        case Tier::click: return "click";
        case Tier::impression: return "impression";
        case Tier::negative: return "negative";
    }
    return "negative";
}

Tier tier_from_name(const std::string& name) {
    if (name == "purchase") return Tier::purchase;
    if (name == "click") return Tier::click;
    if (name == "impression") return Tier::impression;
    if (name == "negative") return Tier::negative;
    throw std::invalid_argument("unknown tier: " + name);
}

double smoothed_rate(std::int64_t orders, std::int64_t impressions, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("smoothing factor must be > 0");
    if (orders < 0 || impressions < 0) throw std::invalid_argument("counts must be >= 0");
    return (static_cast<double>(orders) + alpha) / (static_cast<double>(impressions) + alpha);
}

std::vector<double> band_score(const std::vector<double>& rates, double band_hi, double band_lo) {
    if (rates.empty()) throw std::invalid_argument("band_score: rates must be non-empty");
    if (band_hi <= band_lo) throw std::invalid_argument("band_score: band_hi must exceed band_lo");
    const auto [min_it, max_it] = std::minmax_element(rates.begin(), rates.end());
    const double lo = *min_it;
    const double hi = *max_it;
    std::vector<double> scores(rates.size());
    if (hi == lo) {
        // Degenerate tier: everyone ties for the highest rate, so everyone
        // takes the top of the band.
        std::fill(scores.begin(), scores.end(), band_hi);
        return scores;
    }
    for (std::size_t i = 0; i < rates.size(); ++i) {
        scores[i] = (band_hi - band_lo) * (rates[i] - lo) / (hi - lo) + band_lo;
    }
    return scores;
}

std::vector<LabeledExample> label_query(const std::string& query,
                                        std::span<const EngagementRecord* const> rows,
                                        const LabelerConfig& config) {
    if (config.alpha <= 0.0) throw std::invalid_argument("labeler alpha must be > 0");

    std::vector<const EngagementRecord*> purchases, clicks, impressions;
    std::int64_t total_impressions = 0;
    for (const EngagementRecord* row : rows) {
        total_impressions += row->impressions;
        if (row->orders > 0) {
            purchases.push_back(row);
        } else if (row->clicks > 0) {
            clicks.push_back(row);
        } else if (row->impressions > 0) {
            impressions.push_back(row);
        }
    }

    std::vector<LabeledExample> out;
    out.reserve(purchases.size() + clicks.size() + impressions.size());

    auto emit = [&](const std::vector<const EngagementRecord*>& tier_rows,
                    const std::vector<double>& rates, double hi, double lo, Tier tier) {
        const std::vector<double> scores = band_score(rates, hi, lo);
        for (std::size_t i = 0; i < tier_rows.size(); ++i) {
            out.push_back({query, tier_rows[i]->product_id, scores[i], tier});
        }
    };

    if (!purchases.empty()) {
        std::vector<double> rates;
        rates.reserve(purchases.size());
        for (const auto* row : purchases) {
            rates.push_back(smoothed_rate(row->orders, row->impressions, config.alpha));
        }
        emit(purchases, rates, 10.0, 8.0, Tier::purchase);
    }
    if (!clicks.empty()) {
        std::vector<double> rates;
        rates.reserve(clicks.size());
        for (const auto* row : clicks) {
            rates.push_back(smoothed_rate(row->clicks, row->impressions, config.alpha));
        }
        emit(clicks, rates, 7.0, 5.0, Tier::click);
    }
    if (!impressions.empty()) {
        // Impression share of the query's total traffic, smoothed with the
        // same alpha.
        std::vector<double> rates;
        rates.reserve(impressions.size());
        for (const auto* row : impressions) {
            rates.push_back(smoothed_rate(row->impressions, total_impressions, config.alpha));
        }
        emit(impressions, rates, 4.0, 2.0, Tier::impression);
    }
    return out;
}

std::vector<LabeledExample> label_all(const EngagementTable& table, const LabelerConfig& config) {
    std::vector<LabeledExample> out;
    for (const std::string& query : table.queries()) {
        const auto rows = table.rows_for(query);
        auto labeled = label_query(query, rows, config);
        out.insert(out.end(), std::make_move_iterator(labeled.begin()),
                   std::make_move_iterator(labeled.end()));
    }
    return out;
}

void write_labeled(const std::vector<LabeledExample>& examples,
                   const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const LabeledExample& example : examples) {
        json record;
        record["query"] = example.query;
        record["product_id"] = example.product_id;
        record["score"] = example.score;
        record["tier"] = tier_name(example.tier);
        out << record.dump() << '\n';
    }
}

std::vector<LabeledExample> read_labeled(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<LabeledExample> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json record = json::parse(line);
        out.push_back({record.at("query").get<std::string>(),
                       record.at("product_id").get<std::string>(),
                       record.at("score").get<double>(),
                       tier_from_name(record.at("tier").get<std::string>())});
    }
    return out;
}

LabeledData LabeledData::group(std::vector<LabeledExample> examples) {
    LabeledData data;
    for (auto& example : examples) {
        auto it = data.by_query_.find(example.query);
        std::size_t slot;
        if (it == data.by_query_.end()) {
            slot = data.queries_.size();
            data.by_query_.emplace(example.query, slot);
            data.queries_.push_back({example.query, {}});
        } else {
            slot = it->second;
        }
        data.pairs_.insert(example.query + '\x1f' + example.product_id);
        data.queries_[slot].examples.push_back(std::move(example));
    }
    return data;
}

const LabeledData::QueryExamples* LabeledData::find(const std::string& query) const {
    auto it = by_query_.find(query);
    return it == by_query_.end() ? nullptr : &queries_[it->second];
}

bool LabeledData::is_labeled(const std::string& query, const std::string& product_id) const {
    return pairs_.contains(query + '\x1f' + product_id);
}

}  // namespace hybrid_recall
