#include "hybrid_recall/synth.hpp"

#include <array>
#include <stdexcept>

#include "hybrid_recall/rng.hpp"
#include "hybrid_recall/text.hpp"

namespace hybrid_recall {

namespace {

constexpr std::array<const char*, 24> kCategoryNouns = {
    "shoes",    "boots",   "sandals", "sneakers", "hats",     "scarves",
    "gloves",   "jackets", "coats",   "shirts",   "jeans",    "dresses",
    "sofas",    "chairs",  "tables",  "desks",    "lamps",    "rugs",
    "blenders", "toasters", "kettles", "mugs",    "backpacks", "wallets"};

constexpr std::array<const char*, 24> kBrands = {
    "acme",    "zenith",  "northpeak", "bluecrest", "ironwood", "solace",
    "veltro",  "quantum", "harbor",    "lumen",     "cascade",  "aurora",
    "pinnacle", "orchid", "granite",   "meridian",  "falcon",   "willow",
    "ember",   "cobalt",  "summit",    "drift",     "haven",    "atlas"};

constexpr std::array<const char*, 12> kColors = {"red",  "blue",   "green",  "black",
                                                 "white", "navy",   "grey",   "brown",
                                                 "pink",  "purple", "orange", "teal"};

constexpr std::array<const char*, 12> kAdjectives = {
    "classic", "deluxe", "compact", "premium", "vintage", "modern",
    "sport",   "casual", "heavy",   "light",   "slim",    "eco"};

constexpr std::array<const char*, 3> kGenders = {"men", "women", "kids"};

std::string category_name(std::size_t index) {
    std::string name = kCategoryNouns[index % kCategoryNouns.size()];
    if (index >= kCategoryNouns.size()) {
        name += std::to_string(index / kCategoryNouns.size() + 1);
    }
    return name;
}

std::string product_id(std::size_t ordinal) {
    std::string digits = std::to_string(ordinal);
    return "p" + std::string(6 - std::min<std::size_t>(6, digits.size()), '0') + digits;
}

bool tokens_covered(const std::vector<std::string>& query_tokens, const Product& product) {
    std::vector<std::string> haystack = tokenize(product.title);
    for (const auto& token : tokenize(product.product_type)) haystack.push_back(token);
    for (const auto& [name, value] : product.attributes) {
        for (const auto& token : tokenize(value)) haystack.push_back(token);
    }
    for (const auto& needle : query_tokens) {
        if (std::find(haystack.begin(), haystack.end(), needle) == haystack.end()) return false;
    }
    return true;
}

}  // namespace

SynthCorpus generate_synthetic_corpus(const SynthParams& params) {
    if (params.n_products < 1 || params.n_queries < 1 || params.n_categories < 1) {
        throw std::invalid_argument("synthetic corpus sizes must be >= 1");
    }
    if (params.n_categories > params.n_products) {
        throw std::invalid_argument("n_categories must not exceed n_products");
    }

    Rng rng(params.seed);
    SynthCorpus corpus;

    // Products: category assigned round-robin so every category is covered.
    std::vector<std::size_t> category_of(params.n_products);
    for (std::size_t i = 0; i < params.n_products; ++i) {
        const std::size_t category = i % params.n_categories;
        category_of[i] = category;
        const std::string noun = category_name(category);

        Product product;
        product.id = product_id(i);
        product.product_type = noun;
        product.attributes["brand"] = kBrands[rng.index(kBrands.size())];
        product.attributes["color"] = kColors[rng.index(kColors.size())];
        if (rng.unit() < 0.5) {
            product.attributes["gender"] = kGenders[rng.index(kGenders.size())];
        }
        if (rng.unit() < 0.7) {
            const int tenths = 25 + static_cast<int>(rng.below(26));  // 2.5 .. 5.0
            product.attributes["rating"] =
                std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
        }

        std::string title = product.attributes["brand"] + " " + product.attributes["color"];
        if (rng.unit() < 0.5) {
            title += " ";
            title += kAdjectives[rng.index(kAdjectives.size())];
        }
        title += " " + noun;
        if (params.n_categories > 1 && rng.unit() < params.distractor_rate) {
            // Cross-category distractor: borrow another category's noun.
            std::size_t other = rng.index(params.n_categories - 1);
            if (other >= category) ++other;
            title += " " + category_name(other);
        }
        product.title = title;
        if (rng.unit() < 0.4) {
            product.description = "everyday " + noun + " from " + product.attributes["brand"];
        }
        corpus.catalog.add(std::move(product));
    }

    std::vector<std::vector<std::size_t>> by_category(params.n_categories);
    for (std::size_t i = 0; i < params.n_products; ++i) by_category[category_of[i]].push_back(i);

    // Queries: anchored on a real product so the golden entry cannot be empty.
    std::vector<std::string> query_texts;
    query_texts.reserve(params.n_queries);
    for (std::size_t j = 0; j < params.n_queries; ++j) {
        const std::size_t category = j % params.n_categories;
        const std::string noun = category_name(category);
        const auto& members = by_category[category];

        std::string query;
        for (int attempt = 0; attempt < 32; ++attempt) {
            const Product& anchor = corpus.catalog.at(members[rng.index(members.size())]);
            const double form = rng.unit();
            if (form < 0.5) {
                query = anchor.attributes.at("color") + " " + noun;
            } else if (form < 0.75) {
                query = anchor.attributes.at("brand") + " " + noun;
            } else if (form < 0.9) {
                query = noun;
            } else {
                query = anchor.attributes.at("brand") + " " + anchor.attributes.at("color") + " " +
                        noun;
            }
            if (corpus.golden.find(query) == nullptr) break;
        }
        if (corpus.golden.find(query) != nullptr) continue;  // pools exhausted, keep count lower

        const std::vector<std::string> query_tokens = tokenize(query);
        GoldenEntry entry;
        entry.query = query;
        for (std::size_t ordinal : members) {
            const Product& candidate = corpus.catalog.at(ordinal);
            if (tokens_covered(query_tokens, candidate)) entry.relevant.push_back(candidate.id);
        }
        corpus.golden.add(std::move(entry));
        query_texts.push_back(query);
    }

    // Engagement: skewed so the first engaged product always has orders.
    for (std::size_t j = 0; j < query_texts.size(); ++j) {
        const std::string& query = query_texts[j];
        std::vector<std::string> engaged = corpus.golden.find(query)->relevant;
        rng.shuffle(engaged);
        const std::size_t n_engaged = std::min<std::size_t>(engaged.size(), 2 + rng.below(5));
        for (std::size_t r = 0; r < n_engaged; ++r) {
            EngagementRecord row;
            row.query = query;
            row.product_id = engaged[r];
            row.impressions = 20 + static_cast<std::int64_t>(rng.below(180));
            if (r == 0) {
                row.orders = 1 + static_cast<std::int64_t>(rng.below(4));
                row.clicks = row.orders + static_cast<std::int64_t>(rng.below(10));
            } else if (r == 1 && rng.unit() < 0.6) {
                row.orders = 1 + static_cast<std::int64_t>(rng.below(2));
                row.clicks = row.orders + static_cast<std::int64_t>(rng.below(8));
            } else if (rng.unit() < 0.5) {
                row.clicks = 1 + static_cast<std::int64_t>(rng.below(6));
            }
            corpus.engagement.add(row);
        }
        if (rng.unit() < params.noise_rate) {
            // Noisy off-category impressions, mirroring real logs.
            EngagementRecord noise;
            noise.query = query;
            noise.product_id = corpus.catalog.at(rng.index(corpus.catalog.size())).id;
            noise.impressions = 5 + static_cast<std::int64_t>(rng.below(30));
            corpus.engagement.add(noise);
        }
        if (j < params.head_queries) {
            // Head traffic: a huge impression count drives the query over any
            // sane tail-eligibility threshold.
            EngagementRecord head;
            head.query = query;
            head.product_id = engaged[0];
            head.impressions = 50000 + static_cast<std::int64_t>(rng.below(50000));
            head.clicks = 200 + static_cast<std::int64_t>(rng.below(200));
            head.orders = 20 + static_cast<std::int64_t>(rng.below(30));
            corpus.engagement.add(head);
        }
    }

    return corpus;
}

}  // namespace hybrid_recall
