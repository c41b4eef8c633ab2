#include "bess/site_scoring.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <set>
#include <stdexcept>

namespace bess {

std::string_view to_string(Pillar p) {
    switch (p) {
        case Pillar::Assembly: return "Assembly";
        case Pillar::Connection: return "Connection";
        case Pillar::Operation: return "Operation";
        case Pillar::Maintenance: return "Maintenance";
    }
    return "?";
}

const std::array<SubCriterion, kCriteriaCount>& canonical_criteria() {
    static const std::array<SubCriterion, kCriteriaCount> criteria{{
        {Pillar::Assembly, "land availability", 0},
        {Pillar::Assembly, "container footprint", 0},
        {Pillar::Assembly, "soil conditions", 0},
        {Pillar::Connection, "affordable connection fee", 0},
        {Pillar::Connection, "accessible permit process", 0},
        {Pillar::Connection, "available transformer", 0},
        {Pillar::Operation, "proximity to congestion points", 0},
        {Pillar::Operation, "renewable supply", 0},
        {Pillar::Operation, "local load profiles", 0},
        {Pillar::Maintenance, "safety standards", 0},
        {Pillar::Maintenance, "access roads", 0},
        {Pillar::Maintenance, "noise constraints", 0},
    }};
    return criteria;
}

ScoreCard::ScoreCard(std::string site_name, std::vector<SubCriterion> entries)
    : site_name_(std::move(site_name)), entries_(std::move(entries)) {
    if (site_name_.empty()) throw std::invalid_argument("site name must not be empty");
    if (entries_.size() != kCriteriaCount)
        throw std::invalid_argument(fmt::format("site '{}': expected {} sub-criteria, got {}", site_name_,
                                                kCriteriaCount, entries_.size()));
    for (Pillar p : kPillars) {
        auto n = std::count_if(entries_.begin(), entries_.end(),
                               [p](const SubCriterion& c) { return c.pillar == p; });
        if (n != kCriteriaPerPillar)
            throw std::invalid_argument(fmt::format("site '{}': pillar {} has {} sub-criteria, expected {}",
                                                    site_name_, to_string(p), n, kCriteriaPerPillar));
    }
    for (const auto& c : entries_) {
        if (c.score < 0 || c.score > kMaxScore)
            throw std::invalid_argument(fmt::format("site '{}': score {} for '{}' outside 0..{}", site_name_,
                                                    c.score, c.name, kMaxScore));
        total_ += c.score;
    }
}

int ScoreCard::pillar_total(Pillar p) const {
    int sum = 0;
    for (const auto& c : entries_)
        if (c.pillar == p) sum += c.score;
    return sum;
}

ScoreCard score_site(std::string site_name, std::span<const int> scores) {
    if (scores.size() != kCriteriaCount)
        throw std::invalid_argument(
            fmt::format("site '{}': expected {} scores, got {}", site_name, kCriteriaCount, scores.size()));
    std::vector<SubCriterion> entries(canonical_criteria().begin(), canonical_criteria().end());
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].score = scores[i];
    return ScoreCard(std::move(site_name), std::move(entries));
}

ScoreCard score_site(std::string site_name, std::vector<SubCriterion> entries) {
    return ScoreCard(std::move(site_name), std::move(entries));
}

std::vector<ScoreCard> rank_sites(std::vector<ScoreCard> cards) {
    if (cards.empty()) throw std::invalid_argument("no sites to rank");
    std::set<std::string> seen;
    for (const auto& c : cards)
        if (!seen.insert(c.site_name()).second)
            throw std::invalid_argument(fmt::format("duplicate site name '{}'", c.site_name()));
    std::sort(cards.begin(), cards.end(), [](const ScoreCard& a, const ScoreCard& b) {
        if (a.total() != b.total()) return a.total() > b.total();
        return a.site_name() < b.site_name();
    });
    return cards;
}

ScoringReport scoring_report(const std::vector<ScoreCard>& ranked) {
    ScoringReport report;
    report.ranked = rank_sites(ranked);
    report.recommended = report.ranked.front().site_name();
    const int top = report.ranked.front().total();
    for (const auto& c : report.ranked)
        if (c.total() == top) report.tied_at_top.push_back(c.site_name());
    return report;
}

std::string ScoringReport::to_markdown() const {
    std::string out = "# Site selection report\n\n";
    out += "| Rank | Site |";
    for (Pillar p : kPillars) out += fmt::format(" {} |", to_string(p));
    out += " Total |\n|---:|---|";
    for (std::size_t i = 0; i < kPillars.size(); ++i) out += "---:|";
    out += "---:|\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& c = ranked[i];
        out += fmt::format("| {} | {} |", i + 1, c.site_name());
        for (Pillar p : kPillars) out += fmt::format(" {}/{} |", c.pillar_total(p), kCriteriaPerPillar * kMaxScore);
        out += fmt::format(" {}/{} |\n", c.total(), kMaxTotal);
    }

    out += "\n## Sub-criteria\n\n| Site |";
    for (const auto& crit : canonical_criteria()) out += fmt::format(" {} |", crit.name);
    out += "\n|---|";
    for (std::size_t i = 0; i < canonical_criteria().size(); ++i) out += "---:|";
    out += "\n";
    for (const auto& c : ranked) {
        out += fmt::format("| {} |", c.site_name());
        for (const auto& e : c.entries()) out += fmt::format(" {} |", e.score);
        out += "\n";
    }

    out += fmt::format("\n## Recommendation\n\nRecommended site: **{}** ({}/{}).\n", recommended,
                       ranked.front().total(), kMaxTotal);
    if (has_tie()) {
        out += fmt::format("\nTie at the top score of {}: {}. {} is recommended by alphabetical tie-break.\n",
                           ranked.front().total(), fmt::join(tied_at_top, ", "), recommended);
    }
    return out;
}

std::string ScoringReport::to_csv() const {
    std::string out = "rank,site";
    for (Pillar p : kPillars) out += fmt::format(",{}", to_string(p));
    out += ",total,max_total\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& c = ranked[i];
        out += fmt::format("{},{}", i + 1, c.site_name());
        for (Pillar p : kPillars) out += fmt::format(",{}", c.pillar_total(p));
        out += fmt::format(",{},{}\n", c.total(), kMaxTotal);
    }
    return out;
}

}  // namespace bess
