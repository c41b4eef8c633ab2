#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bess {

enum class Pillar { Assembly, Connection, Operation, Maintenance };

inline constexpr std::array<Pillar, 4> kPillars{Pillar::Assembly, Pillar::Connection,
                                                Pillar::Operation, Pillar::Maintenance};
inline constexpr int kCriteriaPerPillar = 3;
inline constexpr int kCriteriaCount = 12;
inline constexpr int kMaxScore = 2;
inline constexpr int kMaxTotal = kCriteriaCount * kMaxScore;

std::string_view to_string(Pillar p);

struct SubCriterion {
    Pillar pillar;
    std::string name;
    int score;
};

/// The twelve sub-criteria in canonical order, three per pillar.
const std::array<SubCriterion, kCriteriaCount>& canonical_criteria();

class ScoreCard {
public:
    ScoreCard(std::string site_name, std::vector<SubCriterion> entries);

    const std::string& site_name() const { return site_name_; }
    const std::vector<SubCriterion>& entries() const { return entries_; }
    int total() const { return total_; }
    int pillar_total(Pillar p) const;

private:
    std::string site_name_;
    std::vector<SubCriterion> entries_;
    int total_ = 0;
};

/// Scores in canonical order (see canonical_criteria()).
ScoreCard score_site(std::string site_name, std::span<const int> scores);
ScoreCard score_site(std::string site_name, std::vector<SubCriterion> entries);

/// Descending by total; equal totals ordered by site name.
std::vector<ScoreCard> rank_sites(std::vector<ScoreCard> cards);

struct ScoringReport {
    std::vector<ScoreCard> ranked;
    std::string recommended;
    /// Sites sharing the top total, in tie-break order. Size > 1 means a tie.
    std::vector<std::string> tied_at_top;

    bool has_tie() const { return tied_at_top.size() > 1; }
    std::string to_markdown() const;
    std::string to_csv() const;
};

ScoringReport scoring_report(const std::vector<ScoreCard>& ranked);

}  // namespace bess
