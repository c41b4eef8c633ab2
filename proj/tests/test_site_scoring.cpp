#include "doctest.h"

#include <algorithm>
#include <array>
#include <random>

#include "bess/site_scoring.hpp"

using namespace bess;

namespace {

std::array<int, kCriteriaCount> filled(int v) {
    std::array<int, kCriteriaCount> a;
    a.fill(v);
    return a;
}

ScoreCard card_with_total(const std::string& name, int total) {
    auto s = filled(0);
    for (int i = 0; i < kCriteriaCount && total > 0; ++i) {
        s[i] = std::min(total, 2);
        total -= s[i];
    }
    return score_site(name, s);
}

}  // namespace

TEST_CASE("score_site totals") {
    CHECK(score_site("max", filled(2)).total() == 24);
    CHECK(score_site("none", filled(0)).total() == 0);
    auto almost = filled(2);
    almost[11] = 1;
    const auto aak = score_site("Aakirkeby", almost);
    CHECK(aak.total() == 23);
    CHECK(aak.pillar_total(Pillar::Maintenance) == 5);
    CHECK(aak.pillar_total(Pillar::Assembly) == 6);
}

TEST_CASE("score_site rejects bad input") {
    std::array<int, 11> short_scores{};
    CHECK_THROWS_AS(score_site("x", short_scores), std::invalid_argument);
    auto bad = filled(1);
    bad[3] = 3;
    CHECK_THROWS_AS(score_site("x", bad), std::invalid_argument);
    bad[3] = -1;
    CHECK_THROWS_AS(score_site("x", bad), std::invalid_argument);

    std::vector<SubCriterion> lopsided(canonical_criteria().begin(), canonical_criteria().end());
    lopsided[0].pillar = Pillar::Connection;  // Assembly 2, Connection 4
    CHECK_THROWS_AS(score_site("x", lopsided), std::invalid_argument);
}

TEST_CASE("canonical criteria are three per pillar") {
    for (Pillar p : kPillars)
        CHECK(std::count_if(canonical_criteria().begin(), canonical_criteria().end(),
                            [p](const SubCriterion& c) { return c.pillar == p; }) == 3);
}

TEST_CASE("rank_sites orders by total then name") {
    auto ranked = rank_sites({card_with_total("St. 660", 16), card_with_total("Hasle", 20),
                              card_with_total("Aakirkeby", 23), card_with_total("St. 667", 18)});
    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0].site_name() == "Aakirkeby");
    CHECK(ranked[1].site_name() == "Hasle");
    CHECK(ranked[2].site_name() == "St. 667");
    CHECK(ranked[3].site_name() == "St. 660");

    CHECK(rank_sites({card_with_total("Solo", 5)}).front().site_name() == "Solo");

    auto tied = rank_sites({card_with_total("Zeta", 10), card_with_total("Alpha", 10)});
    CHECK(tied[0].site_name() == "Alpha");
}

TEST_CASE("rank_sites rejects duplicates and empty input") {
    CHECK_THROWS_AS(rank_sites({card_with_total("A", 1), card_with_total("A", 2)}), std::invalid_argument);
    CHECK_THROWS_AS(rank_sites({}), std::invalid_argument);
}

TEST_CASE("scoring_report") {
    auto report = scoring_report({card_with_total("Hasle", 20), card_with_total("Aakirkeby", 23),
                                  card_with_total("St. 667", 18), card_with_total("St. 660", 16)});
    CHECK(report.recommended == "Aakirkeby");
    CHECK_FALSE(report.has_tie());
    const auto md = report.to_markdown();
    CHECK(md.find("Recommended site: **Aakirkeby** (23/24)") != std::string::npos);
    CHECK(report.to_csv().find("1,Aakirkeby,") != std::string::npos);

    CHECK(scoring_report({card_with_total("Only", 3)}).recommended == "Only");

    auto tie = scoring_report({card_with_total("Rønne", 20), card_with_total("Nexø", 20), card_with_total("Gudhjem", 12)});
    CHECK(tie.has_tie());
    CHECK(tie.recommended == "Nexø");
    CHECK(tie.to_markdown().find("Tie at the top score of 20") != std::string::npos);
}

TEST_CASE("property: total is the sum of entries") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> score(0, 2);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<int, kCriteriaCount> s;
        int sum = 0;
        for (auto& v : s) sum += (v = score(rng));
        auto card = score_site("s", s);
        CHECK(card.total() == sum);
        int pillars = 0;
        for (Pillar p : kPillars) pillars += card.pillar_total(p);
        CHECK(pillars == sum);
    }
}

TEST_CASE("property: ranking is a sorted permutation, invariant under uniform shift") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> low(0, 1);
    std::uniform_int_distribution<int> count(1, 8);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ScoreCard> cards, shifted;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            std::array<int, kCriteriaCount> s, t;
            for (int k = 0; k < kCriteriaCount; ++k) {
                s[k] = low(rng);
                t[k] = s[k] + 1;
            }
            cards.push_back(score_site("site" + std::to_string(i), s));
            shifted.push_back(score_site("site" + std::to_string(i), t));
        }
        auto ranked = rank_sites(cards);
        auto ranked_shift = rank_sites(shifted);
        REQUIRE(ranked.size() == cards.size());
        for (std::size_t i = 1; i < ranked.size(); ++i) CHECK(ranked[i - 1].total() >= ranked[i].total());
        for (const auto& c : cards)
            CHECK(std::count_if(ranked.begin(), ranked.end(),
                                [&](const ScoreCard& r) { return r.site_name() == c.site_name(); }) == 1);
        for (std::size_t i = 0; i < ranked.size(); ++i) CHECK(ranked[i].site_name() == ranked_shift[i].site_name());
    }
}
