#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <vector>

#include "bess/battery.hpp"
#include "bess/money.hpp"

using namespace bess;

TEST_CASE("convert DKK to EUR at 7.45") {
    const DkkPerEur rate(7.45);
    CHECK(convert(Money(745'000, Currency::DKK), rate) == Money(100'000, Currency::EUR));
    CHECK(convert(Money(0, Currency::DKK), rate) == Money(0, Currency::EUR));
    // 1 062 500.00 DKK / 7.45 = 142 617.4496... EUR
    CHECK(convert(Money::from_major(1'062'500, Currency::DKK), rate) == Money(14'261'745, Currency::EUR));
}

TEST_CASE("convert EUR to DKK multiplies by the rate") {
    CHECK(convert(Money(100'000, Currency::EUR), DkkPerEur(7.45)) == Money(745'000, Currency::DKK));
    CHECK(convert(Money(1, Currency::EUR), DkkPerEur(7.45)) == Money(7, Currency::DKK));
}

TEST_CASE("convert rounds half up") {
    // 3 øre / 2 = 1.5 cents -> 2
    CHECK(convert(Money(3, Currency::DKK), DkkPerEur(2.0)).minor_units() == 2);
    CHECK(convert(Money(-3, Currency::DKK), DkkPerEur(2.0)).minor_units() == -2);
    CHECK(convert(Money(5, Currency::DKK), DkkPerEur(4.0)).minor_units() == 1);
}

TEST_CASE("non-positive exchange rate is rejected") {
    CHECK_THROWS_AS(DkkPerEur(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DkkPerEur(-7.45), std::invalid_argument);
}

TEST_CASE("money_sum") {
    const std::vector<Money> fees{Money::from_major(875'000, Currency::DKK), Money::from_major(125'000, Currency::DKK)};
    CHECK(money_sum(fees, Currency::DKK) == Money::from_major(1'000'000, Currency::DKK));
    CHECK(money_sum({}, Currency::DKK) == Money::zero(Currency::DKK));
    const std::vector<Money> cancel{Money(12'345, Currency::EUR), Money(-12'345, Currency::EUR)};
    CHECK(money_sum(cancel, Currency::EUR) == Money::zero(Currency::EUR));

    const std::vector<Money> mixed{Money(1, Currency::DKK), Money(1, Currency::EUR)};
    CHECK_THROWS_AS(money_sum(mixed, Currency::DKK), CurrencyMismatch);
    CHECK_THROWS_AS(Money(1, Currency::DKK) + Money(1, Currency::EUR), CurrencyMismatch);
}

TEST_CASE("money_sum is order independent") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> amount(-1'000'000'000, 1'000'000'000);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Money> v;
        for (int i = 0; i < 20; ++i) v.emplace_back(amount(rng), Currency::EUR);
        const Money a = money_sum(v, Currency::EUR);
        std::shuffle(v.begin(), v.end(), rng);
        CHECK(money_sum(v, Currency::EUR) == a);
    }
}

TEST_CASE("conversion round trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> amount(0, 10'000'000'000);
    std::uniform_real_distribution<double> rate_dist(0.5, 12.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const DkkPerEur rate(rate_dist(rng));
        // From the coarser currency the round trip is within one minor unit.
        const Money eur(amount(rng), Currency::EUR);
        const Money dkk = Money(amount(rng), Currency::DKK);
        if (rate.value() >= 1.0) {
            CHECK(std::abs((convert(convert(eur, rate), rate) - eur).minor_units()) <= 1);
        } else {
            CHECK(std::abs((convert(convert(dkk, rate), rate) - dkk).minor_units()) <= 1);
        }
        // From the finer currency the error is bounded by half the rate, plus rounding.
        const double bound = rate.value() >= 1.0 ? rate.value() / 2.0 + 1.0 : 1.0 / (2.0 * rate.value()) + 1.0;
        const Money fine = rate.value() >= 1.0 ? dkk : eur;
        CHECK(std::abs((convert(convert(fine, rate), rate) - fine).minor_units()) <= bound);
    }
}

TEST_CASE("format groups thousands") {
    CHECK(Money::from_major(1'062'500, Currency::DKK).format() == "1 062 500.00 DKK");
    CHECK(Money(-5, Currency::EUR).format() == "-0.05 EUR");
}

TEST_CASE("BatterySpec validation") {
    const BatterySpec b(1.0, 1.0, 0.81);
    CHECK(b.charge_efficiency() == doctest::Approx(0.9));
    CHECK(b.discharge_efficiency() == doctest::Approx(0.9));
    CHECK_NOTHROW(BatterySpec(1.0, 1.0, 1.0));
    CHECK_THROWS_AS(BatterySpec(0.0, 1.0, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(BatterySpec(1.0, -1.0, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(BatterySpec(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BatterySpec(1.0, 1.0, 1.01), std::invalid_argument);
}
