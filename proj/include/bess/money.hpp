#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bess {

__extension__ typedef __int128 Int128;

enum class Currency { DKK, EUR };

std::string_view to_string(Currency c);
Currency parse_currency(std::string_view text);

/// Thrown when two amounts in different currencies meet without a rate.
class CurrencyMismatch : public std::invalid_argument {
public:
    CurrencyMismatch(Currency a, Currency b);
};

/// A monetary amount held as integer minor units (øre or euro-cents).
class Money {
public:
    constexpr Money() = default;
    constexpr Money(std::int64_t minor_units, Currency currency)
        : minor_(minor_units), currency_(currency) {}

    static constexpr Money zero(Currency c) { return Money(0, c); }
    static Money from_major(std::int64_t major, Currency c) { return Money(major * 100, c); }
    /// Rounds half away from zero to the nearest minor unit.
    static Money from_decimal(double major, Currency c);

    constexpr std::int64_t minor_units() const { return minor_; }
    constexpr Currency currency() const { return currency_; }
    double to_double() const { return static_cast<double>(minor_) / 100.0; }

    Money operator+(const Money& other) const;
    Money operator-(const Money& other) const;
    Money operator-() const { return Money(-minor_, currency_); }
    Money operator*(std::int64_t k) const { return Money(minor_ * k, currency_); }
    Money& operator+=(const Money& other);
    Money& operator-=(const Money& other);

    bool operator==(const Money&) const = default;
    /// Ordering is only defined within one currency.
    bool operator<(const Money& other) const;

    /// "1 062 500.00 DKK"
    std::string format() const;

private:
    std::int64_t minor_ = 0;
    Currency currency_ = Currency::DKK;
};

inline std::ostream& operator<<(std::ostream& os, const Money& m) { return os << m.format(); }

/// Exchange rate expressed as DKK per EUR, stored in millionths so that
/// conversion stays in integer arithmetic.
class DkkPerEur {
public:
    explicit DkkPerEur(double rate);
    static constexpr std::int64_t kScale = 1'000'000;
    std::int64_t micro() const { return micro_; }
    double value() const { return static_cast<double>(micro_) / kScale; }

private:
    std::int64_t micro_;
};

inline constexpr double kDefaultDkkPerEur = 7.45;

/// DKK amounts become EUR and vice versa; result rounded half-up to minor units.
Money convert(const Money& money, const DkkPerEur& rate);

/// Exact sum; an empty span yields zero in `currency`.
Money money_sum(std::span<const Money> amounts, Currency currency);

/// Integer division of a/b rounded half away from zero.
std::int64_t div_round_half_up(Int128 numerator, Int128 denominator);

}  // namespace bess
