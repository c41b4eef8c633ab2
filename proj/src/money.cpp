#include "bess/money.hpp"

#include <cmath>
#include <fmt/format.h>

namespace bess {

std::string_view to_string(Currency c) {
    switch (c) {
        case Currency::DKK: return "DKK";
        case Currency::EUR: return "EUR";
    }
    return "?";
}

Currency parse_currency(std::string_view text) {
    if (text == "DKK") return Currency::DKK;
    if (text == "EUR") return Currency::EUR;
    throw std::invalid_argument("unknown currency '" + std::string(text) + "'");
}

CurrencyMismatch::CurrencyMismatch(Currency a, Currency b)
    : std::invalid_argument(fmt::format("currency mismatch: {} vs {}", to_string(a), to_string(b))) {}

Money Money::from_decimal(double major, Currency c) {
    if (!std::isfinite(major)) throw std::invalid_argument("non-finite money amount");
    return Money(std::llround(major * 100.0), c);
}

Money Money::operator+(const Money& other) const {
    if (currency_ != other.currency_) throw CurrencyMismatch(currency_, other.currency_);
    return Money(minor_ + other.minor_, currency_);
}

Money Money::operator-(const Money& other) const {
    if (currency_ != other.currency_) throw CurrencyMismatch(currency_, other.currency_);
    return Money(minor_ - other.minor_, currency_);
}

Money& Money::operator+=(const Money& other) { return *this = *this + other; }
Money& Money::operator-=(const Money& other) { return *this = *this - other; }

bool Money::operator<(const Money& other) const {
    if (currency_ != other.currency_) throw CurrencyMismatch(currency_, other.currency_);
    return minor_ < other.minor_;
}

std::string Money::format() const {
    std::int64_t abs_minor = minor_ < 0 ? -minor_ : minor_;
    std::string digits = std::to_string(abs_minor / 100);
    std::string grouped;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count > 0 && count % 3 == 0) grouped.insert(grouped.begin(), ' ');
        grouped.insert(grouped.begin(), *it);
        ++count;
    }
    return fmt::format("{}{}.{:02d} {}", minor_ < 0 ? "-" : "", grouped, abs_minor % 100,
                       to_string(currency_));
}

DkkPerEur::DkkPerEur(double rate) {
    if (!std::isfinite(rate) || rate <= 0.0)
        throw std::invalid_argument(fmt::format("exchange rate must be positive, got {}", rate));
    micro_ = std::llround(rate * kScale);
    if (micro_ <= 0) throw std::invalid_argument("exchange rate too small");
}

std::int64_t div_round_half_up(Int128 numerator, Int128 denominator) {
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    bool negative = numerator < 0;
    Int128 n = negative ? -numerator : numerator;
    Int128 q = (2 * n + denominator) / (2 * denominator);
    return static_cast<std::int64_t>(negative ? -q : q);
}

Money convert(const Money& money, const DkkPerEur& rate) {
    const Int128 amount = money.minor_units();
    if (money.currency() == Currency::DKK)
        return Money(div_round_half_up(amount * DkkPerEur::kScale, rate.micro()), Currency::EUR);
    return Money(div_round_half_up(amount * rate.micro(), DkkPerEur::kScale), Currency::DKK);
}

Money money_sum(std::span<const Money> amounts, Currency currency) {
    Money total = Money::zero(currency);
    for (const auto& m : amounts) total += m;
    return total;
}

}  // namespace bess
