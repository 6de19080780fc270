#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "sfc/errors.hpp"

namespace sfc {

// Token quantity in integer base units. Display value = units / 10^decimals,
// where `decimals` is an engine-wide constant fixed at genesis. All ledger
// arithmetic is unsigned and checked; there is no floating point on this path.
class TokenAmount {
public:
    constexpr TokenAmount() = default;

    static constexpr TokenAmount from_units(std::uint64_t units) { return TokenAmount(units); }

    constexpr std::uint64_t units() const noexcept { return units_; }
    constexpr bool is_zero() const noexcept { return units_ == 0; }

    auto operator<=>(const TokenAmount&) const = default;

    TokenAmount operator+(TokenAmount other) const {
        if (units_ > std::numeric_limits<std::uint64_t>::max() - other.units_)
            fail(Errc::amount_overflow, "token amount addition overflows");
        return TokenAmount(units_ + other.units_);
    }

    TokenAmount operator-(TokenAmount other) const {
        if (other.units_ > units_)
            fail(Errc::amount_overflow, "token amount subtraction underflows");
        return TokenAmount(units_ - other.units_);
    }

    TokenAmount& operator+=(TokenAmount other) { return *this = *this + other; }
    TokenAmount& operator-=(TokenAmount other) { return *this = *this - other; }

private:
    explicit constexpr TokenAmount(std::uint64_t units) : units_(units) {}

    std::uint64_t units_ = 0;
};

inline std::uint64_t pow10_units(std::uint32_t exponent) {
    if (exponent > 18) fail(Errc::validation_error, "decimals out of range (max 18)");
    std::uint64_t value = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) value *= 10;
    return value;
}

// Parses a non-negative decimal string ("4000", "120.00", "0.05") into base
// units. Rejects more fractional digits than the ledger can represent.
inline TokenAmount parse_amount(std::string_view text, std::uint32_t decimals) {
    if (text.empty()) fail(Errc::invalid_amount, "empty amount");
    std::string_view integral = text;
    std::string_view fractional;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        integral = text.substr(0, dot);
        fractional = text.substr(dot + 1);
        if (fractional.empty()) fail(Errc::invalid_amount, "trailing decimal point in '" + std::string(text) + "'");
    }
    if (integral.empty()) fail(Errc::invalid_amount, "missing integral part in '" + std::string(text) + "'");
    if (fractional.size() > decimals)
        fail(Errc::invalid_amount, "'" + std::string(text) + "' has more than " + std::to_string(decimals) + " fractional digits");

    const std::uint64_t scale = pow10_units(decimals);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();

    std::uint64_t whole = 0;
    for (char c : integral) {
        if (c < '0' || c > '9') fail(Errc::invalid_amount, "invalid character in amount '" + std::string(text) + "'");
        std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (whole > (limit - digit) / 10) fail(Errc::amount_overflow, "amount '" + std::string(text) + "' overflows");
        whole = whole * 10 + digit;
    }
    std::uint64_t frac = 0;
    for (char c : fractional) {
        if (c < '0' || c > '9') fail(Errc::invalid_amount, "invalid character in amount '" + std::string(text) + "'");
        frac = frac * 10 + static_cast<std::uint64_t>(c - '0');
    }
    for (std::size_t i = fractional.size(); i < decimals; ++i) frac *= 10;

    if (whole > (limit - frac) / scale) fail(Errc::amount_overflow, "amount '" + std::string(text) + "' overflows");
    return TokenAmount::from_units(whole * scale + frac);
}

// Formats base units with exactly `decimals` fractional digits, e.g.
// 388000 units at 2 decimals -> "3880.00".
inline std::string format_amount(TokenAmount amount, std::uint32_t decimals) {
    const std::uint64_t scale = pow10_units(decimals);
    std::string out = std::to_string(amount.units() / scale);
    if (decimals > 0) {
        std::string frac = std::to_string(amount.units() % scale);
        out += '.';
        out += std::string(decimals - frac.size(), '0');
        out += frac;
    }
    return out;
}

} // namespace sfc
