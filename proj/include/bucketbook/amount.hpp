#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "bucketbook/errors.hpp"

namespace bucketbook {

/// Unsigned 128-bit token quantity. All arithmetic is checked: overflow
/// (or underflow on subtraction) raises Errc::overflow, never wraps.
class Amount {
public:
    using Raw = unsigned __int128;

    constexpr Amount() = default;
    constexpr explicit Amount(std::uint64_t units) : units_(units) {}

    static constexpr Amount from_raw(Raw raw) {
        Amount a;
        a.units_ = raw;
        return a;
    }

    static constexpr Amount max() { return from_raw(~Raw{0}); }

    constexpr Raw raw() const { return units_; }
    constexpr bool is_zero() const { return units_ == 0; }

    Amount checked_add(Amount other) const {
        Raw sum = units_ + other.units_;
        if (sum < units_) {
            fail(Errc::overflow, "amount addition exceeds 128 bits");
        }
        return from_raw(sum);
    }

    Amount checked_sub(Amount other) const {
        if (other.units_ > units_) {
            fail(Errc::overflow, "amount subtraction below zero");
        }
        return from_raw(units_ - other.units_);
    }

    friend constexpr bool operator==(Amount, Amount) = default;
    friend constexpr auto operator<=>(Amount a, Amount b) { return a.units_ <=> b.units_; }

    // Largest integer a binary64 JSON reader round-trips exactly.
    static constexpr std::uint64_t kMaxDoubleSafe = 9007199254740991ULL; // 2^53 - 1

    constexpr bool fits_uint64() const { return units_ <= ~std::uint64_t{0}; }
    constexpr bool double_safe() const { return units_ <= kMaxDoubleSafe; }

    std::uint64_t as_uint64() const {
        if (!fits_uint64()) {
            fail(Errc::overflow, "amount does not fit in 64 bits");
        }
        return static_cast<std::uint64_t>(units_);
    }

    std::string str() const {
        if (units_ == 0) {
            return "0";
        }
        std::string digits;
        Raw v = units_;
        while (v != 0) {
            digits.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
            v /= 10;
        }
        return {digits.rbegin(), digits.rend()};
    }

    static Amount parse(std::string_view text) {
        if (text.empty()) {
            fail(Errc::invalid_amount, "empty amount");
        }
        Raw value = 0;
        for (char c : text) {
            if (c < '0' || c > '9') {
                fail(Errc::invalid_amount, "amount is not a decimal integer: '" + std::string(text) + "'");
            }
            Raw digit = static_cast<Raw>(c - '0');
            if (value > (~Raw{0} - digit) / 10) {
                fail(Errc::invalid_amount, "amount exceeds 128 bits: '" + std::string(text) + "'");
            }
            value = value * 10 + digit;
        }
        return from_raw(value);
    }

    friend std::ostream& operator<<(std::ostream& os, Amount a) { return os << a.str(); }

private:
    Raw units_ = 0;
};

inline Amount min(Amount a, Amount b) { return a < b ? a : b; }

} // namespace bucketbook
