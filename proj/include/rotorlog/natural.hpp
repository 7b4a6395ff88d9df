#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rotorlog {

/// Arbitrary-size non-negative integer.
///
/// Values that fit in 64 bits live inline and take a branch-only fast path;
/// anything larger is promoted to a heap-backed cpp_int. Overflow never
/// wraps, and subtraction below zero throws std::domain_error.
class Natural {
public:
    using big_type = boost::multiprecision::cpp_int;

    Natural() noexcept = default;
    Natural(std::uint64_t v) noexcept : small_(v) {}  // NOLINT: implicit by intent
    explicit Natural(const big_type& v);

    Natural& operator+=(const Natural& rhs) {
        if (!big_ && !rhs.big_) [[likely]] {
            std::uint64_t out;
            if (!__builtin_add_overflow(small_, rhs.small_, &out)) {
                small_ = out;
                return *this;
            }
        }
        return add_slow(rhs);
    }

    Natural& operator-=(const Natural& rhs) {
        if (!big_ && !rhs.big_) [[likely]] {
            if (small_ >= rhs.small_) {
                small_ -= rhs.small_;
                return *this;
            }
        }
        return sub_slow(rhs);
    }

    Natural& operator*=(const Natural& rhs);

    friend Natural operator+(Natural lhs, const Natural& rhs) { return lhs += rhs; }
    friend Natural operator-(Natural lhs, const Natural& rhs) { return lhs -= rhs; }
    friend Natural operator*(Natural lhs, const Natural& rhs) { return lhs *= rhs; }

    friend bool operator==(const Natural& a, const Natural& b) {
        if (!a.big_ && !b.big_) [[likely]]
            return a.small_ == b.small_;
        return a.to_big() == b.to_big();
    }

    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        if (!a.big_ && !b.big_) [[likely]]
            return a.small_ <=> b.small_;
        const auto c = a.to_big().compare(b.to_big());
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// Remainder modulo a non-zero 64-bit value.
    std::uint64_t mod(std::uint64_t m) const;

    bool fits_u64() const noexcept { return !big_; }
    std::optional<std::uint64_t> to_u64() const noexcept {
        if (big_) return std::nullopt;
        return small_;
    }
    big_type to_big() const { return big_ ? *big_ : big_type(small_); }
    std::string str() const;

private:
    Natural& add_slow(const Natural& rhs);
    Natural& sub_slow(const Natural& rhs);
    void assign(big_type v);

    std::uint64_t small_ = 0;
    std::optional<big_type> big_;
};

std::ostream& operator<<(std::ostream& os, const Natural& n);

}  // namespace rotorlog
