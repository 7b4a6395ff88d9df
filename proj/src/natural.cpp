#include "rotorlog/natural.hpp"

#include <limits>
#include <stdexcept>

namespace rotorlog {

Natural::Natural(const big_type& v) {
    if (v < 0) throw std::domain_error("Natural: negative value");
    assign(v);
}

void Natural::assign(big_type v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) {
        small_ = static_cast<std::uint64_t>(v);
        big_.reset();
    } else {
        small_ = 0;
        big_ = std::move(v);
    }
}

Natural& Natural::add_slow(const Natural& rhs) {
    assign(to_big() + rhs.to_big());
    return *this;
}

Natural& Natural::sub_slow(const Natural& rhs) {
    big_type out = to_big() - rhs.to_big();
    if (out < 0) throw std::domain_error("Natural: subtraction below zero");
    assign(std::move(out));
    return *this;
}

Natural& Natural::operator*=(const Natural& rhs) {
    if (!big_ && !rhs.big_) {
        std::uint64_t out;
        if (!__builtin_mul_overflow(small_, rhs.small_, &out)) {
            small_ = out;
            return *this;
        }
    }
    assign(to_big() * rhs.to_big());
    return *this;
}

std::uint64_t Natural::mod(std::uint64_t m) const {
    if (m == 0) throw std::domain_error("Natural: modulo by zero");
    if (!big_) return small_ % m;
    return static_cast<std::uint64_t>(*big_ % m);
}

std::string Natural::str() const {
    return big_ ? big_->str() : std::to_string(small_);
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.str(); }

}  // namespace rotorlog
