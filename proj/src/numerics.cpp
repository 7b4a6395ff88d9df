#include "rotorlog/numerics.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "rotorlog/errors.hpp"

namespace rotorlog {

using boost::multiprecision::cpp_int;

namespace {

cpp_int pow2(unsigned e) { return cpp_int(1) << e; }

}  // namespace

double AngleResidue::degrees() const {
    return ratio_to_double(numerator.to_big() * 360, cpp_int(modulus));
}

AngleResidue project(std::uint64_t v, std::uint64_t p) {
    if (p < 2) throw invalid_modulus("modulus must be at least 2, got " + std::to_string(p));
    if (v >= p)
        throw std::out_of_range("residue " + std::to_string(v) + " not below modulus " +
                                std::to_string(p));
    return AngleResidue{Natural(v), p};
}

AngleResidue scale_angle(const Natural& a, const AngleResidue& r) {
    if (a == Natural(0)) throw std::invalid_argument("scale factor must be at least 1");
    return AngleResidue{a * r.numerator, r.modulus};
}

bool exact_equal(const AngleResidue& a, const AngleResidue& b) {
    if (a.modulus != b.modulus)
        throw modulus_mismatch("cannot compare angles over moduli " + std::to_string(a.modulus) +
                               " and " + std::to_string(b.modulus));
    return a.numerator == b.numerator;
}

AngleResidue reduce_by_subtraction(AngleResidue r, OpCounters& counters) {
    r.numerator = reduce_by_subtraction(std::move(r.numerator), Natural(r.modulus), counters);
    return r;
}

NumericMode NumericMode::fixed_point(unsigned fractional_bits) {
    if (fractional_bits < min_fractional_bits || fractional_bits > max_fractional_bits)
        throw invalid_mode("fixed-point fractional bits must lie in [8, 112], got " +
                           std::to_string(fractional_bits));
    return NumericMode(Kind::FixedPoint, fractional_bits);
}

NumericMode NumericMode::parse(std::string_view text) {
    if (text == "exact") return exact();
    if (text == "float64") return float64();
    constexpr std::string_view prefix = "fixed:";
    if (text.starts_with(prefix)) {
        const auto digits = text.substr(prefix.size());
        unsigned bits = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
        if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty())
            return fixed_point(bits);
    }
    throw invalid_mode("unknown numeric mode '" + std::string(text) +
                       "' (expected exact, float64 or fixed:<bits>)");
}

std::string NumericMode::name() const {
    switch (kind_) {
        case Kind::Exact: return "exact";
        case Kind::Float64Degrees: return "float64";
        case Kind::FixedPoint: return "fixed:" + std::to_string(bits_);
    }
    return "?";
}

ApproxAngle ApproxAngle::from_degrees(double degrees) noexcept {
    return ApproxAngle(NumericMode::float64(), degrees);
}

ApproxAngle ApproxAngle::from_fixed_raw(fixed_raw raw, unsigned fractional_bits) {
    return ApproxAngle(NumericMode::fixed_point(fractional_bits), std::move(raw));
}

double ApproxAngle::degrees() const {
    if (mode_.kind() == NumericMode::Kind::Float64Degrees) return float_value();
    return ratio_to_double(fixed_value(), pow2(mode_.fractional_bits()));
}

ApproxAngle to_approx(const AngleResidue& r, const NumericMode& mode) {
    const cpp_int scaled = r.numerator.to_big() * 360;
    switch (mode.kind()) {
        case NumericMode::Kind::Exact:
            break;
        case NumericMode::Kind::Float64Degrees:
            return ApproxAngle::from_degrees(ratio_to_double(scaled, cpp_int(r.modulus)));
        case NumericMode::Kind::FixedPoint: {
            // floor(x + 1/2) with x = 360 v 2^b / p
            const cpp_int p(r.modulus);
            cpp_int raw = ((scaled << (mode.fractional_bits() + 1)) + p) / (2 * p);
            return ApproxAngle::from_fixed_raw(std::move(raw), mode.fractional_bits());
        }
    }
    throw invalid_mode("to_approx requires an approximate mode");
}

ApproxAngle full_turn(const NumericMode& mode) {
    switch (mode.kind()) {
        case NumericMode::Kind::Exact:
            break;
        case NumericMode::Kind::Float64Degrees:
            return ApproxAngle::from_degrees(360.0);
        case NumericMode::Kind::FixedPoint:
            return ApproxAngle::from_fixed_raw(cpp_int(360) << mode.fractional_bits(),
                                               mode.fractional_bits());
    }
    throw invalid_mode("the exact mode has no degree representation");
}

ApproxAngle reduce_by_subtraction(ApproxAngle a, OpCounters& counters) {
    if (a.mode().kind() == NumericMode::Kind::Float64Degrees)
        return ApproxAngle::from_degrees(reduce_by_subtraction(a.float_value(), 360.0, counters));
    const unsigned bits = a.mode().fractional_bits();
    return ApproxAngle::from_fixed_raw(
        reduce_by_subtraction(a.fixed_value(), cpp_int(360) << bits, counters), bits);
}

bool angles_equal(const ApproxAngle& a, const ApproxAngle& b, double tolerance) {
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance))
        throw std::invalid_argument("tolerance must be a finite non-negative number of degrees");
    if (!(a.mode() == b.mode()))
        throw mode_mismatch("cannot compare " + a.mode().name() + " with " + b.mode().name());
    if (a.mode().kind() == NumericMode::Kind::Float64Degrees)
        return std::fabs(a.float_value() - b.float_value()) <= tolerance;
    const cpp_int diff = abs(a.fixed_value() - b.fixed_value());
    return diff <= fixed_tolerance_units(tolerance, a.mode().fractional_bits());
}

double default_tolerance(std::uint64_t p) {
    if (p < 2) throw invalid_modulus("modulus must be at least 2, got " + std::to_string(p));
    return 180.0 / static_cast<double>(p);
}

cpp_int fixed_tolerance_units(double tolerance, unsigned fractional_bits) {
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance))
        throw std::invalid_argument("tolerance must be a finite non-negative number of degrees");
    if (tolerance == 0.0) return 0;
    int exp = 0;
    const double frac = std::frexp(tolerance, &exp);
    // tolerance == mant * 2^(exp - 53) exactly
    const cpp_int mant(static_cast<std::uint64_t>(std::ldexp(frac, 53)));
    const int shift = exp - 53 + static_cast<int>(fractional_bits);
    return shift >= 0 ? cpp_int(mant << shift) : cpp_int(mant >> -shift);
}

double ratio_to_double(const cpp_int& num, const cpp_int& den) {
    if (den <= 0) throw std::domain_error("ratio_to_double: denominator must be positive");
    if (num < 0) return -ratio_to_double(-num, den);
    if (num == 0) return 0.0;

    const long nb = static_cast<long>(msb(num));
    const long db = static_cast<long>(msb(den));
    const long shift = 54 - (nb - db);
    cpp_int n = num;
    cpp_int d = den;
    if (shift >= 0)
        n <<= shift;
    else
        d <<= -shift;

    cpp_int q, r;
    divide_qr(n, d, q, r);
    // q lies in [2^53, 2^55): one or two bits beyond the 53-bit significand.
    const unsigned extra = static_cast<unsigned>(msb(q)) + 1 - 53;
    cpp_int mant = q >> extra;
    const cpp_int dropped = q & (pow2(extra) - 1);
    const cpp_int half = pow2(extra - 1);
    if (dropped > half || (dropped == half && (r != 0 || bit_test(mant, 0)))) ++mant;
    return std::ldexp(static_cast<double>(mant), static_cast<int>(extra) - static_cast<int>(shift));
}

}  // namespace rotorlog
