#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "rotorlog/counters.hpp"
#include "rotorlog/natural.hpp"

namespace rotorlog {

/// A point on the 360 degree arc for modulus p, held exactly: the angle is
/// 360 * numerator / modulus degrees. The factor 360 never enters the
/// arithmetic, so exact-mode work is plain integer work in units of theta.
struct AngleResidue {
    Natural numerator;
    std::uint64_t modulus = 2;

    /// Nearest double to the angle in degrees. Display only.
    double degrees() const;
};

/// Angle of residue v: numerator v over modulus p. Throws invalid_modulus
/// for p < 2 and std::out_of_range for v >= p.
AngleResidue project(std::uint64_t v, std::uint64_t p);

/// Multiplies the numerator by a >= 1 without reducing.
AngleResidue scale_angle(const Natural& a, const AngleResidue& r);

/// Exact angle equality. Throws modulus_mismatch when the moduli differ.
bool exact_equal(const AngleResidue& a, const AngleResidue& b);

/// Subtracts `wrap` while the value is strictly greater than it, charging one
/// subtraction per step. A value equal to `wrap` is left as is.
template <class T>
T reduce_by_subtraction(T value, const T& wrap, OpCounters& counters) {
    while (value > wrap) {
        value -= wrap;
        ++counters.subtractions;
    }
    return value;
}

/// Reduces the numerator against the modulus.
AngleResidue reduce_by_subtraction(AngleResidue r, OpCounters& counters);

class NumericMode {
public:
    enum class Kind { Exact, Float64Degrees, FixedPoint };

    static constexpr unsigned min_fractional_bits = 8;
    static constexpr unsigned max_fractional_bits = 112;

    static NumericMode exact() noexcept { return NumericMode(Kind::Exact, 0); }
    static NumericMode float64() noexcept { return NumericMode(Kind::Float64Degrees, 0); }
    /// Throws invalid_mode outside [8, 112].
    static NumericMode fixed_point(unsigned fractional_bits);

    /// Accepts "exact", "float64" and "fixed:<bits>".
    static NumericMode parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == Kind::Exact; }
    unsigned fractional_bits() const noexcept { return bits_; }
    std::string name() const;

    friend bool operator==(const NumericMode&, const NumericMode&) = default;

private:
    NumericMode(Kind kind, unsigned bits) noexcept : kind_(kind), bits_(bits) {}

    Kind kind_;
    unsigned bits_;
};

/// An angle in one of the approximate representations. Float64 holds binary64
/// degrees; FixedPoint holds an integer count of 2^-bits degree units.
class ApproxAngle {
public:
    using fixed_raw = boost::multiprecision::cpp_int;

    static ApproxAngle from_degrees(double degrees) noexcept;
    static ApproxAngle from_fixed_raw(fixed_raw raw, unsigned fractional_bits);

    const NumericMode& mode() const noexcept { return mode_; }
    /// Float64 value; only meaningful in Float64Degrees mode.
    double float_value() const noexcept { return std::get<double>(value_); }
    /// Raw fixed-point count; only meaningful in FixedPoint mode.
    const fixed_raw& fixed_value() const { return std::get<fixed_raw>(value_); }
    /// Nearest double in degrees, whatever the mode.
    double degrees() const;

private:
    ApproxAngle(NumericMode mode, std::variant<double, fixed_raw> value)
        : mode_(mode), value_(std::move(value)) {}

    NumericMode mode_;
    std::variant<double, fixed_raw> value_;
};

/// Round-to-nearest conversion of an exact angle into `mode`. Throws
/// invalid_mode for Exact.
ApproxAngle to_approx(const AngleResidue& r, const NumericMode& mode);

/// 360 degrees in `mode`, the wrap bound of the approximate solvers.
ApproxAngle full_turn(const NumericMode& mode);

/// Reduces against 360 degrees under the same strict rule as the exact form.
ApproxAngle reduce_by_subtraction(ApproxAngle a, OpCounters& counters);

/// |a - b| <= tolerance, evaluated exactly on the stored representations.
/// Throws mode_mismatch on differing modes and std::invalid_argument on a
/// negative or NaN tolerance.
bool angles_equal(const ApproxAngle& a, const ApproxAngle& b, double tolerance);

/// Half a lattice step, 180 / p degrees.
double default_tolerance(std::uint64_t p);

/// Largest integer count of 2^-bits units not exceeding `tolerance` degrees.
boost::multiprecision::cpp_int fixed_tolerance_units(double tolerance, unsigned fractional_bits);

/// Correctly rounded (nearest, ties to even) double of num / den, den > 0.
double ratio_to_double(const boost::multiprecision::cpp_int& num,
                       const boost::multiprecision::cpp_int& den);

}  // namespace rotorlog
