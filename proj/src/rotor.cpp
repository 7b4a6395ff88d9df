#include "rotorlog/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotorlog/errors.hpp"

namespace rotorlog {

using boost::multiprecision::cpp_int;

void DlogInstance::validate() const {
    if (p < 2) throw invalid_instance("modulus p must be at least 2, got " + std::to_string(p));
    if (x < 1 || x >= p)
        throw invalid_instance("base x must lie in [1, p), got x=" + std::to_string(x) +
                               " p=" + std::to_string(p));
    if (y < 1 || y >= p)
        throw invalid_instance("target y must lie in [1, p), got y=" + std::to_string(y) +
                               " p=" + std::to_string(p));
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::Found: return "found";
        case Termination::ExhaustedIterations: return "exhausted";
        case Termination::CycleDetected: return "cycle";
    }
    return "?";
}

namespace {

// The loop body of both listings never compares x^0 or x^1, so those are
// settled up front. Returns true when the report is final.
bool precheck(const DlogInstance& inst, SolveReport& report) {
    ++report.counters.comparisons;
    if (inst.y == 1) {
        report.k = 0;
        report.reason = Termination::Found;
        return true;
    }
    ++report.counters.comparisons;
    if (inst.y == inst.x) {
        report.k = 1;
        report.reason = Termination::Found;
        return true;
    }
    return false;
}

template <class Value, class Equal>
SolveReport run_rotor(const DlogInstance& inst, RotorState<Value> state, const Value& wrap,
                      Equal&& equal) {
    SolveReport report;
    if (precheck(inst, report)) return report;

    const Value first = state.acc;
    for (std::uint64_t i = 1; i < inst.p; ++i) {
        rotor_step(state, inst.x, wrap, report.counters);
        ++report.steps;
        ++report.counters.comparisons;
        if (equal(state.acc, state.target)) {
            report.k = state.exponent;
            report.reason = Termination::Found;
            return report;
        }
        if (equal(state.acc, first)) {
            report.reason = Termination::CycleDetected;
            return report;
        }
    }
    report.reason = Termination::ExhaustedIterations;
    return report;
}

SolveReport solve_exact(const DlogInstance& inst) {
    RotorState<Natural> state;
    state.acc = project(inst.x, inst.p).numerator;
    state.target = project(inst.y, inst.p).numerator;
    return run_rotor(inst, std::move(state), Natural(inst.p),
                     [](const Natural& a, const Natural& b) { return a == b; });
}

SolveReport solve_float(const DlogInstance& inst, double tolerance) {
    RotorState<double> state;
    state.acc = to_approx(project(inst.x, inst.p), NumericMode::float64()).float_value();
    state.target = to_approx(project(inst.y, inst.p), NumericMode::float64()).float_value();
    return run_rotor(inst, state, 360.0, [tolerance](double a, double b) {
        return std::fabs(a - b) <= tolerance;
    });
}

template <class Raw>
SolveReport solve_fixed_with(const DlogInstance& inst, const NumericMode& mode,
                             double tolerance) {
    const unsigned bits = mode.fractional_bits();
    RotorState<Raw> state;
    state.acc = static_cast<Raw>(to_approx(project(inst.x, inst.p), mode).fixed_value());
    state.target = static_cast<Raw>(to_approx(project(inst.y, inst.p), mode).fixed_value());
    const cpp_int wrap_units = cpp_int(360) << bits;
    const Raw wrap = static_cast<Raw>(wrap_units);
    // Reduced values never differ by more than a full turn.
    const Raw slack = static_cast<Raw>(std::min(fixed_tolerance_units(tolerance, bits), wrap_units));
    return run_rotor(inst, state, wrap, [slack](const Raw& a, const Raw& b) {
        return (a > b ? a - b : b - a) <= slack;
    });
}

SolveReport solve_fixed(const DlogInstance& inst, const NumericMode& mode, double tolerance) {
    // acc stays below 2^(bits + 9) after reduction and the repeated-addition
    // sum below x times that; pick the narrowest type that cannot overflow.
    const cpp_int bound = (cpp_int(360) << mode.fractional_bits()) * inst.p;
    if (msb(bound) < 63) return solve_fixed_with<std::uint64_t>(inst, mode, tolerance);
    if (msb(bound) < 127) return solve_fixed_with<unsigned __int128>(inst, mode, tolerance);
    return solve_fixed_with<cpp_int>(inst, mode, tolerance);
}

}  // namespace

SolveReport rotor_solve_real(const DlogInstance& inst, const NumericMode& mode,
                             std::optional<double> tolerance) {
    inst.validate();
    if (mode.is_exact()) return solve_exact(inst);

    const double tol = tolerance.value_or(default_tolerance(inst.p));
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("tolerance must be a finite non-negative number of degrees");
    if (mode.kind() == NumericMode::Kind::Float64Degrees) return solve_float(inst, tol);
    return solve_fixed(inst, mode, tol);
}

SolveReport rotor_solve_int(const DlogInstance& inst, const IntStepObserver& observer) {
    inst.validate();
    SolveReport report;
    if (precheck(inst, report)) return report;

    const std::uint64_t p = inst.p;
    const std::uint64_t x = inst.x;
    const std::uint64_t target = inst.y;
    const std::uint64_t first = x;
    std::uint64_t acc = x;
    std::uint64_t exponent = 1;
    OpCounters& c = report.counters;

    for (std::uint64_t i = 1; i < p; ++i) {
        const std::uint64_t before = acc;
        const std::uint64_t adds_before = c.additions;
        const std::uint64_t subs_before = c.subtractions;

        unsigned __int128 scratch = 0;
        for (std::uint64_t j = 0; j < x; ++j) {
            scratch += acc;
            ++c.additions;
        }
        ++exponent;
        while (scratch > p) {
            scratch -= p;
            ++c.subtractions;
        }
        acc = static_cast<std::uint64_t>(scratch);
        ++c.outer_steps;
        ++report.steps;

        if (observer)
            observer(IntStepEvent{exponent, before, acc, c.additions - adds_before,
                                  c.subtractions - subs_before});

        ++c.comparisons;
        if (acc == target) {
            report.k = exponent;
            report.reason = Termination::Found;
            return report;
        }
        if (acc == first) {
            report.reason = Termination::CycleDetected;
            return report;
        }
    }
    report.reason = Termination::ExhaustedIterations;
    return report;
}

}  // namespace rotorlog
