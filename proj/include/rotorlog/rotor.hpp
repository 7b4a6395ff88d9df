#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "rotorlog/counters.hpp"
#include "rotorlog/numerics.hpp"

namespace rotorlog {

/// x^k = y over the integers mod p.
struct DlogInstance {
    std::uint64_t p = 2;
    std::uint64_t x = 1;
    std::uint64_t y = 1;

    /// Throws invalid_instance unless p >= 2, 1 <= x < p and 1 <= y < p.
    void validate() const;

    friend bool operator==(const DlogInstance&, const DlogInstance&) = default;
};

enum class Termination { Found, ExhaustedIterations, CycleDetected };

std::string_view to_string(Termination t) noexcept;

struct SolveReport {
    std::optional<std::uint64_t> k;
    Termination reason = Termination::ExhaustedIterations;
    OpCounters counters;
    std::uint64_t steps = 0;

    bool found() const noexcept { return k.has_value(); }
};

/// Loop state of the rotor: `acc` is the reduced running power, `scratch`
/// the repeated-addition accumulator, `target` the projected y and
/// `exponent` the power held in `acc`.
template <class Value>
struct RotorState {
    Value acc{};
    Value scratch{};
    Value target{};
    std::uint64_t exponent = 1;
};

/// One outer iteration: x-fold repeated addition of `acc` into `scratch`,
/// then reduction of the sum by repeated subtraction of `wrap`.
template <class Value>
void rotor_step(RotorState<Value>& state, std::uint64_t x, const Value& wrap,
                OpCounters& counters) {
    state.scratch = Value{};
    for (std::uint64_t j = 0; j < x; ++j) {
        state.scratch += state.acc;
        ++counters.additions;
    }
    state.acc = state.scratch;
    ++state.exponent;
    state.acc = reduce_by_subtraction(std::move(state.acc), wrap, counters);
    ++counters.outer_steps;
}

/// Rotor over the projected arc. Exact mode works on numerators in units of
/// theta and always agrees with the oracles. Approximate modes compare with
/// `tolerance` degrees (default half a lattice step, 180/p) and may return a
/// wrong or missing exponent; that is an outcome, not an error.
///
/// Throws invalid_instance for an invalid instance.
SolveReport rotor_solve_real(const DlogInstance& inst, const NumericMode& mode,
                             std::optional<double> tolerance = std::nullopt);

/// Per-step trace emitted by rotor_solve_int.
struct IntStepEvent {
    std::uint64_t exponent;      // power held in acc after the step
    std::uint64_t acc_before;
    std::uint64_t acc_after;
    std::uint64_t additions;     // charged during this step
    std::uint64_t subtractions;  // charged during this step
};

using IntStepObserver = std::function<void(const IntStepEvent&)>;

/// Rotor directly on residues with wrap bound p. Any 64-bit p is supported;
/// the repeated-addition sum is held in 128 bits.
SolveReport rotor_solve_int(const DlogInstance& inst, const IntStepObserver& observer = {});

}  // namespace rotorlog
