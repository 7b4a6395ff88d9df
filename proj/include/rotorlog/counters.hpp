#pragma once

#include <cstdint>

namespace rotorlog {

/// Exact operation tallies for one solve. One addition per repeated-addition
/// step, one subtraction per wrap step, one comparison per equality test
/// against the target.
struct OpCounters {
    std::uint64_t additions = 0;
    std::uint64_t subtractions = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t outer_steps = 0;

    std::uint64_t total_ops() const noexcept { return additions + subtractions; }

    OpCounters& operator+=(const OpCounters& o) noexcept {
        additions += o.additions;
        subtractions += o.subtractions;
        comparisons += o.comparisons;
        outer_steps += o.outer_steps;
        return *this;
    }

    friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

}  // namespace rotorlog
