#pragma once

#include <compare>
#include <cstdint>

namespace sfc {

// Simulated days since genesis (day 0 = ICO). Stands in for block time;
// the engine only ever moves it forward.
struct SimTime {
    std::uint64_t days = 0;

    auto operator<=>(const SimTime&) const = default;
};

inline SimTime operator+(SimTime t, std::uint64_t days) { return SimTime{t.days + days}; }

} // namespace sfc
