#pragma once

#include <cstdint>
#include <cmath>
#include <compare>

namespace uavsim {

// Simulation time as integer nanoseconds. All protocol constants (slot,
// SIFS, DIFS, frame airtimes at 2 Mbps) are exact multiples of 1 ns, so
// event timestamps never accumulate floating-point error.
struct SimTime {
    std::int64_t ns = 0;

    constexpr SimTime() = default;
    constexpr explicit SimTime(std::int64_t n) : ns(n) {}

    static constexpr SimTime zero() { return SimTime{0}; }
    static constexpr SimTime from_ns(std::int64_t n) { return SimTime{n}; }
    static constexpr SimTime from_us(std::int64_t us) { return SimTime{us * 1000}; }
    static constexpr SimTime from_ms(std::int64_t ms) { return SimTime{ms * 1000000}; }
    static SimTime from_seconds(double s) {
        return SimTime{static_cast<std::int64_t>(std::llround(s * 1e9))};
    }

    constexpr double seconds() const { return static_cast<double>(ns) * 1e-9; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime{ns + o.ns}; }
    constexpr SimTime operator-(SimTime o) const { return SimTime{ns - o.ns}; }
    constexpr SimTime& operator+=(SimTime o) { ns += o.ns; return *this; }
    constexpr SimTime& operator-=(SimTime o) { ns -= o.ns; return *this; }
    constexpr SimTime operator*(std::int64_t k) const { return SimTime{ns * k}; }
};

constexpr SimTime operator*(std::int64_t k, SimTime t) { return SimTime{k * t.ns}; }

} // namespace uavsim
