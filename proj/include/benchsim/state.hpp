#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace benchsim {

// Raised when a run must terminate (limit violation, numerical blow-up, bad setup).
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Named layout of a continuous state vector. Indices are stable registration order.
class StateSchema {
public:
    std::size_t add(std::string name);
    [[nodiscard]] int index(std::string_view name) const;  // -1 if absent
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
    [[nodiscard]] std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
};

// Per-tick status bits recorded in the "flags" channel.
namespace flag {
inline constexpr std::uint32_t loadcell_clipped = 1u << 0;
inline constexpr std::uint32_t command_saturated = 1u << 1;
inline constexpr std::uint32_t supply_saturated = 1u << 2;
inline constexpr std::uint32_t travel_limit = 1u << 3;
inline constexpr std::uint32_t cavitation_clamp = 1u << 4;
inline constexpr std::uint32_t pressure_clipped = 1u << 5;
}  // namespace flag

// Channels recorded once per control tick, all vectors share one length.
struct TimeSeries {
    std::vector<double> time_s;
    std::vector<double> reference;    // N for force loops, m for position-driven rigs
    std::vector<double> force_meas_n;
    std::vector<double> position_m;   // encoder output
    std::vector<double> velocity_mps; // true state (the bench has no velocity sensor)
    std::vector<double> command;      // normalized [-1, 1]
    std::vector<double> p_a_pa;       // present only on hydraulic runs
    std::vector<double> p_b_pa;
    std::vector<std::uint32_t> flags;
    bool has_pressures = false;

    [[nodiscard]] std::size_t size() const { return time_s.size(); }
    void reserve(std::size_t n);
};

}  // namespace benchsim
