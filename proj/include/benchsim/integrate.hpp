#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "benchsim/state.hpp"

namespace benchsim {

struct SimConfig {
    double dt_physics_s = 1e-5;
    double dt_control_s = 1e-3;  // must be an integer multiple of dt_physics_s
    double duration_s = 1.0;
    std::uint64_t seed = 1;

    bool operator==(const SimConfig&) const = default;
};

using DerivFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Classical fixed-step 4th-order Runge-Kutta. scratch must hold >= 5*y.size() doubles.
void rk4_step(const DerivFn& f, double t, double dt, std::span<double> y, std::span<double> scratch);

// True plant quantities at one instant, before any sensor chain.
struct PlantOutputs {
    double position_m = 0.0;
    double velocity_mps = 0.0;
    double force_n = 0.0;  // force carried by the measured load path
    double p_a_pa = 0.0;
    double p_b_pa = 0.0;
    bool has_pressures = false;
    std::uint32_t flags = 0;
};

class Plant {
public:
    virtual ~Plant() = default;
    [[nodiscard]] virtual const StateSchema& schema() const = 0;
    [[nodiscard]] virtual std::vector<double> initial_state() const = 0;
    virtual void derivative(double t, std::span<const double> y, double command,
                            std::span<double> dydt) const = 0;
    // Discrete corrections after each physics step (clamps, stick latch); may raise flags.
    virtual void post_step(double t, std::span<double> y, std::uint32_t& step_flags) const;
    [[nodiscard]] virtual PlantOutputs outputs(double t, std::span<const double> y) const = 0;
    // Throws SimError when the state violates a hard limit with no recovery model enabled.
    virtual void check_limits(std::span<const double> y) const;
};

// What the controller sees each tick, after the sensor chain.
struct Measurements {
    double force_n = 0.0;
    double position_m = 0.0;
    double p_a_pa = 0.0;
    double p_b_pa = 0.0;
    std::uint32_t flags = 0;
};

class Controller {
public:
    virtual ~Controller() = default;
    virtual void reset() {}
    // Returns the drive command; the run loop clamps it to [-1, 1] and applies ZOH.
    virtual double update(double t, double reference, const Measurements& m, double dt_s) = 0;
};

class SensorSuite;

using ReferenceFn = std::function<double(double t)>;

// Advances the plant at dt_physics with the controller output held between control
// ticks, sampling sensors and recording one row per tick (t = 0 and t = duration
// included). Bit-reproducible for a fixed config and seed.
TimeSeries run_simulation(const SimConfig& cfg, Plant& plant, Controller& controller,
                          SensorSuite& sensors, const ReferenceFn& reference);

}  // namespace benchsim
