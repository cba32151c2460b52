#include "benchsim/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "benchsim/sensors.hpp"

namespace benchsim {

void Plant::post_step(double, std::span<double>, std::uint32_t&) const {}

void Plant::check_limits(std::span<const double>) const {}

void rk4_step(const DerivFn& f, double t, double dt, std::span<double> y,
              std::span<double> scratch) {
    const std::size_t n = y.size();
    if (scratch.size() < 5 * n) {
        throw SimError("rk4_step: scratch buffer too small");
    }
    auto k1 = scratch.subspan(0, n);
    auto k2 = scratch.subspan(n, n);
    auto k3 = scratch.subspan(2 * n, n);
    auto k4 = scratch.subspan(3 * n, n);
    auto yt = scratch.subspan(4 * n, n);

    f(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + 0.5 * dt * k1[i];
    f(t + 0.5 * dt, yt, k2);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + 0.5 * dt * k2[i];
    f(t + 0.5 * dt, yt, k3);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + dt * k3[i];
    f(t + dt, yt, k4);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

namespace {

// Control interval must hold a whole number of physics steps.
long substeps_per_tick(const SimConfig& cfg) {
    if (!(cfg.dt_physics_s > 0.0)) {
        throw SimError("dt_physics_s must be > 0");
    }
    const double ratio = cfg.dt_control_s / cfg.dt_physics_s;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "dt_control_s (%g) is not an integer multiple of dt_physics_s (%g)",
                      cfg.dt_control_s, cfg.dt_physics_s);
        throw SimError(buf);
    }
    return n;
}

void require_finite(const StateSchema& schema, std::span<const double> y, double t) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i])) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "state '%s' became non-finite at t=%.6f s",
                          schema.name(i).c_str(), t);
            throw SimError(buf);
        }
    }
}

}  // namespace

TimeSeries run_simulation(const SimConfig& cfg, Plant& plant, Controller& controller,
                          SensorSuite& sensors, const ReferenceFn& reference) {
    if (cfg.duration_s < cfg.dt_control_s) {
        throw SimError("duration_s must be at least dt_control_s");
    }
    const long nsub = substeps_per_tick(cfg);
    const long ticks = std::lround(cfg.duration_s / cfg.dt_control_s);

    const StateSchema& schema = plant.schema();
    std::vector<double> y = plant.initial_state();
    if (y.size() != schema.size()) {
        throw SimError("initial state size does not match the schema");
    }
    std::vector<double> scratch(5 * y.size());

    Rng rng(cfg.seed);
    sensors.begin_run(rng);
    controller.reset();

    double command = 0.0;
    const DerivFn deriv = [&plant, &command](double t, std::span<const double> s,
                                             std::span<double> d) {
        plant.derivative(t, s, command, d);
    };

    TimeSeries ts;
    ts.has_pressures = plant.outputs(0.0, y).has_pressures;
    ts.reserve(static_cast<std::size_t>(ticks) + 1);

    std::uint32_t carried_flags = 0;  // raised by post_step between ticks
    for (long tick = 0; tick <= ticks; ++tick) {
        const double t = static_cast<double>(tick) * cfg.dt_control_s;
        const PlantOutputs out = plant.outputs(t, y);
        const Measurements meas = sensors.sample(out, rng);
        const double ref = reference(t);
        const double u_raw = controller.update(t, ref, meas, cfg.dt_control_s);
        command = std::clamp(u_raw, -1.0, 1.0);

        std::uint32_t row_flags = out.flags | meas.flags | carried_flags;
        if (u_raw != command) {
            row_flags |= flag::command_saturated;
        }
        carried_flags = 0;

        ts.time_s.push_back(t);
        ts.reference.push_back(ref);
        ts.force_meas_n.push_back(meas.force_n);
        ts.position_m.push_back(meas.position_m);
        ts.velocity_mps.push_back(out.velocity_mps);
        ts.command.push_back(command);
        ts.flags.push_back(row_flags);
        if (ts.has_pressures) {
            ts.p_a_pa.push_back(meas.p_a_pa);
            ts.p_b_pa.push_back(meas.p_b_pa);
        }

        if (tick == ticks) {
            break;
        }
        for (long i = 0; i < nsub; ++i) {
            const double t_sub = t + static_cast<double>(i) * cfg.dt_physics_s;
            rk4_step(deriv, t_sub, cfg.dt_physics_s, y, scratch);
            plant.post_step(t_sub + cfg.dt_physics_s, y, carried_flags);
        }
        require_finite(schema, y, t + cfg.dt_control_s);
        plant.check_limits(y);
    }
    return ts;
}

}  // namespace benchsim
