#include "benchsim/plants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "benchsim/friction.hpp"

namespace benchsim {

namespace {
// Shared state indices per plant (registration order below).
enum HydState { h_spool = 0, h_spool_vel, h_pa, h_pb, h_pos, h_vel };
enum ElecState { e_force = 0, e_pos, e_vel };
enum ManState { m_pos = 0, m_vel };

[[noreturn]] void limit_error(const char* what, double value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s (%.6g) without an end-stop model enabled", what, value);
    throw SimError(buf);
}
}  // namespace

double environment_force(const EnvironmentSpec& env, double position_m, double velocity_mps) {
    switch (env.kind) {
        case EnvironmentKind::free_motion:
            return 0.0;
        case EnvironmentKind::spring:
            return spring_damper_force(env.spring, position_m, velocity_mps);
        case EnvironmentKind::blockage:
            return spring_damper_force(env.latch, position_m, velocity_mps);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Hydraulic bench

HydraulicBenchPlant::HydraulicBenchPlant() {
    schema_.add("spool_pos");
    schema_.add("spool_vel");
    schema_.add("p_a");
    schema_.add("p_b");
    schema_.add("car_pos");
    schema_.add("car_vel");
}

std::vector<double> HydraulicBenchPlant::initial_state() const {
    return std::vector<double>(6, 0.0);
}

double HydraulicBenchPlant::applied_force(std::span<const double> y) const {
    const double x = y[h_pos];
    const double v = y[h_vel];
    double f = cylinder_force(y[h_pa], y[h_pb], cylinder) +
               environment_force(env, x, v);
    if (car.end_stops) {
        f += end_stop_force(x, v, car.travel_limit_m);
    }
    return f;
}

void HydraulicBenchPlant::derivative(double /*t*/, std::span<const double> y, double command,
                                     std::span<double> dydt) const {
    const double u = std::clamp(command, -1.0, 1.0);
    const double spool = std::clamp(y[h_spool], -1.0, 1.0);
    dydt[h_spool] = y[h_spool_vel];
    dydt[h_spool_vel] = spool_accel(y[h_spool], y[h_spool_vel], u, valve);

    const ValveFlows q = orifice_flows(spool, supply, y[h_pa], y[h_pb], valve);
    const double piston = std::clamp(y[h_pos] + cylinder.stroke_m / 2.0, 0.0, cylinder.stroke_m);
    const double v = y[h_vel];
    dydt[h_pa] = chamber_pressure_rate(y[h_pa], cylinder.chamber_a_volume_m3(piston),
                                       q.q_a_m3ps, cylinder.cap_area_m2() * v, oil);
    dydt[h_pb] = chamber_pressure_rate(y[h_pb], cylinder.chamber_b_volume_m3(piston),
                                       q.q_b_m3ps, -cylinder.rod_side_area_m2() * v, oil);

    const double f_app = applied_force(y);
    dydt[h_pos] = v;
    dydt[h_vel] = (f_app + friction_force(v, f_app, car.friction)) / car.mass_kg;
}

void HydraulicBenchPlant::post_step(double /*t*/, std::span<double> y,
                                    std::uint32_t& step_flags) const {
    if (y[h_spool] > 1.0) {
        y[h_spool] = 1.0;
        y[h_spool_vel] = std::min(y[h_spool_vel], 0.0);
    } else if (y[h_spool] < -1.0) {
        y[h_spool] = -1.0;
        y[h_spool_vel] = std::max(y[h_spool_vel], 0.0);
    }
    for (int i : {static_cast<int>(h_pa), static_cast<int>(h_pb)}) {
        if (y[i] < 0.0) {
            y[i] = 0.0;
            step_flags |= flag::cavitation_clamp;
        }
    }
    if (car.friction.enabled && std::abs(y[h_vel]) <= car.friction.stiction_band_mps &&
        std::abs(applied_force(y)) <= car.friction.coulomb_n) {
        y[h_vel] = 0.0;  // parked inside the stiction band
    }
}

PlantOutputs HydraulicBenchPlant::outputs(double /*t*/, std::span<const double> y) const {
    PlantOutputs out;
    out.position_m = y[h_pos];
    out.velocity_mps = y[h_vel];
    out.force_n = cylinder_force(y[h_pa], y[h_pb], cylinder);
    out.p_a_pa = y[h_pa];
    out.p_b_pa = y[h_pb];
    out.has_pressures = true;
    const double spool = std::clamp(y[h_spool], -1.0, 1.0);
    if (orifice_flows(spool, supply, y[h_pa], y[h_pb], valve).supply_saturated) {
        out.flags |= flag::supply_saturated;
    }
    if (std::abs(y[h_pos]) > car.travel_limit_m ||
        y[h_pos] + cylinder.stroke_m / 2.0 < 0.0 ||
        y[h_pos] - cylinder.stroke_m / 2.0 > 0.0) {
        out.flags |= flag::travel_limit;
    }
    return out;
}

void HydraulicBenchPlant::check_limits(std::span<const double> y) const {
    const double piston = y[h_pos] + cylinder.stroke_m / 2.0;
    if (!car.end_stops && (piston < 0.0 || piston > cylinder.stroke_m)) {
        limit_error("piston beyond cylinder stroke", y[h_pos]);
    }
    if (!car.end_stops && std::abs(y[h_pos]) > car.travel_limit_m) {
        limit_error("car beyond guide travel", y[h_pos]);
    }
    const double p_cap = 1.5 * supply.supply_pressure_pa;
    if (y[h_pa] > p_cap || y[h_pb] > p_cap) {
        throw SimError("chamber pressure exceeded 1.5x supply pressure");
    }
}

// ---------------------------------------------------------------------------
// Electric bench

ElectricBenchPlant::ElectricBenchPlant() {
    schema_.add("motor_force");
    schema_.add("car_pos");
    schema_.add("car_vel");
}

std::vector<double> ElectricBenchPlant::initial_state() const {
    return std::vector<double>(3, 0.0);
}

double ElectricBenchPlant::applied_force(std::span<const double> y) const {
    const double x = y[e_pos];
    const double v = y[e_vel];
    double f = y[e_force] + environment_force(env, x, v);
    if (car.end_stops) {
        f += end_stop_force(x, v, motor.max_stroke_m / 2.0);
    }
    return f;
}

void ElectricBenchPlant::derivative(double /*t*/, std::span<const double> y, double command,
                                    std::span<double> dydt) const {
    const double u = std::clamp(command, -1.0, 1.0);
    dydt[e_force] = motor_force_rate(y[e_force], u, motor);
    const double f_app = applied_force(y);
    dydt[e_pos] = y[e_vel];
    dydt[e_vel] = (f_app + friction_force(y[e_vel], f_app, car.friction)) / car.mass_kg;
}

void ElectricBenchPlant::post_step(double /*t*/, std::span<double> y,
                                   std::uint32_t&) const {
    y[e_force] = std::clamp(y[e_force], -motor.max_force_n, motor.max_force_n);
    if (car.friction.enabled && std::abs(y[e_vel]) <= car.friction.stiction_band_mps &&
        std::abs(applied_force(y)) <= car.friction.coulomb_n) {
        y[e_vel] = 0.0;
    }
}

PlantOutputs ElectricBenchPlant::outputs(double /*t*/, std::span<const double> y) const {
    PlantOutputs out;
    out.position_m = y[e_pos];
    out.velocity_mps = y[e_vel];
    out.force_n = y[e_force];
    if (stroke_exceeded(y[e_pos], motor)) {
        out.flags |= flag::travel_limit;
    }
    return out;
}

void ElectricBenchPlant::check_limits(std::span<const double> y) const {
    if (!car.end_stops && stroke_exceeded(y[e_pos], motor)) {
        limit_error("slider beyond motor stroke", y[e_pos]);
    }
}

// ---------------------------------------------------------------------------
// Manual (hand-driven) rig

ManualRigPlant::ManualRigPlant() {
    schema_.add("car_pos");
    schema_.add("car_vel");
}

std::vector<double> ManualRigPlant::initial_state() const {
    return std::vector<double>(2, 0.0);
}

double ManualRigPlant::applied_force(double t, std::span<const double> y) const {
    const double xh = reference_value(hand, t);
    const double vh = reference_rate(hand, t);
    const double x = y[m_pos];
    const double v = y[m_vel];
    const double f_drive = drive.stiffness_n_per_m * (xh - x) + drive.damping_ns_per_m * (vh - v);
    double f = f_drive + environment_force(env, x, v);
    if (car.end_stops) {
        f += end_stop_force(x, v, car.travel_limit_m);
    }
    return f;
}

void ManualRigPlant::derivative(double t, std::span<const double> y, double /*command*/,
                                std::span<double> dydt) const {
    const double f_app = applied_force(t, y);
    dydt[m_pos] = y[m_vel];
    dydt[m_vel] = (f_app + friction_force(y[m_vel], f_app, car.friction)) / car.mass_kg;
}

void ManualRigPlant::post_step(double t, std::span<double> y, std::uint32_t&) const {
    if (car.friction.enabled && std::abs(y[m_vel]) <= car.friction.stiction_band_mps &&
        std::abs(applied_force(t, y)) <= car.friction.coulomb_n) {
        y[m_vel] = 0.0;
    }
}

PlantOutputs ManualRigPlant::outputs(double t, std::span<const double> y) const {
    PlantOutputs out;
    out.position_m = y[m_pos];
    out.velocity_mps = y[m_vel];
    const double xh = reference_value(hand, t);
    const double vh = reference_rate(hand, t);
    out.force_n = drive.stiffness_n_per_m * (xh - y[m_pos]) +
                  drive.damping_ns_per_m * (vh - y[m_vel]);
    if (std::abs(y[m_pos]) > car.travel_limit_m) {
        out.flags |= flag::travel_limit;
    }
    return out;
}

void ManualRigPlant::check_limits(std::span<const double> y) const {
    if (!car.end_stops && std::abs(y[m_pos]) > car.travel_limit_m) {
        limit_error("car beyond guide travel", y[m_pos]);
    }
}

}  // namespace benchsim
