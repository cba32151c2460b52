#include "benchsim/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace benchsim {

PiGains PiGains::from_driver_volts(double kp_v_per_n, double ki_v_per_ns,
                                   double driver_span_v) {
    PiGains g;
    g.kp = kp_v_per_n / driver_span_v;
    g.ki = ki_v_per_ns / driver_span_v;
    return g;
}

double pi_step(PiState& s, double error_n, double dt_s, const PiGains& g) {
    const double candidate = s.integral_ns + error_n * dt_s;
    double u = g.kp * error_n + g.ki * candidate;
    if (g.anti_windup) {
        const bool pushing_high = u > g.out_max && error_n > 0.0;
        const bool pushing_low = u < g.out_min && error_n < 0.0;
        if (!pushing_high && !pushing_low) {
            s.integral_ns = candidate;
        }
        u = g.kp * error_n + g.ki * s.integral_ns;
    } else {
        s.integral_ns = candidate;
    }
    return std::clamp(u, g.out_min, g.out_max);
}

double impedance_outer(double position_m, double velocity_mps, double desired_pos_m,
                       double desired_vel_mps, const ImpedanceParams& p) {
    return p.stiffness_n_per_m * (desired_pos_m - position_m) +
           p.damping_ns_per_m * (desired_vel_mps - velocity_mps);
}

double reference_value(const ReferenceSpec& spec, double t) {
    using std::numbers::pi;
    switch (spec.kind) {
        case RefKind::sine:
            return spec.offset + spec.amplitude * std::sin(2.0 * pi * spec.frequency_hz * t);
        case RefKind::step:
            return t < spec.step_time_s ? spec.offset : spec.offset + spec.amplitude;
        case RefKind::chirp: {
            const double T = spec.chirp_duration_s > 0.0 ? spec.chirp_duration_s : 1.0;
            const double tau = std::min(t, T);
            const double k = (spec.chirp_f1_hz - spec.chirp_f0_hz) / T;
            const double phase = 2.0 * pi * (spec.chirp_f0_hz * tau + 0.5 * k * tau * tau);
            // Past the sweep end the instantaneous frequency holds at f1.
            const double tail = t > T ? 2.0 * pi * spec.chirp_f1_hz * (t - T) : 0.0;
            return spec.offset + spec.amplitude * std::sin(phase + tail);
        }
        case RefKind::profile: {
            const auto& ts = spec.profile_time_s;
            const auto& vs = spec.profile_value;
            if (ts.empty()) {
                return spec.offset;
            }
            if (t <= ts.front()) {
                return vs.front();
            }
            if (t >= ts.back()) {
                return vs.back();
            }
            const auto it = std::upper_bound(ts.begin(), ts.end(), t);
            const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
            const std::size_t lo = hi - 1;
            const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
            return vs[lo] + w * (vs[hi] - vs[lo]);
        }
    }
    return spec.offset;
}

double reference_rate(const ReferenceSpec& spec, double t) {
    using std::numbers::pi;
    switch (spec.kind) {
        case RefKind::sine:
            return spec.amplitude * 2.0 * pi * spec.frequency_hz *
                   std::cos(2.0 * pi * spec.frequency_hz * t);
        case RefKind::step:
            return 0.0;
        case RefKind::chirp: {
            const double T = spec.chirp_duration_s > 0.0 ? spec.chirp_duration_s : 1.0;
            const double k = (spec.chirp_f1_hz - spec.chirp_f0_hz) / T;
            const double f_inst =
                t < T ? spec.chirp_f0_hz + k * t : spec.chirp_f1_hz;
            const double tau = std::min(t, T);
            const double phase = 2.0 * pi * (spec.chirp_f0_hz * tau + 0.5 * k * tau * tau) +
                                 (t > T ? 2.0 * pi * spec.chirp_f1_hz * (t - T) : 0.0);
            return spec.amplitude * 2.0 * pi * f_inst * std::cos(phase);
        }
        case RefKind::profile: {
            const auto& ts = spec.profile_time_s;
            const auto& vs = spec.profile_value;
            if (ts.size() < 2 || t <= ts.front() || t >= ts.back()) {
                return 0.0;
            }
            const auto it = std::upper_bound(ts.begin(), ts.end(), t);
            const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
            const std::size_t lo = hi - 1;
            return (vs[hi] - vs[lo]) / (ts[hi] - ts[lo]);
        }
    }
    return 0.0;
}

void PiForceController::reset() {
    state_ = PiState{};
    have_prev_ = false;
    prev_pos_m_ = 0.0;
    prev_ref_m_ = 0.0;
}

double PiForceController::update(double /*t*/, double reference, const Measurements& m,
                                 double dt_s) {
    double force_ref = reference;
    if (use_impedance_) {
        double meas_vel = 0.0;
        double des_vel = 0.0;
        if (have_prev_ && dt_s > 0.0) {
            meas_vel = (m.position_m - prev_pos_m_) / dt_s;
            des_vel = (reference - prev_ref_m_) / dt_s;
        }
        force_ref = impedance_outer(m.position_m, meas_vel, reference, des_vel, impedance_);
        prev_pos_m_ = m.position_m;
        prev_ref_m_ = reference;
        have_prev_ = true;
    }
    return pi_step(state_, force_ref - m.force_n, dt_s, gains_);
}

}  // namespace benchsim
