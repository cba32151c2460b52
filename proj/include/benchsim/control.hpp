#pragma once

#include <vector>

#include "benchsim/integrate.hpp"

namespace benchsim {

struct PiGains {
    double kp = 0.0;  // command per N
    double ki = 0.0;  // command per (N*s)
    double out_min = -1.0;  // +/-10 V drive equivalence
    double out_max = 1.0;
    bool anti_windup = true;

    // Gains quoted in volts per newton, normalized by the +/-10 V driver span.
    static PiGains from_driver_volts(double kp_v_per_n, double ki_v_per_ns,
                                     double driver_span_v = 10.0);

    bool operator==(const PiGains&) const = default;
};

struct PiState {
    double integral_ns = 0.0;  // integral of error, N*s
};

// One forward-Euler PI update. With anti_windup the integrator freezes whenever the
// output is saturated and the error pushes further into saturation.
double pi_step(PiState& s, double error_n, double dt_s, const PiGains& g);

struct ImpedanceParams {
    double stiffness_n_per_m = 0.0;
    double damping_ns_per_m = 0.0;

    bool operator==(const ImpedanceParams&) const = default;
};

// Rendered force reference K_d*(x_d - x) + B_d*(v_d - v), fed to the PI loop.
double impedance_outer(double position_m, double velocity_mps, double desired_pos_m,
                       double desired_vel_mps, const ImpedanceParams& p);

enum class RefKind { sine, step, chirp, profile };

struct ReferenceSpec {
    RefKind kind = RefKind::sine;
    double amplitude = 0.0;    // N for force references, m for position profiles
    double frequency_hz = 0.0;
    double offset = 0.0;
    double step_time_s = 0.0;
    double chirp_f0_hz = 0.0;
    double chirp_f1_hz = 0.0;
    double chirp_duration_s = 0.0;
    std::vector<double> profile_time_s;  // strictly increasing when used
    std::vector<double> profile_value;

    bool operator==(const ReferenceSpec&) const = default;
};

// Value at time t; profiles interpolate linearly and hold their endpoints outside.
double reference_value(const ReferenceSpec& spec, double t);
// Time derivative of the same signal (piecewise-constant slope for profiles).
double reference_rate(const ReferenceSpec& spec, double t);

// PI force controller, optionally nested inside an impedance outer loop that turns a
// position reference into the force setpoint.
class PiForceController : public Controller {
public:
    explicit PiForceController(PiGains gains) : gains_(gains) {}
    // Impedance mode: the reference is a desired position; velocities come from
    // backward differences of the reference and the encoder reading.
    PiForceController(PiGains gains, ImpedanceParams imp)
        : gains_(gains), impedance_(imp), use_impedance_(true) {}
    void reset() override;
    double update(double t, double reference, const Measurements& m, double dt_s) override;
    [[nodiscard]] const PiState& state() const { return state_; }

private:
    PiGains gains_{};
    PiState state_{};
    ImpedanceParams impedance_{};
    bool use_impedance_ = false;
    double prev_pos_m_ = 0.0;
    double prev_ref_m_ = 0.0;
    bool have_prev_ = false;
};

// Fixed command source (open-loop scenarios).
class ConstantController : public Controller {
public:
    explicit ConstantController(double command) : command_(command) {}
    double update(double, double, const Measurements&, double) override { return command_; }

private:
    double command_;
};

// No drive at all (externally driven rigs).
class NullController : public Controller {
public:
    double update(double, double, const Measurements&, double) override { return 0.0; }
};

}  // namespace benchsim
