#pragma once

namespace benchsim {

// Tubular linear motor plus drive, reduced to a first-order force lag.
struct LinearMotorParams {
    double max_force_n = 255.0;
    double max_stroke_m = 0.120;
    double time_constant_s = 0.002;  // drive current-loop lag

    static LinearMotorParams linmot_p01();

    bool operator==(const LinearMotorParams&) const = default;
};

// dF/dt toward command * max_force; the force state itself stays within +/-max_force.
double motor_force_rate(double force_n, double command, const LinearMotorParams& m);

// True once the slider leaves the usable stroke (centered at the working origin).
bool stroke_exceeded(double position_m, const LinearMotorParams& m);

}  // namespace benchsim
