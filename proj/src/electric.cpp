#include "benchsim/electric.hpp"

#include <cmath>

namespace benchsim {

LinearMotorParams LinearMotorParams::linmot_p01() {
    return LinearMotorParams{};
}

double motor_force_rate(double force_n, double command, const LinearMotorParams& m) {
    const double target = command * m.max_force_n;
    return (target - force_n) / m.time_constant_s;
}

bool stroke_exceeded(double position_m, const LinearMotorParams& m) {
    return std::abs(position_m) > m.max_stroke_m / 2.0;
}

}  // namespace benchsim
