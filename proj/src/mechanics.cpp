#include "benchsim/mechanics.hpp"

namespace benchsim {

double spring_damper_force(const SpringDamper& s, double deflection_m, double rate_mps) {
    return -(s.stiffness_n_per_m * deflection_m + s.damping_ns_per_m * rate_mps);
}

double end_stop_force(double position_m, double velocity_mps, double travel_limit_m,
                      double contact_stiffness_n_per_m, double contact_damping_ns_per_m) {
    double f = 0.0;
    if (position_m > travel_limit_m) {
        f = -(contact_stiffness_n_per_m * (position_m - travel_limit_m) +
              contact_damping_ns_per_m * velocity_mps);
        if (f > 0.0) f = 0.0;  // contact cannot pull
    } else if (position_m < -travel_limit_m) {
        f = -(contact_stiffness_n_per_m * (position_m + travel_limit_m) +
              contact_damping_ns_per_m * velocity_mps);
        if (f < 0.0) f = 0.0;
    }
    return f;
}

}  // namespace benchsim
