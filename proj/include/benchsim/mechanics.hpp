#pragma once

#include "benchsim/friction.hpp"

namespace benchsim {

// One guided slider car on the colinear axis.
struct CarBody {
    double mass_kg = 10.0;         // stipulated slider mass ceiling, used as default
    FrictionParams friction{};
    double travel_limit_m = 0.10;  // symmetric guide travel about the working origin
    bool end_stops = false;        // engage contact forces at the travel limit

    bool operator==(const CarBody&) const = default;
};

struct SpringDamper {
    double stiffness_n_per_m = 0.0;
    double damping_ns_per_m = 0.0;

    bool operator==(const SpringDamper&) const = default;
};

// Restoring force for a positive-compression deflection: -(k*d + c*rate).
double spring_damper_force(const SpringDamper& s, double deflection_m, double rate_mps);

// Unilateral stiff contact outside +/-travel_limit; never pulls.
double end_stop_force(double position_m, double velocity_mps, double travel_limit_m,
                      double contact_stiffness_n_per_m = 1e7,
                      double contact_damping_ns_per_m = 1e4);

}  // namespace benchsim
