#pragma once

namespace benchsim {

// Guide/slider friction, Karnopp form: a small velocity band represents the stuck state.
struct FrictionParams {
    double coulomb_n = 2.2;          // breakaway level per car (calibrated, see README)
    double viscous_ns_per_m = 40.0;
    double stiction_band_mps = 1e-4; // |v| below this counts as stuck
    bool enabled = true;

    bool operator==(const FrictionParams&) const = default;
};

// Friction force on the car. Outside the band: -sign(v)*(coulomb + viscous*|v|).
// Inside the band the car is stuck: cancels applied force up to the coulomb level,
// otherwise resists breakaway at the coulomb level.
double friction_force(double velocity_mps, double applied_force_n, const FrictionParams& p);

}  // namespace benchsim
