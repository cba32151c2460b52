#include "benchsim/friction.hpp"

#include <cmath>

namespace benchsim {

double friction_force(double velocity_mps, double applied_force_n, const FrictionParams& p) {
    if (!p.enabled) {
        return 0.0;
    }
    const double av = std::abs(velocity_mps);
    if (av > p.stiction_band_mps) {
        const double mag = p.coulomb_n + p.viscous_ns_per_m * av;
        return velocity_mps > 0.0 ? -mag : mag;
    }
    // Stuck: friction balances the applied force up to the breakaway level.
    if (std::abs(applied_force_n) <= p.coulomb_n) {
        return -applied_force_n;
    }
    return applied_force_n > 0.0 ? -p.coulomb_n : p.coulomb_n;
}

}  // namespace benchsim
