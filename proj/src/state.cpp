#include "benchsim/state.hpp"

#include <algorithm>

namespace benchsim {

std::size_t StateSchema::add(std::string name) {
    if (index(name) >= 0) {
        throw SimError("duplicate state name: " + name);
    }
    names_.push_back(std::move(name));
    return names_.size() - 1;
}

int StateSchema::index(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return -1;
    }
    return static_cast<int>(it - names_.begin());
}

void TimeSeries::reserve(std::size_t n) {
    time_s.reserve(n);
    reference.reserve(n);
    force_meas_n.reserve(n);
    position_m.reserve(n);
    velocity_mps.reserve(n);
    command.reserve(n);
    flags.reserve(n);
    if (has_pressures) {
        p_a_pa.reserve(n);
        p_b_pa.reserve(n);
    }
}

}  // namespace benchsim
