#include "benchsim/sensors.hpp"

#include <algorithm>
#include <cmath>

namespace benchsim {

double Rng::normal(double std_dev) {
    if (std_dev <= 0.0) {
        return 0.0;
    }
    std::normal_distribution<double> d(0.0, std_dev);
    return d(gen_);
}

double Rng::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen_);
}

EncoderModel EncoderModel::rls_lm10() {
    return EncoderModel{};  // 1 um scale
}

double encoder_read(double true_position_m, const EncoderModel& m) {
    if (m.resolution_m <= 0.0) {
        return true_position_m;
    }
    return std::floor(true_position_m / m.resolution_m) * m.resolution_m;
}

double LoadCellModel::amplifier_gain() const {
    const double bridge_fullscale_v = sensitivity_mv_per_v * 1e-3 * excitation_v;
    return (adc_fullscale_v / 2.0) / bridge_fullscale_v;
}

LoadCellModel LoadCellModel::smt1_250() {
    LoadCellModel m;
    m.range_n = 250.0;
    m.sensitivity_mv_per_v = 2.0;
    return m;
}

LoadCellModel LoadCellModel::burster_8417() {
    LoadCellModel m;
    m.range_n = 5000.0;
    m.sensitivity_mv_per_v = 1.0;
    m.adc_bits = 16;  // bridge-amplifier class acquisition; 12 bits over 10 kN is too coarse
    return m;
}

LoadCellReading loadcell_read(double true_force_n, const LoadCellModel& m, Rng& rng) {
    LoadCellReading r;
    double f = true_force_n;
    if (f > m.range_n) {
        f = m.range_n;
        r.clipped = true;
    } else if (f < -m.range_n) {
        f = -m.range_n;
        r.clipped = true;
    }
    // Bridge + amplifier map [-range, range] onto [0, adc_fullscale].
    const double bridge_v = f / m.range_n * m.sensitivity_mv_per_v * 1e-3 * m.excitation_v;
    double v = m.adc_fullscale_v / 2.0 + m.amplifier_gain() * bridge_v;
    if (m.adc_bits > 0) {
        const double lsb = m.adc_fullscale_v / static_cast<double>(1 << m.adc_bits);
        v = std::round(v / lsb) * lsb;
    }
    const double decoded = (v / (m.adc_fullscale_v / 2.0) - 1.0) * m.range_n;
    r.force_n = decoded + rng.normal(m.noise_std_n);
    return r;
}

PressureSensorModel PressureSensorModel::nat_8251() {
    return PressureSensorModel{};
}

double pressure_offset_draw(const PressureSensorModel& m, Rng& rng) {
    const double bound = m.accuracy_fraction * m.max_pressure_pa;
    return rng.uniform(-bound, bound);
}

PressureReading pressure_read(double true_pressure_pa, double offset_pa,
                              const PressureSensorModel& m, Rng& rng) {
    PressureReading r;
    double p = true_pressure_pa;
    if (p > m.max_pressure_pa) {
        p = m.max_pressure_pa;
        r.clipped = true;
    } else if (p < 0.0) {
        p = 0.0;
        r.clipped = true;
    }
    r.pressure_pa = p + offset_pa + rng.normal(m.noise_std_pa);
    return r;
}

void SensorSuite::begin_run(Rng& rng) {
    p_a_offset_pa_ = 0.0;
    p_b_offset_pa_ = 0.0;
    if (has_pressure) {
        p_a_offset_pa_ = pressure_offset_draw(pressure, rng);
        p_b_offset_pa_ = pressure_offset_draw(pressure, rng);
    }
}

Measurements SensorSuite::sample(const PlantOutputs& out, Rng& rng) const {
    Measurements m;
    m.flags = 0;
    const LoadCellReading cell = loadcell_read(out.force_n, loadcell, rng);
    m.force_n = cell.force_n;
    if (cell.clipped) {
        m.flags |= flag::loadcell_clipped;
    }
    m.position_m = encoder_read(out.position_m, encoder);
    if (has_pressure && out.has_pressures) {
        const PressureReading pa = pressure_read(out.p_a_pa, p_a_offset_pa_, pressure, rng);
        const PressureReading pb = pressure_read(out.p_b_pa, p_b_offset_pa_, pressure, rng);
        m.p_a_pa = pa.pressure_pa;
        m.p_b_pa = pb.pressure_pa;
        if (pa.clipped || pb.clipped) {
            m.flags |= flag::pressure_clipped;
        }
    }
    return m;
}

}  // namespace benchsim
