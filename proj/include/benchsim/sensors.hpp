#pragma once

#include <cstdint>
#include <random>

#include "benchsim/integrate.hpp"

namespace benchsim {

// Single deterministic stream per run; all sensor draws come from here in a fixed order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double normal(double std_dev);
    double uniform(double lo, double hi);

private:
    std::mt19937_64 gen_;
};

struct EncoderModel {
    double resolution_m = 1e-6;  // 0 disables quantization

    static EncoderModel rls_lm10();

    bool operator==(const EncoderModel&) const = default;
};

// Incremental encoder count: truncation toward -inf on the resolution grid.
double encoder_read(double true_position_m, const EncoderModel& m);

struct LoadCellModel {
    double range_n = 250.0;            // symmetric full scale
    double sensitivity_mv_per_v = 2.0;
    double excitation_v = 10.0;
    double adc_fullscale_v = 3.3;      // acquisition span, bridge mapped to [0, fullscale]
    int adc_bits = 12;                 // 0 disables quantization
    double noise_std_n = 0.3;          // measurement-chain noise floor, at sample instants
    double axial_stiffness_n_per_m = 1.7e6;  // used by couplings, not by the reading chain

    // Fixed so that +/-range spans the ADC input exactly.
    [[nodiscard]] double amplifier_gain() const;

    static LoadCellModel smt1_250();      // 250 N, 2 mV/V
    static LoadCellModel burster_8417();  // 5 kN, 1 mV/V

    bool operator==(const LoadCellModel&) const = default;
};

struct LoadCellReading {
    double force_n = 0.0;
    bool clipped = false;
};

// Chain: clip to range -> bridge millivolts -> amplify -> ADC quantize -> invert -> noise.
LoadCellReading loadcell_read(double true_force_n, const LoadCellModel& m, Rng& rng);

struct PressureSensorModel {
    double max_pressure_pa = 25e6;
    double accuracy_fraction = 0.005;  // bound on the per-run systematic offset
    double noise_std_pa = 12500.0;     // 0.05% of range

    static PressureSensorModel nat_8251();

    bool operator==(const PressureSensorModel&) const = default;
};

// Systematic offset for one run, drawn uniformly within +/-accuracy*max.
double pressure_offset_draw(const PressureSensorModel& m, Rng& rng);

struct PressureReading {
    double pressure_pa = 0.0;
    bool clipped = false;
};

PressureReading pressure_read(double true_pressure_pa, double offset_pa,
                              const PressureSensorModel& m, Rng& rng);

// The sensor set wired to one bench configuration.
class SensorSuite {
public:
    LoadCellModel loadcell{};
    EncoderModel encoder{};
    PressureSensorModel pressure{};
    bool has_pressure = false;

    // Draws the per-run systematic offsets; call once before a run.
    void begin_run(Rng& rng);
    [[nodiscard]] Measurements sample(const PlantOutputs& out, Rng& rng) const;

private:
    double p_a_offset_pa_ = 0.0;
    double p_b_offset_pa_ = 0.0;
};

}  // namespace benchsim
