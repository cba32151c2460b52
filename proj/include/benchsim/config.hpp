#pragma once

#include <optional>
#include <string>
#include <vector>

#include "benchsim/control.hpp"
#include "benchsim/electric.hpp"
#include "benchsim/hydraulics.hpp"
#include "benchsim/integrate.hpp"
#include "benchsim/mechanics.hpp"
#include "benchsim/plants.hpp"
#include "benchsim/sensors.hpp"

namespace benchsim {

enum class ActuatorKind { hydraulic, electric, manual };
enum class ControllerKind { pi, impedance_pi, constant, none };
enum class Protocol { repeatability, blocked, stiffness_id, generic };
enum class SeedPolicy { fixed, per_run };

struct PlantSection {
    double car_mass_kg = 10.0;
    double coulomb_n = 2.2;
    double viscous_ns_per_m = 40.0;
    double stiction_band_mps = 1e-4;
    bool friction_enabled = true;
    double travel_limit_m = 0.10;
    bool end_stops = false;

    bool operator==(const PlantSection&) const = default;
};

struct ActuatorSection {
    ActuatorKind kind = ActuatorKind::electric;
    // Hydraulic chain
    std::string valve_preset = "E024";  // E024 | G761 | custom
    ServovalveParams valve = ServovalveParams::e024();
    SupplyUnit supply{};
    CylinderParams cylinder{};
    OilProperties oil{};
    // Electric chain
    std::string motor_preset = "LinMot-P01";
    LinearMotorParams motor{};
    // Manual drive path (hand through the load cell)
    double drive_stiffness_n_per_m = 1.7e6;
    double drive_damping_ns_per_m = 1500.0;

    bool operator==(const ActuatorSection&) const = default;
};

struct SensorsSection {
    std::string loadcell_preset = "SMT1-250";  // SMT1-250 | Burster-8417 | custom
    LoadCellModel loadcell = LoadCellModel::smt1_250();
    std::string encoder_preset = "RLS-LM10";
    EncoderModel encoder{};
    std::string pressure_preset = "NAT-8251";
    PressureSensorModel pressure{};

    bool operator==(const SensorsSection&) const = default;
};

struct ControllerSection {
    ControllerKind kind = ControllerKind::pi;
    double kp_v_per_n = 0.73;   // driver volts per newton of force error
    double ki_v_per_ns = 0.03;
    double driver_span_v = 10.0;
    bool anti_windup = true;
    ImpedanceParams impedance{};
    double constant_command = 0.0;

    bool operator==(const ControllerSection&) const = default;
};

struct ExperimentSection {
    std::string preset = "custom";
    Protocol protocol = Protocol::generic;
    int runs = 10;
    SeedPolicy seed_policy = SeedPolicy::per_run;
    EnvironmentKind environment = EnvironmentKind::spring;
    double spring_stiffness_n_per_m = 6000.0;
    double spring_damping_ns_per_m = 0.0;
    double latch_stiffness_n_per_m = 1.7e6;
    double latch_damping_ns_per_m = 2000.0;
    // Hand-compression cycle shape (stiffness identification)
    double compression_span_m = 0.02;
    double compression_frequency_hz = 0.05;
    double ramp_fraction = 0.35;  // ramps vs. end holds; 1.0 = pure triangle

    bool operator==(const ExperimentSection&) const = default;
};

struct BenchConfig {
    SimConfig sim{};
    PlantSection plant{};
    ActuatorSection actuator{};
    SensorsSection sensors{};
    ControllerSection controller{};
    ReferenceSpec reference{};
    ExperimentSection experiment{};

    bool operator==(const BenchConfig&) const = default;
};

struct ParseResult {
    std::optional<BenchConfig> config;
    std::vector<std::string> errors;

    [[nodiscard]] bool ok() const { return config.has_value() && errors.empty(); }
};

// Strict INI-style document: [section] headers, key = value, '#'/';' comments,
// unit-suffixed keys. Unknown keys are errors; all errors are collected, not just
// the first. A config naming experiment.preset starts from that preset's values.
ParseResult parse_config(const std::string& text);

// Canonical full-precision rendering; parse_config(render_config(c)) reproduces c.
std::string render_config(const BenchConfig& c);

// Built-in experiment presets.
std::vector<std::string> preset_names();
BenchConfig make_preset(const std::string& name);  // throws SimError on unknown name

// One compress-hold-release-rest cycle as a sampled position profile: raised-cosine
// ramps of width ramp_fraction * half_period on each flank, flat holds between.
ReferenceSpec make_compression_profile(double span_m, double frequency_hz,
                                       double ramp_fraction, double sample_dt_s = 0.005);

// Overrides one key ("section.key") on an already-resolved config. Used by sweeps.
// Returns an error message on failure, empty string on success.
std::string apply_override(BenchConfig& c, const std::string& dotted_key,
                           const std::string& value);

// Cross-field checks shared by parse and programmatic construction.
std::vector<std::string> validate_config(const BenchConfig& c);

// Display name matching the config-file syntax.
std::string protocol_name(Protocol p);

}  // namespace benchsim
