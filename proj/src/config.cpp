#include "benchsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "benchsim/csv.hpp"

namespace benchsim {

namespace {

// ---------------------------------------------------------------------------
// Value parsing

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double_str(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last && std::isfinite(out);
}

bool parse_int_str(const std::string& s, int& out) {
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(s.data(), last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

bool parse_u64_str(const std::string& s, std::uint64_t& out) {
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(s.data(), last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

bool parse_bool_str(const std::string& s, bool& out) {
    if (s == "true") {
        out = true;
        return true;
    }
    if (s == "false") {
        out = false;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Enum name tables

template <typename E>
using NameTable = std::vector<std::pair<const char*, E>>;

template <typename E>
std::string enum_to_name(const NameTable<E>& table, E v) {
    for (const auto& [name, val] : table) {
        if (val == v) {
            return name;
        }
    }
    return "?";
}

template <typename E>
std::string enum_choices(const NameTable<E>& table) {
    std::string out;
    for (const auto& [name, val] : table) {
        if (!out.empty()) {
            out += '|';
        }
        out += name;
    }
    return out;
}

const NameTable<ActuatorKind>& actuator_kind_table() {
    static const NameTable<ActuatorKind> t = {{"hydraulic", ActuatorKind::hydraulic},
                                              {"electric", ActuatorKind::electric},
                                              {"manual", ActuatorKind::manual}};
    return t;
}

const NameTable<ControllerKind>& controller_kind_table() {
    static const NameTable<ControllerKind> t = {{"pi", ControllerKind::pi},
                                                {"impedance-pi", ControllerKind::impedance_pi},
                                                {"constant", ControllerKind::constant},
                                                {"none", ControllerKind::none}};
    return t;
}

const NameTable<Protocol>& protocol_table() {
    static const NameTable<Protocol> t = {{"repeatability", Protocol::repeatability},
                                          {"blocked", Protocol::blocked},
                                          {"stiffness-id", Protocol::stiffness_id},
                                          {"generic", Protocol::generic}};
    return t;
}

const NameTable<SeedPolicy>& seed_policy_table() {
    static const NameTable<SeedPolicy> t = {{"fixed", SeedPolicy::fixed},
                                            {"per-run", SeedPolicy::per_run}};
    return t;
}

const NameTable<EnvironmentKind>& environment_table() {
    static const NameTable<EnvironmentKind> t = {{"free", EnvironmentKind::free_motion},
                                                 {"spring", EnvironmentKind::spring},
                                                 {"blockage", EnvironmentKind::blockage}};
    return t;
}

const NameTable<RefKind>& ref_kind_table() {
    static const NameTable<RefKind> t = {{"sine", RefKind::sine},
                                         {"step", RefKind::step},
                                         {"chirp", RefKind::chirp},
                                         {"profile", RefKind::profile}};
    return t;
}

// ---------------------------------------------------------------------------
// Key schema: one setter/getter pair per key, grouped per section in render order.

struct KeySpec {
    std::string name;
    std::function<std::string(BenchConfig&, const std::string&)> set;  // "" on success
    std::function<std::string(const BenchConfig&)> get;
    bool selector = false;  // applied before plain keys so overrides win
};

struct Range {
    double min = -1e308;
    double max = 1e308;
    bool min_exclusive = false;
};

constexpr Range kAny{};
constexpr Range kPositive{0.0, 1e308, true};
constexpr Range kNonNegative{0.0, 1e308, false};

using DoubleAcc = std::function<double&(BenchConfig&)>;

KeySpec key_double(std::string name, DoubleAcc acc, Range r = kAny) {
    KeySpec k;
    k.name = std::move(name);
    k.set = [acc, r](BenchConfig& c, const std::string& raw) -> std::string {
        double v = 0.0;
        if (!parse_double_str(raw, v)) {
            return "not a finite number: '" + raw + "'";
        }
        if (r.min_exclusive ? v <= r.min : v < r.min) {
            return r.min_exclusive ? "must be > " + format_double(r.min)
                                   : "must be >= " + format_double(r.min);
        }
        if (v > r.max) {
            return "must be <= " + format_double(r.max);
        }
        acc(c) = v;
        return "";
    };
    k.get = [acc](const BenchConfig& c) {
        return format_double(acc(const_cast<BenchConfig&>(c)));
    };
    return k;
}

KeySpec key_int(std::string name, std::function<int&(BenchConfig&)> acc, int min_v, int max_v) {
    KeySpec k;
    k.name = std::move(name);
    k.set = [acc, min_v, max_v](BenchConfig& c, const std::string& raw) -> std::string {
        int v = 0;
        if (!parse_int_str(raw, v)) {
            return "not an integer: '" + raw + "'";
        }
        if (v < min_v || v > max_v) {
            return "must be in [" + std::to_string(min_v) + ", " + std::to_string(max_v) + "]";
        }
        acc(c) = v;
        return "";
    };
    k.get = [acc](const BenchConfig& c) {
        return std::to_string(acc(const_cast<BenchConfig&>(c)));
    };
    return k;
}

KeySpec key_u64(std::string name, std::function<std::uint64_t&(BenchConfig&)> acc) {
    KeySpec k;
    k.name = std::move(name);
    k.set = [acc](BenchConfig& c, const std::string& raw) -> std::string {
        std::uint64_t v = 0;
        if (!parse_u64_str(raw, v)) {
            return "not an unsigned integer: '" + raw + "'";
        }
        acc(c) = v;
        return "";
    };
    k.get = [acc](const BenchConfig& c) {
        return std::to_string(acc(const_cast<BenchConfig&>(c)));
    };
    return k;
}

KeySpec key_bool(std::string name, std::function<bool&(BenchConfig&)> acc) {
    KeySpec k;
    k.name = std::move(name);
    k.set = [acc](BenchConfig& c, const std::string& raw) -> std::string {
        bool v = false;
        if (!parse_bool_str(raw, v)) {
            return "expected true|false, got '" + raw + "'";
        }
        acc(c) = v;
        return "";
    };
    k.get = [acc](const BenchConfig& c) {
        return acc(const_cast<BenchConfig&>(c)) ? "true" : "false";
    };
    return k;
}

template <typename E>
KeySpec key_enum(std::string name, const NameTable<E>& table,
                 std::function<E&(BenchConfig&)> acc) {
    KeySpec k;
    k.name = std::move(name);
    k.set = [&table, acc](BenchConfig& c, const std::string& raw) -> std::string {
        for (const auto& [nm, val] : table) {
            if (raw == nm) {
                acc(c) = val;
                return "";
            }
        }
        return "unknown value '" + raw + "' (expected " + enum_choices(table) + ")";
    };
    k.get = [&table, acc](const BenchConfig& c) {
        return enum_to_name(table, acc(const_cast<BenchConfig&>(c)));
    };
    return k;
}

KeySpec key_list(std::string name, std::function<std::vector<double>&(BenchConfig&)> acc) {
    KeySpec k;
    k.name = std::move(name);
    k.set = [acc](BenchConfig& c, const std::string& raw) -> std::string {
        std::vector<double> vals;
        std::size_t start = 0;
        while (start <= raw.size()) {
            std::size_t comma = raw.find(',', start);
            const std::string item =
                trim(comma == std::string::npos ? raw.substr(start)
                                                : raw.substr(start, comma - start));
            double v = 0.0;
            if (!parse_double_str(item, v)) {
                return "bad list element '" + item + "'";
            }
            vals.push_back(v);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        acc(c) = std::move(vals);
        return "";
    };
    k.get = [acc](const BenchConfig& c) {
        const auto& vals = acc(const_cast<BenchConfig&>(c));
        std::string out;
        for (double v : vals) {
            if (!out.empty()) {
                out += ',';
            }
            out += format_double(v);
        }
        return out;
    };
    return k;
}

// Named sub-model selector (valve/motor/cell/encoder/pressure). Applies the factory
// for a known name, leaves the current values alone for "custom".
KeySpec key_model_preset(std::string name, std::function<std::string&(BenchConfig&)> tag_acc,
                         std::vector<std::pair<std::string, std::function<void(BenchConfig&)>>>
                             factories) {
    KeySpec k;
    k.name = std::move(name);
    k.selector = true;
    k.set = [tag_acc, factories](BenchConfig& c, const std::string& raw) -> std::string {
        if (raw == "custom") {
            tag_acc(c) = raw;
            return "";
        }
        for (const auto& [nm, apply] : factories) {
            if (raw == nm) {
                apply(c);
                tag_acc(c) = raw;
                return "";
            }
        }
        std::string choices = "custom";
        for (const auto& [nm, apply] : factories) {
            choices += "|" + nm;
        }
        return "unknown value '" + raw + "' (expected " + choices + ")";
    };
    k.get = [tag_acc](const BenchConfig& c) {
        return tag_acc(const_cast<BenchConfig&>(c));
    };
    return k;
}

struct SectionSpec {
    std::string name;
    std::vector<KeySpec> keys;
};

const std::vector<SectionSpec>& config_schema() {
    static const std::vector<SectionSpec> schema = [] {
        std::vector<SectionSpec> s;

        {
            SectionSpec sec{"sim", {}};
            sec.keys.push_back(key_double(
                "dt_physics_s", [](BenchConfig& c) -> double& { return c.sim.dt_physics_s; },
                kPositive));
            sec.keys.push_back(key_double(
                "dt_control_s", [](BenchConfig& c) -> double& { return c.sim.dt_control_s; },
                kPositive));
            sec.keys.push_back(key_double(
                "duration_s", [](BenchConfig& c) -> double& { return c.sim.duration_s; },
                kPositive));
            sec.keys.push_back(key_u64(
                "seed", [](BenchConfig& c) -> std::uint64_t& { return c.sim.seed; }));
            s.push_back(std::move(sec));
        }

        {
            SectionSpec sec{"plant", {}};
            sec.keys.push_back(key_double(
                "car_mass_kg", [](BenchConfig& c) -> double& { return c.plant.car_mass_kg; },
                kPositive));
            sec.keys.push_back(key_double(
                "coulomb_n", [](BenchConfig& c) -> double& { return c.plant.coulomb_n; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "viscous_ns_per_m",
                [](BenchConfig& c) -> double& { return c.plant.viscous_ns_per_m; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "stiction_band_mps",
                [](BenchConfig& c) -> double& { return c.plant.stiction_band_mps; }, kPositive));
            sec.keys.push_back(key_bool(
                "friction_enabled",
                [](BenchConfig& c) -> bool& { return c.plant.friction_enabled; }));
            sec.keys.push_back(key_double(
                "travel_limit_m", [](BenchConfig& c) -> double& { return c.plant.travel_limit_m; },
                kPositive));
            sec.keys.push_back(key_bool(
                "end_stops", [](BenchConfig& c) -> bool& { return c.plant.end_stops; }));
            s.push_back(std::move(sec));
        }

        {
            SectionSpec sec{"actuator", {}};
            sec.keys.push_back(key_enum<ActuatorKind>(
                "kind", actuator_kind_table(),
                [](BenchConfig& c) -> ActuatorKind& { return c.actuator.kind; }));
            sec.keys.push_back(key_model_preset(
                "valve_preset",
                [](BenchConfig& c) -> std::string& { return c.actuator.valve_preset; },
                {{"E024", [](BenchConfig& c) { c.actuator.valve = ServovalveParams::e024(); }},
                 {"G761", [](BenchConfig& c) { c.actuator.valve = ServovalveParams::g761(); }}}));
            sec.keys.push_back(key_double(
                "valve_bandwidth_hz",
                [](BenchConfig& c) -> double& { return c.actuator.valve.bandwidth_hz; },
                kPositive));
            sec.keys.push_back(key_double(
                "valve_damping_ratio",
                [](BenchConfig& c) -> double& { return c.actuator.valve.damping_ratio; },
                Range{0.0, 4.0, true}));
            sec.keys.push_back(key_double(
                "valve_rated_flow_m3ps",
                [](BenchConfig& c) -> double& { return c.actuator.valve.rated_flow_m3ps; },
                kPositive));
            sec.keys.push_back(key_double(
                "valve_rated_drop_pa",
                [](BenchConfig& c) -> double& { return c.actuator.valve.rated_drop_pa; },
                kPositive));
            sec.keys.push_back(key_double(
                "valve_leakage_m3ps_per_pa",
                [](BenchConfig& c) -> double& {
                    return c.actuator.valve.leakage_coeff_m3ps_per_pa;
                },
                kNonNegative));
            sec.keys.push_back(key_double(
                "supply_pressure_pa",
                [](BenchConfig& c) -> double& { return c.actuator.supply.supply_pressure_pa; },
                kPositive));
            sec.keys.push_back(key_double(
                "tank_pressure_pa",
                [](BenchConfig& c) -> double& { return c.actuator.supply.tank_pressure_pa; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "max_flow_m3ps",
                [](BenchConfig& c) -> double& { return c.actuator.supply.max_flow_m3ps; },
                kPositive));
            sec.keys.push_back(key_double(
                "bore_m", [](BenchConfig& c) -> double& { return c.actuator.cylinder.bore_m; },
                kPositive));
            sec.keys.push_back(key_double(
                "rod_m", [](BenchConfig& c) -> double& { return c.actuator.cylinder.rod_m; },
                kPositive));
            sec.keys.push_back(key_double(
                "stroke_m", [](BenchConfig& c) -> double& { return c.actuator.cylinder.stroke_m; },
                kPositive));
            sec.keys.push_back(key_double(
                "dead_volume_m3",
                [](BenchConfig& c) -> double& { return c.actuator.cylinder.dead_volume_m3; },
                kPositive));
            sec.keys.push_back(key_double(
                "line_volume_m3",
                [](BenchConfig& c) -> double& { return c.actuator.cylinder.line_volume_m3; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "oil_density_kg_per_m3",
                [](BenchConfig& c) -> double& { return c.actuator.oil.density_kg_per_m3; },
                kPositive));
            sec.keys.push_back(key_double(
                "oil_viscosity_m2ps",
                [](BenchConfig& c) -> double& {
                    return c.actuator.oil.kinematic_viscosity_m2ps;
                },
                kPositive));
            sec.keys.push_back(key_double(
                "oil_bulk_modulus_pa",
                [](BenchConfig& c) -> double& { return c.actuator.oil.bulk_modulus_pa; },
                kPositive));
            sec.keys.push_back(key_model_preset(
                "motor_preset",
                [](BenchConfig& c) -> std::string& { return c.actuator.motor_preset; },
                {{"LinMot-P01",
                  [](BenchConfig& c) { c.actuator.motor = LinearMotorParams::linmot_p01(); }}}));
            sec.keys.push_back(key_double(
                "motor_max_force_n",
                [](BenchConfig& c) -> double& { return c.actuator.motor.max_force_n; },
                kPositive));
            sec.keys.push_back(key_double(
                "motor_stroke_m",
                [](BenchConfig& c) -> double& { return c.actuator.motor.max_stroke_m; },
                kPositive));
            sec.keys.push_back(key_double(
                "motor_time_constant_s",
                [](BenchConfig& c) -> double& { return c.actuator.motor.time_constant_s; },
                kPositive));
            sec.keys.push_back(key_double(
                "drive_stiffness_n_per_m",
                [](BenchConfig& c) -> double& { return c.actuator.drive_stiffness_n_per_m; },
                kPositive));
            sec.keys.push_back(key_double(
                "drive_damping_ns_per_m",
                [](BenchConfig& c) -> double& { return c.actuator.drive_damping_ns_per_m; },
                kNonNegative));
            s.push_back(std::move(sec));
        }

        {
            SectionSpec sec{"sensors", {}};
            sec.keys.push_back(key_model_preset(
                "loadcell_preset",
                [](BenchConfig& c) -> std::string& { return c.sensors.loadcell_preset; },
                {{"SMT1-250",
                  [](BenchConfig& c) { c.sensors.loadcell = LoadCellModel::smt1_250(); }},
                 {"Burster-8417",
                  [](BenchConfig& c) { c.sensors.loadcell = LoadCellModel::burster_8417(); }}}));
            sec.keys.push_back(key_double(
                "loadcell_range_n",
                [](BenchConfig& c) -> double& { return c.sensors.loadcell.range_n; }, kPositive));
            sec.keys.push_back(key_double(
                "loadcell_sensitivity_mv_per_v",
                [](BenchConfig& c) -> double& { return c.sensors.loadcell.sensitivity_mv_per_v; },
                kPositive));
            sec.keys.push_back(key_double(
                "loadcell_excitation_v",
                [](BenchConfig& c) -> double& { return c.sensors.loadcell.excitation_v; },
                kPositive));
            sec.keys.push_back(key_double(
                "loadcell_adc_fullscale_v",
                [](BenchConfig& c) -> double& { return c.sensors.loadcell.adc_fullscale_v; },
                kPositive));
            sec.keys.push_back(key_int(
                "loadcell_adc_bits",
                [](BenchConfig& c) -> int& { return c.sensors.loadcell.adc_bits; }, 0, 24));
            sec.keys.push_back(key_double(
                "loadcell_noise_std_n",
                [](BenchConfig& c) -> double& { return c.sensors.loadcell.noise_std_n; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "loadcell_axial_stiffness_n_per_m",
                [](BenchConfig& c) -> double& {
                    return c.sensors.loadcell.axial_stiffness_n_per_m;
                },
                kPositive));
            sec.keys.push_back(key_model_preset(
                "encoder_preset",
                [](BenchConfig& c) -> std::string& { return c.sensors.encoder_preset; },
                {{"RLS-LM10",
                  [](BenchConfig& c) { c.sensors.encoder = EncoderModel::rls_lm10(); }}}));
            sec.keys.push_back(key_double(
                "encoder_resolution_m",
                [](BenchConfig& c) -> double& { return c.sensors.encoder.resolution_m; },
                kNonNegative));
            sec.keys.push_back(key_model_preset(
                "pressure_preset",
                [](BenchConfig& c) -> std::string& { return c.sensors.pressure_preset; },
                {{"NAT-8251",
                  [](BenchConfig& c) { c.sensors.pressure = PressureSensorModel::nat_8251(); }}}));
            sec.keys.push_back(key_double(
                "pressure_range_pa",
                [](BenchConfig& c) -> double& { return c.sensors.pressure.max_pressure_pa; },
                kPositive));
            sec.keys.push_back(key_double(
                "pressure_accuracy_fraction",
                [](BenchConfig& c) -> double& { return c.sensors.pressure.accuracy_fraction; },
                Range{0.0, 0.2, false}));
            sec.keys.push_back(key_double(
                "pressure_noise_std_pa",
                [](BenchConfig& c) -> double& { return c.sensors.pressure.noise_std_pa; },
                kNonNegative));
            s.push_back(std::move(sec));
        }

        {
            SectionSpec sec{"controller", {}};
            sec.keys.push_back(key_enum<ControllerKind>(
                "kind", controller_kind_table(),
                [](BenchConfig& c) -> ControllerKind& { return c.controller.kind; }));
            sec.keys.push_back(key_double(
                "kp_v_per_n", [](BenchConfig& c) -> double& { return c.controller.kp_v_per_n; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "ki_v_per_ns", [](BenchConfig& c) -> double& { return c.controller.ki_v_per_ns; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "driver_span_v",
                [](BenchConfig& c) -> double& { return c.controller.driver_span_v; }, kPositive));
            sec.keys.push_back(key_bool(
                "anti_windup", [](BenchConfig& c) -> bool& { return c.controller.anti_windup; }));
            sec.keys.push_back(key_double(
                "impedance_stiffness_n_per_m",
                [](BenchConfig& c) -> double& {
                    return c.controller.impedance.stiffness_n_per_m;
                },
                kNonNegative));
            sec.keys.push_back(key_double(
                "impedance_damping_ns_per_m",
                [](BenchConfig& c) -> double& { return c.controller.impedance.damping_ns_per_m; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "constant_command",
                [](BenchConfig& c) -> double& { return c.controller.constant_command; },
                Range{-1.0, 1.0, false}));
            s.push_back(std::move(sec));
        }

        {
            SectionSpec sec{"reference", {}};
            sec.keys.push_back(key_enum<RefKind>(
                "kind", ref_kind_table(),
                [](BenchConfig& c) -> RefKind& { return c.reference.kind; }));
            sec.keys.push_back(key_double(
                "amplitude", [](BenchConfig& c) -> double& { return c.reference.amplitude; }));
            sec.keys.push_back(key_double(
                "frequency_hz", [](BenchConfig& c) -> double& { return c.reference.frequency_hz; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "offset", [](BenchConfig& c) -> double& { return c.reference.offset; }));
            sec.keys.push_back(key_double(
                "step_time_s", [](BenchConfig& c) -> double& { return c.reference.step_time_s; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "chirp_f0_hz", [](BenchConfig& c) -> double& { return c.reference.chirp_f0_hz; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "chirp_f1_hz", [](BenchConfig& c) -> double& { return c.reference.chirp_f1_hz; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "chirp_duration_s",
                [](BenchConfig& c) -> double& { return c.reference.chirp_duration_s; },
                kNonNegative));
            sec.keys.push_back(key_list(
                "profile_time_s",
                [](BenchConfig& c) -> std::vector<double>& { return c.reference.profile_time_s; }));
            sec.keys.push_back(key_list(
                "profile_value",
                [](BenchConfig& c) -> std::vector<double>& { return c.reference.profile_value; }));
            s.push_back(std::move(sec));
        }

        {
            SectionSpec sec{"experiment", {}};
            KeySpec preset_key;
            preset_key.name = "preset";
            preset_key.selector = true;
            // The preset itself is applied in a pre-pass; here the name is only
            // validated and recorded so later keys can override its values.
            preset_key.set = [](BenchConfig& c, const std::string& raw) -> std::string {
                if (raw == "custom") {
                    c.experiment.preset = raw;
                    return "";
                }
                const auto names = preset_names();
                if (std::find(names.begin(), names.end(), raw) == names.end()) {
                    std::string choices = "custom";
                    for (const auto& n : names) {
                        choices += "|" + n;
                    }
                    return "unknown value '" + raw + "' (expected " + choices + ")";
                }
                c.experiment.preset = raw;
                return "";
            };
            preset_key.get = [](const BenchConfig& c) { return c.experiment.preset; };
            sec.keys.push_back(std::move(preset_key));
            sec.keys.push_back(key_enum<Protocol>(
                "protocol", protocol_table(),
                [](BenchConfig& c) -> Protocol& { return c.experiment.protocol; }));
            sec.keys.push_back(key_int(
                "runs", [](BenchConfig& c) -> int& { return c.experiment.runs; }, 1, 10000));
            sec.keys.push_back(key_enum<SeedPolicy>(
                "seed_policy", seed_policy_table(),
                [](BenchConfig& c) -> SeedPolicy& { return c.experiment.seed_policy; }));
            sec.keys.push_back(key_enum<EnvironmentKind>(
                "environment", environment_table(),
                [](BenchConfig& c) -> EnvironmentKind& { return c.experiment.environment; }));
            sec.keys.push_back(key_double(
                "spring_stiffness_n_per_m",
                [](BenchConfig& c) -> double& { return c.experiment.spring_stiffness_n_per_m; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "spring_damping_ns_per_m",
                [](BenchConfig& c) -> double& { return c.experiment.spring_damping_ns_per_m; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "latch_stiffness_n_per_m",
                [](BenchConfig& c) -> double& { return c.experiment.latch_stiffness_n_per_m; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "latch_damping_ns_per_m",
                [](BenchConfig& c) -> double& { return c.experiment.latch_damping_ns_per_m; },
                kNonNegative));
            sec.keys.push_back(key_double(
                "compression_span_m",
                [](BenchConfig& c) -> double& { return c.experiment.compression_span_m; },
                kPositive));
            sec.keys.push_back(key_double(
                "compression_frequency_hz",
                [](BenchConfig& c) -> double& { return c.experiment.compression_frequency_hz; },
                kPositive));
            sec.keys.push_back(key_double(
                "ramp_fraction",
                [](BenchConfig& c) -> double& { return c.experiment.ramp_fraction; },
                Range{0.0, 1.0, true}));
            s.push_back(std::move(sec));
        }

        return s;
    }();
    return schema;
}

const SectionSpec* find_section(const std::string& name) {
    for (const auto& sec : config_schema()) {
        if (sec.name == name) {
            return &sec;
        }
    }
    return nullptr;
}

const KeySpec* find_key(const SectionSpec& sec, const std::string& key) {
    for (const auto& k : sec.keys) {
        if (k.name == key) {
            return &k;
        }
    }
    return nullptr;
}

// Fills in the sampled hand profile when a stiffness protocol asked for a profile
// reference but gave no samples.
void finalize_config(BenchConfig& c) {
    if (c.experiment.protocol == Protocol::stiffness_id && c.reference.kind == RefKind::profile &&
        c.reference.profile_time_s.empty()) {
        c.reference = make_compression_profile(c.experiment.compression_span_m,
                                               c.experiment.compression_frequency_hz,
                                               c.experiment.ramp_fraction);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Parse / render

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    auto& errors = result.errors;

    struct Entry {
        std::string section;
        std::string key;
        std::string value;
        int line = 0;
    };
    std::vector<Entry> entries;
    std::set<std::string> sections_seen;
    std::map<std::string, int> first_lines;

    std::string current;
    bool current_known = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                     : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') {
            continue;
        }
        if (stripped.front() == '[') {
            if (stripped.back() != ']' || stripped.size() < 3) {
                errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
                current_known = false;
                continue;
            }
            current = trim(stripped.substr(1, stripped.size() - 2));
            current_known = find_section(current) != nullptr;
            if (!current_known) {
                errors.push_back("line " + std::to_string(line_no) + ": unknown section [" +
                                 current + "]");
            } else {
                sections_seen.insert(current);
            }
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        if (current.empty()) {
            errors.push_back("line " + std::to_string(line_no) + ": key outside any [section]");
            continue;
        }
        if (!current_known) {
            continue;  // the section header itself was already reported
        }
        Entry e;
        e.section = current;
        e.key = trim(stripped.substr(0, eq));
        e.value = trim(stripped.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty()) {
            errors.push_back("line " + std::to_string(line_no) + ": empty key");
            continue;
        }
        const std::string dotted = e.section + "." + e.key;
        const auto [it, inserted] = first_lines.emplace(dotted, line_no);
        if (!inserted) {
            errors.push_back("line " + std::to_string(line_no) + ": duplicate key " + dotted +
                             " (first set at line " + std::to_string(it->second) + ")");
            continue;
        }
        entries.push_back(std::move(e));
    }

    // A named preset supplies every default; otherwise the document must be complete.
    std::string preset_name = "custom";
    int preset_line = 0;
    for (const auto& e : entries) {
        if (e.section == "experiment" && e.key == "preset") {
            preset_name = e.value;
            preset_line = e.line;
            break;
        }
    }

    BenchConfig cfg;
    bool preset_applied = false;
    if (preset_name != "custom") {
        try {
            cfg = make_preset(preset_name);
            preset_applied = true;
        } catch (const SimError&) {
            // Reported below by the preset key's own setter.
        }
    }

    if (!preset_applied) {
        for (const auto& sec : config_schema()) {
            if (!sections_seen.contains(sec.name)) {
                errors.push_back("missing required section [" + sec.name + "]");
            }
        }
        static const std::vector<std::pair<const char*, const char*>> required = {
            {"sim", "duration_s"},      {"actuator", "kind"}, {"controller", "kind"},
            {"reference", "kind"},      {"experiment", "protocol"}};
        for (const auto& [sec, key] : required) {
            if (sections_seen.contains(sec) &&
                !first_lines.contains(std::string(sec) + "." + key)) {
                errors.push_back("missing required key " + std::string(sec) + "." + key);
            }
        }
    }
    (void)preset_line;

    auto apply_entry = [&](const Entry& e) {
        const SectionSpec* sec = find_section(e.section);
        const KeySpec* key = sec ? find_key(*sec, e.key) : nullptr;
        if (key == nullptr) {
            errors.push_back("line " + std::to_string(e.line) + ": unknown key " + e.section +
                             "." + e.key);
            return;
        }
        const std::string msg = key->set(cfg, e.value);
        if (!msg.empty()) {
            errors.push_back("line " + std::to_string(e.line) + ": " + e.section + "." + e.key +
                             ": " + msg);
        }
    };
    // Model-preset selectors replace whole sub-structs, so they go first; explicit
    // keys then override individual fields regardless of their order in the file.
    for (const auto& e : entries) {
        const SectionSpec* sec = find_section(e.section);
        const KeySpec* key = sec ? find_key(*sec, e.key) : nullptr;
        if (key != nullptr && key->selector) {
            apply_entry(e);
        }
    }
    for (const auto& e : entries) {
        const SectionSpec* sec = find_section(e.section);
        const KeySpec* key = sec ? find_key(*sec, e.key) : nullptr;
        if (key == nullptr || !key->selector) {
            apply_entry(e);
        }
    }

    if (errors.empty()) {
        finalize_config(cfg);
        auto validation = validate_config(cfg);
        errors.insert(errors.end(), validation.begin(), validation.end());
    }
    if (errors.empty()) {
        result.config = std::move(cfg);
    }
    return result;
}

std::string render_config(const BenchConfig& c) {
    std::string out;
    for (const auto& sec : config_schema()) {
        out += "[" + sec.name + "]\n";
        for (const auto& key : sec.keys) {
            const std::string value = key.get(c);
            if (value.empty()) {
                continue;  // empty lists have no value syntax; defaults stay empty
            }
            out += key.name + " = " + value + "\n";
        }
        out += "\n";
    }
    return out;
}

std::string apply_override(BenchConfig& c, const std::string& dotted_key,
                           const std::string& value) {
    const std::size_t dot = dotted_key.find('.');
    if (dot == std::string::npos) {
        return "expected section.key, got '" + dotted_key + "'";
    }
    const std::string section = dotted_key.substr(0, dot);
    const std::string key = dotted_key.substr(dot + 1);
    const SectionSpec* sec = find_section(section);
    if (sec == nullptr) {
        return "unknown section '" + section + "'";
    }
    const KeySpec* spec = find_key(*sec, key);
    if (spec == nullptr) {
        return "unknown key " + dotted_key;
    }
    const std::string msg = spec->set(c, trim(value));
    if (!msg.empty()) {
        return dotted_key + ": " + msg;
    }
    return "";
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate_config(const BenchConfig& c) {
    std::vector<std::string> errors;
    auto err = [&errors](const std::string& m) { errors.push_back(m); };

    if (c.sim.dt_physics_s <= 0.0 || c.sim.dt_control_s <= 0.0) {
        err("sim time steps must be positive");
    } else {
        const double ratio = c.sim.dt_control_s / c.sim.dt_physics_s;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
            err("sim.dt_control_s = " + format_double(c.sim.dt_control_s) +
                " is not an integer multiple of sim.dt_physics_s = " +
                format_double(c.sim.dt_physics_s));
        }
    }
    if (c.sim.duration_s < c.sim.dt_control_s) {
        err("sim.duration_s must cover at least one control tick");
    }

    const SupplyUnit& sup = c.actuator.supply;
    if (sup.supply_pressure_pa > sup.max_pressure_pa) {
        err("actuator.supply_pressure_pa = " + format_double(sup.supply_pressure_pa) +
            " exceeds HPU limit " + format_double(sup.max_pressure_pa));
    }
    if (sup.tank_pressure_pa >= sup.supply_pressure_pa) {
        err("actuator.tank_pressure_pa must be below the supply pressure");
    }
    constexpr double kPumpDeliveryCap = 1.67e-4;  // m^3/s
    if (sup.max_flow_m3ps > kPumpDeliveryCap + 1e-12) {
        err("actuator.max_flow_m3ps = " + format_double(sup.max_flow_m3ps) +
            " exceeds pump delivery limit " + format_double(kPumpDeliveryCap));
    }
    if (c.actuator.cylinder.rod_m >= c.actuator.cylinder.bore_m) {
        err("actuator.rod_m must be smaller than actuator.bore_m");
    }

    if (c.actuator.kind == ActuatorKind::manual && c.controller.kind != ControllerKind::none) {
        err("a manual drive ignores the command channel; set controller.kind = none");
    }

    switch (c.reference.kind) {
        case RefKind::sine:
            if (c.reference.frequency_hz <= 0.0) {
                err("reference.frequency_hz must be > 0 for a sine reference");
            }
            break;
        case RefKind::chirp:
            if (c.reference.chirp_f0_hz <= 0.0 || c.reference.chirp_f1_hz <= 0.0) {
                err("reference chirp endpoints must be > 0");
            }
            if (c.reference.chirp_duration_s <= 0.0) {
                err("reference.chirp_duration_s must be > 0");
            }
            break;
        case RefKind::profile: {
            const auto& ts = c.reference.profile_time_s;
            const auto& vs = c.reference.profile_value;
            if (ts.size() != vs.size()) {
                err("reference.profile_time_s and reference.profile_value differ in length");
            }
            if (ts.size() < 2) {
                err("reference profile needs at least 2 samples");
            }
            for (std::size_t i = 1; i < ts.size(); ++i) {
                if (!(ts[i] > ts[i - 1])) {
                    err("reference.profile_time_s must be strictly increasing");
                    break;
                }
            }
            break;
        }
        case RefKind::step:
            break;
    }

    const auto& ex = c.experiment;
    if (ex.protocol == Protocol::repeatability && ex.runs < 2) {
        err("experiment.runs must be >= 2 for the repeatability protocol");
    }
    if (ex.environment == EnvironmentKind::blockage && ex.latch_stiffness_n_per_m <= 0.0) {
        err("experiment.latch_stiffness_n_per_m must be > 0 for a blocked environment");
    }
    if (ex.protocol == Protocol::blocked && ex.environment != EnvironmentKind::blockage) {
        err("the blocked protocol needs experiment.environment = blockage");
    }
    if (ex.protocol == Protocol::stiffness_id) {
        if (c.actuator.kind != ActuatorKind::manual) {
            err("stiffness identification drives the rig by hand; set actuator.kind = manual");
        }
        if (ex.environment != EnvironmentKind::spring) {
            err("stiffness identification needs experiment.environment = spring");
        }
        if (ex.compression_span_m >= c.plant.travel_limit_m) {
            err("experiment.compression_span_m exceeds the guide travel");
        }
    }
    return errors;
}

// ---------------------------------------------------------------------------
// Presets

std::string protocol_name(Protocol p) {
    return enum_to_name(protocol_table(), p);
}

std::vector<std::string> preset_names() {
    return {"electric-repeatability", "hydraulic-repeatability", "blocked", "stiffness-id"};
}

ReferenceSpec make_compression_profile(double span_m, double frequency_hz, double ramp_fraction,
                                       double sample_dt_s) {
    if (span_m <= 0.0 || frequency_hz <= 0.0 || ramp_fraction <= 0.0 || ramp_fraction > 1.0 ||
        sample_dt_s <= 0.0) {
        throw SimError("compression profile parameters out of range");
    }
    const double period = 1.0 / frequency_hz;
    const double half = period / 2.0;
    const double ramp = ramp_fraction * half;
    const auto n = static_cast<std::size_t>(std::llround(period / sample_dt_s));
    ReferenceSpec spec;
    spec.kind = RefKind::profile;
    spec.amplitude = span_m;
    spec.frequency_hz = frequency_hz;
    spec.profile_time_s.reserve(n + 1);
    spec.profile_value.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * sample_dt_s;
        double phase = std::fmod(t, period);
        double value = 0.0;
        if (phase < half) {
            const double s = std::min(1.0, phase / ramp);
            value = span_m * 0.5 * (1.0 - std::cos(std::numbers::pi * s));
        } else {
            const double s = std::min(1.0, (phase - half) / ramp);
            value = span_m * (1.0 - 0.5 * (1.0 - std::cos(std::numbers::pi * s)));
        }
        spec.profile_time_s.push_back(t);
        spec.profile_value.push_back(value);
    }
    return spec;
}

BenchConfig make_preset(const std::string& name) {
    BenchConfig c;
    c.experiment.preset = name;
    if (name == "electric-repeatability") {
        c.sim.duration_s = 5.0;
        c.actuator.kind = ActuatorKind::electric;
        c.controller.kind = ControllerKind::pi;
        c.controller.kp_v_per_n = 0.05;
        c.controller.ki_v_per_ns = 12.0;
        c.reference.kind = RefKind::sine;
        c.reference.amplitude = 75.0;
        c.reference.frequency_hz = 2.0;
        c.experiment.protocol = Protocol::repeatability;
        c.experiment.environment = EnvironmentKind::spring;
        return c;
    }
    if (name == "hydraulic-repeatability") {
        c.sim.duration_s = 20.0;
        c.actuator.kind = ActuatorKind::hydraulic;
        c.actuator.valve_preset = "E024";
        c.actuator.valve = ServovalveParams::e024();
        // Cross-port bypass restrictor; damps the oil-column mode that the stiff
        // chambers would otherwise leave almost undamped.
        c.actuator.valve.leakage_coeff_m3ps_per_pa = 5e-12;
        c.sensors.loadcell_preset = "Burster-8417";
        c.sensors.loadcell = LoadCellModel::burster_8417();
        c.controller.kind = ControllerKind::pi;
        c.controller.kp_v_per_n = 6e-4;
        c.controller.ki_v_per_ns = 0.025;
        c.reference.kind = RefKind::sine;
        c.reference.amplitude = 50.0;
        c.reference.frequency_hz = 0.1;
        c.experiment.protocol = Protocol::repeatability;
        c.experiment.environment = EnvironmentKind::spring;
        return c;
    }
    if (name == "blocked") {
        c.sim.duration_s = 60.0;
        c.actuator.kind = ActuatorKind::electric;
        c.controller.kind = ControllerKind::pi;
        c.controller.kp_v_per_n = 0.05;
        c.controller.ki_v_per_ns = 12.0;
        c.reference.kind = RefKind::step;
        c.reference.amplitude = 255.0;
        c.reference.step_time_s = 1.0;
        c.experiment.protocol = Protocol::blocked;
        c.experiment.environment = EnvironmentKind::blockage;
        // Clamped fixture: near-critical damping so the force step does not ring.
        c.experiment.latch_damping_ns_per_m = 8000.0;
        return c;
    }
    if (name == "stiffness-id") {
        c.sim.duration_s = 20.0;
        c.actuator.kind = ActuatorKind::manual;
        c.controller.kind = ControllerKind::none;
        c.experiment.protocol = Protocol::stiffness_id;
        c.experiment.environment = EnvironmentKind::spring;
        c.reference = make_compression_profile(c.experiment.compression_span_m,
                                               c.experiment.compression_frequency_hz,
                                               c.experiment.ramp_fraction);
        return c;
    }
    std::string choices;
    for (const auto& n : preset_names()) {
        if (!choices.empty()) {
            choices += ", ";
        }
        choices += n;
    }
    throw SimError("unknown preset '" + name + "' (available: " + choices + ")");
}

}  // namespace benchsim
