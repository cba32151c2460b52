#pragma once

namespace benchsim {

struct OilProperties {
    double density_kg_per_m3 = 875.0;
    double kinematic_viscosity_m2ps = 4.6e-5;  // ISO VG 46 class at working temperature
    double bulk_modulus_pa = 1.34e9;

    bool operator==(const OilProperties&) const = default;
};

// Fractional volume lost by a trapped oil column under a pressure rise (linearized).
double compression_volume_loss(const OilProperties& oil, double pressure_rise_pa);

struct SupplyUnit {
    double supply_pressure_pa = 10.0e6;  // regulated operating point
    double tank_pressure_pa = 0.0;       // gauge
    double max_pressure_pa = 20.7e6;     // pump regulation ceiling
    double max_flow_m3ps = 1.67e-4;      // pump delivery limit

    bool operator==(const SupplyUnit&) const = default;
};

struct ServovalveParams {
    double bandwidth_hz = 250.0;   // -3 dB point of the spool response
    // sqrt(1/2) puts the -3 dB point of the 2nd-order spool model exactly at
    // omega_n = 2*pi*bandwidth; |H(j*omega_n)| = 1/(2*zeta).
    double damping_ratio = 0.70710678118654752;
    double rated_flow_m3ps = 1.25e-4;  // at rated_drop_pa across the whole valve
    double rated_drop_pa = 7.0e6;      // split equally over two lands
    double leakage_coeff_m3ps_per_pa = 0.0;  // linear cross-port leakage

    [[nodiscard]] double natural_frequency_radps() const;
    // Orifice gain per land: rated_flow / sqrt(rated_drop / 2).
    [[nodiscard]] double flow_gain() const;

    static ServovalveParams e024();  // 250 Hz class
    static ServovalveParams g761();  // 450 Hz class, catalog gives only bandwidth

    bool operator==(const ServovalveParams&) const = default;
};

// Second-order spool response to the normalized drive command (both dimensionless,
// clamped to [-1, 1] by the owning plant).
double spool_accel(double spool_pos, double spool_vel, double command, const ServovalveParams& v);

struct ValveFlows {
    double q_a_m3ps = 0.0;        // into chamber A
    double q_b_m3ps = 0.0;        // into chamber B
    double supply_draw_m3ps = 0.0;
    bool supply_saturated = false;
};

// Critically-centered 4-way metering with square-root orifice law. Flow drawn from
// the supply port is scaled down proportionally when it would exceed the pump limit.
ValveFlows orifice_flows(double spool_pos, const SupplyUnit& supply, double p_a_pa,
                         double p_b_pa, const ServovalveParams& valve);

struct CylinderParams {
    double bore_m = 0.016;
    double rod_m = 0.010;
    double stroke_m = 0.080;
    double dead_volume_m3 = 2e-6;  // per chamber
    double line_volume_m3 = 5e-6;  // hose/fitting volume per side

    [[nodiscard]] double cap_area_m2() const;
    [[nodiscard]] double rod_side_area_m2() const;
    // piston_pos measured from the fully retracted cap end, in [0, stroke].
    [[nodiscard]] double chamber_a_volume_m3(double piston_pos_m) const;
    [[nodiscard]] double chamber_b_volume_m3(double piston_pos_m) const;

    bool operator==(const CylinderParams&) const = default;
};

// Net piston force from the two chamber pressures acting on unequal areas.
double cylinder_force(double p_a_pa, double p_b_pa, const CylinderParams& cyl);

// Pressure build-up in one chamber: (beta/V) * (net inflow - swept volume rate).
double chamber_pressure_rate(double pressure_pa, double volume_m3, double net_inflow_m3ps,
                             double piston_velocity_term_m3ps, const OilProperties& oil);

struct SupplyCheck {
    bool saturated = false;
    double scale = 1.0;
};

// Ideal stiff supply up to max_flow; beyond it the valve inlet flow scales down.
SupplyCheck supply_flow_check(double total_demand_m3ps, const SupplyUnit& supply);

}  // namespace benchsim
