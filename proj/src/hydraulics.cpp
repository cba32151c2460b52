#include "benchsim/hydraulics.hpp"

#include <cmath>
#include <numbers>

#include "benchsim/state.hpp"

namespace benchsim {

namespace {
double signed_sqrt(double x) {
    return x >= 0.0 ? std::sqrt(x) : -std::sqrt(-x);
}
}  // namespace

double compression_volume_loss(const OilProperties& oil, double pressure_rise_pa) {
    return pressure_rise_pa / oil.bulk_modulus_pa;
}

double ServovalveParams::natural_frequency_radps() const {
    return 2.0 * std::numbers::pi * bandwidth_hz;
}

double ServovalveParams::flow_gain() const {
    return rated_flow_m3ps / std::sqrt(rated_drop_pa / 2.0);
}

ServovalveParams ServovalveParams::e024() {
    ServovalveParams v;
    v.bandwidth_hz = 250.0;
    return v;
}

ServovalveParams ServovalveParams::g761() {
    ServovalveParams v;
    v.bandwidth_hz = 450.0;
    return v;
}

double spool_accel(double spool_pos, double spool_vel, double command,
                   const ServovalveParams& v) {
    const double wn = v.natural_frequency_radps();
    return wn * wn * (command - spool_pos) - 2.0 * v.damping_ratio * wn * spool_vel;
}

ValveFlows orifice_flows(double spool_pos, const SupplyUnit& supply, double p_a_pa,
                         double p_b_pa, const ServovalveParams& valve) {
    if (!std::isfinite(p_a_pa) || !std::isfinite(p_b_pa)) {
        throw SimError("orifice_flows: non-finite chamber pressure");
    }
    const double kv = valve.flow_gain();
    const double ps = supply.supply_pressure_pa;
    const double pt = supply.tank_pressure_pa;

    ValveFlows out;
    if (spool_pos >= 0.0) {
        // P->A and B->T lands open.
        double q_sa = kv * spool_pos * signed_sqrt(ps - p_a_pa);
        const double q_bt = kv * spool_pos * signed_sqrt(p_b_pa - pt);
        const SupplyCheck chk = supply_flow_check(std::max(q_sa, 0.0), supply);
        if (chk.saturated) {
            q_sa *= chk.scale;
            out.supply_saturated = true;
        }
        out.q_a_m3ps = q_sa;
        out.q_b_m3ps = -q_bt;
        out.supply_draw_m3ps = std::max(q_sa, 0.0);
    } else {
        // P->B and A->T lands open.
        const double open = -spool_pos;
        double q_sb = kv * open * signed_sqrt(ps - p_b_pa);
        const double q_at = kv * open * signed_sqrt(p_a_pa - pt);
        const SupplyCheck chk = supply_flow_check(std::max(q_sb, 0.0), supply);
        if (chk.saturated) {
            q_sb *= chk.scale;
            out.supply_saturated = true;
        }
        out.q_b_m3ps = q_sb;
        out.q_a_m3ps = -q_at;
        out.supply_draw_m3ps = std::max(q_sb, 0.0);
    }
    const double leak = valve.leakage_coeff_m3ps_per_pa * (p_a_pa - p_b_pa);
    out.q_a_m3ps -= leak;
    out.q_b_m3ps += leak;
    return out;
}

double CylinderParams::cap_area_m2() const {
    const double r = bore_m / 2.0;
    return std::numbers::pi * r * r;
}

double CylinderParams::rod_side_area_m2() const {
    const double rb = bore_m / 2.0;
    const double rr = rod_m / 2.0;
    return std::numbers::pi * (rb * rb - rr * rr);
}

double CylinderParams::chamber_a_volume_m3(double piston_pos_m) const {
    return dead_volume_m3 + line_volume_m3 + cap_area_m2() * piston_pos_m;
}

double CylinderParams::chamber_b_volume_m3(double piston_pos_m) const {
    return dead_volume_m3 + line_volume_m3 + rod_side_area_m2() * (stroke_m - piston_pos_m);
}

double cylinder_force(double p_a_pa, double p_b_pa, const CylinderParams& cyl) {
    return p_a_pa * cyl.cap_area_m2() - p_b_pa * cyl.rod_side_area_m2();
}

double chamber_pressure_rate(double /*pressure_pa*/, double volume_m3, double net_inflow_m3ps,
                             double piston_velocity_term_m3ps, const OilProperties& oil) {
    if (!(volume_m3 > 0.0)) {
        throw SimError("chamber_pressure_rate: non-positive chamber volume");
    }
    return oil.bulk_modulus_pa / volume_m3 * (net_inflow_m3ps - piston_velocity_term_m3ps);
}

SupplyCheck supply_flow_check(double total_demand_m3ps, const SupplyUnit& supply) {
    SupplyCheck chk;
    if (total_demand_m3ps > supply.max_flow_m3ps) {
        chk.saturated = true;
        chk.scale = supply.max_flow_m3ps / total_demand_m3ps;
    }
    return chk;
}

}  // namespace benchsim
