#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "benchsim/experiments.hpp"
#include "benchsim/hydraulics.hpp"
#include "benchsim/integrate.hpp"
#include "doctest.h"

using namespace benchsim;

TEST_CASE("valve flow gain per land") {
    ServovalveParams v;  // 1.25e-4 m^3/s at 7 MPa total, split over two lands
    CHECK(v.flow_gain() == doctest::Approx(6.6815e-8).epsilon(1e-4));
}

TEST_CASE("orifice flows reproduce the rated point") {
    ServovalveParams v;
    SupplyUnit supply;
    supply.supply_pressure_pa = 7e6;
    supply.tank_pressure_pa = 0.0;
    const ValveFlows f = orifice_flows(1.0, supply, 3.5e6, 3.5e6, v);
    CHECK(f.q_a_m3ps == doctest::Approx(1.25e-4).epsilon(1e-3));
    CHECK(f.q_b_m3ps == doctest::Approx(-1.25e-4).epsilon(1e-3));
    CHECK_FALSE(f.supply_saturated);
}

TEST_CASE("orifice flow scales with spool opening and respects sign") {
    ServovalveParams v;
    SupplyUnit supply;
    supply.supply_pressure_pa = 7e6;
    const ValveFlows half = orifice_flows(0.5, supply, 3.5e6, 3.5e6, v);
    CHECK(half.q_a_m3ps == doctest::Approx(0.625e-4).epsilon(1e-3));
    const ValveFlows neg = orifice_flows(-1.0, supply, 3.5e6, 3.5e6, v);
    CHECK(neg.q_b_m3ps == doctest::Approx(1.25e-4).epsilon(1e-3));
    CHECK(neg.q_a_m3ps == doctest::Approx(-1.25e-4).epsilon(1e-3));
}

TEST_CASE("supply flow beyond the pump limit is scaled down") {
    ServovalveParams v;
    SupplyUnit supply;  // 10 MPa supply, 1.67e-4 m^3/s cap
    // Full opening into an empty chamber asks for ~2.11e-4 m^3/s.
    const ValveFlows f = orifice_flows(1.0, supply, 0.0, 5e6, v);
    CHECK(f.supply_saturated);
    CHECK(f.q_a_m3ps == doctest::Approx(1.67e-4).epsilon(1e-6));
    CHECK(f.supply_draw_m3ps == doctest::Approx(1.67e-4).epsilon(1e-6));
}

TEST_CASE("cross-port leakage moves flow from the high side to the low side") {
    ServovalveParams v;
    v.leakage_coeff_m3ps_per_pa = 5e-12;
    SupplyUnit supply;
    const ValveFlows f = orifice_flows(0.0, supply, 6e6, 2e6, v);
    CHECK(f.q_a_m3ps == doctest::Approx(-2e-5).epsilon(1e-9));
    CHECK(f.q_b_m3ps == doctest::Approx(2e-5).epsilon(1e-9));
}

TEST_CASE("asymmetric cylinder areas and force") {
    CylinderParams cyl;  // 16 mm bore, 10 mm rod
    CHECK(cyl.cap_area_m2() == doctest::Approx(2.0106e-4).epsilon(1e-4));
    CHECK(cyl.rod_side_area_m2() == doctest::Approx(1.2252e-4).epsilon(1e-4));
    CHECK(cylinder_force(10e6, 0.0, cyl) == doctest::Approx(2010.6).epsilon(1e-4));
    CHECK(cylinder_force(0.0, 10e6, cyl) == doctest::Approx(-1225.2).epsilon(1e-4));
    CHECK(cylinder_force(10e6, 10e6, cyl) ==
          doctest::Approx(10e6 * (cyl.cap_area_m2() - cyl.rod_side_area_m2())));
}

TEST_CASE("chamber volumes track the piston and never vanish") {
    CylinderParams cyl;
    CHECK(cyl.chamber_a_volume_m3(0.0) == doctest::Approx(7e-6));
    CHECK(cyl.chamber_a_volume_m3(0.04) ==
          doctest::Approx(7e-6 + cyl.cap_area_m2() * 0.04));
    CHECK(cyl.chamber_b_volume_m3(0.08) == doctest::Approx(7e-6));
    CHECK(cyl.chamber_b_volume_m3(0.0) ==
          doctest::Approx(7e-6 + cyl.rod_side_area_m2() * 0.08));
}

TEST_CASE("chamber pressure rate follows the continuity equation") {
    OilProperties oil;  // 1.34 GPa bulk modulus
    CHECK(chamber_pressure_rate(5e6, 2e-5, 1e-6, 0.0, oil) == doctest::Approx(6.7e7));
    CHECK(chamber_pressure_rate(5e6, 2e-5, 1e-6, 1e-6, oil) == doctest::Approx(0.0));
    CHECK(chamber_pressure_rate(5e6, 4e-5, 1e-6, 0.0, oil) == doctest::Approx(3.35e7));
}

TEST_CASE("trapped column loses 0.75 percent volume under 10 MPa") {
    OilProperties oil;
    const double loss = compression_volume_loss(oil, 10e6);
    CHECK(loss == doctest::Approx(10e6 / 1.34e9).epsilon(1e-12));
    CHECK(loss > 0.0074);
    CHECK(loss < 0.0076);
}

TEST_CASE("supply flow check passes small demand and scales large demand") {
    SupplyUnit supply;
    const SupplyCheck ok = supply_flow_check(1e-4, supply);
    CHECK_FALSE(ok.saturated);
    CHECK(ok.scale == 1.0);
    const SupplyCheck sat = supply_flow_check(3.34e-4, supply);
    CHECK(sat.saturated);
    CHECK(sat.scale == doctest::Approx(0.5));
}

TEST_CASE("spool dynamics are odd symmetric") {
    ServovalveParams v;
    CHECK(spool_accel(0.3, -2.0, 0.7, v) == doctest::Approx(-spool_accel(-0.3, 2.0, -0.7, v)));
}

namespace {

// Integrates the spool alone under a sinusoidal command and fits the settled response.
double spool_gain_at(const ServovalveParams& v, double freq_hz) {
    DerivFn f = [&v, freq_hz](double t, std::span<const double> y, std::span<double> d) {
        const double u = std::sin(2.0 * std::numbers::pi * freq_hz * t);
        d[0] = y[1];
        d[1] = spool_accel(y[0], y[1], u, v);
    };
    std::vector<double> y = {0.0, 0.0};
    std::vector<double> scratch(10);
    const double dt = 2e-6;
    const double duration = 0.1;
    const int steps = static_cast<int>(std::llround(duration / dt));
    std::vector<double> ts, xs;
    double t = 0.0;
    for (int i = 0; i < steps; ++i) {
        rk4_step(f, t, dt, y, scratch);
        t += dt;
        if (t >= 0.05 && i % 10 == 0) {
            ts.push_back(t);
            xs.push_back(y[0]);
        }
    }
    return fit_sine(ts, xs, freq_hz).amplitude;
}

}  // namespace

TEST_CASE("spool response is 3 dB down at the catalog bandwidth") {
    const double g250 = spool_gain_at(ServovalveParams::e024(), 250.0);
    CHECK(20.0 * std::log10(g250) == doctest::Approx(-3.01).epsilon(0.15));
    const double g450 = spool_gain_at(ServovalveParams::g761(), 450.0);
    CHECK(20.0 * std::log10(g450) == doctest::Approx(-3.01).epsilon(0.15));
}

TEST_CASE("spool settles to a step command") {
    ServovalveParams v;
    DerivFn f = [&v](double, std::span<const double> y, std::span<double> d) {
        d[0] = y[1];
        d[1] = spool_accel(y[0], y[1], 1.0, v);
    };
    std::vector<double> y = {0.0, 0.0};
    std::vector<double> scratch(10);
    const double wn = v.natural_frequency_radps();
    const double settle = 10.0 / (v.damping_ratio * wn);
    const double dt = 1e-6;
    const int steps = static_cast<int>(std::llround(settle / dt));
    double t = 0.0;
    for (int i = 0; i < steps; ++i) {
        rk4_step(f, t, dt, y, scratch);
        t += dt;
    }
    CHECK(std::abs(y[0] - 1.0) < 1e-3);
}
