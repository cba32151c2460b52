#include <cmath>
#include <cstdint>

#include "benchsim/electric.hpp"
#include "benchsim/sensors.hpp"
#include "doctest.h"

using namespace benchsim;

TEST_CASE("motor force lags the commanded target first order") {
    LinearMotorParams m;  // 255 N peak, 2 ms lag
    CHECK(motor_force_rate(0.0, 1.0, m) == doctest::Approx(127500.0));
    CHECK(motor_force_rate(255.0, 1.0, m) == doctest::Approx(0.0));
    CHECK(motor_force_rate(127.5, 0.5, m) == doctest::Approx(0.0));
    CHECK(motor_force_rate(0.0, -1.0, m) == doctest::Approx(-127500.0));
}

TEST_CASE("usable motor stroke is centered on the working origin") {
    LinearMotorParams m;  // 120 mm stroke
    CHECK_FALSE(stroke_exceeded(0.059, m));
    CHECK(stroke_exceeded(0.061, m));
    CHECK(stroke_exceeded(-0.061, m));
}

TEST_CASE("encoder truncates toward minus infinity on its grid") {
    EncoderModel e;  // 1 um
    CHECK(encoder_read(1.4e-6, e) == doctest::Approx(1e-6));
    CHECK(encoder_read(-0.3e-6, e) == doctest::Approx(-1e-6));
    CHECK(encoder_read(0.0, e) == 0.0);
    // Quantization is idempotent.
    const double q = encoder_read(3.77e-5, e);
    CHECK(encoder_read(q, e) == q);
    // Zero resolution disables it.
    e.resolution_m = 0.0;
    CHECK(encoder_read(1.2345e-7, e) == 1.2345e-7);
}

TEST_CASE("bridge amplifier maps the cell range onto the acquisition span") {
    const LoadCellModel m = LoadCellModel::smt1_250();
    // 2 mV/V at 10 V excitation is a 20 mV bridge at full scale.
    CHECK(m.sensitivity_mv_per_v * 1e-3 * m.excitation_v == doctest::Approx(0.02));
    CHECK(m.amplifier_gain() == doctest::Approx(82.5));
}

TEST_CASE("load cell clips at its range and flags it") {
    LoadCellModel m = LoadCellModel::smt1_250();
    m.noise_std_n = 0.0;
    m.adc_bits = 0;
    Rng rng(1);
    const LoadCellReading over = loadcell_read(300.0, m, rng);
    CHECK(over.clipped);
    CHECK(over.force_n == doctest::Approx(250.0));
    const LoadCellReading under = loadcell_read(-300.0, m, rng);
    CHECK(under.clipped);
    CHECK(under.force_n == doctest::Approx(-250.0));
    const LoadCellReading in = loadcell_read(100.0, m, rng);
    CHECK_FALSE(in.clipped);
}

TEST_CASE("ideal chain returns the applied force exactly") {
    LoadCellModel m = LoadCellModel::smt1_250();
    m.noise_std_n = 0.0;
    m.adc_bits = 0;
    Rng rng(1);
    CHECK(loadcell_read(123.456, m, rng).force_n == doctest::Approx(123.456).epsilon(1e-12));
    CHECK(loadcell_read(-37.2, m, rng).force_n == doctest::Approx(-37.2).epsilon(1e-12));
}

TEST_CASE("quantization error stays below one code step") {
    LoadCellModel m = LoadCellModel::smt1_250();
    m.noise_std_n = 0.0;
    const double lsb = 2.0 * m.range_n / 4096.0;  // 12 bits over +/-250 N
    Rng rng(1);
    for (int i = 0; i <= 1000; ++i) {
        const double f = -250.0 + 0.5 * i;
        const double err = std::abs(loadcell_read(f, m, rng).force_n - f);
        CHECK(err <= 0.5 * lsb + 1e-12);
    }
}

TEST_CASE("high capacity cell acquires at sixteen bits") {
    const LoadCellModel m = LoadCellModel::burster_8417();
    CHECK(m.range_n == 5000.0);
    CHECK(m.adc_bits == 16);
    CHECK(m.sensitivity_mv_per_v == doctest::Approx(1.0));
    // Code step stays near the 250 N cell's despite twenty times the range.
    CHECK(2.0 * m.range_n / 65536.0 == doctest::Approx(0.1526).epsilon(1e-3));
}

TEST_CASE("measured force error is bounded by quantization plus noise tails") {
    LoadCellModel m = LoadCellModel::smt1_250();
    Rng rng(7);
    const double lsb = 2.0 * m.range_n / 4096.0;
    const double bound = 0.5 * lsb + 6.0 * m.noise_std_n;
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double f = 200.0 * std::sin(0.001 * i);
        worst = std::max(worst, std::abs(loadcell_read(f, m, rng).force_n - f));
    }
    CHECK(worst < bound);
    CHECK(worst > 0.0);
}

TEST_CASE("pressure offset draw respects the accuracy bound") {
    const PressureSensorModel m;  // 0.5 percent of 25 MPa
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double off = pressure_offset_draw(m, rng);
        CHECK(std::abs(off) <= 0.005 * 25e6);
    }
}

TEST_CASE("pressure reading adds its systematic offset and clips at the ends") {
    PressureSensorModel m;
    m.noise_std_pa = 0.0;
    Rng rng(1);
    CHECK(pressure_read(5e6, 1e4, m, rng).pressure_pa == doctest::Approx(5.01e6));
    const PressureReading high = pressure_read(26e6, 0.0, m, rng);
    CHECK(high.clipped);
    CHECK(high.pressure_pa == doctest::Approx(25e6));
    const PressureReading low = pressure_read(-1e5, 0.0, m, rng);
    CHECK(low.clipped);
    CHECK(low.pressure_pa == doctest::Approx(0.0));
}

TEST_CASE("sensor suite wires force position and optional pressures") {
    SensorSuite suite;
    suite.loadcell.noise_std_n = 0.0;
    suite.loadcell.adc_bits = 0;
    suite.encoder.resolution_m = 0.0;
    suite.has_pressure = false;
    Rng rng(1);
    suite.begin_run(rng);
    PlantOutputs out;
    out.force_n = 42.0;
    out.position_m = 0.012;
    out.p_a_pa = 5e6;
    out.has_pressures = true;
    const Measurements meas = suite.sample(out, rng);
    CHECK(meas.force_n == doctest::Approx(42.0));
    CHECK(meas.position_m == doctest::Approx(0.012));
    CHECK(meas.p_a_pa == 0.0);  // no pressure sensors fitted
}
