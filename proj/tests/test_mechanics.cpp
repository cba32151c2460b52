#include <cmath>
#include <vector>

#include "benchsim/friction.hpp"
#include "benchsim/mechanics.hpp"
#include "benchsim/plants.hpp"
#include "doctest.h"

using namespace benchsim;

TEST_CASE("sliding friction opposes motion with coulomb plus viscous parts") {
    FrictionParams p;
    p.coulomb_n = 10.0;
    p.viscous_ns_per_m = 40.0;
    CHECK(friction_force(0.05, 0.0, p) == doctest::Approx(-12.0).epsilon(1e-12));
    CHECK(friction_force(-0.05, 0.0, p) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("stuck friction cancels the applied force up to breakaway") {
    FrictionParams p;
    p.coulomb_n = 5.0;
    p.viscous_ns_per_m = 40.0;
    // Below breakaway the net force on a stuck car is zero.
    CHECK(friction_force(0.0, 4.0, p) == doctest::Approx(-4.0));
    CHECK(friction_force(0.0, -4.0, p) == doctest::Approx(4.0));
    // Past breakaway the resistance tops out at the coulomb level.
    CHECK(friction_force(0.0, 8.0, p) == doctest::Approx(-5.0));
    CHECK(friction_force(0.0, -8.0, p) == doctest::Approx(5.0));
    // Anywhere inside the stiction band counts as stuck.
    CHECK(friction_force(5e-5, -3.0, p) == doctest::Approx(3.0));
}

TEST_CASE("disabled friction contributes nothing") {
    FrictionParams p;
    p.enabled = false;
    CHECK(friction_force(0.5, 100.0, p) == 0.0);
    CHECK(friction_force(0.0, 100.0, p) == 0.0);
}

TEST_CASE("spring damper restoring force") {
    SpringDamper s{6000.0, 0.0};
    CHECK(spring_damper_force(s, 0.01, 0.0) == doctest::Approx(-60.0));
    s.damping_ns_per_m = 100.0;
    CHECK(spring_damper_force(s, 0.01, 0.1) == doctest::Approx(-70.0));
    CHECK(spring_damper_force(s, -0.01, 0.0) == doctest::Approx(60.0));
}

TEST_CASE("end stops push back but never pull") {
    CHECK(end_stop_force(0.05, 0.0, 0.1) == 0.0);
    CHECK(end_stop_force(0.101, 0.0, 0.1) == doctest::Approx(-1e4).epsilon(1e-9));
    CHECK(end_stop_force(-0.101, 0.0, 0.1) == doctest::Approx(1e4).epsilon(1e-9));
    // A car springing back off the stop must not be held by it.
    CHECK(end_stop_force(0.101, -10.0, 0.1) == 0.0);
    CHECK(end_stop_force(-0.101, 10.0, 0.1) == 0.0);
}

TEST_CASE("environment reaction by kind") {
    EnvironmentSpec env;
    env.kind = EnvironmentKind::free_motion;
    CHECK(environment_force(env, 0.01, 0.1) == 0.0);

    env.kind = EnvironmentKind::spring;
    env.spring = {6000.0, 0.0};
    CHECK(environment_force(env, 0.01, 0.0) == doctest::Approx(-60.0));

    env.kind = EnvironmentKind::blockage;
    env.latch = {1.7e6, 2000.0};
    CHECK(environment_force(env, 1e-4, 0.0) == doctest::Approx(-170.0));
    CHECK(environment_force(env, 1e-4, 0.01) == doctest::Approx(-190.0));
}

TEST_CASE("leaving the guide travel without end stops aborts the run") {
    ElectricBenchPlant plant;
    plant.car.travel_limit_m = 0.10;
    plant.car.end_stops = false;
    std::vector<double> y = {0.0, 0.11, 0.0};  // motor force, position, velocity
    CHECK_THROWS_AS(plant.check_limits(y), SimError);

    plant.car.end_stops = true;
    CHECK_NOTHROW(plant.check_limits(y));
    const PlantOutputs out = plant.outputs(0.0, y);
    CHECK((out.flags & flag::travel_limit) != 0);
}

TEST_CASE("inside the travel no limit flag is raised") {
    ElectricBenchPlant plant;
    std::vector<double> y = {0.0, 0.05, 0.0};
    CHECK_NOTHROW(plant.check_limits(y));
    const PlantOutputs out = plant.outputs(0.0, y);
    CHECK((out.flags & flag::travel_limit) == 0);
}
