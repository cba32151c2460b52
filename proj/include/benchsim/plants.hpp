#pragma once

#include "benchsim/control.hpp"
#include "benchsim/electric.hpp"
#include "benchsim/hydraulics.hpp"
#include "benchsim/integrate.hpp"
#include "benchsim/mechanics.hpp"

namespace benchsim {

enum class EnvironmentKind { free_motion, spring, blockage };

// What the driven car works against. The load cell sits in the drive path between
// actuator and car, so the measured force is the drive force, not this reaction.
struct EnvironmentSpec {
    EnvironmentKind kind = EnvironmentKind::spring;
    SpringDamper spring{6000.0, 0.0};   // car to ground
    SpringDamper latch{1.7e6, 2000.0};  // blocked load path (cell-dominated stiffness)

    bool operator==(const EnvironmentSpec&) const = default;
};

// Environment reaction on the car (negative when the environment pushes back).
double environment_force(const EnvironmentSpec& env, double position_m, double velocity_mps);

// Servovalve + asymmetric cylinder driving one car.
// State: [spool_pos, spool_vel, p_a, p_b, car_pos, car_vel]; car_pos 0 = piston mid-stroke.
class HydraulicBenchPlant : public Plant {
public:
    SupplyUnit supply{};
    ServovalveParams valve{};
    CylinderParams cylinder{};
    OilProperties oil{};
    CarBody car{};
    EnvironmentSpec env{};

    HydraulicBenchPlant();
    [[nodiscard]] const StateSchema& schema() const override { return schema_; }
    [[nodiscard]] std::vector<double> initial_state() const override;
    void derivative(double t, std::span<const double> y, double command,
                    std::span<double> dydt) const override;
    void post_step(double t, std::span<double> y, std::uint32_t& step_flags) const override;
    [[nodiscard]] PlantOutputs outputs(double t, std::span<const double> y) const override;
    void check_limits(std::span<const double> y) const override;

private:
    [[nodiscard]] double applied_force(std::span<const double> y) const;
    StateSchema schema_;
};

// Linear motor driving one car. State: [motor_force, car_pos, car_vel].
class ElectricBenchPlant : public Plant {
public:
    LinearMotorParams motor{};
    CarBody car{};
    EnvironmentSpec env{};

    ElectricBenchPlant();
    [[nodiscard]] const StateSchema& schema() const override { return schema_; }
    [[nodiscard]] std::vector<double> initial_state() const override;
    void derivative(double t, std::span<const double> y, double command,
                    std::span<double> dydt) const override;
    void post_step(double t, std::span<double> y, std::uint32_t& step_flags) const override;
    [[nodiscard]] PlantOutputs outputs(double t, std::span<const double> y) const override;
    void check_limits(std::span<const double> y) const override;

private:
    [[nodiscard]] double applied_force(std::span<const double> y) const;
    StateSchema schema_;
};

// Hand-driven rig: a kinematic position source follows the hand profile and pushes the
// car through the load cell (drive spring) while the car works against the environment.
// The cell sits in the drive path, so the measured force is the drive force.
// State: [car_pos, car_vel]; the drive command is ignored.
class ManualRigPlant : public Plant {
public:
    CarBody car{};
    EnvironmentSpec env{};
    SpringDamper drive{1.7e6, 1500.0};  // cell stiffness + hand/coupling damping
    ReferenceSpec hand{};               // position profile of the hand

    ManualRigPlant();
    [[nodiscard]] const StateSchema& schema() const override { return schema_; }
    [[nodiscard]] std::vector<double> initial_state() const override;
    void derivative(double t, std::span<const double> y, double command,
                    std::span<double> dydt) const override;
    void post_step(double t, std::span<double> y, std::uint32_t& step_flags) const override;
    [[nodiscard]] PlantOutputs outputs(double t, std::span<const double> y) const override;
    void check_limits(std::span<const double> y) const override;

private:
    [[nodiscard]] double applied_force(double t, std::span<const double> y) const;
    StateSchema schema_;
};

}  // namespace benchsim
