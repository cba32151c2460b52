#include "benchsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "benchsim/csv.hpp"

namespace benchsim {

RegressionResult linear_regression(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw SimError("linear_regression: input lengths differ");
    }
    if (xs.size() < 3) {
        throw SimError("linear_regression: need at least 3 points");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0) {
        throw SimError("linear_regression: zero variance in x");
    }
    RegressionResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.correlation_r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
    return r;
}

SineFit fit_sine(std::span<const double> time_s, std::span<const double> values,
                 double frequency_hz) {
    if (time_s.size() != values.size() || time_s.size() < 3) {
        throw SimError("fit_sine: need >= 3 aligned samples");
    }
    if (!(frequency_hz > 0.0)) {
        throw SimError("fit_sine: frequency must be > 0");
    }
    const double w = 2.0 * std::numbers::pi * frequency_hz;
    // Normal equations for y ~ a*sin(wt) + b*cos(wt) + c.
    double ss = 0, sc = 0, cc = 0, s1 = 0, c1 = 0, sy = 0, cy = 0, y1 = 0;
    const double n = static_cast<double>(time_s.size());
    for (std::size_t i = 0; i < time_s.size(); ++i) {
        const double s = std::sin(w * time_s[i]);
        const double c = std::cos(w * time_s[i]);
        const double y = values[i];
        ss += s * s;
        sc += s * c;
        cc += c * c;
        s1 += s;
        c1 += c;
        sy += s * y;
        cy += c * y;
        y1 += y;
    }
    // Solve the 3x3 symmetric system by Cramer's rule.
    const double a11 = ss, a12 = sc, a13 = s1;
    const double a22 = cc, a23 = c1, a33 = n;
    const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    if (std::abs(det) < 1e-12) {
        throw SimError("fit_sine: degenerate sample set");
    }
    const double da = sy * (a22 * a33 - a23 * a23) - a12 * (cy * a33 - a23 * y1) +
                      a13 * (cy * a23 - a22 * y1);
    const double db = a11 * (cy * a33 - a23 * y1) - sy * (a12 * a33 - a23 * a13) +
                      a13 * (a12 * y1 - cy * a13);
    const double dc = a11 * (a22 * y1 - cy * a23) - a12 * (a12 * y1 - cy * a13) +
                      sy * (a12 * a23 - a22 * a13);
    const double a = da / det;
    const double b = db / det;
    SineFit fit;
    fit.amplitude = std::hypot(a, b);
    fit.phase_rad = std::atan2(b, a);
    fit.offset = dc / det;
    return fit;
}

ChannelStats pointwise_stats(const std::vector<const std::vector<double>*>& runs) {
    ChannelStats st;
    if (runs.empty()) {
        return st;
    }
    const std::size_t len = runs.front()->size();
    for (const auto* r : runs) {
        if (r->size() != len) {
            throw SimError("pointwise_stats: runs are not aligned");
        }
    }
    const double n = static_cast<double>(runs.size());
    st.mean.resize(len);
    st.stddev.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        double m = 0.0;
        for (const auto* r : runs) m += (*r)[i];
        m /= n;
        double var = 0.0;
        for (const auto* r : runs) {
            const double d = (*r)[i] - m;
            var += d * d;
        }
        st.mean[i] = m;
        st.stddev[i] = runs.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    }
    return st;
}

std::uint64_t run_seed(const BenchConfig& c, int run_index) {
    if (c.experiment.seed_policy == SeedPolicy::fixed) {
        return c.sim.seed;
    }
    // Distinct, reproducible streams per run; run 0 keeps the base seed.
    return c.sim.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(run_index);
}

RunSetup make_run_setup(const BenchConfig& c) {
    RunSetup s;

    CarBody car;
    car.mass_kg = c.plant.car_mass_kg;
    car.friction = FrictionParams{c.plant.coulomb_n, c.plant.viscous_ns_per_m,
                                  c.plant.stiction_band_mps, c.plant.friction_enabled};
    car.travel_limit_m = c.plant.travel_limit_m;
    car.end_stops = c.plant.end_stops;

    EnvironmentSpec env;
    env.kind = c.experiment.environment;
    env.spring = SpringDamper{c.experiment.spring_stiffness_n_per_m,
                              c.experiment.spring_damping_ns_per_m};
    env.latch = SpringDamper{c.experiment.latch_stiffness_n_per_m,
                             c.experiment.latch_damping_ns_per_m};

    switch (c.actuator.kind) {
        case ActuatorKind::hydraulic: {
            auto plant = std::make_unique<HydraulicBenchPlant>();
            plant->supply = c.actuator.supply;
            plant->valve = c.actuator.valve;
            plant->cylinder = c.actuator.cylinder;
            plant->oil = c.actuator.oil;
            plant->car = car;
            plant->env = env;
            s.plant = std::move(plant);
            break;
        }
        case ActuatorKind::electric: {
            auto plant = std::make_unique<ElectricBenchPlant>();
            plant->motor = c.actuator.motor;
            plant->car = car;
            plant->env = env;
            s.plant = std::move(plant);
            break;
        }
        case ActuatorKind::manual: {
            auto plant = std::make_unique<ManualRigPlant>();
            plant->car = car;
            plant->env = env;
            plant->drive = SpringDamper{c.actuator.drive_stiffness_n_per_m,
                                        c.actuator.drive_damping_ns_per_m};
            plant->hand = c.reference;
            s.plant = std::move(plant);
            break;
        }
    }

    switch (c.controller.kind) {
        case ControllerKind::pi: {
            PiGains g = PiGains::from_driver_volts(c.controller.kp_v_per_n,
                                                   c.controller.ki_v_per_ns,
                                                   c.controller.driver_span_v);
            g.anti_windup = c.controller.anti_windup;
            s.controller = std::make_unique<PiForceController>(g);
            break;
        }
        case ControllerKind::impedance_pi: {
            PiGains g = PiGains::from_driver_volts(c.controller.kp_v_per_n,
                                                   c.controller.ki_v_per_ns,
                                                   c.controller.driver_span_v);
            g.anti_windup = c.controller.anti_windup;
            s.controller = std::make_unique<PiForceController>(g, c.controller.impedance);
            break;
        }
        case ControllerKind::constant:
            s.controller = std::make_unique<ConstantController>(c.controller.constant_command);
            break;
        case ControllerKind::none:
            s.controller = std::make_unique<NullController>();
            break;
    }

    s.sensors.loadcell = c.sensors.loadcell;
    s.sensors.encoder = c.sensors.encoder;
    s.sensors.pressure = c.sensors.pressure;
    s.sensors.has_pressure = c.actuator.kind == ActuatorKind::hydraulic;

    s.reference = [spec = c.reference](double t) { return reference_value(spec, t); };
    return s;
}

ExperimentResult run_experiment(const BenchConfig& c) {
    if (c.experiment.runs < 1) {
        throw SimError("experiment needs runs >= 1");
    }
    std::vector<TimeSeries> runs;
    std::vector<std::uint64_t> seeds;
    runs.reserve(static_cast<std::size_t>(c.experiment.runs));
    for (int i = 0; i < c.experiment.runs; ++i) {
        RunSetup setup = make_run_setup(c);
        SimConfig sim = c.sim;
        sim.seed = run_seed(c, i);
        seeds.push_back(sim.seed);
        try {
            runs.push_back(run_simulation(sim, *setup.plant, *setup.controller,
                                          setup.sensors, setup.reference));
        } catch (const SimError& e) {
            throw SimError("run " + std::to_string(i) + ": " + e.what());
        }
    }
    return compute_statistics(c, std::move(runs), std::move(seeds));
}

namespace {

std::size_t window_start_index(const TimeSeries& ts, double start_s) {
    const auto it = std::lower_bound(ts.time_s.begin(), ts.time_s.end(), start_s - 1e-12);
    return static_cast<std::size_t>(it - ts.time_s.begin());
}

}  // namespace

ExperimentResult compute_statistics(const BenchConfig& c, std::vector<TimeSeries> runs,
                                    std::vector<std::uint64_t> seeds) {
    ExperimentResult res;
    res.protocol = c.experiment.protocol;
    res.runs = std::move(runs);
    res.run_seeds = std::move(seeds);
    if (res.runs.empty()) {
        throw SimError("no runs to analyze");
    }

    std::vector<const std::vector<double>*> force_ptrs, pos_ptrs;
    for (const auto& r : res.runs) {
        force_ptrs.push_back(&r.force_meas_n);
        pos_ptrs.push_back(&r.position_m);
    }
    res.force_stats = pointwise_stats(force_ptrs);
    res.position_stats = pointwise_stats(pos_ptrs);

    const TimeSeries& first = res.runs.front();
    const double t_end = first.time_s.back();
    res.fit_window_start_s = 0.2 * t_end;  // statistics over the final 80%
    const std::size_t w0 = window_start_index(first, res.fit_window_start_s);

    for (std::size_t i = w0; i < res.force_stats.stddev.size(); ++i) {
        res.max_force_std_n = std::max(res.max_force_std_n, res.force_stats.stddev[i]);
    }

    if (c.reference.kind == RefKind::sine && c.reference.frequency_hz > 0.0) {
        for (const auto& r : res.runs) {
            const std::span<const double> tw{r.time_s.data() + w0, r.time_s.size() - w0};
            const std::span<const double> fw{r.force_meas_n.data() + w0,
                                             r.force_meas_n.size() - w0};
            res.amplitude_est_n.push_back(fit_sine(tw, fw, c.reference.frequency_hz).amplitude);
        }
    }

    if (c.experiment.protocol == Protocol::blocked) {
        for (const auto& r : res.runs) {
            double peak = 0.0;
            for (double x : r.position_m) {
                peak = std::max(peak, std::abs(x));
            }
            res.peak_displacement_m.push_back(peak);
        }
    }

    if (c.experiment.protocol == Protocol::stiffness_id) {
        res.mean_position_m = res.position_stats.mean;
        res.mean_force_n = res.force_stats.mean;
        const auto [lo, hi] =
            std::minmax_element(res.mean_position_m.begin(), res.mean_position_m.end());
        const double span = *hi - *lo;
        if (span < 10.0 * c.sensors.encoder.resolution_m) {
            throw SimError("insufficient excitation: displacement span " +
                           std::to_string(span) + " m is below 10 encoder counts");
        }
        res.stiffness = linear_regression(res.mean_position_m, res.mean_force_n);
    }
    return res;
}

std::string summary_csv(const BenchConfig& c, const ExperimentResult& r) {
    std::string out = "metric,run,value\n";
    auto row = [&out](const std::string& metric, const std::string& run,
                      const std::string& value) {
        out += metric + "," + run + "," + value + "\n";
    };
    row("protocol", "", protocol_name(r.protocol));
    row("runs", "", std::to_string(r.runs.size()));
    row("duration_s", "", format_double(c.sim.duration_s));
    row("fit_window_start_s", "", format_double(r.fit_window_start_s));
    for (std::size_t i = 0; i < r.run_seeds.size(); ++i) {
        row("run_seed", std::to_string(i), std::to_string(r.run_seeds[i]));
    }
    if (!r.amplitude_est_n.empty()) {
        double mean = 0.0;
        for (std::size_t i = 0; i < r.amplitude_est_n.size(); ++i) {
            row("force_amplitude_n", std::to_string(i), format_double(r.amplitude_est_n[i]));
            mean += r.amplitude_est_n[i];
        }
        mean /= static_cast<double>(r.amplitude_est_n.size());
        row("force_amplitude_mean_n", "", format_double(mean));
        if (c.reference.kind == RefKind::sine) {
            row("reference_amplitude_n", "", format_double(c.reference.amplitude));
        }
    }
    row("max_force_std_n", "", format_double(r.max_force_std_n));
    if (!r.peak_displacement_m.empty()) {
        double mean = 0.0;
        double lo = r.peak_displacement_m.front();
        double hi = lo;
        for (std::size_t i = 0; i < r.peak_displacement_m.size(); ++i) {
            const double v = r.peak_displacement_m[i];
            row("peak_displacement_m", std::to_string(i), format_double(v));
            mean += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        mean /= static_cast<double>(r.peak_displacement_m.size());
        row("peak_displacement_mean_m", "", format_double(mean));
        row("peak_displacement_min_m", "", format_double(lo));
        row("peak_displacement_max_m", "", format_double(hi));
    }
    if (r.stiffness.has_value()) {
        row("stiffness_n_per_m", "", format_double(r.stiffness->slope));
        row("stiffness_intercept_n", "", format_double(r.stiffness->intercept));
        row("stiffness_r", "", format_double(r.stiffness->correlation_r));
    }
    return out;
}

}  // namespace benchsim
