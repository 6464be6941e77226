#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace battfdi {

enum class FaultKind { internal, external };
enum class FaultShape { pulse, step, ramp };

/// Spatial footprint of an injected fault.
///  - node:      all power lands in the anchor node's control volume
///  - kernel3x3: power split uniformly over the 3x3 neighbourhood (clipped)
///  - zone:      the zonal fault of the reduced model: the signal acts on
///               every node of the zone containing the anchor, per node
///  - uniform:   power split uniformly over the whole cell
enum class FaultFootprint { node, kernel3x3, zone, uniform };

struct FaultSpec {
    FaultKind kind{FaultKind::internal};
    FaultShape shape{FaultShape::pulse};
    FaultFootprint footprint{FaultFootprint::node};
    int node{0};               ///< anchor node, 0-based
    double magnitude_W{0.0};
    double t_start_s{0.0};
    double t_end_s{0.0};       ///< pulse only
    double ramp_W_per_s{0.0};  ///< ramp only

    void validate() const;
};

/// Signal value in watts at time t: pulse is magnitude on [t_start, t_end),
/// step is magnitude on [t_start, inf), ramp grows as ramp_rate*(t-t_start).
double fault_signal_at(const FaultSpec& spec, double t_s);

/// Applied current versus time. A single-row table is a constant; longer
/// tables are linearly interpolated and clamped at the ends.
struct CurrentProfile {
    std::vector<std::pair<double, double>> table;  // (time_s, amps)

    double at(double t_s) const;
    static CurrentProfile constant(double amps);
    static CurrentProfile constant_c_rate(double c_rate, double capacity_As);
    /// Two-column CSV (time_s, current_A), header optional.
    static CurrentProfile from_csv(const std::string& path);
};

/// Everything that determines one simulation run.
struct ScenarioSpec {
    std::string name;
    CurrentProfile current{CurrentProfile::constant(0.0)};
    std::vector<FaultSpec> faults;
    double meas_noise_var_K2{0.0};
    double duration_s{0.0};
    double dt_s{0.01};
    Eigen::VectorXd initial_temp_K;  ///< empty = ambient everywhere
    double initial_soc{1.0};
    std::uint64_t rng_seed{0};

    void validate() const;
};

}  // namespace battfdi
