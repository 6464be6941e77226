#pragma once

#include <string>

#include <Eigen/Dense>

#include "battfdi/cell_model.hpp"
#include "battfdi/scenario.hpp"

namespace battfdi {

/// Time series produced by one simulation. Columns index time steps; all
/// blocks share the same step grid.
struct Trajectory {
    Eigen::VectorXd times;        ///< M+1
    Eigen::MatrixXd states;       ///< N x (M+1), kelvin
    Eigen::MatrixXd outputs;      ///< K x (M+1), noisy sensor readings
    Eigen::MatrixXd inputs;       ///< (N+1) x (M+1), nominal u per step
    Eigen::MatrixXd zone_fault_W; ///< K x (M+1), per-zone injected watts
    Eigen::VectorXd soc;          ///< M+1
    bool soc_clamped{false};

    int steps() const { return static_cast<int>(times.size()); }
};

/// Integrates the lumped model under the scenario with fixed-step RK4.
/// Faults are converted to volumetric heat in the control volumes given by
/// their footprint; measurement noise is zero-mean Gaussian drawn
/// deterministically from the scenario seed. Throws std::runtime_error when
/// dt exceeds the RK4 stability bound for A, naming a suggested step.
Trajectory simulate(const LumpedModel& model, const ScenarioSpec& scenario,
                    const ElectricalState& elec0);

/// Per-node weight vector of a fault footprint (sums to 1 for node/kernel/
/// uniform, and to the zone size for zone footprints).
Eigen::VectorXd fault_weights(const FaultSpec& spec, const LumpedModel& model);

/// RK4 absolute-stability limit for the model: max dt with |eig(A)|*dt
/// inside the stability region (with margin).
double max_stable_dt(const Eigen::MatrixXd& A);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path, int n_states, int n_outputs,
                               int n_zones);

}  // namespace battfdi
