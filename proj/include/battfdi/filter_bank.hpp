#pragma once

#include <vector>

#include <Eigen/Dense>

#include "battfdi/cell_model.hpp"
#include "battfdi/simulate.hpp"

namespace battfdi {

enum class FilterMode { steady_state, time_varying };

/// One zone's Kalman filter. The filter consumes every sensor channel; the
/// innovation monitored for zone i is channel i. S_cov is tuned asymmetric:
/// the foreign channel gets the small variance so the filter tracks the
/// other zone tightly and absorbs foreign faults, keeping channel i
/// sensitive to its own zone only.
struct FilterDesign {
    int zone{0};
    Eigen::MatrixXd L;      ///< N x K steady-state gain (empty in time_varying mode)
    Eigen::MatrixXd Q_cov;  ///< N x N process-noise covariance
    Eigen::MatrixXd S_cov;  ///< K x K measurement-noise covariance
    Eigen::MatrixXd P;      ///< ARE solution, or P0 in time_varying mode
    FilterMode mode{FilterMode::steady_state};
    double riccati_residual{0.0};
};

/// Designs the zone filter. steady_state solves the algebraic Riccati
/// equation and returns the constant gain L = P C' S^-1; time_varying keeps
/// P0 and integrates the Riccati ODE during the run. Throws
/// std::runtime_error when the design fails to stabilize, naming the
/// offending mode.
FilterDesign design_filter(const LumpedModel& model, int zone,
                           const Eigen::MatrixXd& Q_cov, const Eigen::MatrixXd& S_cov,
                           FilterMode mode = FilterMode::steady_state,
                           const Eigen::MatrixXd& P0 = Eigen::MatrixXd());

/// Runs one filter over recorded inputs/outputs (held zero-order over each
/// step) with the same RK4 scheme and step as the simulator. Returns the
/// innovation of the filter's own zone channel at every sample.
Eigen::VectorXd run_filter(const FilterDesign& design, const LumpedModel& model,
                           const Eigen::VectorXd& times, const Eigen::MatrixXd& inputs,
                           const Eigen::MatrixXd& outputs, const Eigen::VectorXd& x0);

/// Runs the whole bank; row i is filter i's own-zone innovation.
Eigen::MatrixXd run_bank(const std::vector<FilterDesign>& bank, const LumpedModel& model,
                         const Trajectory& traj, const Eigen::VectorXd& x0);

}  // namespace battfdi
