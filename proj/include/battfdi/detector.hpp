#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace battfdi {

struct DetectorConfig {
    Eigen::VectorXd beta;  ///< per-zone thresholds, kelvin, all positive
};

/// Ground-truth activity window of one injected fault, used to separate
/// detections from false alarms.
struct FaultWindow {
    int zone{0};
    double t_on{0.0};
    double t_off{std::numeric_limits<double>::infinity()};  ///< pulse end, inf otherwise
};

struct FaultFinding {
    int zone{0};
    double t_on{0.0};
    bool detected{false};
    double detection_time_s{0.0};  ///< since onset, valid when detected
    bool reset{false};
    double reset_time_s{0.0};  ///< re-entry into the band after t_off, pulses only
};

struct DiagnosisReport {
    Eigen::VectorXd times;
    Eigen::MatrixXd innovations;            ///< K x M
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> verdicts;  ///< 1 = H1
    Eigen::VectorXd beta;
    std::vector<double> convergence_time_s;  ///< per zone, first entry into the band
    std::vector<int> false_alarm_counts;     ///< per zone
    std::vector<FaultFinding> findings;      ///< aligned with the window list
};

/// Threshold logic: verdict H1 at a step iff |I| > beta. Detection time is
/// the first crossing at or after a declared onset. False alarms are
/// threshold-entry events (H0 -> H1 edges) counted per zone after that
/// zone's innovation first converged into the band, excluding periods where
/// a declared fault in that zone is active (a pulse stays "active" until the
/// innovation re-enters the band after the pulse ends).
DiagnosisReport detect(const Eigen::VectorXd& times, const Eigen::MatrixXd& innovations,
                       const DetectorConfig& config, const std::vector<FaultWindow>& windows);

/// Empirical (1 - far_target) quantile of |I| per zone over the record after
/// `skip_steps`. far_target = 0 returns the maximum. Sets *warned when the
/// record is shorter than 1/far_target samples.
Eigen::VectorXd calibrate_thresholds(const Eigen::MatrixXd& innovations, double far_target,
                                     int skip_steps = 0, bool* warned = nullptr);

void write_innovations_csv(const std::string& path, const DiagnosisReport& report);
std::string render_diagnosis(const DiagnosisReport& report);

/// Per-zone threshold file, "beta_1 = 0.3" per line.
void write_threshold_file(const std::string& path, const Eigen::VectorXd& beta);
Eigen::VectorXd read_threshold_file(const std::string& path);

}  // namespace battfdi
