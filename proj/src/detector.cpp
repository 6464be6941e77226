#include "battfdi/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace battfdi {

DiagnosisReport detect(const Eigen::VectorXd& times, const Eigen::MatrixXd& innovations,
                       const DetectorConfig& config, const std::vector<FaultWindow>& windows) {
    const int k = static_cast<int>(innovations.rows());
    const int m = static_cast<int>(innovations.cols());
    if (times.size() != m) throw std::invalid_argument("detect: times/innovations mismatch");
    if (config.beta.size() != k)
        throw std::invalid_argument("detect: need one threshold per zone");
    if (!(config.beta.array() > 0.0).all())
        throw std::invalid_argument("detect: thresholds must be positive");

    DiagnosisReport rep;
    rep.times = times;
    rep.innovations = innovations;
    rep.beta = config.beta;
    rep.verdicts.resize(k, m);
    for (int z = 0; z < k; ++z)
        for (int s = 0; s < m; ++s)
            rep.verdicts(z, s) = std::abs(innovations(z, s)) > config.beta(z) ? 1 : 0;

    rep.convergence_time_s.assign(k, std::numeric_limits<double>::quiet_NaN());
    for (int z = 0; z < k; ++z) {
        for (int s = 0; s < m; ++s) {
            if (!rep.verdicts(z, s)) {
                rep.convergence_time_s[z] = times(s);
                break;
            }
        }
    }

    // Findings per declared fault, including the band re-entry after pulses.
    for (const auto& w : windows) {
        FaultFinding f;
        f.zone = w.zone;
        f.t_on = w.t_on;
        for (int s = 0; s < m; ++s) {
            if (times(s) >= w.t_on && rep.verdicts(w.zone, s)) {
                f.detected = true;
                f.detection_time_s = times(s) - w.t_on;
                break;
            }
        }
        if (std::isfinite(w.t_off)) {
            for (int s = 0; s < m; ++s) {
                if (times(s) >= w.t_off && !rep.verdicts(w.zone, s)) {
                    f.reset = true;
                    f.reset_time_s = times(s) - w.t_off;
                    break;
                }
            }
        }
        rep.findings.push_back(f);
    }

    // Active spans per zone: [t_on, re-entry after t_off).
    auto active = [&](int zone, double t) {
        for (size_t i = 0; i < windows.size(); ++i) {
            if (windows[i].zone != zone) continue;
            const auto& f = rep.findings[i];
            double t_end = std::numeric_limits<double>::infinity();
            if (std::isfinite(windows[i].t_off))
                t_end = f.reset ? windows[i].t_off + f.reset_time_s
                                : std::numeric_limits<double>::infinity();
            if (t >= windows[i].t_on && t < t_end) return true;
        }
        return false;
    };

    rep.false_alarm_counts.assign(k, 0);
    for (int z = 0; z < k; ++z) {
        if (std::isnan(rep.convergence_time_s[z])) continue;
        for (int s = 1; s < m; ++s) {
            if (times(s) < rep.convergence_time_s[z]) continue;
            if (rep.verdicts(z, s) && !rep.verdicts(z, s - 1) && !active(z, times(s)))
                ++rep.false_alarm_counts[z];
        }
    }
    return rep;
}

Eigen::VectorXd calibrate_thresholds(const Eigen::MatrixXd& innovations, double far_target,
                                     int skip_steps, bool* warned) {
    const int k = static_cast<int>(innovations.rows());
    const int m = static_cast<int>(innovations.cols());
    if (m - skip_steps <= 0) throw std::invalid_argument("calibrate: empty record");
    if (far_target < 0.0 || far_target >= 1.0)
        throw std::invalid_argument("calibrate: far_target must lie in [0, 1)");

    const int count = m - skip_steps;
    if (warned) *warned = false;
    if (far_target > 0.0 && count < 1.0 / far_target) {
        if (warned) *warned = true;
        std::cerr << "calibrate_thresholds: record of " << count
                  << " samples is short for a false-alarm target of " << far_target
                  << " (recommend at least " << static_cast<long>(1.0 / far_target)
                  << " samples)\n";
    }

    Eigen::VectorXd beta(k);
    std::vector<double> mag(count);
    for (int z = 0; z < k; ++z) {
        for (int s = 0; s < count; ++s) mag[s] = std::abs(innovations(z, skip_steps + s));
        std::sort(mag.begin(), mag.end());
        const double pos = (1.0 - far_target) * (count - 1);
        const int lo = static_cast<int>(std::floor(pos));
        const int hi = std::min(lo + 1, count - 1);
        beta(z) = mag[lo] + (pos - lo) * (mag[hi] - mag[lo]);
    }
    return beta;
}

void write_innovations_csv(const std::string& path, const DiagnosisReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("detector: cannot write " + path);
    out.precision(12);
    const int k = static_cast<int>(report.innovations.rows());
    out << "time";
    for (int z = 1; z <= k; ++z) out << ",I_" << z;
    for (int z = 1; z <= k; ++z) out << ",verdict_" << z;
    out << "\n";
    for (int s = 0; s < report.times.size(); ++s) {
        out << report.times(s);
        for (int z = 0; z < k; ++z) out << ',' << report.innovations(z, s);
        for (int z = 0; z < k; ++z) out << ',' << report.verdicts(z, s);
        out << "\n";
    }
}

std::string render_diagnosis(const DiagnosisReport& report) {
    std::ostringstream out;
    const int k = static_cast<int>(report.innovations.rows());
    out << "diagnosis over " << report.times.size() << " samples, " << k << " zones\n";
    for (int z = 0; z < k; ++z) {
        out << "  zone " << z + 1 << ": beta " << report.beta(z) << " K, convergence ";
        if (std::isnan(report.convergence_time_s[z]))
            out << "never";
        else
            out << report.convergence_time_s[z] << " s";
        out << ", false alarms " << report.false_alarm_counts[z] << "\n";
    }
    for (const auto& f : report.findings) {
        out << "  fault in zone " << f.zone + 1 << " at t=" << f.t_on << " s: ";
        if (f.detected)
            out << "detected after " << f.detection_time_s << " s";
        else
            out << "MISSED";
        if (f.reset) out << ", band re-entry " << f.reset_time_s << " s after fault end";
        out << "\n";
    }
    return out.str();
}

void write_threshold_file(const std::string& path, const Eigen::VectorXd& beta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("detector: cannot write " + path);
    out.precision(17);
    for (int z = 0; z < beta.size(); ++z) out << "beta_" << z + 1 << " = " << beta(z) << "\n";
}

Eigen::VectorXd read_threshold_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("detector: cannot open " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        vals.push_back(std::stod(line.substr(eq + 1)));
    }
    Eigen::VectorXd beta(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) beta(static_cast<int>(i)) = vals[i];
    return beta;
}

}  // namespace battfdi
