#include "battfdi/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace battfdi {

void FaultSpec::validate() const {
    if (t_start_s < 0.0) throw std::invalid_argument("fault: t_start must be non-negative");
    if (shape == FaultShape::pulse && !(t_end_s > t_start_s))
        throw std::invalid_argument("fault: pulse needs t_end > t_start");
    if (magnitude_W < 0.0) throw std::invalid_argument("fault: magnitude must be non-negative");
    if (node < 0) throw std::invalid_argument("fault: node index must be non-negative");
}

double fault_signal_at(const FaultSpec& spec, double t_s) {
    if (t_s < spec.t_start_s) return 0.0;
    switch (spec.shape) {
        case FaultShape::pulse:
            return t_s < spec.t_end_s ? spec.magnitude_W : 0.0;
        case FaultShape::step:
            return spec.magnitude_W;
        case FaultShape::ramp:
            return spec.ramp_W_per_s * (t_s - spec.t_start_s);
    }
    return 0.0;
}

double CurrentProfile::at(double t_s) const {
    if (table.empty()) return 0.0;
    if (table.size() == 1) return table.front().second;
    if (t_s <= table.front().first) return table.front().second;
    if (t_s >= table.back().first) return table.back().second;
    auto hi = std::lower_bound(table.begin(), table.end(), t_s,
                               [](const auto& p, double t) { return p.first < t; });
    auto lo = std::prev(hi);
    const double w = (t_s - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

CurrentProfile CurrentProfile::constant(double amps) {
    CurrentProfile p;
    p.table = {{0.0, amps}};
    return p;
}

CurrentProfile CurrentProfile::constant_c_rate(double c_rate, double capacity_As) {
    return constant(c_rate * capacity_As / 3600.0);
}

CurrentProfile CurrentProfile::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("current profile: cannot open " + path);
    CurrentProfile p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double t, a;
        if (!(ss >> t >> a)) {
            if (lineno == 1) continue;  // header row
            throw std::runtime_error("current profile: parse error at " + path + ":" +
                                     std::to_string(lineno));
        }
        p.table.emplace_back(t, a);
    }
    if (p.table.empty()) throw std::runtime_error("current profile: no samples in " + path);
    if (!std::is_sorted(p.table.begin(), p.table.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; }))
        throw std::runtime_error("current profile: times must be ascending in " + path);
    return p;
}

void ScenarioSpec::validate() const {
    if (!(dt_s > 0.0)) throw std::invalid_argument("scenario: dt must be positive");
    if (duration_s < dt_s) throw std::invalid_argument("scenario: duration must cover one step");
    if (meas_noise_var_K2 < 0.0)
        throw std::invalid_argument("scenario: meas_noise_var must be non-negative");
    for (const auto& f : faults) f.validate();
}

}  // namespace battfdi
