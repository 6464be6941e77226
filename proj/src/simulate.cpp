#include "battfdi/simulate.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace battfdi {

double max_stable_dt(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    // RK4 real-axis stability reaches |lambda*dt| ~ 2.785; keep a margin.
    return rho > 0.0 ? 2.5 / rho : std::numeric_limits<double>::infinity();
}

Eigen::VectorXd fault_weights(const FaultSpec& spec, const LumpedModel& model) {
    const int n = model.n();
    if (spec.node >= n)
        throw std::invalid_argument("fault: node " + std::to_string(spec.node) +
                                    " outside grid of " + std::to_string(n) + " nodes");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    switch (spec.footprint) {
        case FaultFootprint::node:
            w(spec.node) = 1.0;
            break;
        case FaultFootprint::kernel3x3: {
            const int m0 = model.grid.x_of(spec.node), n0 = model.grid.y_of(spec.node);
            std::vector<int> box;
            for (int dmy = -1; dmy <= 1; ++dmy) {
                for (int dmx = -1; dmx <= 1; ++dmx) {
                    const int m = m0 + dmx, nn = n0 + dmy;
                    if (m >= 1 && m <= model.grid.nx && nn >= 1 && nn <= model.grid.ny)
                        box.push_back(model.grid.index(m, nn));
                }
            }
            for (int i : box) w(i) = 1.0 / static_cast<double>(box.size());
            break;
        }
        case FaultFootprint::zone: {
            if (model.partition.empty())
                throw std::invalid_argument("fault: zone footprint needs a placed model");
            const int z = model.partition.zone_of_node[spec.node];
            for (int i = 0; i < n; ++i)
                if (model.partition.zone_of_node[i] == z) w(i) = 1.0;
            break;
        }
        case FaultFootprint::uniform:
            w.setConstant(1.0 / static_cast<double>(n));
            break;
    }
    return w;
}

Trajectory simulate(const LumpedModel& model, const ScenarioSpec& scenario,
                    const ElectricalState& elec0) {
    scenario.validate();
    const int n = model.n();
    const int k_sensors = model.num_sensors();
    elec0.validate(n);

    const double stable = max_stable_dt(model.A);
    if (scenario.dt_s > stable) {
        std::ostringstream msg;
        msg << "simulate: dt " << scenario.dt_s << " s exceeds the RK4 stability bound; use dt <= "
            << stable << " s";
        throw std::runtime_error(msg.str());
    }

    const int steps = static_cast<int>(std::llround(scenario.duration_s / scenario.dt_s));
    const double dt = scenario.dt_s;
    const double theta_amb = model.params.theta_ambient_K;
    const double v_node = model.grid.node_volume_m3(model.geometry.depth_m);
    const double rho_cp = model.params.rho_cp();

    // Per-fault footprint weights, fixed over the run.
    std::vector<Eigen::VectorXd> weights;
    weights.reserve(scenario.faults.size());
    for (const auto& f : scenario.faults) weights.push_back(fault_weights(f, model));

    Trajectory traj;
    traj.times.resize(steps + 1);
    traj.states.resize(n, steps + 1);
    traj.outputs.resize(k_sensors, steps + 1);
    traj.inputs.resize(n + 1, steps + 1);
    traj.zone_fault_W.resize(model.partition.K(), steps + 1);
    traj.soc.resize(steps + 1);

    Eigen::VectorXd T = scenario.initial_temp_K.size() == n
                            ? scenario.initial_temp_K
                            : Eigen::VectorXd::Constant(n, theta_amb);
    if (scenario.initial_temp_K.size() != 0 && scenario.initial_temp_K.size() != n)
        throw std::invalid_argument("scenario: initial_temp size must match node count");
    double soc = scenario.initial_soc;

    ElectricalState elec = elec0;

    // dT/dt = A T + B [q_nominal + q_fault; theta_amb]; watts at a node are
    // deposited in that node's control volume.
    auto fault_heat = [&](double t) {
        Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
        for (size_t f = 0; f < scenario.faults.size(); ++f) {
            const double watts = fault_signal_at(scenario.faults[f], t);
            if (watts != 0.0) q += weights[f] * (watts / v_node);
        }
        return q;
    };
    auto rhs = [&](double t, const Eigen::VectorXd& temps, double soc_now,
                   Eigen::VectorXd& dT, double& dsoc) {
        elec.soc = std::clamp(soc_now, elec.ocv.soc_min(), elec.ocv.soc_max());
        elec.applied_current_A = scenario.current.at(t);
        Eigen::VectorXd u(n + 1);
        u.head(n) = heat_generation(elec, temps, model.params, model.geometry) + fault_heat(t);
        u(n) = theta_amb;
        dT.noalias() = model.A * temps;
        dT.noalias() += model.B * u;
        dsoc = -elec.applied_current_A / elec.capacity_As;
    };

    Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
    double s1, s2, s3, s4;

    for (int step = 0; step <= steps; ++step) {
        const double t = step * dt;
        traj.times(step) = t;
        traj.states.col(step) = T;
        traj.soc(step) = soc;

        // Record the nominal input actually applied at the step start.
        elec.soc = std::clamp(soc, elec.ocv.soc_min(), elec.ocv.soc_max());
        elec.applied_current_A = scenario.current.at(t);
        traj.inputs.col(step).head(n) = heat_generation(elec, T, model.params, model.geometry);
        traj.inputs(n, step) = theta_amb;

        for (int z = 0; z < model.partition.K(); ++z) {
            double watts = 0.0;
            for (size_t f = 0; f < scenario.faults.size(); ++f) {
                const double sig = fault_signal_at(scenario.faults[f], t);
                if (sig == 0.0) continue;
                for (int i = 0; i < n; ++i)
                    if (model.partition.zone_of_node[i] == z) watts += weights[f](i) * sig;
            }
            traj.zone_fault_W(z, step) = watts;
        }

        if (step == steps) break;

        rhs(t, T, soc, k1, s1);
        rhs(t + 0.5 * dt, tmp = T + 0.5 * dt * k1, soc + 0.5 * dt * s1, k2, s2);
        rhs(t + 0.5 * dt, tmp = T + 0.5 * dt * k2, soc + 0.5 * dt * s2, k3, s3);
        rhs(t + dt, tmp = T + dt * k3, soc + dt * s3, k4, s4);
        T += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        soc += (dt / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        if (soc < 0.0) {
            soc = 0.0;
            traj.soc_clamped = true;
        } else if (soc > 1.0) {
            soc = 1.0;
            traj.soc_clamped = true;
        }
    }

    // Measurement noise, drawn in a fixed order for reproducibility.
    traj.outputs = model.C * traj.states;
    if (scenario.meas_noise_var_K2 > 0.0 && k_sensors > 0) {
        std::mt19937_64 rng(scenario.rng_seed);
        std::normal_distribution<double> noise(0.0, std::sqrt(scenario.meas_noise_var_K2));
        for (int step = 0; step <= steps; ++step)
            for (int ch = 0; ch < k_sensors; ++ch) traj.outputs(ch, step) += noise(rng);
    }
    return traj;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("trajectory: cannot write " + path);
    out.precision(12);
    const int n = static_cast<int>(traj.states.rows());
    const int k = static_cast<int>(traj.outputs.rows());
    const int z = static_cast<int>(traj.zone_fault_W.rows());
    out << "time";
    for (int i = 1; i <= n; ++i) out << ",T_" << i;
    for (int i = 1; i <= k; ++i) out << ",y_" << i;
    for (int i = 1; i <= z; ++i) out << ",f_" << i;
    out << "\n";
    for (int s = 0; s < traj.steps(); ++s) {
        out << traj.times(s);
        for (int i = 0; i < n; ++i) out << ',' << traj.states(i, s);
        for (int i = 0; i < k; ++i) out << ',' << traj.outputs(i, s);
        for (int i = 0; i < z; ++i) out << ',' << traj.zone_fault_W(i, s);
        out << "\n";
    }
}

Trajectory read_trajectory_csv(const std::string& path, int n_states, int n_outputs,
                               int n_zones) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("trajectory: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trajectory: empty file " + path);
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != 1 + n_states + n_outputs + n_zones)
            throw std::runtime_error("trajectory: wrong column count at " + path + ":" +
                                     std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    Trajectory traj;
    const int m = static_cast<int>(rows.size());
    traj.times.resize(m);
    traj.states.resize(n_states, m);
    traj.outputs.resize(n_outputs, m);
    traj.zone_fault_W.resize(n_zones, m);
    traj.inputs.resize(0, m);
    traj.soc.resize(m);
    traj.soc.setZero();
    for (int s = 0; s < m; ++s) {
        int c = 0;
        traj.times(s) = rows[s][c++];
        for (int i = 0; i < n_states; ++i) traj.states(i, s) = rows[s][c++];
        for (int i = 0; i < n_outputs; ++i) traj.outputs(i, s) = rows[s][c++];
        for (int i = 0; i < n_zones; ++i) traj.zone_fault_W(i, s) = rows[s][c++];
    }
    return traj;
}

}  // namespace battfdi
